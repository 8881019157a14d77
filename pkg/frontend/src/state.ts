/** Scenario state and its invariants.
 *
 * The one rule that must hold at all times: a variable is never in
 * both the evidence map and the intervention map. Toggling enforces
 * it structurally — setting one side removes the variable from the
 * other — rather than validating after the fact. */

import type { QueryRequest } from "./api";

export interface ScenarioState {
  modelId: string;
  evidence: Record<string, string>;
  interventions: Record<string, string>;
}

export interface UiScenarioState {
  scenario: ScenarioState;
  /** Optional second scenario for the dual-pane comparison. */
  pinned: ScenarioState | null;
}

export function emptyScenario(modelId: string): ScenarioState {
  return { modelId, evidence: {}, interventions: {} };
}

function without(map: Record<string, string>, key: string): Record<string, string> {
  const { [key]: _, ...rest } = map;
  return rest;
}

/** Clicking a state that is already evidence clears it; clicking any
 * other state moves the observation there. Either way the variable
 * leaves the intervention map. */
export function toggleEvidence(
  scenario: ScenarioState,
  variable: string,
  state: string,
): ScenarioState {
  const cleared = scenario.evidence[variable] === state;
  return {
    ...scenario,
    evidence: cleared
      ? without(scenario.evidence, variable)
      : { ...scenario.evidence, [variable]: state },
    interventions: without(scenario.interventions, variable),
  };
}

/** Same toggle semantics for do-interventions. */
export function toggleIntervention(
  scenario: ScenarioState,
  variable: string,
  state: string,
): ScenarioState {
  const cleared = scenario.interventions[variable] === state;
  return {
    ...scenario,
    interventions: cleared
      ? without(scenario.interventions, variable)
      : { ...scenario.interventions, [variable]: state },
    evidence: without(scenario.evidence, variable),
  };
}

export function clearAll(scenario: ScenarioState): ScenarioState {
  return emptyScenario(scenario.modelId);
}

/** The request body for a scenario; fixed variables are simply absent,
 * so a cleared toggle genuinely omits the variable from the wire. */
export function queryBody(scenario: ScenarioState): QueryRequest {
  const body: QueryRequest = {};
  if (Object.keys(scenario.evidence).length > 0) {
    body.evidence = { ...scenario.evidence };
  }
  if (Object.keys(scenario.interventions).length > 0) {
    body.do = { ...scenario.interventions };
  }
  return body;
}

export function isFixed(scenario: ScenarioState, variable: string): boolean {
  return variable in scenario.evidence || variable in scenario.interventions;
}

/** Responses are applied in request order: each pane keeps a sequence
 * counter, and a response is dropped unless it is newer than the last
 * one already applied. */
export class RequestSequencer {
  private issued = 0;
  private applied = 0;

  next(): number {
    this.issued += 1;
    return this.issued;
  }

  /** Returns true (and advances) iff this response should be applied. */
  accept(sequence: number): boolean {
    if (sequence <= this.applied) {
      return false;
    }
    this.applied = sequence;
    return true;
  }
}
