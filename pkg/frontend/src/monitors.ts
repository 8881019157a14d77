/** Per-node probability monitors as plain view models.
 *
 * This module formats numbers handed to it by the API and decides what
 * each monitor should show; it performs no probability arithmetic.
 * main.ts turns the view models into DOM. */

import type { ModelSummary, QueryResponse } from "./api";
import type { ScenarioState } from "./state";

export interface MonitorRow {
  state: string;
  /** "18.2%", or null when the variable is fixed and the API returned
   * no posterior for it. */
  percent: string | null;
  /** Bar width in pixels, proportional to the API's probability. */
  width: number;
  fixed: boolean;
}

export interface MonitorView {
  variable: string;
  label: string;
  rows: MonitorRow[];
  isEvidence: boolean;
  isIntervention: boolean;
}

export const BAR_FULL_WIDTH = 160;

/** One decimal place, half-up — 0.18182 renders as "18.2%". */
export function formatPercent(probability: number): string {
  return `${(probability * 100).toFixed(1)}%`;
}

export function barWidth(probability: number): number {
  return Math.round(probability * BAR_FULL_WIDTH);
}

export function buildMonitors(
  model: ModelSummary,
  scenario: ScenarioState,
  response: QueryResponse,
): MonitorView[] {
  return model.variables.map((variable) => {
    const fixedState =
      scenario.evidence[variable.id] ?? scenario.interventions[variable.id];
    const posterior = response.posteriors[variable.id];
    const rows = variable.states.map((state) => {
      if (fixedState !== undefined) {
        return {
          state,
          percent: null,
          width: state === fixedState ? BAR_FULL_WIDTH : 0,
          fixed: state === fixedState,
        };
      }
      const p = posterior?.[state];
      return {
        state,
        percent: p === undefined ? null : formatPercent(p),
        width: p === undefined ? 0 : barWidth(p),
        fixed: false,
      };
    });
    return {
      variable: variable.id,
      label: variable.label,
      rows,
      isEvidence: variable.id in scenario.evidence,
      isIntervention: variable.id in scenario.interventions,
    };
  });
}
