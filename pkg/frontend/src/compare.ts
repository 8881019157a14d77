/** Dual-pane comparison: per-variable, per-state deltas between two
 * query responses, highlighted from half a percentage point up. The
 * deltas are differences of API-provided numbers only. */

import type { QueryResponse } from "./api";

export interface Delta {
  variable: string;
  state: string;
  left: number;
  right: number;
  delta: number;
  highlight: boolean;
}

export const HIGHLIGHT_THRESHOLD = 0.005;

export function compareResponses(
  left: QueryResponse,
  right: QueryResponse,
): Delta[] {
  const deltas: Delta[] = [];
  for (const variable of Object.keys(left.posteriors)) {
    const rightPosterior = right.posteriors[variable];
    if (rightPosterior === undefined) {
      continue;
    }
    for (const state of Object.keys(left.posteriors[variable])) {
      const l = left.posteriors[variable][state];
      const r = rightPosterior[state];
      if (r === undefined) {
        continue;
      }
      const delta = r - l;
      deltas.push({
        variable,
        state,
        left: l,
        right: r,
        delta,
        highlight: Math.abs(delta) >= HIGHLIGHT_THRESHOLD,
      });
    }
  }
  return deltas;
}
