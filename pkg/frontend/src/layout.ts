/** Deterministic graph layout.
 *
 * Nodes are layered by their longest path from a root and spread
 * evenly within each layer, both in the model's declaration order, so
 * a given model always lays out identically across reloads. */

import type { ModelSummary } from "./api";

export interface NodePosition {
  x: number;
  y: number;
}

export const CANVAS_WIDTH = 640;
export const LAYER_HEIGHT = 110;
export const MARGIN_Y = 50;

export function layout(model: ModelSummary): Record<string, NodePosition> {
  const order = model.variables.map((v) => v.id);
  const parents = new Map<string, string[]>(order.map((id) => [id, []]));
  for (const [from, to] of model.edges) {
    parents.get(to)?.push(from);
  }

  // longest-path depth; declaration order is already topological-safe
  // to iterate repeatedly on a DAG of this size
  const depth = new Map<string, number>(order.map((id) => [id, 0]));
  for (let pass = 0; pass < order.length; pass += 1) {
    for (const id of order) {
      const ps = parents.get(id) ?? [];
      const d = ps.length === 0 ? 0 : Math.max(...ps.map((p) => depth.get(p) ?? 0)) + 1;
      depth.set(id, d);
    }
  }

  const layers = new Map<number, string[]>();
  for (const id of order) {
    const d = depth.get(id) ?? 0;
    const layer = layers.get(d) ?? [];
    layer.push(id);
    layers.set(d, layer);
  }

  const positions: Record<string, NodePosition> = {};
  for (const [d, members] of layers) {
    members.forEach((id, index) => {
      positions[id] = {
        x: Math.round(((index + 1) * CANVAS_WIDTH) / (members.length + 1)),
        y: MARGIN_Y + d * LAYER_HEIGHT,
      };
    });
  }
  return positions;
}
