/** Browser wiring: fetch models, render the graph and monitors, and
 * keep both panes in sync with their scenarios. All probability text
 * on screen is produced by monitors.ts from API responses. */

import { ApiClient, ModelSummary, QueryResponse } from "./api";
import { compareResponses } from "./compare";
import { CANVAS_WIDTH, MARGIN_Y, layout } from "./layout";
import { MonitorView, buildMonitors, formatPercent } from "./monitors";
import {
  RequestSequencer,
  ScenarioState,
  clearAll,
  emptyScenario,
  queryBody,
  toggleEvidence,
  toggleIntervention,
} from "./state";

const api = new ApiClient();

interface Pane {
  root: HTMLElement;
  scenario: ScenarioState;
  sequencer: RequestSequencer;
  response: QueryResponse | null;
}

let model: ModelSummary | null = null;
let left: Pane | null = null;
let right: Pane | null = null;
let doMode = false;

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function banner(message: string): void {
  const box = document.getElementById("banner");
  if (!box) return;
  box.textContent = message;
  box.classList.toggle("hidden", message === "");
}

function svgNode(tag: string): SVGElement {
  return document.createElementNS("http://www.w3.org/2000/svg", tag);
}

function renderGraph(pane: Pane): SVGElement {
  const m = model!;
  const positions = layout(m);
  const depthMax = Math.max(...Object.values(positions).map((p) => p.y));
  const svg = svgNode("svg");
  svg.setAttribute("viewBox", `0 0 ${CANVAS_WIDTH} ${depthMax + MARGIN_Y}`);
  svg.setAttribute("class", "graph");

  for (const [from, to] of m.edges) {
    const a = positions[from];
    const b = positions[to];
    const line = svgNode("line");
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y));
    // a do-intervention severs the incoming edges of its target
    const severed = to in pane.scenario.interventions;
    line.setAttribute("class", severed ? "edge severed" : "edge");
    svg.appendChild(line);
  }
  for (const variable of m.variables) {
    const p = positions[variable.id];
    const group = svgNode("g");
    const circle = svgNode("circle");
    circle.setAttribute("cx", String(p.x));
    circle.setAttribute("cy", String(p.y));
    circle.setAttribute("r", "26");
    const classes = ["node"];
    if (variable.id in pane.scenario.evidence) classes.push("evidence");
    if (variable.id in pane.scenario.interventions) classes.push("intervened");
    circle.setAttribute("class", classes.join(" "));
    const text = svgNode("text");
    text.setAttribute("x", String(p.x));
    text.setAttribute("y", String(p.y + 4));
    text.setAttribute("class", "node-label");
    text.textContent = variable.id;
    group.appendChild(circle);
    group.appendChild(text);
    svg.appendChild(group);
  }
  return svg;
}

function renderMonitor(pane: Pane, view: MonitorView): HTMLElement {
  const card = el("div", "monitor");
  const title = el("div", "monitor-title", view.label);
  if (view.isEvidence) title.classList.add("evidence");
  if (view.isIntervention) title.classList.add("intervened");
  if (view.isIntervention) title.textContent += "  [do]";
  card.appendChild(title);
  for (const row of view.rows) {
    const line = el("div", "monitor-row");
    const button = el("button", "state-button", row.state) as HTMLButtonElement;
    if (row.fixed) button.classList.add("fixed");
    button.addEventListener("click", () => {
      pane.scenario = doMode
        ? toggleIntervention(pane.scenario, view.variable, row.state)
        : toggleEvidence(pane.scenario, view.variable, row.state);
      void refresh(pane);
    });
    const bar = el("div", "bar");
    bar.style.width = `${row.width}px`;
    const value = el("span", "value", row.percent ?? (row.fixed ? "set" : ""));
    line.appendChild(button);
    line.appendChild(bar);
    line.appendChild(value);
    card.appendChild(line);
  }
  return card;
}

function renderPane(pane: Pane): void {
  pane.root.replaceChildren();
  if (!model || !pane.response) return;
  pane.root.appendChild(renderGraph(pane));
  const monitors = el("div", "monitors");
  for (const view of buildMonitors(model, pane.scenario, pane.response)) {
    monitors.appendChild(renderMonitor(pane, view));
  }
  pane.root.appendChild(monitors);
}

function renderDeltas(): void {
  const box = document.getElementById("deltas");
  if (!box) return;
  box.replaceChildren();
  if (!left?.response || !right?.response) return;
  for (const d of compareResponses(left.response, right.response)) {
    if (!d.highlight) continue;
    box.appendChild(
      el(
        "div",
        "delta",
        `${d.variable}=${d.state}: ${formatPercent(d.left)} vs ` +
          `${formatPercent(d.right)}`,
      ),
    );
  }
}

async function refresh(pane: Pane): Promise<void> {
  if (!model) return;
  const sequence = pane.sequencer.next();
  try {
    const response = await api.query(model.id, queryBody(pane.scenario));
    if (!pane.sequencer.accept(sequence)) return; // stale
    pane.response = response;
    banner("");
  } catch (error) {
    const apiError = error as { code?: string; message?: string };
    banner(`${apiError.code ?? "ERROR"}: ${apiError.message ?? String(error)}`);
    return;
  }
  renderPane(pane);
  renderDeltas();
}

async function selectModel(summary: ModelSummary): Promise<void> {
  model = summary;
  left = {
    root: document.getElementById("left-pane")!,
    scenario: emptyScenario(summary.id),
    sequencer: new RequestSequencer(),
    response: null,
  };
  right = {
    root: document.getElementById("right-pane")!,
    scenario: emptyScenario(summary.id),
    sequencer: new RequestSequencer(),
    response: null,
  };
  await Promise.all([refresh(left), refresh(right)]);
}

async function boot(): Promise<void> {
  const picker = document.getElementById("model-picker") as HTMLSelectElement;
  const doToggle = document.getElementById("do-toggle") as HTMLInputElement;
  const clearButton = document.getElementById("clear-button")!;

  doToggle.addEventListener("change", () => {
    doMode = doToggle.checked;
  });
  clearButton.addEventListener("click", () => {
    for (const pane of [left, right]) {
      if (!pane) continue;
      pane.scenario = clearAll(pane.scenario);
      void refresh(pane);
    }
  });

  let models: ModelSummary[];
  try {
    models = await api.listModels();
  } catch (error) {
    const apiError = error as { code?: string; message?: string };
    banner(`${apiError.code ?? "ERROR"}: ${apiError.message ?? String(error)}`);
    return;
  }
  for (const summary of models) {
    const option = document.createElement("option");
    option.value = summary.id;
    option.textContent = summary.name;
    picker.appendChild(option);
  }
  picker.addEventListener("change", () => {
    const chosen = models.find((m) => m.id === picker.value);
    if (chosen) void selectModel(chosen);
  });
  if (models.length > 0) {
    picker.value = models[0].id;
    await selectModel(models[0]);
  }
}

document.addEventListener("DOMContentLoaded", () => void boot());
