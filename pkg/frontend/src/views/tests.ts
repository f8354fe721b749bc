// Test manager: groups, lifecycle chips, result charts, and the
// Blink / Run / Stop / Submit / Interpret controls. Buttons enable only
// when the lifecycle allows the action, mirroring the server's 409 rules.

import { chartModel } from "../chart.js";
import type { TestArtifact } from "../types.js";
import type { UiState } from "../store.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface TestCallbacks {
  onAction: (testId: string, action: "highlight" | "run" | "submit" | "interpret",
             observation?: string) => void;
  onStop: (pin: string) => void;
  onSuggestion: (id: string, action: "highlight" | "complete") => void;
}

const RUNNABLE = new Set(["created", "probes_highlighted"]);

export function allowedActions(test: TestArtifact): Set<string> {
  const allowed = new Set<string>();
  if (RUNNABLE.has(test.state)) {
    allowed.add("highlight");
    if (test.test_kind === "inspection") allowed.add("submit");
    else allowed.add("run");
  }
  if (test.state === "result_captured") allowed.add("submit");
  if (test.state === "submitted") allowed.add("interpret");
  return allowed;
}

export function renderChart(test: TestArtifact, width = 360, height = 120): SVGSVGElement {
  const model = chartModel(test.result, width, height);
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height + 18));
  svg.setAttribute("class", "result-chart");
  svg.dataset.kind = model.kind;

  if (model.kind === "empty") {
    const note = document.createElementNS(SVG_NS, "text");
    note.setAttribute("x", String(width / 2));
    note.setAttribute("y", String(height / 2));
    note.setAttribute("class", "chart-placeholder");
    note.textContent = "no samples";
    svg.appendChild(note);
    return svg;
  }

  const axis = document.createElementNS(SVG_NS, "text");
  axis.setAttribute("x", String(width / 2));
  axis.setAttribute("y", String(height + 14));
  axis.setAttribute("class", "axis-label");
  axis.textContent = `${model.xLabel} / ${model.yLabel}`;
  svg.appendChild(axis);

  if (model.kind === "reading" && model.marker) {
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(model.marker.x));
    dot.setAttribute("cy", String(model.marker.y));
    dot.setAttribute("r", "5");
    dot.setAttribute("class", "reading-marker");
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(model.marker.x + 10));
    label.setAttribute("y", String(model.marker.y - 6));
    label.textContent = model.marker.label;
    svg.append(dot, label);
    return svg;
  }

  const path = document.createElementNS(SVG_NS, "path");
  path.setAttribute("d", model.path ?? "");
  path.setAttribute("class", "series-line");
  path.setAttribute("fill", "none");
  svg.appendChild(path);
  for (const point of model.points ?? []) {
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(point.x));
    dot.setAttribute("cy", String(point.y));
    dot.setAttribute("r", "2");
    dot.setAttribute("class", "series-dot");
    svg.appendChild(dot);
  }
  return svg;
}

export class TestManagerView {
  private panel: HTMLDivElement;

  constructor(
    root: HTMLElement,
    private callbacks: TestCallbacks,
  ) {
    this.panel = document.createElement("div");
    this.panel.className = "test-manager";
    root.appendChild(this.panel);
  }

  update(state: UiState): void {
    this.panel.replaceChildren();
    for (const group of Object.values(state.groups)) {
      const section = document.createElement("section");
      section.className = "test-group";
      const heading = document.createElement("h3");
      heading.textContent = group.title;
      section.appendChild(heading);
      for (const testId of group.test_ids) {
        const artifact = state.artifacts[testId];
        if (artifact && artifact.type === "test") {
          section.appendChild(this.renderTest(artifact));
        }
      }
      this.panel.appendChild(section);
    }
    const suggestions = Object.values(state.artifacts).filter(
      (a) => a.type === "suggestion",
    );
    if (suggestions.length > 0) {
      const section = document.createElement("section");
      section.className = "suggestions";
      const heading = document.createElement("h3");
      heading.textContent = "Suggestions";
      section.appendChild(heading);
      for (const suggestion of suggestions) {
        const row = document.createElement("div");
        row.className = "suggestion";
        row.dataset.artifactId = suggestion.id;
        const text = document.createElement("span");
        text.textContent = `${suggestion.description} [${suggestion.state}]`;
        row.appendChild(text);
        if (suggestion.state !== "completed") {
          const blink = document.createElement("button");
          blink.textContent = "Blink";
          blink.onclick = () => this.callbacks.onSuggestion(suggestion.id, "highlight");
          const done = document.createElement("button");
          done.textContent = "Completed";
          done.onclick = () => this.callbacks.onSuggestion(suggestion.id, "complete");
          row.append(blink, done);
        }
        section.appendChild(row);
      }
      this.panel.appendChild(section);
    }
  }

  private renderTest(test: TestArtifact): HTMLDivElement {
    const card = document.createElement("div");
    card.className = "test-card";
    card.dataset.artifactId = test.id;

    const title = document.createElement("div");
    title.className = "test-title";
    title.textContent = test.title;
    const chip = document.createElement("span");
    chip.className = `chip ${test.state}`;
    chip.textContent = test.state.replace("_", " ");
    title.appendChild(chip);
    if (test.verdict) {
      const verdict = document.createElement("span");
      verdict.className = `chip verdict-${test.verdict}`;
      verdict.textContent = test.verdict;
      title.appendChild(verdict);
    }
    card.appendChild(title);

    const allowed = allowedActions(test);
    const controls = document.createElement("div");
    controls.className = "controls";
    const buttons: Array<["highlight" | "run" | "submit" | "interpret", string]> = [
      ["highlight", "Blink"],
      ["run", test.test_kind === "signal" ? "Play sequence" : "Run"],
      ["submit", "Submit"],
      ["interpret", "Interpret"],
    ];
    for (const [action, label] of buttons) {
      const button = document.createElement("button");
      button.textContent = label;
      button.dataset.action = action;
      button.disabled = !allowed.has(action);
      button.onclick = () => {
        const observation =
          action === "submit" && test.test_kind === "inspection"
            ? observationInput.value
            : undefined;
        this.callbacks.onAction(test.id, action, observation);
      };
      controls.appendChild(button);
    }
    if (test.test_kind === "signal") {
      const stop = document.createElement("button");
      stop.textContent = "Stop";
      stop.dataset.action = "stop";
      stop.onclick = () => this.callbacks.onStop(String(test.spec.drive_pin));
      controls.appendChild(stop);
    }
    const observationInput = document.createElement("input");
    if (test.test_kind === "inspection") {
      observationInput.placeholder = String(test.spec.prompt ?? "what did you observe?");
      controls.appendChild(observationInput);
    }
    card.appendChild(controls);

    card.appendChild(renderChart(test));
    if (test.interpretation) {
      const analysis = document.createElement("p");
      analysis.className = "interpretation";
      analysis.textContent = test.interpretation;
      card.appendChild(analysis);
    }
    return card;
  }
}
