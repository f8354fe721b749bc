// Schematic canvas: components drawn from layout.json, double-click to
// toggle one, drag a rectangle to add many. Every selection change posts
// the full id list to the server context endpoint.

import { dragSelect, normalizeRect, toggleSelection } from "../selection.js";
import type { Layout, SchematicDoc } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const DRAG_THRESHOLD_PX = 4;

export interface SchematicCallbacks {
  onSelectionChange: (ids: string[]) => void;
  onHighlight: (componentId: string) => void;
}

export class SchematicView {
  readonly svg: SVGSVGElement;
  selection: string[] = [];
  private layout: Layout = {};
  private doc: SchematicDoc = { components: [], nets: [], assignments: [] };
  private dragStart: { x: number; y: number } | null = null;
  private rubberBand: SVGRectElement;

  constructor(
    private root: HTMLElement,
    private callbacks: SchematicCallbacks,
    width = 560,
    height = 300,
  ) {
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("width", String(width));
    this.svg.setAttribute("height", String(height));
    this.svg.setAttribute("class", "schematic");
    this.rubberBand = document.createElementNS(SVG_NS, "rect");
    this.rubberBand.setAttribute("class", "rubber-band");
    this.rubberBand.setAttribute("visibility", "hidden");
    root.appendChild(this.svg);

    this.svg.addEventListener("mousedown", (e) => this.onMouseDown(e));
    this.svg.addEventListener("mousemove", (e) => this.onMouseMove(e));
    this.svg.addEventListener("mouseup", (e) => this.onMouseUp(e));
  }

  update(doc: SchematicDoc, layout: Layout, selection: string[]): void {
    this.doc = doc;
    this.layout = layout;
    this.selection = [...selection];
    this.render();
  }

  private point(e: MouseEvent): { x: number; y: number } {
    const bounds = this.svg.getBoundingClientRect();
    return { x: e.clientX - bounds.left, y: e.clientY - bounds.top };
  }

  private onMouseDown(e: MouseEvent): void {
    this.dragStart = this.point(e);
  }

  private onMouseMove(e: MouseEvent): void {
    if (!this.dragStart) return;
    const p = this.point(e);
    const rect = normalizeRect(this.dragStart.x, this.dragStart.y, p.x, p.y);
    if (rect.w < DRAG_THRESHOLD_PX && rect.h < DRAG_THRESHOLD_PX) return;
    this.rubberBand.setAttribute("x", String(rect.x));
    this.rubberBand.setAttribute("y", String(rect.y));
    this.rubberBand.setAttribute("width", String(rect.w));
    this.rubberBand.setAttribute("height", String(rect.h));
    this.rubberBand.setAttribute("visibility", "visible");
  }

  private onMouseUp(e: MouseEvent): void {
    if (!this.dragStart) return;
    const start = this.dragStart;
    this.dragStart = null;
    this.rubberBand.setAttribute("visibility", "hidden");
    const p = this.point(e);
    const rect = normalizeRect(start.x, start.y, p.x, p.y);
    if (rect.w < DRAG_THRESHOLD_PX && rect.h < DRAG_THRESHOLD_PX) return;
    const next = dragSelect(this.selection, this.layoutForPlaced(), rect);
    this.applySelection(next);
  }

  private onDoubleClick(id: string): void {
    this.applySelection(toggleSelection(this.selection, id));
  }

  private layoutForPlaced(): Layout {
    const placed: Layout = {};
    for (const component of this.doc.components) {
      const box = this.layout[component.id];
      if (box) placed[component.id] = box;
    }
    return placed;
  }

  private applySelection(ids: string[]): void {
    this.selection = ids;
    this.render();
    this.callbacks.onSelectionChange(ids);
  }

  private render(): void {
    this.svg.replaceChildren();
    for (const component of this.doc.components) {
      const box = this.layout[component.id];
      if (!box) continue;
      const group = document.createElementNS(SVG_NS, "g");
      group.dataset.componentId = component.id;

      const rect = document.createElementNS(SVG_NS, "rect");
      rect.setAttribute("x", String(box.x));
      rect.setAttribute("y", String(box.y));
      rect.setAttribute("width", String(box.w));
      rect.setAttribute("height", String(box.h));
      rect.setAttribute(
        "class",
        this.selection.includes(component.id) ? "component selected" : "component",
      );
      group.appendChild(rect);

      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(box.x + box.w / 2));
      label.setAttribute("y", String(box.y + box.h / 2));
      label.setAttribute("class", "component-label");
      label.textContent = `${component.id} (${component.kind})`;
      group.appendChild(label);

      group.addEventListener("dblclick", (e) => {
        e.stopPropagation();
        this.onDoubleClick(component.id);
      });
      // blink the physical rows without changing the selection
      group.addEventListener("contextmenu", (e) => {
        e.preventDefault();
        this.callbacks.onHighlight(component.id);
      });
      this.svg.appendChild(group);
    }
    this.svg.appendChild(this.rubberBand);
  }
}
