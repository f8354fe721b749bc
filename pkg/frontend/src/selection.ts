// Pure selection-gesture logic: the view layer only translates DOM events
// into these calls, so the mapping is testable without a browser.

import type { Layout } from "./types.js";

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export function normalizeRect(x0: number, y0: number, x1: number, y1: number): Rect {
  return {
    x: Math.min(x0, x1),
    y: Math.min(y0, y1),
    w: Math.abs(x1 - x0),
    h: Math.abs(y1 - y0),
  };
}

export function boxesIntersect(a: Rect, b: Rect): boolean {
  return a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
}

/** Double-click: toggle exactly one id in or out of the selection. */
export function toggleSelection(current: string[], id: string): string[] {
  return current.includes(id) ? current.filter((x) => x !== id) : [...current, id];
}

/** All component ids whose layout boxes intersect the rectangle. */
export function rectIntersection(layout: Layout, rect: Rect): string[] {
  return Object.keys(layout)
    .filter((id) => boxesIntersect(layout[id]!, rect))
    .sort();
}

/** Drag-rectangle adds every intersected id (existing selection kept). */
export function dragSelect(current: string[], layout: Layout, rect: Rect): string[] {
  const out = [...current];
  for (const id of rectIntersection(layout, rect)) {
    if (!out.includes(id)) out.push(id);
  }
  return out;
}
