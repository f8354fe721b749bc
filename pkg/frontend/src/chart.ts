// Chart geometry as pure data: an SVG step path for sampled series and a
// single marker for one-shot readings. Views just drop this into the DOM.

import type { TestResult } from "./types.js";

export const MV_MAX = 5000;

export interface ChartModel {
  kind: "empty" | "series" | "reading";
  /** SVG path for the step line (series only). */
  path?: string;
  /** Sample dots in chart coordinates. */
  points?: Array<{ x: number; y: number }>;
  /** Marker for a single reading. */
  marker?: { x: number; y: number; label: string };
  xLabel: string;
  yLabel: string;
}

export function seriesPath(
  samples: Array<[number, number]>,
  width: number,
  height: number,
): { path: string; points: Array<{ x: number; y: number }> } {
  const tMax = Math.max(samples[samples.length - 1]?.[0] ?? 0, 1);
  const sx = (t: number) => (t / tMax) * width;
  const sy = (mv: number) => height - (mv / MV_MAX) * height;
  const points = samples.map(([t, mv]) => ({ x: sx(t), y: sy(mv) }));
  if (points.length === 0) return { path: "", points };
  let path = `M ${points[0]!.x} ${points[0]!.y}`;
  for (let i = 1; i < points.length; i++) {
    // hold the previous level until the next sample time, then step
    path += ` H ${points[i]!.x} V ${points[i]!.y}`;
  }
  return { path, points };
}

export function chartModel(result: TestResult | null, width = 360, height = 120): ChartModel {
  const labels = { xLabel: "t (ms)", yLabel: "mV" };
  if (result === null) return { kind: "empty", ...labels };
  if (result.type === "reading") {
    const y = height - (result.value_mv / MV_MAX) * height;
    return {
      kind: "reading",
      marker: { x: width / 2, y, label: `${result.value_mv} mV` },
      ...labels,
    };
  }
  if (result.type === "series") {
    if (result.samples.length === 0) return { kind: "empty", ...labels };
    return { kind: "series", ...seriesPath(result.samples, width, height), ...labels };
  }
  return { kind: "empty", ...labels };
}
