// @vitest-environment jsdom
//
// Live flow against the real workbench service: the store stays attached to
// one event stream while the scenario runs; the badge walks thinking ->
// adding_tests -> responded, the created test shows up, runs, and charts,
// all without rebuilding the store (no page reload).

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { BenchStore } from "../src/store.js";
import { allowedActions, renderChart } from "../src/views/tests.js";
import type { TestArtifact } from "../src/types.js";

const REPO_ROOT = resolve(process.cwd(), "..");
const PORT = 8971;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitFor(
  predicate: () => boolean,
  what: string,
  timeoutMs = 15000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (predicate()) return;
    await new Promise((r) => setTimeout(r, 25));
  }
  throw new Error(`timed out waiting for ${what}`);
}

beforeAll(async () => {
  const dir = mkdtempSync(join(tmpdir(), "bench-ui-"));
  const configPath = join(dir, "config.yaml");
  writeFileSync(
    configPath,
    [
      "device:",
      `  sim: {fixture: ${join(REPO_ROOT, "fixtures", "divider-half.yaml")}}`,
      "agent:",
      `  scripted: {tape: ${join(REPO_ROOT, "fixtures", "tape-demo.yaml")}}`,
      `http: {host: 127.0.0.1, port: ${PORT}}`,
      `log_dir: ${join(dir, "logs")}`,
      "",
    ].join("\n"),
  );
  server = spawn("protobench", ["serve", "--config", configPath], {
    cwd: REPO_ROOT,
    stdio: "ignore",
  });
  const deadline = Date.now() + 30000;
  for (;;) {
    try {
      const res = await fetch(`${BASE}/healthz`);
      if (res.ok) break;
    } catch {
      // server not up yet
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await new Promise((r) => setTimeout(r, 200));
  }
});

afterAll(() => {
  server?.kill();
});

describe("live end-to-end flow with the UI attached", () => {
  it("walks the voltage-test scenario without a reload", async () => {
    const store = new BenchStore(BASE);
    await store.init();
    expect(store.state.sessionId).not.toBe("");

    const xml = readFileSync(
      join(REPO_ROOT, "fixtures", "loveometer-min.xml"),
      "utf-8",
    );
    await store.syncSchematicXml(xml);
    await waitFor(
      () => store.state.schematic.components.length === 3,
      "schematic components",
    );

    await store.setMode("test");
    await waitFor(() => store.state.mode === "test", "test mode");

    await store.sendQuery("Check the LED node");
    await waitFor(
      () => store.statusHistory.includes("responded"),
      "query to complete",
    );
    const firstQuery = store.statusHistory;
    expect(firstQuery.indexOf("thinking")).toBeGreaterThanOrEqual(0);
    expect(firstQuery.indexOf("thinking")).toBeLessThan(firstQuery.indexOf("adding_tests"));
    expect(firstQuery.indexOf("adding_tests")).toBeLessThan(firstQuery.indexOf("responded"));

    // the test appeared through the event stream, no refetch
    await waitFor(
      () => Object.values(store.state.artifacts).some((a) => a.type === "test"),
      "test artifact",
    );
    const test = Object.values(store.state.artifacts).find(
      (a): a is TestArtifact => a.type === "test",
    )!;
    expect(test.state).toBe("created");
    expect(allowedActions(test).has("run")).toBe(true);

    await store.testAction(test.id, "highlight");
    await store.board({ cmd: "out_v", pin: "D0", mv: 5000 });
    await store.testAction(test.id, "run");
    await waitFor(() => test.state === "result_captured", "result captured");
    expect(test.result).toEqual({ type: "reading", value_mv: 2500, floating: false });

    const chart = renderChart(test);
    expect(chart.dataset.kind).toBe("reading");
    expect(chart.querySelector("circle")).not.toBeNull();
    expect(chart.textContent).toContain("2500 mV");

    await store.testAction(test.id, "submit");
    await waitFor(() => test.verdict === "pass", "pass verdict");
    await store.testAction(test.id, "interpret");
    await waitFor(() => test.state === "interpreted", "interpretation");
    expect(test.interpretation).toContain("2300-2700");

    // a fresh attach reconciles to the same view (reconnect invariant)
    const rejoined = new BenchStore(BASE);
    await rejoined.attach(store.state.sessionId);
    await waitFor(
      () => rejoined.state.lastSeq >= store.state.lastSeq,
      "reconnect catch-up",
    );
    expect(rejoined.state.mode).toBe(store.state.mode);
    expect(rejoined.state.artifacts).toEqual(store.state.artifacts);
    expect(rejoined.state.turns.length).toBe(store.state.turns.length);

    rejoined.dispose();
    store.dispose();
  });

  it("selection posts context ids that reach the session state", async () => {
    const store = new BenchStore(BASE);
    await store.init();
    const xml = readFileSync(
      join(REPO_ROOT, "fixtures", "loveometer-min.xml"),
      "utf-8",
    );
    await store.syncSchematicXml(xml);
    await store.select(["LED1"]);
    const state = await store.api.state(store.state.sessionId);
    expect(state.session.selected_context.map((e) => e.id)).toEqual(["LED1"]);
    store.dispose();
  });
});
