// Record folding: UI state is a pure function of snapshot + event stream.

import { describe, expect, it } from "vitest";

import { BenchStore } from "../src/store.js";
import type { LogRecord } from "../src/types.js";

function record(seq: number, event: Record<string, unknown>): LogRecord {
  return { seq, at: seq, event } as LogRecord;
}

function foldAll(records: LogRecord[]): BenchStore {
  const store = new BenchStore();
  for (const r of records) store.fold(r);
  return store;
}

describe("BenchStore.fold", () => {
  it("tracks status badge and history", () => {
    const store = foldAll([
      record(1, { type: "status", kind: "thinking", reason: null }),
      record(2, { type: "status", kind: "adding_tests", reason: null }),
      record(3, { type: "status", kind: "responded", reason: null }),
    ]);
    expect(store.statusHistory).toEqual(["thinking", "adding_tests", "responded"]);
    expect(store.state.badge).toBe("responded");
  });

  it("folds artifacts through their lifecycle", () => {
    const artifact = {
      id: "t1", type: "test", test_kind: "voltage", title: "x", group_id: "g1",
      state: "created", spec: {}, result: null, verdict: null, interpretation: null,
    };
    const store = foldAll([
      record(1, {
        type: "artifact_created",
        artifact,
        group: { id: "g1", title: "Checks", test_ids: ["t1"] },
      }),
      record(2, {
        type: "artifact_state_changed",
        artifact_id: "t1",
        state: "result_captured",
        result: { type: "reading", value_mv: 2500, floating: false },
      }),
      record(3, {
        type: "artifact_state_changed",
        artifact_id: "t1",
        state: "submitted",
        verdict: "pass",
      }),
    ]);
    const test = store.state.artifacts["t1"]!;
    expect(test.state).toBe("submitted");
    expect((test as any).result.value_mv).toBe(2500);
    expect((test as any).verdict).toBe("pass");
    expect(store.state.groups["g1"]!.test_ids).toEqual(["t1"]);
  });

  it("ignores records at or below the snapshot seq", () => {
    const store = new BenchStore();
    store.state.lastSeq = 5;
    store.fold(record(4, { type: "mode_changed", mode: "test" }));
    expect(store.state.mode).toBe("ask");
    store.fold(record(6, { type: "mode_changed", mode: "test" }));
    expect(store.state.mode).toBe("test");
  });

  it("updates selection from developer context turns", () => {
    const store = foldAll([
      record(1, {
        type: "turn_appended",
        turn: {
          role: "developer",
          at: 0,
          content: { kind: "selected_components", ids: ["LED1"], components: [] },
        },
      }),
    ]);
    expect(store.state.selection).toEqual(["LED1"]);
  });

  it("mode and turns fold in stream order", () => {
    const store = foldAll([
      record(1, { type: "mode_changed", mode: "test" }),
      record(2, {
        type: "turn_appended",
        turn: { role: "user", content: "hi", at: 1 },
      }),
      record(3, { type: "device_command", frame: '{"cmd":"read","pin":"A0"}' }),
    ]);
    expect(store.state.mode).toBe("test");
    expect(store.state.turns).toHaveLength(1);
    expect(store.state.lastSeq).toBe(3);
  });
});
