// Wire shapes shared with the workbench service.

export interface Turn {
  role: "system" | "developer" | "user" | "assistant" | "tool";
  content: string | Record<string, unknown>;
  at: number;
}

export interface LogEvent {
  type:
    | "turn_appended"
    | "mode_changed"
    | "schematic_synced"
    | "status"
    | "artifact_created"
    | "artifact_state_changed"
    | "device_command";
  [key: string]: unknown;
}

export interface LogRecord {
  seq: number;
  at: number;
  event: LogEvent;
}

export type StatusKind = "thinking" | "adding_tests" | "responded" | "failed";

export interface ReadingResult {
  type: "reading";
  value_mv: number;
  floating: boolean;
}

export interface SeriesResult {
  type: "series";
  pin: string;
  interval_ms: number;
  samples: Array<[number, number]>; // [t_ms, value_mv]
}

export interface ObservationResult {
  type: "observation";
  text: string;
}

export type TestResult = ReadingResult | SeriesResult | ObservationResult;

export interface TestArtifact {
  id: string;
  type: "test";
  test_kind: "voltage" | "signal" | "inspection";
  title: string;
  group_id: string;
  state: string;
  spec: Record<string, unknown>;
  result: TestResult | null;
  verdict: string | null;
  interpretation: string | null;
}

export interface SuggestionArtifact {
  id: string;
  type: "suggestion";
  suggestion_kind: "connection" | "component";
  state: string;
  description: string;
  spec: Record<string, unknown>;
}

export type Artifact = TestArtifact | SuggestionArtifact;

export interface TestGroup {
  id: string;
  title: string;
  test_ids: string[];
}

export interface SessionState {
  session_id: string;
  mode: "ask" | "test";
  turns: Turn[];
  schematic_yaml: string | null;
  schematic_revision: number;
  selected_context: Array<Record<string, unknown>>;
  pending_artifacts: string[];
}

export interface StateSnapshot {
  session: SessionState;
  artifacts: Record<string, Artifact>;
  groups: Record<string, TestGroup>;
  last_seq: number;
}

export interface SchematicComponent {
  id: string;
  label: string;
  kind: string;
  value?: string;
  pins: string[];
}

export interface SchematicDoc {
  components: SchematicComponent[];
  nets: Array<{ id: string; members: Array<{ component: string; pin: string }>; rows: number[] }>;
  assignments: Array<{ component: string; pin: string; row: number }>;
}

export interface LayoutBox {
  x: number;
  y: number;
  w: number;
  h: number;
}

export type Layout = Record<string, LayoutBox>;
