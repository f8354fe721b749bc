// UI state store: the view of one session, derived entirely from a server
// state snapshot plus the event stream. Reconnecting mid-session rebuilds
// the same view because both inputs come from the same session log.

import { BenchApi } from "./api.js";
import { readEventStream } from "./sse.js";
import type {
  Artifact,
  LogRecord,
  SchematicDoc,
  StatusKind,
  StateSnapshot,
  TestGroup,
  Turn,
} from "./types.js";

export interface UiState {
  sessionId: string;
  mode: "ask" | "test";
  badge: StatusKind | "idle";
  turns: Turn[];
  schematicRevision: number;
  schematic: SchematicDoc;
  selection: string[];
  artifacts: Record<string, Artifact>;
  groups: Record<string, TestGroup>;
  lastSeq: number;
}

const EMPTY_SCHEMATIC: SchematicDoc = { components: [], nets: [], assignments: [] };

export class BenchStore {
  api: BenchApi;
  state: UiState;
  /** Every status kind seen, in stream order (drives badge assertions). */
  statusHistory: StatusKind[] = [];
  private listeners = new Set<(state: UiState) => void>();
  private abort?: AbortController;
  private streamDone?: Promise<void>;

  constructor(base = "") {
    this.api = new BenchApi(base);
    this.state = {
      sessionId: "",
      mode: "ask",
      badge: "idle",
      turns: [],
      schematicRevision: 0,
      schematic: EMPTY_SCHEMATIC,
      selection: [],
      artifacts: {},
      groups: {},
      lastSeq: 0,
    };
  }

  subscribe(fn: (state: UiState) => void): () => void {
    this.listeners.add(fn);
    return () => this.listeners.delete(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  // --- lifecycle -----------------------------------------------------

  async init(): Promise<void> {
    const { session_id } = await this.api.createSession();
    await this.attach(session_id);
  }

  /** Attach to an existing session: snapshot first, then live events. */
  async attach(sessionId: string): Promise<void> {
    const snapshot = await this.api.state(sessionId);
    this.loadSnapshot(snapshot);
    this.state.schematic = await this.api.schematic(sessionId);
    this.emit();
    this.abort = new AbortController();
    this.streamDone = readEventStream(
      this.api.eventsUrl(sessionId, this.state.lastSeq),
      (message) => this.fold(JSON.parse(message.data) as LogRecord),
      this.abort.signal,
    ).catch((err) => {
      if (!this.abort?.signal.aborted) throw err;
    });
  }

  dispose(): void {
    this.abort?.abort();
  }

  loadSnapshot(snapshot: StateSnapshot): void {
    this.state.sessionId = snapshot.session.session_id;
    this.state.mode = snapshot.session.mode;
    this.state.turns = [...snapshot.session.turns];
    this.state.schematicRevision = snapshot.session.schematic_revision;
    this.state.selection = snapshot.session.selected_context.map((e) => String(e.id));
    this.state.artifacts = { ...snapshot.artifacts };
    this.state.groups = { ...snapshot.groups };
    this.state.lastSeq = snapshot.last_seq;
  }

  // --- event folding ----------------------------------------------------

  fold(record: LogRecord): void {
    if (record.seq <= this.state.lastSeq) return; // already in the snapshot
    this.state.lastSeq = record.seq;
    const event = record.event;
    switch (event.type) {
      case "turn_appended": {
        const turn = event.turn as Turn;
        this.state.turns.push(turn);
        if (
          turn.role === "developer" &&
          typeof turn.content === "object" &&
          (turn.content as any).kind === "selected_components"
        ) {
          this.state.selection = ((turn.content as any).ids as string[]) ?? [];
        }
        break;
      }
      case "mode_changed":
        this.state.mode = event.mode as "ask" | "test";
        break;
      case "schematic_synced":
        this.state.schematicRevision = event.revision as number;
        void this.refreshSchematic();
        break;
      case "status": {
        const kind = event.kind as StatusKind;
        this.statusHistory.push(kind);
        this.state.badge = kind;
        break;
      }
      case "artifact_created": {
        const artifact = event.artifact as Artifact;
        this.state.artifacts[artifact.id] = artifact;
        const group = event.group as TestGroup | null;
        if (group) this.state.groups[group.id] = group;
        if (artifact.type === "test") {
          const owner = this.state.groups[artifact.group_id];
          if (owner && !owner.test_ids.includes(artifact.id)) {
            owner.test_ids.push(artifact.id);
          }
        }
        break;
      }
      case "artifact_state_changed": {
        const artifact = this.state.artifacts[event.artifact_id as string];
        if (!artifact) break;
        artifact.state = event.state as string;
        if (event.result != null && artifact.type === "test") artifact.result = event.result as any;
        if (event.verdict != null && artifact.type === "test") artifact.verdict = event.verdict as string;
        if (event.interpretation != null && artifact.type === "test") {
          artifact.interpretation = event.interpretation as string;
        }
        break;
      }
      case "device_command":
        break; // audit trail only
    }
    this.emit();
  }

  private async refreshSchematic(): Promise<void> {
    this.state.schematic = await this.api.schematic(this.state.sessionId);
    this.emit();
  }

  // --- user actions (all server-confirmed) ----------------------------------

  setMode(mode: "ask" | "test"): Promise<unknown> {
    return this.api.setMode(this.state.sessionId, mode);
  }

  syncSchematicXml(xml: string): Promise<unknown> {
    return this.api.syncSchematic(this.state.sessionId, xml);
  }

  select(ids: string[]): Promise<unknown> {
    // optimistic: the canvas reflects the gesture instantly, the server
    // confirmation arrives as a developer turn
    this.state.selection = ids;
    this.emit();
    return this.api.postContext(this.state.sessionId, ids);
  }

  sendQuery(text: string): Promise<unknown> {
    return this.api.query(this.state.sessionId, text, this.state.selection);
  }

  highlightComponent(componentId: string): Promise<unknown> {
    return this.api.highlightComponent(this.state.sessionId, componentId);
  }

  board(command: Record<string, unknown>): Promise<unknown> {
    return this.api.board(this.state.sessionId, command);
  }

  testAction(
    testId: string,
    action: "highlight" | "run" | "submit" | "interpret",
    observation?: string,
  ): Promise<unknown> {
    return this.api.testAction(testId, action, observation);
  }

  suggestionAction(id: string, action: "highlight" | "complete"): Promise<unknown> {
    return this.api.suggestionAction(id, action);
  }
}
