// Chat panel: user/assistant turns rendered, developer/tool turns collapsed
// behind a details fold, mode toggle, status badge, and per-message replay
// buttons for highlight actions.

import type { Turn } from "../types.js";
import type { UiState } from "../store.js";

export interface ChatCallbacks {
  onSend: (text: string) => void;
  onModeToggle: (mode: "ask" | "test") => void;
  onReplayHighlight: (rows: number[]) => void;
}

function describeCollapsed(turn: Turn): string {
  if (typeof turn.content === "string") return turn.content.slice(0, 80);
  const content = turn.content as any;
  switch (content.kind) {
    case "mode_change":
      return `mode set to ${content.mode}`;
    case "schematic":
      return `schematic synced (revision ${content.revision})`;
    case "selected_components":
      return `context: ${(content.ids ?? []).join(", ") || "cleared"}`;
    case "test_result":
      return `result for ${content.test_id}: ${content.verdict}`;
    default:
      return content.tool ? `tool ${content.tool}` : JSON.stringify(content).slice(0, 80);
  }
}

export class ChatView {
  readonly badge: HTMLSpanElement;
  readonly toggle: HTMLButtonElement;
  readonly input: HTMLInputElement;
  readonly send: HTMLButtonElement;
  private log: HTMLDivElement;

  constructor(
    root: HTMLElement,
    private callbacks: ChatCallbacks,
  ) {
    const header = document.createElement("div");
    header.className = "chat-header";
    this.badge = document.createElement("span");
    this.badge.className = "badge idle";
    this.badge.textContent = "idle";
    this.toggle = document.createElement("button");
    this.toggle.className = "mode-toggle";
    header.append(this.toggle, this.badge);

    this.log = document.createElement("div");
    this.log.className = "chat-log";

    const composer = document.createElement("form");
    composer.className = "composer";
    this.input = document.createElement("input");
    this.input.placeholder = "Ask about your circuit…";
    this.send = document.createElement("button");
    this.send.textContent = "Send";
    this.send.disabled = true;
    this.input.addEventListener("input", () => {
      this.send.disabled = this.input.value.trim() === "";
    });
    composer.addEventListener("submit", (e) => {
      e.preventDefault();
      const text = this.input.value.trim();
      if (!text) return;
      this.input.value = "";
      this.send.disabled = true;
      this.callbacks.onSend(text);
    });
    composer.append(this.input, this.send);

    root.append(header, this.log, composer);
  }

  update(state: UiState): void {
    this.badge.textContent = state.badge;
    this.badge.className = `badge ${state.badge}`;
    this.toggle.textContent = state.mode === "ask" ? "Ask mode" : "Test mode";
    this.toggle.onclick = () =>
      this.callbacks.onModeToggle(state.mode === "ask" ? "test" : "ask");

    this.log.replaceChildren();
    for (const turn of state.turns) {
      if (turn.role === "user" || turn.role === "assistant") {
        const bubble = document.createElement("div");
        bubble.className = `turn ${turn.role}`;
        bubble.textContent =
          typeof turn.content === "string" ? turn.content : JSON.stringify(turn.content);
        this.log.appendChild(bubble);
        continue;
      }
      const fold = document.createElement("details");
      fold.className = `turn collapsed ${turn.role}`;
      const summary = document.createElement("summary");
      summary.textContent = `${turn.role}: ${describeCollapsed(turn)}`;
      fold.appendChild(summary);
      const body = document.createElement("pre");
      body.textContent =
        typeof turn.content === "string" ? turn.content : JSON.stringify(turn.content, null, 2);
      fold.appendChild(body);
      // a highlight tool call gets a replay button next to it
      if (
        turn.role === "tool" &&
        typeof turn.content === "object" &&
        (turn.content as any).tool === "highlight_rows" &&
        (turn.content as any).ok
      ) {
        const rows = (turn.content as any).result.rows as number[];
        const replay = document.createElement("button");
        replay.className = "blink-replay";
        replay.textContent = `Blink rows ${rows.join(", ")}`;
        replay.onclick = () => this.callbacks.onReplayHighlight(rows);
        fold.appendChild(replay);
      }
      this.log.appendChild(fold);
    }
    this.log.scrollTop = this.log.scrollHeight;
  }
}
