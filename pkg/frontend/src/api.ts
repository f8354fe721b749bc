// HTTP client for the workbench service. The UI holds no authoritative
// state: every mutation is a plain request here and the truth comes back
// through the event stream.

import type { SchematicDoc, StateSnapshot } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

async function parseOrThrow(response: Response): Promise<any> {
  if (response.ok) {
    return response.json();
  }
  let code = `Http${response.status}`;
  let detail = response.statusText;
  try {
    const body = await response.json();
    code = body.error ?? code;
    detail = body.detail ?? detail;
  } catch {
    // non-JSON error body: keep the HTTP status text
  }
  throw new ApiError(response.status, code, detail);
}

export class BenchApi {
  constructor(public base: string = "") {}

  private post(path: string, body?: unknown, contentType = "application/json"): Promise<any> {
    return fetch(this.base + path, {
      method: "POST",
      headers: body === undefined ? {} : { "content-type": contentType },
      body:
        body === undefined
          ? undefined
          : typeof body === "string"
            ? body
            : JSON.stringify(body),
    }).then(parseOrThrow);
  }

  createSession(): Promise<{ session_id: string; log_path: string }> {
    return this.post("/session");
  }

  state(sid: string): Promise<StateSnapshot> {
    return fetch(`${this.base}/session/${sid}/state`).then(parseOrThrow);
  }

  schematic(sid: string): Promise<SchematicDoc> {
    return fetch(`${this.base}/session/${sid}/schematic.json`).then(parseOrThrow);
  }

  setMode(sid: string, mode: "ask" | "test"): Promise<{ mode: string }> {
    return this.post(`/session/${sid}/mode`, { mode });
  }

  syncSchematic(sid: string, xml: string): Promise<{ revision: number }> {
    return this.post(`/session/${sid}/schematic`, xml, "application/xml");
  }

  postContext(sid: string, ids: string[]): Promise<{ selected: string[] }> {
    return this.post(`/session/${sid}/context`, { ids });
  }

  query(sid: string, text: string, contextIds?: string[]): Promise<any> {
    const body: Record<string, unknown> = { text };
    if (contextIds) body.context_ids = contextIds;
    return this.post(`/session/${sid}/query`, body);
  }

  highlightComponent(sid: string, componentId: string): Promise<{ rows: number[] }> {
    return this.post(`/session/${sid}/highlight`, { component_id: componentId });
  }

  board(sid: string, command: Record<string, unknown>): Promise<any> {
    return this.post(`/session/${sid}/board`, command);
  }

  stopPin(sid: string, pin: string): Promise<any> {
    return this.post(`/session/${sid}/stop`, { pin });
  }

  testAction(
    testId: string,
    action: "highlight" | "run" | "submit" | "interpret",
    observation?: string,
  ): Promise<any> {
    const body = action === "submit" && observation !== undefined ? { observation } : undefined;
    return this.post(`/tests/${testId}/${action}`, body);
  }

  suggestionAction(suggestionId: string, action: "highlight" | "complete"): Promise<any> {
    return this.post(`/suggestions/${suggestionId}/${action}`);
  }

  eventsUrl(sid: string, after: number): string {
    return `${this.base}/session/${sid}/events?after=${after}&follow=true`;
  }
}
