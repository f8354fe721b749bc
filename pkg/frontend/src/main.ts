// Boot: one store, three views, one event stream.

import { BenchStore } from "./store.js";
import { ChatView } from "./views/chat.js";
import { SchematicView } from "./views/schematic.js";
import { TestManagerView } from "./views/tests.js";
import type { Layout } from "./types.js";

async function boot(): Promise<void> {
  const store = new BenchStore("");
  const layout: Layout = await fetch("./layout.json").then((r) => r.json());

  const schematicRoot = document.getElementById("schematic")!;
  const chatRoot = document.getElementById("chat")!;
  const testsRoot = document.getElementById("tests")!;

  const schematic = new SchematicView(schematicRoot, {
    onSelectionChange: (ids) => void store.select(ids),
    onHighlight: (id) => void store.highlightComponent(id),
  });
  const chat = new ChatView(chatRoot, {
    onSend: (text) => void store.sendQuery(text),
    onModeToggle: (mode) => void store.setMode(mode),
    onReplayHighlight: (rows) =>
      rows.forEach((row) =>
        void store.board({ cmd: "led", row, pattern: "blink" }),
      ),
  });
  const tests = new TestManagerView(testsRoot, {
    onAction: (id, action, observation) => void store.testAction(id, action, observation),
    onStop: (pin) => void store.api.stopPin(store.state.sessionId, pin),
    onSuggestion: (id, action) => void store.suggestionAction(id, action),
  });

  store.subscribe((state) => {
    schematic.update(state.schematic, layout, state.selection);
    chat.update(state);
    tests.update(state);
  });

  const upload = document.getElementById("schematic-file") as HTMLInputElement;
  upload.addEventListener("change", async () => {
    const file = upload.files?.[0];
    if (file) await store.syncSchematicXml(await file.text());
  });

  await store.init();
  document.getElementById("session-id")!.textContent = store.state.sessionId;
}

void boot();
