// Bootstrap: create a session on load, wire the input panel, the mode
// toggle, snapshot import, and the revision dialog.

import { ApiClient, ApiError } from "./api.js";
import { renderBeliefs, renderDialog, renderFeed } from "./render.js";
import { ConsoleState, snapshotCommands } from "./state.js";

function baseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return (fromQuery ?? "http://127.0.0.1:8080").replace(/\/$/, "");
}

const state = new ConsoleState();
const client = new ApiClient(baseUrl());

const feedBox = document.getElementById("feed") as HTMLElement;
const beliefBox = document.getElementById("beliefs") as HTMLElement;
const dialogBox = document.getElementById("dialog") as HTMLElement;
const inputBox = document.getElementById("input") as HTMLInputElement;
const sendButton = document.getElementById("send") as HTMLButtonElement;
const modeToggle = document.getElementById("mode") as HTMLInputElement;
const statusLine = document.getElementById("status") as HTMLElement;
const importBox = document.getElementById("import-text") as HTMLTextAreaElement;
const importButton = document.getElementById("import") as HTMLButtonElement;

function paint(): void {
  renderFeed(feedBox, state);
  renderBeliefs(beliefBox, state);
  renderDialog(dialogBox, state.dialog, {
    onToggle(wff) {
      state.dialog?.toggle(wff);
      paint();
    },
    onSubmit: () => void submitRetractions(),
    onKeep: () => void submitKeep(),
  });
  inputBox.disabled = state.busy || state.revision !== null;
  sendButton.disabled = inputBox.disabled;
  statusLine.textContent = state.revision
    ? "revision pending - answer in the dialog"
    : state.busy
      ? "working..."
      : `session ${client.sessionId ?? "-"} (${state.mode} mode)`;
}

async function refresh(): Promise<void> {
  state.setBeliefs(await client.getBeliefs());
  state.setRevision(await client.getRevision());
}

async function perform(action: () => Promise<void>): Promise<void> {
  if (state.busy) {
    return;
  }
  state.busy = true;
  paint();
  try {
    await action();
  } catch (error) {
    state.appendEvents([
      { type: "error", message: error instanceof Error ? error.message : String(error) },
    ]);
  } finally {
    state.busy = false;
    paint();
  }
}

async function sendLine(text: string): Promise<void> {
  const line = text.trim();
  if (!line) {
    return;
  }
  await perform(async () => {
    try {
      state.appendEvents([{ type: "info", message: `> ${line}` }]);
      state.appendEvents(await client.submitInput(line));
    } catch (error) {
      if (error instanceof ApiError) {
        state.appendEvents([{ type: "error", message: error.message, ...error.body }]);
      } else {
        throw error;
      }
    }
    await refresh();
  });
  inputBox.value = "";
  inputBox.focus();
}

async function submitRetractions(): Promise<void> {
  const dialog = state.dialog;
  if (!dialog) {
    return;
  }
  await perform(async () => {
    try {
      state.appendEvents(await client.submitRetractions([...dialog.selected].sort()));
    } catch (error) {
      if (error instanceof ApiError && Array.isArray(error.body.uncovered)) {
        dialog.applyServerRejection(error.body.uncovered as string[][]);
        state.appendEvents([{ type: "error", message: error.message }]);
        return;
      }
      throw error;
    }
    await refresh();
  });
}

async function submitKeep(): Promise<void> {
  await perform(async () => {
    state.appendEvents(await client.submitKeep());
    await refresh();
  });
}

sendButton.addEventListener("click", () => void sendLine(inputBox.value));
inputBox.addEventListener("keydown", (event) => {
  if (event.key === "Enter") {
    void sendLine(inputBox.value);
  }
});

modeToggle.addEventListener("change", () => {
  void perform(async () => {
    const mode = modeToggle.checked ? "auto" : "manual";
    await client.setMode(mode);
    state.mode = mode;
  });
});

importButton.addEventListener("click", () => {
  const commands = snapshotCommands(importBox.value);
  importBox.value = "";
  void perform(async () => {
    for (const command of commands) {
      state.appendEvents([{ type: "info", message: `> ${command}` }]);
      state.appendEvents(await client.submitInput(command));
    }
    await refresh();
  });
});

void perform(async () => {
  await client.createSession();
  await refresh();
});
