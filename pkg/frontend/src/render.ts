// DOM rendering. Deliberately thin: state decides, this paints.
// All user-supplied strings go through textContent, never innerHTML.

import type { ConsoleState, RevisionDialog } from "./state.js";
import type { SessionEvent } from "./types.js";

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export function eventLines(event: SessionEvent): string[] {
  const p = event as Record<string, any>;
  switch (event.type) {
    case "assert":
      return [`${p.wff}: ${p.text}${p.new ? "" : "  (already asserted)"}`];
    case "derive":
      return [`derived ${p.wff}: ${p.text}  <${p.origin_set.join(",")}>`];
    case "contradiction":
      return [
        "Contradiction between the newly derived proposition:",
        `    ${p.new.wff}: ${p.new.text}`,
        "and the previously existing proposition:",
        `    ${p.existing.wff}: ${p.existing.text}`,
      ];
    case "lists":
      return [
        `inconsistent sets: ${p.sets.map((s: string[]) => `(${s.join(" ")})`).join("  ")}`,
        `least believed: (${p.lb.join(" ")})   most common: (${p.mc.join(" ")})`,
        `fewest supported: (${p.fs.join(" ")})   culprits: (${p.cl.join(" ")})`,
      ];
    case "auto_retract":
      return [
        `I will remove the following node: ${p.wff}: ${p.text}`,
        ...(p.casualties.length
          ? [`    no longer believed: ${p.casualties.join(" ")}`]
          : []),
      ];
    case "retract":
      return [
        `retracted ${p.wff}: ${p.text}`,
        ...(p.casualties.length
          ? [`    no longer believed: ${p.casualties.join(" ")}`]
          : []),
      ];
    case "pending_revision":
      return ["Belief revision required: cover every inconsistent set or keep."];
    case "answer":
      return p.result === "yes"
        ? [
            `yes: ${p.wff}: ${p.text}`,
            `    origin sets: ${p.origin_sets.map((s: string[]) => `(${s.join(" ")})`).join("  ")}`,
          ]
        : [`unknown: ${p.text}`];
    case "info":
      return [p.message];
    case "error":
      return [`error: ${p.message}`];
    default:
      return [JSON.stringify(event)];
  }
}

export function renderFeed(container: HTMLElement, state: ConsoleState): void {
  container.replaceChildren();
  for (const event of state.feed) {
    const block = el("div", `event event-${event.type}`);
    for (const line of eventLines(event)) {
      block.appendChild(el("div", "event-line", line));
    }
    container.appendChild(block);
  }
  container.scrollTop = container.scrollHeight;
}

export function renderBeliefs(container: HTMLElement, state: ConsoleState): void {
  container.replaceChildren();
  const table = el("table", "beliefs");
  const head = el("tr");
  for (const title of ["wff", "formula", "flags", "source", "origin sets", "lists"]) {
    head.appendChild(el("th", undefined, title));
  }
  table.appendChild(head);
  for (const row of state.beliefs) {
    const tr = el("tr", row.believed ? "believed" : "unasserted");
    tr.appendChild(el("td", "mono", row.wff));
    tr.appendChild(el("td", "mono", row.text));
    const flags = [
      row.hypothesis ? "hyp" : "",
      row.believed ? "believed" : "unasserted",
    ]
      .filter(Boolean)
      .join(", ");
    tr.appendChild(el("td", undefined, flags));
    tr.appendChild(el("td", undefined, row.source ?? ""));
    tr.appendChild(
      el("td", "mono", row.origin_sets.map((s) => `(${s.join(" ")})`).join("  ")),
    );
    const badges = el("td");
    for (const badge of state.badges(row.wff)) {
      badges.appendChild(el("span", `badge badge-${badge.toLowerCase()}`, badge));
    }
    tr.appendChild(badges);
    table.appendChild(tr);
  }
  container.appendChild(table);
}

export interface DialogHandlers {
  onToggle(wff: string): void;
  onSubmit(): void;
  onKeep(): void;
}

export function renderDialog(
  container: HTMLElement,
  dialog: RevisionDialog | null,
  handlers: DialogHandlers,
): void {
  container.replaceChildren();
  if (!dialog) {
    container.hidden = true;
    return;
  }
  container.hidden = false;
  const view = dialog.view;
  container.appendChild(el("h2", undefined, "Belief revision"));
  const intro = `${view.contradictands[0].wff}: ${view.contradictands[0].text}   contradicts   ${view.contradictands[1].wff}: ${view.contradictands[1].text}`;
  container.appendChild(el("div", "mono contradictands", intro));
  container.appendChild(
    el(
      "p",
      undefined,
      "Check at least one hypothesis in every inconsistent set, or keep the contradiction.",
    ),
  );
  const live = dialog.uncovered();
  view.sets.forEach((set, index) => {
    const rejected = dialog.serverRejected.includes(index);
    const uncovered = live.includes(index);
    const box = el(
      "fieldset",
      `iset${uncovered ? " uncovered" : ""}${rejected ? " rejected" : ""}`,
    );
    box.appendChild(el("legend", undefined, `set ${index + 1}`));
    for (const wff of set) {
      const label = el("label", "mono");
      const check = document.createElement("input");
      check.type = "checkbox";
      check.checked = dialog.selected.has(wff);
      check.addEventListener("change", () => handlers.onToggle(wff));
      label.appendChild(check);
      label.appendChild(
        el(
          "span",
          dialog.recommended(wff) ? "recommended" : undefined,
          wff + (dialog.recommended(wff) ? "  (recommended)" : ""),
        ),
      );
      box.appendChild(label);
    }
    if (rejected) {
      box.appendChild(
        el("div", "reject-note", "server: this set is still uncovered"),
      );
    }
    container.appendChild(box);
  });
  const lists = el(
    "div",
    "mono lists",
    `LB (${view.lb.join(" ")})  MC (${view.mc.join(" ")})  FS (${view.fs.join(" ")})  CL (${view.cl.join(" ")})`,
  );
  container.appendChild(lists);
  const submit = document.createElement("button");
  submit.id = "revision-submit";
  submit.textContent = "Retract selected";
  submit.disabled = !dialog.submitEnabled();
  submit.addEventListener("click", handlers.onSubmit);
  const keep = document.createElement("button");
  keep.id = "revision-keep";
  keep.textContent = "Keep inconsistent";
  keep.addEventListener("click", handlers.onKeep);
  const row = el("div", "dialog-actions");
  row.appendChild(submit);
  row.appendChild(keep);
  container.appendChild(row);
}
