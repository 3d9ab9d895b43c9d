// Console state. All belief-space facts come from the service; this layer
// only tracks what is displayed and validates the revision dialog with the
// same coverage rule the server enforces.

import { indicesOfSets, selectionCovers, uncoveredIndices } from "./coverage.js";
import type {
  Badge,
  BeliefRow,
  RevisionResponse,
  RevisionView,
  SessionEvent,
} from "./types.js";

export class RevisionDialog {
  readonly selected = new Set<string>();
  /** Set indices the server reported uncovered on a forced submission. */
  serverRejected: number[] = [];

  constructor(readonly view: RevisionView) {}

  toggle(wff: string): void {
    if (this.selected.has(wff)) {
      this.selected.delete(wff);
    } else {
      this.selected.add(wff);
    }
    this.serverRejected = [];
  }

  /** Mirrors the server: every inconsistent set must lose a member. */
  submitEnabled(): boolean {
    return selectionCovers(this.view.sets, this.selected);
  }

  /** Live validation: indices of sets the current selection leaves whole. */
  uncovered(): number[] {
    return uncoveredIndices(this.view.sets, this.selected);
  }

  /** Recommended culprits are highlighted, never pre-checked. */
  recommended(wff: string): boolean {
    return this.view.cl.includes(wff);
  }

  applyServerRejection(reportedSets: string[][]): void {
    this.serverRejected = indicesOfSets(this.view.sets, reportedSets);
  }
}

const BADGE_KEYS: Array<[keyof RevisionView & ("lb" | "mc" | "fs" | "cl"), Badge]> = [
  ["lb", "LB"],
  ["mc", "MC"],
  ["fs", "FS"],
  ["cl", "CL"],
];

export class ConsoleState {
  feed: SessionEvent[] = [];
  beliefs: BeliefRow[] = [];
  revision: RevisionView | null = null;
  dialog: RevisionDialog | null = null;
  mode: "auto" | "manual" = "manual";
  busy = false;

  appendEvents(events: SessionEvent[]): void {
    this.feed.push(...events);
  }

  setBeliefs(rows: BeliefRow[]): void {
    this.beliefs = rows;
  }

  setRevision(response: RevisionResponse): void {
    if (!response.pending) {
      this.revision = null;
      this.dialog = null;
      return;
    }
    const unchanged =
      this.revision !== null &&
      JSON.stringify(this.revision) === JSON.stringify(response);
    this.revision = response;
    if (!unchanged || this.dialog === null) {
      this.dialog = new RevisionDialog(response);
    }
  }

  /** Badges are present only while a revision is pending. */
  badges(wff: string): Badge[] {
    if (!this.revision) {
      return [];
    }
    const out: Badge[] = [];
    for (const [key, badge] of BADGE_KEYS) {
      if (this.revision[key].includes(wff)) {
        out.push(badge);
      }
    }
    return out;
  }
}

/** Split pasted snapshot text into replayable command lines. */
export function snapshotCommands(text: string): string[] {
  const lines = text
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  if (lines.length > 0 && /^snebr-snapshot\b/.test(lines[0])) {
    lines.shift();
  }
  return lines;
}
