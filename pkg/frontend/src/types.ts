// Wire types mirroring the session service's JSON bodies.

export interface WffRef {
  wff: string;
  text: string;
}

export interface SessionEvent {
  type: string;
  [key: string]: unknown;
}

export interface BeliefRow {
  wff: string;
  text: string;
  hypothesis: boolean;
  believed: boolean;
  source: string | null;
  origin_sets: string[][];
}

/** Pending revision as served by GET /sessions/{id}/revision. */
export interface RevisionView {
  pending: true;
  mode: string;
  contradictands: WffRef[];
  sets: string[][];
  lb: string[];
  mc: string[];
  fs: string[];
  cl: string[];
}

export type RevisionResponse = RevisionView | { pending: false };

export type Badge = "LB" | "MC" | "FS" | "CL";

export interface CoverageRejection {
  error: string;
  uncovered: string[][];
}
