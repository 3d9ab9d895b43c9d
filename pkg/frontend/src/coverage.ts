// Coverage rule shared with the server: a retraction selection is valid
// only if every inconsistent set loses at least one member.

export function setCovered(set: string[], selected: ReadonlySet<string>): boolean {
  return set.some((wff) => selected.has(wff));
}

export function selectionCovers(
  sets: string[][],
  selected: ReadonlySet<string>,
): boolean {
  return selected.size > 0 && sets.every((set) => setCovered(set, selected));
}

/** Indices of the sets the selection leaves untouched. */
export function uncoveredIndices(
  sets: string[][],
  selected: ReadonlySet<string>,
): number[] {
  const missed: number[] = [];
  sets.forEach((set, i) => {
    if (!setCovered(set, selected)) {
      missed.push(i);
    }
  });
  return missed;
}

/** Match the server's uncovered-set report back to display indices. */
export function indicesOfSets(sets: string[][], reported: string[][]): number[] {
  const keys = new Set(reported.map((s) => [...s].sort().join(" ")));
  const matched: number[] = [];
  sets.forEach((set, i) => {
    if (keys.has([...set].sort().join(" "))) {
      matched.push(i);
    }
  });
  return matched;
}
