"""Contradiction resolution: inconsistent sets, advisory lists, culprits.

When two believed propositions conflict, every union of one active origin
set from each side is a minimally-inconsistent hypothesis set: remove any
one member and that route to the conflict is gone.  Three lists are
computed over the union of those sets:

    least_believed    credibility-minimal hypotheses
    most_common       hypotheses shared by the most inconsistent sets
    fewest_supporting hypotheses whose retraction loses the fewest beliefs

The culprit list is the smallest non-empty candidate among the seven
intersection combinations, in fixed priority order.  In auto mode a
singleton culprit is retracted without asking; anything else goes back to
the user, who must either cover every inconsistent set with retractions or
explicitly keep the belief space inconsistent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .belief import BeliefBase, Context, RetractionReport
from .credibility import CredibilityView
from .inference import ContradictionReport
from .terms import TermStore

AUTO_RESOLVED = "auto-resolved"
AWAITING_USER = "awaiting-user"
KEPT_INCONSISTENT = "kept-inconsistent"


class CoverageError(ValueError):
    """The chosen retractions leave some inconsistent set untouched."""

    def __init__(self, uncovered: list):
        self.uncovered = uncovered
        super().__init__(
            f"{len(uncovered)} inconsistent set(s) have no retracted member"
        )


@dataclass
class RevisionPass:
    """One round of list computation, for transcripts."""

    sets: list
    least_believed: list
    most_common: list
    fewest_supporting: list
    culprits: list
    retraction: Optional[RetractionReport] = None


@dataclass
class RevisionState:
    contradictands: tuple
    sets: list                      # inconsistent sets still standing
    mode: str
    status: str
    passes: list = field(default_factory=list)
    retracted: list = field(default_factory=list)

    @property
    def least_believed(self) -> list:
        return self.passes[-1].least_believed if self.passes else []

    @property
    def most_common(self) -> list:
        return self.passes[-1].most_common if self.passes else []

    @property
    def fewest_supporting(self) -> list:
        return self.passes[-1].fewest_supporting if self.passes else []

    @property
    def culprits(self) -> list:
        return self.passes[-1].culprits if self.passes else []


def build_inconsistent_sets(
    base: BeliefBase, ctx: Context, p: int, np: int
) -> list:
    """All unions of one active origin set per contradictand, deduplicated.

    Unions are never minimized against each other; each one is a distinct
    route to the conflict."""
    p_sets = base.active_supports(ctx, p)
    np_sets = base.active_supports(ctx, np)
    if not p_sets or not np_sets:
        raise RuntimeError(
            "contradictand without an active origin set; support records corrupt"
        )
    unions = {a | b for a in p_sets for b in np_sets}
    return sorted(unions, key=sorted)


def compute_lists(
    base: BeliefBase, credibility: CredibilityView, ctx: Context, sets: list
) -> tuple:
    universe = sorted(frozenset().union(*sets))
    least = [
        h
        for h in universe
        if not any(h2 != h and credibility.less_credible(h2, h) for h2 in universe)
    ]
    commonality = {h: sum(1 for s in sets if h in s) for h in universe}
    top = max(commonality.values())
    most = [h for h in universe if commonality[h] == top]
    casualties = {h: base.casualty_count(ctx, h) for h in universe}
    fewest_loss = min(casualties.values())
    fewest = [h for h in universe if casualties[h] == fewest_loss]
    return least, most, fewest


def culprit_list(least: list, most: list, fewest: list) -> list:
    """Smallest non-empty of the seven candidates, earlier wins ties."""
    lb, mc, fs = set(least), set(most), set(fewest)
    candidates = [lb & mc & fs, lb & mc, lb & fs, mc & fs, lb, mc, fs]
    best: Optional[set] = None
    for candidate in candidates:
        if candidate and (best is None or len(candidate) < len(best)):
            best = candidate
    return sorted(best) if best else []


def revise(
    store: TermStore,
    base: BeliefBase,
    ctx: Context,
    report: ContradictionReport,
) -> RevisionState:
    """Run revision passes until resolved or user input is required.

    Each auto pass retracts the singleton culprit and re-checks: any
    inconsistent set still fully inside the context keeps the episode
    alive.  Manual mode, or a culprit list with several members, hands the
    surviving sets to the user."""
    state = RevisionState(
        contradictands=(report.new, report.existing),
        sets=build_inconsistent_sets(base, ctx, report.new, report.existing),
        mode=ctx.br_mode,
        status=AWAITING_USER,
    )
    while True:
        survivors = [s for s in state.sets if s <= ctx.hypotheses.keys()]
        state.sets = survivors
        if not survivors:
            state.status = AUTO_RESOLVED
            return state
        credibility = CredibilityView(store, base, ctx)
        least, most, fewest = compute_lists(base, credibility, ctx, survivors)
        culprits = culprit_list(least, most, fewest)
        current = RevisionPass(
            sets=[sorted(s) for s in survivors],
            least_believed=least,
            most_common=most,
            fewest_supporting=fewest,
            culprits=culprits,
        )
        state.passes.append(current)
        if ctx.br_mode != "auto" or len(culprits) != 1:
            state.status = AWAITING_USER
            return state
        current.retraction = base.retract(ctx, culprits[0])
        state.retracted.append(culprits[0])


def apply_manual_choice(
    base: BeliefBase,
    ctx: Context,
    state: RevisionState,
    retractions: Optional[set] = None,
    keep: bool = False,
) -> list:
    """Apply the user's answer to a pending revision.

    Returns the retraction reports (empty for keep).  Raises CoverageError
    when some inconsistent set would survive untouched."""
    if state.status != AWAITING_USER:
        raise RuntimeError("no pending revision to answer")
    if keep:
        state.status = KEPT_INCONSISTENT
        ctx.tolerated.add(frozenset(state.contradictands))
        return []
    chosen = set(retractions or ())
    if not chosen:
        raise ValueError("choose at least one hypothesis or keep")
    unknown = [h for h in chosen if h not in ctx]
    if unknown:
        raise KeyError(
            "not asserted hypotheses: "
            + ", ".join(base.store.label(h) for h in sorted(unknown))
        )
    uncovered = [sorted(s) for s in state.sets if not (set(s) & chosen)]
    if uncovered:
        raise CoverageError(uncovered)
    reports = [base.retract(ctx, h) for h in sorted(chosen)]
    state.retracted.extend(sorted(chosen))
    state.status = AUTO_RESOLVED
    return reports
