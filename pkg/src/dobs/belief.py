"""Hypotheses, derived propositions, origin sets, and contexts.

Nothing is ever deleted here: retraction only unasserts a hypothesis, and
every support record survives so old conclusions come back the moment
their hypotheses do.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import TermStore


class UnknownHypothesisError(KeyError):
    """An origin set referenced an id never registered as a hypothesis."""


class NotAssertedError(KeyError):
    """The operation needs a hypothesis currently asserted in the context."""


@dataclass
class RetractionReport:
    retracted: int
    casualties: list  # propositions (other than the hypothesis) no longer believed


class Context:
    """Named set of currently asserted hypotheses plus the revision mode."""

    def __init__(self, name: str = "default"):
        self.name = name
        self.hypotheses: dict[int, None] = {}  # insertion order = assertion order
        self.br_mode = "manual"
        self.version = 0
        self.tolerated: set = set()  # contradiction pairs the user chose to keep

    def __contains__(self, tid: int) -> bool:
        return tid in self.hypotheses

    def asserted(self) -> list:
        return list(self.hypotheses)

    def hypothesis_set(self) -> frozenset:
        return frozenset(self.hypotheses)


class BeliefBase:
    """Support records over a term store, queried relative to a context."""

    def __init__(self, store: TermStore):
        self.store = store
        self._supports: dict[int, list] = {}  # prop -> minimal origin sets
        self._hypotheses: set = set()

    # -- hypotheses ---------------------------------------------------------

    def register_hypothesis(self, ctx: Context, tid: int) -> bool:
        """Assert tid in ctx; returns False when it was already asserted."""
        self.store.node(tid)
        if tid in ctx:
            return False
        self._hypotheses.add(tid)
        ctx.hypotheses[tid] = None
        ctx.version += 1
        self.add_support(tid, frozenset({tid}))
        return True

    def is_hypothesis(self, tid: int) -> bool:
        return tid in self._hypotheses

    def retract(self, ctx: Context, tid: int) -> RetractionReport:
        if tid not in ctx:
            raise NotAssertedError(tid)
        before = [p for p in self._supports if self.believed(ctx, p)]
        del ctx.hypotheses[tid]
        ctx.version += 1
        casualties = [p for p in before if p != tid and not self.believed(ctx, p)]
        gone = set(casualties) | {tid}
        ctx.tolerated = {pair for pair in ctx.tolerated if not pair & gone}
        return RetractionReport(retracted=tid, casualties=sorted(casualties))

    # -- supports -----------------------------------------------------------

    def add_support(self, prop: int, origin_set: frozenset) -> bool:
        """Record a minimal derivation; rejects supersets of known sets."""
        self.store.node(prop)
        if not origin_set:
            raise ValueError("origin set must be non-empty")
        unknown = [h for h in origin_set if h not in self._hypotheses]
        if unknown:
            raise UnknownHypothesisError(sorted(unknown))
        stored = self._supports.setdefault(prop, [])
        for s in stored:
            if s <= origin_set:
                return False
        stored[:] = [s for s in stored if not origin_set <= s]
        stored.append(frozenset(origin_set))
        return True

    def supports(self, prop: int) -> list:
        return list(self._supports.get(prop, ()))

    def active_supports(self, ctx: Context, prop: int) -> list:
        hyps = ctx.hypotheses
        return [s for s in self._supports.get(prop, ()) if s <= hyps.keys()]

    def believed(self, ctx: Context, prop: int) -> bool:
        hyps = ctx.hypotheses.keys()
        return any(s <= hyps for s in self._supports.get(prop, ()))

    def believed_ids(self, ctx: Context) -> list:
        return sorted(p for p in self._supports if self.believed(ctx, p))

    def known_ids(self) -> list:
        """Every proposition ever asserted or derived (believed or not)."""
        return sorted(self._supports)

    # -- casualty accounting --------------------------------------------------

    def casualty_count(self, ctx: Context, hypothesis: int) -> int:
        """Beliefs that would be lost if the hypothesis were retracted."""
        if hypothesis not in ctx:
            raise NotAssertedError(hypothesis)
        count = 0
        for prop in self._supports:
            if prop == hypothesis:
                continue
            active = self.active_supports(ctx, prop)
            if active and all(hypothesis in s for s in active):
                count += 1
        return count
