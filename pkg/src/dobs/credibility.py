"""Credibility ordering harvested from SOURCE and GREATER beliefs.

SOURCE(s, p) records that source s supplied proposition p; GREATER(a, b)
puts a strictly above b.  Both are ordinary beliefs: retract one and the
ordering information disappears with it, without touching the proposition
it described.  Edges connect sources to sources or propositions to
propositions; a mixed pair is accepted as a belief but contributes no
ordering.  Beliefs without any recorded source rank above sourced ones.
"""

from __future__ import annotations

from typing import Optional

from .belief import BeliefBase, Context
from .terms import TermStore

SOURCE_PREDICATE = "SOURCE"
GREATER_PREDICATE = "GREATER"


class CycleError(ValueError):
    """Adding this ordering would make some entity greater than itself."""

    def __init__(self, path: list):
        self.path = path
        super().__init__("credibility cycle: " + " > ".join(str(p) for p in path))


class MultipleSourcesError(ValueError):
    """More than one believed source for a single proposition."""


def _entity(arg: tuple):
    # ("c", NAME) -> source constant; ("p", id) -> proposition
    if arg[0] == "c":
        return ("source", arg[1])
    if arg[0] == "p":
        return ("prop", arg[1])
    return None


class CredibilityView:
    """Snapshot of the ordering implied by the currently believed
    SOURCE/GREATER propositions."""

    def __init__(self, store: TermStore, base: BeliefBase, ctx: Context):
        self.store = store
        self.edges: dict = {}      # entity -> set of strictly-lesser entities
        self.sources: dict = {}    # proposition id -> list of source names
        for prop in base.believed_ids(ctx):
            node = store.node(prop)
            if node[0] != "atom" or len(node[2]) != 2:
                continue
            if node[1] == GREATER_PREDICATE:
                greater = _entity(node[2][0])
                lesser = _entity(node[2][1])
                if greater and lesser and greater[0] == lesser[0]:
                    self.edges.setdefault(greater, set()).add(lesser)
            elif node[1] == SOURCE_PREDICATE:
                if node[2][0][0] == "c" and node[2][1][0] == "p":
                    named = self.sources.setdefault(node[2][1][1], [])
                    if node[2][0][1] not in named:
                        named.append(node[2][0][1])

    # -- reachability ---------------------------------------------------------

    def reaches(self, above, below) -> bool:
        return self._path(above, below) is not None

    def _path(self, above, below) -> Optional[list]:
        # Strictness: a path needs at least one edge, so start from the
        # successors rather than the node itself.
        seen = set()
        stack = [(nxt, [above, nxt]) for nxt in sorted(self.edges.get(above, ()))]
        while stack:
            entity, path = stack.pop()
            if entity == below:
                return path
            if entity in seen:
                continue
            seen.add(entity)
            for nxt in sorted(self.edges.get(entity, ())):
                stack.append((nxt, path + [nxt]))
        return None

    def check_order(self, greater, lesser) -> None:
        """Raise CycleError when asserting greater > lesser closes a loop."""
        if greater == lesser:
            raise CycleError([greater[1], lesser[1]])
        back = self._path(lesser, greater)
        if back is not None:
            raise CycleError([e[1] for e in back] + [lesser[1]])

    # -- queries over hypotheses -----------------------------------------------

    def source_of(self, prop: int) -> Optional[str]:
        named = self.sources.get(prop, [])
        if len(named) > 1:
            raise MultipleSourcesError(
                f"{self.store.label(prop)} has several believed sources: "
                + ", ".join(sorted(named))
            )
        return named[0] if named else None

    def less_credible(self, h1: int, h2: int) -> bool:
        """True when h1 ranks strictly below h2.

        A direct proposition-to-proposition order wins; otherwise sourced
        beliefs are compared through their sources' ordering, and a
        sourced belief ranks below any sourceless one.
        """
        if self.reaches(("prop", h2), ("prop", h1)):
            return True
        if self.reaches(("prop", h1), ("prop", h2)):
            return False
        s1 = self.source_of(h1)
        s2 = self.source_of(h2)
        if s1 is not None and s2 is not None:
            return self.reaches(("source", s2), ("source", s1))
        return s1 is not None and s2 is None
