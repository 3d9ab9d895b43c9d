"""Canonical interned logical terms.

Structural identity is identifier identity: interning the same structure
twice yields the same TermId.  Negation links are maintained at intern
time, so "is the opposite of this belief present?" is a dictionary lookup,
never a scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


class UnknownTermError(KeyError):
    """Raised for an identifier that was never interned."""


# ---------------------------------------------------------------------------
# Surface AST.  The parser produces these; TermStore.intern canonicalizes
# them into the shared node table.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class TermRef:
    """Reference to an already-interned proposition (surface form wffN)."""

    id: int


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple  # of Const | Var | TermRef | Term (nested proposition)


@dataclass(frozen=True)
class Not:
    operand: "Term"


@dataclass(frozen=True)
class And:
    operands: tuple  # of Term, len >= 2


@dataclass(frozen=True)
class Or:
    operands: tuple  # of Term, len >= 2


@dataclass(frozen=True)
class Implies:
    antecedent: "Term"
    consequent: "Term"


@dataclass(frozen=True)
class ForAll:
    variable: str
    body: "Term"


Term = Union[Atom, Not, And, Or, Implies, ForAll, TermRef]


@dataclass(frozen=True)
class RuleInfo:
    """A quantified implication usable by the instantiation schema.

    Only rules of shape all(x)(ante => cons) where ante is an atom or a
    conjunction of atoms mentioning x participate in inference; anything
    else is stored but never fired.
    """

    id: int
    variable: str
    antecedent: int
    patterns: tuple  # antecedent atom ids, in canonical order
    consequent: int
    seed: int        # first pattern that mentions the variable


# Grammar level of each connective, used by the renderer to decide where
# parentheses are required for an exact parse round-trip.
_LEVEL = {"all": 0, "imp": 1, "or": 2, "and": 3, "not": 4, "atom": 5}


class TermStore:
    """Hash-consed term table with negation links and structural indexes.

    Identifiers are 1-based and double as user-facing display indices
    ("wff3"), assigned in first-mention order and never reused.
    """

    def __init__(self):
        self._nodes: list[tuple] = []           # node of id i at index i-1
        self._ids: dict[tuple, int] = {}
        self._free: list[frozenset] = []        # free variable names per id
        self._complement: dict[int, int] = {}
        self._neg_disjunctions: dict[int, list[int]] = {}  # disjunct -> ~(... or ...) ids
        self._ands_by_member: dict[int, list[int]] = {}
        self._imps_by_ante: dict[int, list[int]] = {}
        self._imps_by_cons: dict[int, list[int]] = {}
        self._atoms_by_pred: dict[str, list[int]] = {}     # ground atoms only
        self._rules: list[RuleInfo] = []

    # -- interning ----------------------------------------------------------

    def intern(self, term: Term) -> int:
        if isinstance(term, TermRef):
            self._check(term.id)
            return term.id
        if isinstance(term, Atom):
            args = []
            for a in term.args:
                if isinstance(a, Const):
                    args.append(("c", a.name.upper()))
                elif isinstance(a, Var):
                    args.append(("v", a.name.upper()))
                else:
                    args.append(("p", self.intern(a)))
            return self._add(("atom", term.predicate.upper(), tuple(args)))
        if isinstance(term, Not):
            return self._add(("not", self.intern(term.operand)))
        if isinstance(term, (And, Or)):
            kind = "and" if isinstance(term, And) else "or"
            if len(term.operands) < 2:
                raise ValueError(f"{kind} requires at least two operands")
            members: list[int] = []
            for op in term.operands:
                cid = self.intern(op)
                node = self._nodes[cid - 1]
                if node[0] == kind:
                    members.extend(node[1])  # flatten: children are canonical
                else:
                    members.append(cid)
            return self._add((kind, tuple(sorted(members))))
        if isinstance(term, Implies):
            return self._add(
                ("imp", self.intern(term.antecedent), self.intern(term.consequent))
            )
        if isinstance(term, ForAll):
            var = term.variable.upper()
            body = self.intern(term.body)
            if var not in self._free[body - 1]:
                raise ValueError(f"quantified variable {var} never occurs in its body")
            return self._add(("all", var, body))
        raise TypeError(f"not a term: {term!r}")

    def _add(self, node: tuple) -> int:
        tid = self._ids.get(node)
        if tid is not None:
            return tid
        self._nodes.append(node)
        tid = len(self._nodes)
        self._ids[node] = tid
        self._free.append(self._free_vars(node))
        self._index(tid, node)
        return tid

    def _free_vars(self, node: tuple) -> frozenset:
        kind = node[0]
        if kind == "atom":
            names = set()
            for tag, val in node[2]:
                if tag == "v":
                    names.add(val)
                elif tag == "p":
                    names |= self._free[val - 1]
            return frozenset(names)
        if kind == "not":
            return self._free[node[1] - 1]
        if kind in ("and", "or"):
            return frozenset().union(*(self._free[m - 1] for m in node[1]))
        if kind == "imp":
            return self._free[node[1] - 1] | self._free[node[2] - 1]
        return self._free[node[2] - 1] - {node[1]}  # "all"

    def _index(self, tid: int, node: tuple) -> None:
        kind = node[0]
        if kind == "not":
            inner = node[1]
            self._complement[inner] = tid
            self._complement[tid] = inner
            inner_node = self._nodes[inner - 1]
            if inner_node[0] == "or":
                for d in inner_node[1]:
                    self._neg_disjunctions.setdefault(d, []).append(tid)
        elif kind == "and":
            for m in node[1]:
                self._ands_by_member.setdefault(m, []).append(tid)
        elif kind == "imp":
            self._imps_by_ante.setdefault(node[1], []).append(tid)
            self._imps_by_cons.setdefault(node[2], []).append(tid)
        elif kind == "atom" and not self._free[tid - 1]:
            self._atoms_by_pred.setdefault(node[1], []).append(tid)
        elif kind == "all":
            body = self._nodes[node[2] - 1]
            if body[0] == "imp":
                patterns = self._antecedent_patterns(body[1])
                if patterns is not None:
                    seeds = [p for p in patterns if node[1] in self._free[p - 1]]
                    if seeds:
                        self._rules.append(
                            RuleInfo(tid, node[1], body[1], patterns, body[2], seeds[0])
                        )

    def _antecedent_patterns(self, ante: int) -> Optional[tuple]:
        node = self._nodes[ante - 1]
        if node[0] == "atom":
            return (ante,)
        if node[0] == "and" and all(
            self._nodes[m - 1][0] == "atom" for m in node[1]
        ):
            return node[1]
        return None

    # -- accessors ----------------------------------------------------------

    def _check(self, tid: int) -> None:
        if not isinstance(tid, int) or not 1 <= tid <= len(self._nodes):
            raise UnknownTermError(tid)

    def __len__(self) -> int:
        return len(self._nodes)

    def node(self, tid: int) -> tuple:
        self._check(tid)
        return self._nodes[tid - 1]

    def kind(self, tid: int) -> str:
        return self.node(tid)[0]

    def is_ground(self, tid: int) -> bool:
        self._check(tid)
        return not self._free[tid - 1]

    def label(self, tid: int) -> str:
        self._check(tid)
        return f"wff{tid}"

    def resolve_label(self, label: str) -> int:
        name = label.strip().lower()
        if not name.startswith("wff") or not name[3:].isdigit():
            raise UnknownTermError(label)
        tid = int(name[3:])
        self._check(tid)
        return tid

    def complement(self, tid: int) -> Optional[int]:
        self._check(tid)
        return self._complement.get(tid)

    def negated_disjunctions_containing(self, tid: int) -> list[int]:
        self._check(tid)
        return list(self._neg_disjunctions.get(tid, ()))

    def ands_containing(self, tid: int) -> list[int]:
        self._check(tid)
        return list(self._ands_by_member.get(tid, ()))

    def implications_with_antecedent(self, tid: int) -> list[int]:
        self._check(tid)
        return list(self._imps_by_ante.get(tid, ()))

    def implications_with_consequent(self, tid: int) -> list[int]:
        self._check(tid)
        return list(self._imps_by_cons.get(tid, ()))

    def ground_atoms_with_predicate(self, predicate: str) -> list[int]:
        return list(self._atoms_by_pred.get(predicate.upper(), ()))

    def rules(self) -> list[RuleInfo]:
        return list(self._rules)

    def and_members(self, tid: int) -> tuple:
        node = self.node(tid)
        if node[0] != "and":
            raise ValueError(f"{self.label(tid)} is not a conjunction")
        return node[1]

    def implication_parts(self, tid: int) -> tuple:
        node = self.node(tid)
        if node[0] != "imp":
            raise ValueError(f"{self.label(tid)} is not an implication")
        return node[1], node[2]

    def atom_parts(self, tid: int) -> tuple:
        node = self.node(tid)
        if node[0] != "atom":
            raise ValueError(f"{self.label(tid)} is not an atom")
        return node[1], node[2]

    # -- pattern matching over a single rule variable ------------------------

    def match(self, pattern: int, ground: int, variable: str) -> tuple:
        """Match a one-variable pattern against a ground term.

        Returns (matched, binding); binding is the constant the variable
        took, or None when the pattern did not mention it.
        """
        binding: list = []
        if self._match(pattern, ground, variable, binding):
            return True, (binding[0] if binding else None)
        return False, None

    def _match(self, pattern, ground, variable, binding) -> bool:
        if pattern == ground:
            return True
        pnode = self._nodes[pattern - 1]
        gnode = self._nodes[ground - 1]
        if pnode[0] != gnode[0]:
            return False
        kind = pnode[0]
        if kind == "atom":
            if pnode[1] != gnode[1] or len(pnode[2]) != len(gnode[2]):
                return False
            for parg, garg in zip(pnode[2], gnode[2]):
                if parg == garg:
                    continue
                if parg[0] == "v" and parg[1] == variable and garg[0] == "c":
                    if binding and binding[0] != garg[1]:
                        return False
                    if not binding:
                        binding.append(garg[1])
                    continue
                if parg[0] == "p" and garg[0] == "p":
                    if not self._match(parg[1], garg[1], variable, binding):
                        return False
                    continue
                return False
            return True
        if kind == "not":
            return self._match(pnode[1], gnode[1], variable, binding)
        if kind in ("and", "or"):
            # Canonical member order can differ once the variable is bound,
            # so match members as a multiset (sizes are tiny).
            if len(pnode[1]) != len(gnode[1]):
                return False
            remaining = list(gnode[1])
            for pm in pnode[1]:
                for i, gm in enumerate(remaining):
                    trial = list(binding)
                    if self._match(pm, gm, variable, trial):
                        binding[:] = trial
                        del remaining[i]
                        break
                else:
                    return False
            return True
        if kind == "imp":
            return self._match(pnode[1], gnode[1], variable, binding) and self._match(
                pnode[2], gnode[2], variable, binding
            )
        if kind == "all":
            if pnode[1] != gnode[1]:
                return False
            return self._match(pnode[2], gnode[2], variable, binding)
        return False

    def instantiate(self, pattern: int, variable: str, constant: str) -> int:
        """Substitute a constant for the rule variable, interning the result."""
        node = self._nodes[pattern - 1]
        if variable not in self._free[pattern - 1]:
            return pattern
        kind = node[0]
        if kind == "atom":
            args = []
            for tag, val in node[2]:
                if tag == "v" and val == variable:
                    args.append(("c", constant.upper()))
                elif tag == "p":
                    args.append(("p", self.instantiate(val, variable, constant)))
                else:
                    args.append((tag, val))
            return self._add(("atom", node[1], tuple(args)))
        if kind == "not":
            return self._add(("not", self.instantiate(node[1], variable, constant)))
        if kind in ("and", "or"):
            members = sorted(
                self.instantiate(m, variable, constant) for m in node[1]
            )
            return self._add((kind, tuple(members)))
        if kind == "imp":
            return self._add(
                (
                    "imp",
                    self.instantiate(node[1], variable, constant),
                    self.instantiate(node[2], variable, constant),
                )
            )
        # "all": the free-variable check above already excluded a shadowed
        # variable, so substitute inside the body.
        return self._add(("all", node[1], self.instantiate(node[2], variable, constant)))

    # -- rendering ----------------------------------------------------------

    def render(self, tid: int) -> str:
        self._check(tid)
        return self._render(tid, 0)

    def _render(self, tid: int, required: int) -> str:
        node = self._nodes[tid - 1]
        kind = node[0]
        if kind == "atom":
            args = []
            for tag, val in node[2]:
                if tag == "p":
                    if self._nodes[val - 1][0] == "atom":
                        args.append(self._render(val, 0))
                    else:
                        args.append("(" + self._render(val, 0) + ")")
                else:
                    args.append(val)
            text = f"{node[1]}({','.join(args)})"
        elif kind == "not":
            text = "~" + self._render(node[1], _LEVEL["not"])
        elif kind == "and":
            text = " and ".join(self._operand(m, _LEVEL["not"]) for m in node[1])
        elif kind == "or":
            text = " or ".join(self._operand(m, _LEVEL["and"]) for m in node[1])
        elif kind == "imp":
            text = (
                self._operand(node[1], _LEVEL["or"])
                + " => "
                + self._operand(node[2], _LEVEL["imp"])
            )
        else:  # "all"
            text = f"all({node[1]})({self._render(node[2], 0)})"
        if _LEVEL[kind] < required:
            return "(" + text + ")"
        return text

    def _operand(self, tid: int, required: int) -> str:
        # Negations and quantifications are always parenthesized as operands
        # of a binary connective, matching the conventional output style.
        if self._nodes[tid - 1][0] in ("not", "all"):
            return "(" + self._render(tid, 0) + ")"
        return self._render(tid, required)
