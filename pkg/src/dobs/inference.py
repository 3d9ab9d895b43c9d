"""Forward and backward chaining with origin-set propagation.

Three rule schemata are implemented: conjunct elimination, ground modus
ponens, and single-variable universal instantiation followed by modus
ponens.  Every derivation records an origin set equal to the union of the
origin sets of the premises it used, and every proposition that becomes
believed is immediately screened for an explicit contradiction.

Both chainers are generators: they yield Derivation and
ContradictionReport items as they go, so a caller can pause for belief
revision after a report and then simply continue iterating.  Retractions
performed while paused are safe because premises are re-read from the
belief base at every firing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .belief import BeliefBase, Context
from .terms import RuleInfo, TermStore

DIRECT_NEGATION = "direct-negation"
NEGATED_DISJUNCTION = "negated-disjunction-member"

CONJUNCT_ELIMINATION = "conjunct-elimination"
MODUS_PONENS = "modus-ponens"
UNIVERSAL_INSTANTIATION = "universal-instantiation"


class FiringCapExceeded(RuntimeError):
    """The forward/backward run exceeded its rule-firing budget."""


@dataclass(frozen=True)
class ContradictionReport:
    new: int        # the proposition whose arrival exposed the conflict
    existing: int   # the previously believed proposition it conflicts with
    kind: str       # DIRECT_NEGATION or NEGATED_DISJUNCTION


@dataclass(frozen=True)
class Derivation:
    prop: int
    origin_set: frozenset
    rule: str
    premises: tuple


@dataclass
class BeliefEvent:
    id: int
    added: bool
    contradiction: Optional[ContradictionReport]


@dataclass
class DerivationBatch:
    derivations: list
    contradictions: list


class InferenceEngine:
    def __init__(
        self,
        store: TermStore,
        base: BeliefBase,
        depth_limit: int = 10,
        firing_cap: int = 10_000,
    ):
        self.store = store
        self.base = base
        self.depth_limit = depth_limit
        self.firing_cap = firing_cap

    # -- assertion ------------------------------------------------------------

    def add_hypothesis(self, ctx: Context, tid: int) -> BeliefEvent:
        if not self.store.is_ground(tid):
            raise ValueError(f"cannot assert open formula {self.store.render(tid)}")
        added = self.base.register_hypothesis(ctx, tid)
        return BeliefEvent(tid, added, self.detect_contradiction(ctx, tid))

    # -- contradiction detection ----------------------------------------------

    def detect_contradiction(self, ctx: Context, tid: int) -> Optional[ContradictionReport]:
        """Explicit conflicts only: a believed opposite, or a believed
        negated disjunction on one side and a believed disjunct on the other.
        Implicit contradictions stay invisible until derived."""
        if not self.base.believed(ctx, tid):
            return None
        candidates = []
        opposite = self.store.complement(tid)
        if opposite is not None and self.base.believed(ctx, opposite):
            candidates.append(ContradictionReport(tid, opposite, DIRECT_NEGATION))
        node = self.store.node(tid)
        if node[0] == "not" and self.store.kind(node[1]) == "or":
            for d in sorted(self.store.node(node[1])[1]):
                if self.base.believed(ctx, d):
                    candidates.append(
                        ContradictionReport(tid, d, NEGATED_DISJUNCTION)
                    )
        for neg in sorted(self.store.negated_disjunctions_containing(tid)):
            if self.base.believed(ctx, neg):
                candidates.append(ContradictionReport(tid, neg, NEGATED_DISJUNCTION))
        for report in candidates:
            if frozenset((report.new, report.existing)) not in ctx.tolerated:
                return report
        return None

    # -- forward chaining -------------------------------------------------------

    def forward(self, ctx: Context, trigger: int) -> Iterator:
        """Propagate from a believed trigger to a fixed point."""
        budget = [self.firing_cap]
        queue = deque([trigger])
        queued = {trigger}
        while queue:
            tid = queue.popleft()
            queued.discard(tid)
            if not self.base.believed(ctx, tid):
                continue
            node = self.store.node(tid)
            kind = node[0]
            if kind == "and":
                for member in node[1]:
                    yield from self._derive(
                        ctx, member, [tid], CONJUNCT_ELIMINATION, (tid,), queue, queued, budget
                    )
            elif kind == "imp" and self.store.is_ground(tid):
                ante, cons = node[1], node[2]
                if self.base.believed(ctx, ante):
                    yield from self._derive(
                        ctx, cons, [tid, ante], MODUS_PONENS, (tid, ante), queue, queued, budget
                    )
            elif kind == "all":
                for rule in self.store.rules():
                    if rule.id == tid:
                        yield from self._fire_rule_over_beliefs(ctx, rule, queue, queued, budget)
            # The trigger may complete someone else's premises.
            for imp in self.store.implications_with_antecedent(tid):
                if self.store.is_ground(imp) and self.base.believed(ctx, imp):
                    cons = self.store.implication_parts(imp)[1]
                    yield from self._derive(
                        ctx, cons, [imp, tid], MODUS_PONENS, (imp, tid), queue, queued, budget
                    )
            if kind == "atom":
                yield from self._fire_rules_on_atom(ctx, tid, queue, queued, budget)

    def _fire_rules_on_atom(self, ctx, atom, queue, queued, budget):
        for rule in self.store.rules():
            if not self.base.believed(ctx, rule.id):
                continue
            for pattern in rule.patterns:
                ok, binding = self.store.match(pattern, atom, rule.variable)
                if ok and binding is not None:
                    yield from self._fire_rule_instance(
                        ctx, rule, binding, queue, queued, budget
                    )

    def _fire_rule_over_beliefs(self, ctx, rule, queue, queued, budget):
        seed = rule.seed
        predicate = self.store.atom_parts(seed)[0]
        for atom in self.store.ground_atoms_with_predicate(predicate):
            if not self.base.believed(ctx, atom):
                continue
            ok, binding = self.store.match(seed, atom, rule.variable)
            if ok and binding is not None:
                yield from self._fire_rule_instance(ctx, rule, binding, queue, queued, budget)

    def _fire_rule_instance(self, ctx, rule: RuleInfo, binding: str, queue, queued, budget):
        instances = [
            self.store.instantiate(p, rule.variable, binding) for p in rule.patterns
        ]
        if not all(self.base.believed(ctx, inst) for inst in instances):
            return
        conclusion = self.store.instantiate(rule.consequent, rule.variable, binding)
        premises = (rule.id, *instances)
        yield from self._derive(
            ctx, conclusion, list(premises), UNIVERSAL_INSTANTIATION, premises, queue, queued, budget
        )

    def _derive(self, ctx, prop, premise_ids, rule, premises, queue, queued, budget):
        """Register prop once per combination of active premise origin sets."""
        families = [self.base.active_supports(ctx, p) for p in premise_ids]
        if not all(families):
            return
        unions = {frozenset().union(*combo) for combo in product(*families)}
        yield from self._emit(ctx, prop, unions, rule, premises, budget, queue, queued)

    # -- backward chaining --------------------------------------------------------

    def backward(self, ctx: Context, goal: int, depth: Optional[int] = None):
        """Try to derive the goal; generator returns its active origin sets.

        "unknown" (an empty return) only means not derivable within the
        depth limit, never false.
        """
        budget = [self.firing_cap]
        memo: dict[int, int] = {}
        stack: set = set()
        result = yield from self._prove(
            ctx, goal, depth if depth is not None else self.depth_limit,
            memo, stack, budget,
        )
        return result

    def _prove(self, ctx, goal, depth, memo, stack, budget):
        if depth <= 0 or goal in stack or memo.get(goal, -1) >= depth:
            return self.base.active_supports(ctx, goal)
        stack.add(goal)
        try:
            for and_id in sorted(self.store.ands_containing(goal)):
                sub = yield from self._prove(ctx, and_id, depth - 1, memo, stack, budget)
                yield from self._emit(
                    ctx, goal, sub, CONJUNCT_ELIMINATION, (and_id,), budget
                )
            for imp in sorted(self.store.implications_with_consequent(goal)):
                if not self.store.is_ground(imp):
                    continue
                imp_os = yield from self._prove(ctx, imp, depth - 1, memo, stack, budget)
                if not imp_os:
                    continue
                ante = self.store.implication_parts(imp)[0]
                ante_os = yield from self._prove(ctx, ante, depth - 1, memo, stack, budget)
                unions = {i | a for i in imp_os for a in ante_os}
                yield from self._emit(ctx, goal, unions, MODUS_PONENS, (imp, ante), budget)
            for rule, binding in self._rules_concluding(goal):
                rule_os = yield from self._prove(ctx, rule.id, depth - 1, memo, stack, budget)
                if not rule_os:
                    continue
                instances = [
                    self.store.instantiate(p, rule.variable, binding)
                    for p in rule.patterns
                ]
                families = [rule_os]
                for inst in instances:
                    inst_os = yield from self._prove(ctx, inst, depth - 1, memo, stack, budget)
                    if not inst_os:
                        families = None
                        break
                    families.append(inst_os)
                if families is None:
                    continue
                unions = {frozenset().union(*combo) for combo in product(*families)}
                yield from self._emit(
                    ctx, goal, unions, UNIVERSAL_INSTANTIATION, (rule.id, *instances), budget
                )
        finally:
            stack.discard(goal)
        memo[goal] = depth
        return self.base.active_supports(ctx, goal)

    def _rules_concluding(self, goal):
        matches = []
        for rule in self.store.rules():
            ok, binding = self.store.match(rule.consequent, goal, rule.variable)
            if not ok:
                continue
            if binding is not None:
                matches.append((rule, binding))
                continue
            # Ground consequent: candidate bindings come from instances of
            # the variable-bearing antecedent pattern.
            predicate = self.store.atom_parts(rule.seed)[0]
            for atom in self.store.ground_atoms_with_predicate(predicate):
                ok2, candidate = self.store.match(rule.seed, atom, rule.variable)
                if ok2 and candidate is not None:
                    matches.append((rule, candidate))
        return matches

    def _emit(self, ctx, prop, origin_sets, rule, premises, budget, queue=None, queued=None):
        for origin_set in sorted(origin_sets, key=sorted):
            if not self.base.add_support(prop, origin_set):
                continue
            budget[0] -= 1
            if budget[0] < 0:
                raise FiringCapExceeded(
                    f"inference exceeded {self.firing_cap} rule firings"
                )
            yield Derivation(prop, origin_set, rule, premises)
            if queue is not None and prop not in queued:
                queue.append(prop)
                queued.add(prop)
            if origin_set <= ctx.hypotheses.keys():
                report = self.detect_contradiction(ctx, prop)
                if report is not None:
                    yield report
