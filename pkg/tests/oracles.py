"""Independent brute-force oracles the engine is checked against.

Everything here recomputes results from first principles (full closure,
subset enumeration, truth tables) and shares nothing with the engine's
derivation paths beyond the term store itself.
"""

from __future__ import annotations

from itertools import combinations, product

from dobs.terms import TermStore


def closure_ids(store: TermStore, hypotheses) -> set:
    """Everything derivable from the hypotheses under the three schemata,
    by naive scan-until-fixpoint."""
    believed = set(hypotheses)
    changed = True
    while changed:
        changed = False
        for tid in list(believed):
            node = store.node(tid)
            conclusions = []
            if node[0] == "and":
                conclusions.extend(node[1])
            elif node[0] == "imp" and store.is_ground(tid) and node[1] in believed:
                conclusions.append(node[2])
            for rule in store.rules():
                if rule.id != tid:
                    continue
                predicate = store.atom_parts(rule.seed)[0]
                for atom in store.ground_atoms_with_predicate(predicate):
                    if atom not in believed:
                        continue
                    ok, binding = store.match(rule.seed, atom, rule.variable)
                    if not ok or binding is None:
                        continue
                    instances = [
                        store.instantiate(p, rule.variable, binding)
                        for p in rule.patterns
                    ]
                    if all(i in believed for i in instances):
                        conclusions.append(
                            store.instantiate(rule.consequent, rule.variable, binding)
                        )
            for c in conclusions:
                if c not in believed:
                    believed.add(c)
                    changed = True
    return believed


def minimal_origin_families(store: TermStore, hypotheses) -> dict:
    """For every derivable proposition, the family of subset-minimal
    hypothesis sets that derive it, by enumerating all subsets."""
    hypotheses = sorted(set(hypotheses))
    derivers: dict[int, list] = {}
    for r in range(1, len(hypotheses) + 1):
        for subset in combinations(hypotheses, r):
            s = frozenset(subset)
            for prop in closure_ids(store, s):
                derivers.setdefault(prop, []).append(s)
    families = {}
    for prop, sets in derivers.items():
        minimal = [s for s in sets if not any(o < s for o in sets)]
        families[prop] = set(minimal)
    return families


def constants_in(store: TermStore, tids) -> set:
    names = set()

    def walk(tid):
        node = store.node(tid)
        if node[0] == "atom":
            for tag, val in node[2]:
                if tag == "c":
                    names.add(val)
                elif tag == "p":
                    walk(val)
        elif node[0] == "not":
            walk(node[1])
        elif node[0] in ("and", "or"):
            for m in node[1]:
                walk(m)
        elif node[0] == "imp":
            walk(node[1])
            walk(node[2])
        else:
            walk(node[2])

    for tid in tids:
        walk(tid)
    return names


def satisfies(store: TermStore, model: set, tid: int, universe) -> bool:
    """Truth of a closed term in a Herbrand model (a set of true ground
    atom ids) over the given constant universe."""
    node = store.node(tid)
    kind = node[0]
    if kind == "atom":
        return tid in model
    if kind == "not":
        return not satisfies(store, model, node[1], universe)
    if kind == "and":
        return all(satisfies(store, model, m, universe) for m in node[1])
    if kind == "or":
        return any(satisfies(store, model, m, universe) for m in node[1])
    if kind == "imp":
        return not satisfies(store, model, node[1], universe) or satisfies(
            store, model, node[2], universe
        )
    variable, body = node[1], node[2]
    return all(
        satisfies(store, model, store.instantiate(body, variable, c), universe)
        for c in universe
    )


def models_over(atom_ids):
    """Every truth assignment over the given ground atom ids."""
    atom_ids = list(atom_ids)
    for bits in product([False, True], repeat=len(atom_ids)):
        yield {a for a, b in zip(atom_ids, bits) if b}


def scan_contradictions(store: TermStore, believed) -> list:
    """Linear-scan contradiction oracle: every explicitly conflicting pair
    among the believed ids."""
    believed = set(believed)
    pairs = []
    for tid in believed:
        node = store.node(tid)
        if node[0] == "not":
            if node[1] in believed:
                pairs.append((tid, node[1], "direct-negation"))
            inner = store.node(node[1])
            if inner[0] == "or":
                for d in inner[1]:
                    if d in believed:
                        pairs.append((tid, d, "negated-disjunction-member"))
    return pairs
