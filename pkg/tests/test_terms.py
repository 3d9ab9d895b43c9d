"""Interning, canonical ordering, negation links, and render round-trips."""

import random

import pytest

from dobs.parser import ParseError, parse, parse_to_id
from dobs.terms import And, Atom, Const, TermStore, UnknownTermError


@pytest.fixture
def store():
    return TermStore()


class TestInterning:
    def test_idempotent(self, store):
        a = parse_to_id("SMART(FRAN)", store)
        b = parse_to_id("SMART(FRAN)", store)
        assert a == b

    def test_case_insensitive(self, store):
        assert parse_to_id("smart(fran)", store) == parse_to_id("SMART(FRAN)", store)

    def test_conjunction_commutes(self, store):
        assert parse_to_id("P(a) and Q(b)", store) == parse_to_id("Q(b) and P(a)", store)

    def test_disjunction_commutes(self, store):
        assert parse_to_id("P(a) or Q(b)", store) == parse_to_id("Q(b) or P(a)", store)

    def test_conjunction_flattens(self, store):
        nested = parse_to_id("(P(a) and Q(b)) and R(c)", store)
        flat = parse_to_id("P(a) and (Q(b) and R(c))", store)
        assert nested == flat
        assert len(store.and_members(nested)) == 3

    def test_double_negation_is_distinct(self, store):
        assert parse_to_id("~~P(a)", store) != parse_to_id("P(a)", store)

    def test_quantified_rules_intern_structurally(self, store):
        a = parse_to_id("all(X)(JOCK(X) => (~SMART(X)))", store)
        b = parse_to_id("all(X)(JOCK(X)=>~SMART(X))", store)
        assert a == b

    def test_direct_ast_interning(self, store):
        term = And((Atom("Q", (Const("b"),)), Atom("P", (Const("a"),))))
        assert store.intern(term) == parse_to_id("P(A) and Q(B)", store)

    def test_unknown_id_rejected(self, store):
        with pytest.raises(UnknownTermError):
            store.render(41)

    def test_display_labels_monotone(self, store):
        first = parse_to_id("A(x1)", store)
        second = parse_to_id("B(x2)", store)
        assert store.label(first) == f"wff{first}"
        assert first < second


class TestComplement:
    def test_negation_linked_both_ways(self, store):
        neg = parse_to_id("~SMART(FRAN)", store)
        pos = parse_to_id("SMART(FRAN)", store)
        assert store.complement(neg) == pos
        assert store.complement(pos) == neg

    def test_absent_until_mentioned(self, store):
        pos = parse_to_id("P(a)", store)
        assert store.complement(pos) is None
        neg = parse_to_id("~P(a)", store)
        assert store.complement(pos) == neg

    def test_involution_where_defined(self, store):
        neg = parse_to_id("~P(a)", store)
        assert store.complement(store.complement(neg)) == neg


class TestParser:
    def test_rule_shape(self, store):
        tid = parse_to_id("all(X)(JOCK(X) => (~SMART(X)))", store)
        assert store.kind(tid) == "all"
        (rule,) = store.rules()
        assert rule.id == tid
        assert store.atom_parts(rule.patterns[0])[0] == "JOCK"

    def test_four_way_conjunction(self, store):
        tid = parse_to_id(
            "FEMALE(FRAN) and OLD(FRAN) and GRAD(FRAN) and JOCK(FRAN)", store
        )
        assert len(store.and_members(tid)) == 4

    def test_implication_right_associative(self, store):
        tid = parse_to_id("P(a) => Q(a) => R(a)", store)
        ante, cons = store.implication_parts(tid)
        assert store.kind(cons) == "imp"
        assert store.kind(ante) == "atom"

    def test_precedence_and_binds_tighter_than_or(self, store):
        tid = parse_to_id("P(a) and Q(a) or R(a)", store)
        assert store.kind(tid) == "or"

    def test_wff_reference_argument(self, store):
        rule = parse_to_id("all(X)(JOCK(X) => SMART(X))", store)
        src = parse_to_id(f"SOURCE(NERD, wff{rule})", store)
        _, args = store.atom_parts(src)
        assert args[1] == ("p", rule)

    def test_nested_proposition_argument(self, store):
        src = parse_to_id("SOURCE(PROF, SMART(FRAN))", store)
        smart = parse_to_id("SMART(FRAN)", store)
        assert store.atom_parts(src)[1][1] == ("p", smart)

    def test_error_carries_position(self, store):
        with pytest.raises(ParseError) as err:
            parse("P(a", store)
        assert err.value.line == 1
        assert err.value.col == 4
        assert err.value.expected

    def test_unknown_reference_rejected(self, store):
        with pytest.raises(ParseError):
            parse("SOURCE(NERD, wff99)", store)

    def test_unused_quantified_variable_rejected(self, store):
        with pytest.raises(ParseError):
            parse("all(X)(P(FRAN))", store)

    def test_variable_outside_scope_rejected(self, store):
        with pytest.raises(ParseError):
            parse("all(X)(P(X)) => Q(X)", store)

    def test_reserved_words_rejected_as_names(self, store):
        with pytest.raises(ParseError):
            parse("AND(a)", store)

    def test_trailing_garbage_rejected(self, store):
        with pytest.raises(ParseError):
            parse("P(a) Q(b)", store)


class TestRender:
    def test_rule_renders_like_console_output(self, store):
        tid = parse_to_id("all(X)(JOCK(X) => (~SMART(X)))", store)
        assert store.render(tid) == "all(X)(JOCK(X) => (~SMART(X)))"

    def test_top_level_negation_unparenthesized(self, store):
        tid = parse_to_id("~SMART(FRAN)", store)
        assert store.render(tid) == "~SMART(FRAN)"

    def test_conjuncts_in_canonical_order(self, store):
        tid = parse_to_id("Q(b) and P(a)", store)
        members = store.and_members(tid)
        assert [store.render(m) for m in members] == [
            store.render(m) for m in sorted(members)
        ]

    def test_nested_proposition_rendering_round_trips(self, store):
        rule = parse_to_id("all(X)(JOCK(X) => SMART(X))", store)
        src = parse_to_id(f"SOURCE(NERD, wff{rule})", store)
        assert parse_to_id(store.render(src), store) == src


# -- randomized round-trip fuzzing -------------------------------------------


def random_wff(rng: random.Random, depth: int = 3, vars_in_scope=()) -> str:
    """Random surface text over a tiny vocabulary."""
    preds = ["P", "Q", "R", "S2"]
    consts = ["A", "B", "C-1"]

    def atom():
        args = [
            rng.choice(list(vars_in_scope) + consts)
            for _ in range(rng.randint(1, 2))
        ]
        return f"{rng.choice(preds)}({','.join(args)})"

    if depth <= 0:
        return atom()
    kind = rng.randint(0, 5)
    if kind == 0:
        return atom()
    if kind == 1:
        return "~" + _wrap(random_wff(rng, depth - 1, vars_in_scope), rng)
    if kind == 2:
        n = rng.randint(2, 3)
        return " and ".join(
            _wrap(random_wff(rng, depth - 1, vars_in_scope), rng) for _ in range(n)
        )
    if kind == 3:
        n = rng.randint(2, 3)
        return " or ".join(
            _wrap(random_wff(rng, depth - 1, vars_in_scope), rng) for _ in range(n)
        )
    if kind == 4:
        return (
            _wrap(random_wff(rng, depth - 1, vars_in_scope), rng)
            + " => "
            + _wrap(random_wff(rng, depth - 1, vars_in_scope), rng)
        )
    var = f"V{rng.randint(1, 3)}"
    body = f"({random_wff(rng, depth - 1, tuple(vars_in_scope) + (var,))}) and {rng.choice(['P', 'Q'])}({var})"
    return f"all({var})({body})"


def _wrap(text: str, rng: random.Random) -> str:
    # Bare operands exercise precedence; parenthesized ones exercise grouping.
    if rng.random() < 0.3 and not text.startswith("all"):
        return text
    return f"({text})"


def test_render_parse_round_trip_fuzz():
    """parse∘render is the identity on interned ids for 1000 random wffs,
    and render∘parse∘render is a fixed point."""
    rng = random.Random(20240817)
    store = TermStore()
    for _ in range(1000):
        text = random_wff(rng)
        try:
            tid = parse_to_id(text, store)
        except ParseError:
            continue  # generator can produce an unused quantifier; skip
        rendered = store.render(tid)
        again = parse_to_id(rendered, store)
        assert again == tid, f"{text!r} -> {rendered!r}"
        assert store.render(again) == rendered


def test_structural_equality_matches_identifier_equality():
    """Interning the same random text twice in different orders gives the
    same ids (structural equality oracle by construction)."""
    rng = random.Random(7)
    texts = []
    for _ in range(200):
        texts.append(random_wff(rng))
    store_a = TermStore()
    store_b = TermStore()
    ids_a, ids_b = {}, {}
    for t in texts:
        try:
            ids_a[t] = parse_to_id(t, store_a)
        except ParseError:
            continue
    for t in reversed(texts):
        if t in ids_a:
            ids_b[t] = parse_to_id(t, store_b)
    for t1 in ids_a:
        for t2 in ids_a:
            same_a = ids_a[t1] == ids_a[t2]
            same_b = ids_b[t1] == ids_b[t2]
            assert same_a == same_b
