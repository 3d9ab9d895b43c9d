"""Inconsistent sets, the three advisory lists, culprit choice, and the
resolution flows (auto, manual, keep)."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dobs.belief import BeliefBase, Context
from dobs.credibility import CredibilityView
from dobs.inference import ContradictionReport, InferenceEngine
from dobs.parser import parse_to_id
from dobs.revision import (
    AUTO_RESOLVED,
    AWAITING_USER,
    KEPT_INCONSISTENT,
    CoverageError,
    apply_manual_choice,
    build_inconsistent_sets,
    compute_lists,
    culprit_list,
    revise,
)
from dobs.session import Session
from dobs.terms import TermStore

from oracles import scan_contradictions


def fresh():
    store = TermStore()
    base = BeliefBase(store)
    ctx = Context()
    engine = InferenceEngine(store, base)
    return store, base, ctx, engine


def assert_all(store, ctx, engine, texts):
    ids = {}
    for text in texts:
        tid = parse_to_id(text, store)
        engine.add_hypothesis(ctx, tid)
        ids[text] = tid
    return ids


class TestBuildInconsistentSets:
    def test_one_origin_set_each_side(self):
        store, base, ctx, engine = fresh()
        ids = assert_all(store, ctx, engine, ["A(o)", "B(o)"])
        p = parse_to_id("P(o)", store)
        np = parse_to_id("~P(o)", store)
        base.add_support(p, frozenset({ids["A(o)"]}))
        base.add_support(np, frozenset({ids["B(o)"]}))
        sets = build_inconsistent_sets(base, ctx, p, np)
        assert sets == [frozenset({ids["A(o)"], ids["B(o)"]})]

    def test_two_sets_on_one_side_give_two_unions(self):
        store, base, ctx, engine = fresh()
        ids = assert_all(store, ctx, engine, ["A(o)", "B(o)", "C(o)"])
        a, b, c = ids["A(o)"], ids["B(o)"], ids["C(o)"]
        p = parse_to_id("P(o)", store)
        np = parse_to_id("~P(o)", store)
        base.add_support(p, frozenset({a}))
        base.add_support(np, frozenset({b}))
        base.add_support(np, frozenset({c}))
        sets = build_inconsistent_sets(base, ctx, p, np)
        assert set(sets) == {frozenset({a, b}), frozenset({a, c})}

    def test_unions_are_deduplicated_but_not_minimized(self):
        store, base, ctx, engine = fresh()
        ids = assert_all(store, ctx, engine, ["A(o)", "B(o)"])
        a, b = ids["A(o)"], ids["B(o)"]
        p = parse_to_id("P(o)", store)
        np = parse_to_id("~P(o)", store)
        base.add_support(p, frozenset({a}))
        base.add_support(p, frozenset({b}))
        base.add_support(np, frozenset({a}))
        base.add_support(np, frozenset({b}))
        sets = build_inconsistent_sets(base, ctx, p, np)
        # {a}, {a,b} (twice, deduplicated) and {b}: the supersets stay
        assert set(sets) == {
            frozenset({a}),
            frozenset({a, b}),
            frozenset({b}),
        }


class TestComputeLists:
    def test_no_credibility_information_means_everything_minimal(self):
        store, base, ctx, engine = fresh()
        ids = assert_all(store, ctx, engine, ["A(o)", "B(o)"])
        sets = [frozenset(ids.values())]
        view = CredibilityView(store, base, ctx)
        lb, mc, fs = compute_lists(base, view, ctx, sets)
        assert lb == sorted(ids.values())

    def test_most_common_counts_set_membership(self):
        store, base, ctx, engine = fresh()
        ids = assert_all(store, ctx, engine, ["A(o)", "B(o)", "C(o)"])
        a, b, c = ids["A(o)"], ids["B(o)"], ids["C(o)"]
        view = CredibilityView(store, base, ctx)
        _, mc, _ = compute_lists(base, view, ctx, [frozenset({a, b}), frozenset({a, c})])
        assert mc == [a]

    def test_fewest_supporting_uses_casualty_counts(self):
        store, base, ctx, engine = fresh()
        ids = assert_all(store, ctx, engine, ["A(o)", "B(o)"])
        a, b = ids["A(o)"], ids["B(o)"]
        q = parse_to_id("Q(o)", store)
        base.add_support(q, frozenset({a}))
        view = CredibilityView(store, base, ctx)
        _, _, fs = compute_lists(base, view, ctx, [frozenset({a, b})])
        assert fs == [b]


class TestCulpritList:
    def test_triple_intersection_wins(self):
        assert culprit_list([1], [1, 2, 3], [1, 2]) == [1]

    def test_smallest_nonempty_wins_even_without_credibility(self):
        # (LB & FS) of size 3 loses to (MC & FS) of size 2
        lb = [1, 2, 3]
        mc = [4, 5]
        fs = [1, 2, 3, 4, 5]
        assert culprit_list(lb, mc, fs) == [4, 5]

    def test_earlier_candidate_wins_ties(self):
        # LB & MC and MC & FS both have size 2; LB & MC comes first
        lb = [1, 2]
        mc = [1, 2, 3, 4]
        fs = [3, 4]
        assert culprit_list(lb, mc, fs) == [1, 2]


@settings(max_examples=500, deadline=None)
@given(
    st.frozensets(st.integers(min_value=0, max_value=7), min_size=1),
    st.frozensets(st.integers(min_value=0, max_value=7), min_size=1),
    st.frozensets(st.integers(min_value=0, max_value=7), min_size=1),
)
def test_culprit_matches_direct_reimplementation(lb, mc, fs):
    """(d) The seven-candidate smallest-non-empty rule, re-derived."""
    candidates = [
        lb & mc & fs,
        lb & mc,
        lb & fs,
        mc & fs,
        lb,
        mc,
        fs,
    ]
    nonempty = [c for c in candidates if c]
    expected = sorted(min(nonempty, key=len))  # min keeps the earliest tie
    assert culprit_list(sorted(lb), sorted(mc), sorted(fs)) == expected
    if lb & mc & fs:
        assert set(culprit_list(sorted(lb), sorted(mc), sorted(fs))) == lb & mc & fs


class TestRevise:
    def _contradiction(self, mode):
        store, base, ctx, engine = fresh()
        ctx.br_mode = mode
        ids = assert_all(store, ctx, engine, ["GREATER(GOOD,BAD)", "P(o)"])
        p = ids["P(o)"]
        base.register_hypothesis(ctx, parse_to_id(f"SOURCE(BAD, wff{p})", store))
        np = parse_to_id("~P(o)", store)
        engine.add_hypothesis(ctx, np)
        base.register_hypothesis(ctx, parse_to_id(f"SOURCE(GOOD, wff{np})", store))
        report = engine.detect_contradiction(ctx, np)
        assert report is not None
        return store, base, ctx, p, np, report

    def test_auto_singleton_retracts(self):
        store, base, ctx, p, np, report = self._contradiction("auto")
        state = revise(store, base, ctx, report)
        assert state.status == AUTO_RESOLVED
        assert state.retracted == [p]
        assert not base.believed(ctx, p)
        assert base.believed(ctx, np)

    def test_manual_mode_awaits_user(self):
        store, base, ctx, p, np, report = self._contradiction("manual")
        state = revise(store, base, ctx, report)
        assert state.status == AWAITING_USER
        assert state.culprits == [p]
        assert base.believed(ctx, p) and base.believed(ctx, np)

    def test_auto_with_wide_culprit_list_reverts_to_manual(self):
        store, base, ctx, engine = fresh()
        ctx.br_mode = "auto"
        ids = assert_all(store, ctx, engine, ["P(o)"])
        np = parse_to_id("~P(o)", store)
        event = engine.add_hypothesis(ctx, np)
        state = revise(store, base, ctx, event.contradiction)
        assert state.status == AWAITING_USER
        assert len(state.culprits) == 2

    def test_auto_repeats_until_no_set_survives(self):
        # Two routes to the conflict that share no hypothesis: one pass
        # cannot cover both sets, so a second pass must run.
        store, base, ctx, engine = fresh()
        ctx.br_mode = "auto"
        ids = assert_all(
            store,
            ctx,
            engine,
            [
                "GREATER(S1,S2)",
                "GREATER(S2,S3)",
                "A(o)",
                "A(o) => P(o)",
                "B(o)",
                "B(o) => P(o)",
                "C(o)",
                "C(o) => (~P(o))",
            ],
        )
        # Exactly one least-credible hypothesis, so pass 1 retracts it and
        # the disjoint second set forces another pass.
        base.register_hypothesis(
            ctx, parse_to_id(f"SOURCE(S3, wff{ids['A(o)']})", store)
        )
        for h in ["A(o) => P(o)", "B(o)", "B(o) => P(o)", "C(o)", "C(o) => (~P(o))"]:
            base.register_hypothesis(
                ctx, parse_to_id(f"SOURCE(S1, wff{ids[h]})", store)
            )
        for trigger in ["A(o)", "B(o)", "C(o)"]:
            for _ in engine.forward(ctx, ids[trigger]):
                pass
        np = parse_to_id("~P(o)", store)
        report = engine.detect_contradiction(ctx, np)
        assert report is not None
        state = revise(store, base, ctx, report)
        assert len(state.passes) == 2
        assert state.retracted == [ids["A(o)"]]
        assert state.status == AWAITING_USER
        assert state.sets == [
            frozenset(
                ids[t] for t in ["B(o)", "B(o) => P(o)", "C(o)", "C(o) => (~P(o))"]
            )
        ]


class TestApplyManualChoice:
    def _pending_two_sets(self):
        store, base, ctx, engine = fresh()
        ids = assert_all(
            store,
            ctx,
            engine,
            ["A(o)", "B(o)", "S(o)"],
        )
        a, b, s = ids["A(o)"], ids["B(o)"], ids["S(o)"]
        p = parse_to_id("P(o)", store)
        np = parse_to_id("~P(o)", store)
        base.add_support(p, frozenset({a, s}))
        base.add_support(p, frozenset({b, s}))
        base.add_support(np, frozenset({s}))
        report = ContradictionReport(np, p, "direct-negation")
        state = revise(store, base, ctx, report)
        assert state.status == AWAITING_USER
        return store, base, ctx, state, a, b, s

    def test_shared_hypothesis_covers_both_sets(self):
        store, base, ctx, state, a, b, s = self._pending_two_sets()
        reports = apply_manual_choice(base, ctx, state, retractions={s})
        assert state.status == AUTO_RESOLVED
        assert [r.retracted for r in reports] == [s]

    def test_partial_cover_rejected_with_uncovered_sets(self):
        store, base, ctx, state, a, b, s = self._pending_two_sets()
        with pytest.raises(CoverageError) as err:
            apply_manual_choice(base, ctx, state, retractions={a})
        assert [sorted({b, s})] == err.value.uncovered
        assert state.status == AWAITING_USER  # still pending

    def test_unknown_selection_rejected(self):
        store, base, ctx, state, a, b, s = self._pending_two_sets()
        other = parse_to_id("Z(o)", store)
        with pytest.raises(KeyError):
            apply_manual_choice(base, ctx, state, retractions={other})

    def test_keep_leaves_both_contradictands_believed(self):
        store, base, ctx, state, a, b, s = self._pending_two_sets()
        assert apply_manual_choice(base, ctx, state, keep=True) == []
        assert state.status == KEPT_INCONSISTENT
        assert base.believed(ctx, state.contradictands[0])
        assert base.believed(ctx, state.contradictands[1])


# -- scenario from the culprit-selection worked example --------------------------


def test_competing_derivations_protect_the_better_supported_belief():
    session = Session()
    session.eval_line("br-mode auto.")
    for text in [
        "A(o).",
        "B(o).",
        "D(o).",
        "A(o) => C(o).",
        "B(o) => C(o).",
        "D(o) => (~C(o)).",
    ]:
        events = session.eval_line(text)
        assert events[0].type == "assert"
    assert session.eval_line("C(o)?")[-1].payload["result"] == "yes"
    events = session.eval_line("~C(o)?")
    pending = [e for e in events if e.type == "pending_revision"]
    assert pending, "two-element culprit list must fall back to manual"
    store = session.store
    d = parse_to_id("D(o)", store)
    d_rule = parse_to_id("D(o) => (~C(o))", store)
    c = parse_to_id("C(o)", store)
    view = session.revision_view()
    expected_mc = sorted(store.label(t) for t in sorted((d, d_rule)))
    assert view["mc"] == expected_mc  # D and D => ~C
    assert view["cl"] == expected_mc
    assert len(view["sets"]) == 2
    # Retract either culprit: C survives through two origin sets.
    session.answer_revision(retractions={d})
    assert len(session.base.active_supports(session.ctx, c)) == 2


# -- (e) after any non-kept revision no explicit contradiction remains ------------

SCENARIO_POOL = [
    "P(A)", "Q(A)", "R(A)", "~P(A)", "~Q(A)",
    "P(A) => Q(A)", "P(A) => (~Q(A))", "Q(A) => R(A)", "R(A) => (~P(A))",
    "P(A) and Q(A)", "~(P(A) or R(A))",
    "all(X)(P(X) => (~R(X)))", "all(X)(Q(X) => R(X))",
    "P(B)", "~P(B)", "all(X)(P(X) => Q(X))",
]


@settings(max_examples=500, deadline=None)
@given(
    st.lists(st.sampled_from(SCENARIO_POOL), unique=True, min_size=2, max_size=8),
    st.booleans(),
)
def test_revision_leaves_no_detectable_contradiction(texts, auto):
    """(e) Unless the user kept the inconsistency, finishing a revision
    episode leaves no explicit contradiction among believed terms."""
    session = Session()
    if auto:
        session.eval_line("br-mode auto.")
    kept = False
    for text in texts:
        session.eval_line(text + "!")
        while session.pending_revision is not None:
            view = session.revision_view()
            picks = {session.store.resolve_label(s[0]) for s in view["sets"]}
            session.answer_revision(retractions=picks)
    believed = session.base.believed_ids(session.ctx)
    assert scan_contradictions(session.store, believed) == []
