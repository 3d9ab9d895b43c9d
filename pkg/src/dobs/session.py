"""Interactive sessions: command evaluation, revision dialogue, snapshots.

A session owns one term store, one belief base, and one context.  Wff
commands end in a terminator: "." asserts, "!" asserts with forward
inference, "?" queries by backward inference.  While a contradiction is
awaiting the user's decision every other command is rejected, matching the
sub-prompt behaviour of the interactive console.
"""

from __future__ import annotations

import os
import re
import tempfile
from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import events as ev
from .belief import BeliefBase, Context, RetractionReport
from .credibility import (
    GREATER_PREDICATE,
    SOURCE_PREDICATE,
    CredibilityView,
    CycleError,
)
from .inference import (
    ContradictionReport,
    Derivation,
    FiringCapExceeded,
    InferenceEngine,
)
from .parser import ParseError, parse_to_id
from .revision import (
    AWAITING_USER,
    CoverageError,
    RevisionState,
    apply_manual_choice,
    revise,
)
from .terms import TermStore, UnknownTermError

SNAPSHOT_HEADER = "snebr-snapshot v1"

_SAVE_RE = re.compile(r'^save\s+"([^"]*)"\s*\.$', re.IGNORECASE)
_LOAD_RE = re.compile(r'^load\s+"([^"]*)"\s*\.$', re.IGNORECASE)
_MODE_RE = re.compile(r"^br-mode\s+(auto|manual)\s*\.$", re.IGNORECASE)
_RETRACT_RE = re.compile(r"^retract\s+(.+)\.$", re.IGNORECASE)


class SnapshotError(ValueError):
    pass


@dataclass
class _Pending:
    state: RevisionState
    work: deque  # remaining inference work to resume after the decision


class Session:
    def __init__(
        self,
        name: str = "default",
        depth_limit: int = 10,
        firing_cap: int = 10_000,
    ):
        self.depth_limit = depth_limit
        self.firing_cap = firing_cap
        self._name = name
        self._replaying = False
        self._reset()

    def _reset(self) -> None:
        self.store = TermStore()
        self.base = BeliefBase(self.store)
        self.ctx = Context(self._name)
        self.engine = InferenceEngine(
            self.store, self.base, self.depth_limit, self.firing_cap
        )
        self._pending: Optional[_Pending] = None

    # -- public state ---------------------------------------------------------

    @property
    def mode(self) -> str:
        return self.ctx.br_mode

    @property
    def pending_revision(self) -> Optional[RevisionState]:
        return self._pending.state if self._pending else None

    def revision_view(self) -> Optional[dict]:
        if not self._pending:
            return None
        state = self._pending.state
        return {
            "mode": state.mode,
            "contradictands": [self._wff(t) for t in state.contradictands],
            "sets": [self._labels(sorted(s)) for s in state.sets],
            "lb": self._labels(state.least_believed),
            "mc": self._labels(state.most_common),
            "fs": self._labels(state.fewest_supporting),
            "cl": self._labels(state.culprits),
        }

    def belief_rows(self, include_unbelieved: bool = True) -> list:
        credibility = CredibilityView(self.store, self.base, self.ctx)
        rows = []
        for tid in self.base.known_ids():
            believed = self.base.believed(self.ctx, tid)
            if not believed and not include_unbelieved:
                continue
            try:
                source = credibility.source_of(tid)
            except Exception:
                source = None
            rows.append(
                {
                    "wff": self.store.label(tid),
                    "text": self.store.render(tid),
                    "hypothesis": tid in self.ctx,
                    "believed": believed,
                    "source": source,
                    "origin_sets": [
                        self._labels(sorted(s))
                        for s in self.base.active_supports(self.ctx, tid)
                    ],
                }
            )
        return rows

    def believed_texts(self) -> set:
        return {self.store.render(t) for t in self.base.believed_ids(self.ctx)}

    # -- command evaluation -----------------------------------------------------

    def eval_line(self, text: str) -> list:
        line = text.strip()
        if not line:
            return []
        if self._pending:
            return self._eval_revision_answer(line)
        lowered = line.lower()
        if lowered in ("keep.", "keep"):
            return [ev.error_event("no revision pending")]
        if _RETRACT_RE.match(line):
            return [ev.error_event("no revision pending; `retract` answers a revision prompt")]
        mode = _MODE_RE.match(line)
        if mode:
            self.ctx.br_mode = mode.group(1).lower()
            return [ev.info_event(f"belief revision mode is {self.ctx.br_mode}")]
        if lowered == "list-asserted.":
            rows = [r for r in self.belief_rows() if r["believed"]]
            return [ev.beliefs_event("asserted", rows)]
        if lowered == "list-all.":
            return [ev.beliefs_event("all", self.belief_rows())]
        if lowered == "clear.":
            self._reset()
            return [ev.info_event("knowledge base cleared")]
        save = _SAVE_RE.match(line)
        if save:
            return self._save(save.group(1))
        load = _LOAD_RE.match(line)
        if load:
            return self._load(load.group(1))
        if line[-1] in ".!?":
            return self._eval_wff(line[:-1], line[-1])
        return [
            ev.error_event(
                "commands end with '.', '!' or '?' (wff, br-mode, list-asserted, "
                "list-all, save, load, clear)"
            )
        ]

    # -- wff commands -------------------------------------------------------------

    def _eval_wff(self, body: str, terminator: str) -> list:
        try:
            tid = parse_to_id(body, self.store)
        except ParseError as exc:
            return [ev.error_event(str(exc), exc.line, exc.col)]
        if terminator == "?":
            work = deque([("query", tid)])
            return self._run(work, [])
        return self._assert(tid, forward=terminator == "!")

    def _assert(self, tid: int, forward: bool) -> list:
        problem = self._meta_assertion_problem(tid)
        if problem:
            return [ev.error_event(problem)]
        try:
            event = self.engine.add_hypothesis(self.ctx, tid)
        except ValueError as exc:
            return [ev.error_event(str(exc))]
        out = [ev.assert_event(self.store.label(tid), self.store.render(tid), event.added)]
        work: deque = deque()
        if forward:
            work.append(("forward", tid))
        if event.contradiction is not None:
            if self._replaying:
                self.ctx.tolerated.add(
                    frozenset((event.contradiction.new, event.contradiction.existing))
                )
            else:
                state = self._settle(event.contradiction, out)
                if state is not None:
                    self._pending = _Pending(state, work)
                    out.append(ev.pending_revision_event(self.revision_view()))
                    return out
        return self._run(work, out)

    def _meta_assertion_problem(self, tid: int) -> Optional[str]:
        """Reject orderings that break strictness and second sources."""
        node = self.store.node(tid)
        if node[0] != "atom" or len(node[2]) != 2:
            return None
        credibility = CredibilityView(self.store, self.base, self.ctx)
        if node[1] == GREATER_PREDICATE:
            kinds = {node[2][0][0], node[2][1][0]}
            if kinds == {"c"} or kinds == {"p"}:
                greater = ("source", node[2][0][1]) if node[2][0][0] == "c" else ("prop", node[2][0][1])
                lesser = ("source", node[2][1][1]) if node[2][1][0] == "c" else ("prop", node[2][1][1])
                try:
                    credibility.check_order(greater, lesser)
                except CycleError as exc:
                    return f"rejected: {exc}"
        elif node[1] == SOURCE_PREDICATE:
            if node[2][0][0] == "c" and node[2][1][0] == "p":
                prop = node[2][1][1]
                existing = credibility.sources.get(prop, [])
                if existing and node[2][0][1] not in existing:
                    return (
                        f"rejected: {self.store.label(prop)} already has source "
                        f"{existing[0]} (one source per proposition)"
                    )
        return None

    # -- inference driving -----------------------------------------------------------

    def _run(self, work: deque, out: list) -> list:
        while work:
            kind = work[0][0]
            if kind == "forward":
                _, tid = work.popleft()
                if self.base.believed(self.ctx, tid):
                    work.appendleft(("drive", self.engine.forward(self.ctx, tid)))
                continue
            if kind == "query":
                _, tid = work.popleft()
                work.appendleft(("answer", tid))
                work.appendleft(("drive", self.engine.backward(self.ctx, tid)))
                continue
            if kind == "answer":
                _, tid = work.popleft()
                active = self.base.active_supports(self.ctx, tid)
                result = "yes" if active else "unknown"
                out.append(
                    ev.answer_event(
                        result,
                        self.store.label(tid),
                        self.store.render(tid),
                        [self._labels(sorted(s)) for s in sorted(active, key=sorted)],
                    )
                )
                continue
            generator = work[0][1]
            try:
                item = next(generator)
            except StopIteration:
                work.popleft()
                continue
            except FiringCapExceeded as exc:
                work.popleft()
                out.append(ev.error_event(str(exc)))
                continue
            if isinstance(item, Derivation):
                out.append(
                    ev.derive_event(
                        self.store.label(item.prop),
                        self.store.render(item.prop),
                        self._labels(sorted(item.origin_set)),
                        item.rule,
                    )
                )
            elif isinstance(item, ContradictionReport):
                if self._replaying:
                    self.ctx.tolerated.add(frozenset((item.new, item.existing)))
                    continue
                state = self._settle(item, out)
                if state is not None:
                    self._pending = _Pending(state, work)
                    out.append(ev.pending_revision_event(self.revision_view()))
                    return out
        return out

    def _settle(self, report: ContradictionReport, out: list):
        """Revise episode by episode until this conflict and any further
        conflict still involving its contradictands is gone; returns the
        state when the user must decide."""
        while report is not None:
            state = self._handle_report(report, out)
            if state is not None:
                return state
            report = self._next_report((report.new, report.existing))
        return None

    def _next_report(self, contradictands: tuple):
        """A conflict one of the contradictands still has, if any: one
        proposition can contradict several beliefs at once, and each pair
        is revised as its own episode."""
        for tid in contradictands:
            if self.base.believed(self.ctx, tid):
                report = self.engine.detect_contradiction(self.ctx, tid)
                if report is not None:
                    return report
        return None

    def _handle_report(self, report: ContradictionReport, out: list):
        """Run one revision episode; returns the state when the user must
        decide."""
        out.append(
            ev.contradiction_event(
                self._wff(report.new), self._wff(report.existing), report.kind
            )
        )
        state = revise(self.store, self.base, self.ctx, report)
        for rev_pass in state.passes:
            out.append(
                ev.lists_event(
                    [self._labels(s) for s in rev_pass.sets],
                    self._labels(rev_pass.least_believed),
                    self._labels(rev_pass.most_common),
                    self._labels(rev_pass.fewest_supporting),
                    self._labels(rev_pass.culprits),
                )
            )
            if rev_pass.retraction is not None:
                out.append(self._retract_event(rev_pass.retraction, auto=True))
        return state if state.status == AWAITING_USER else None

    def _retract_event(self, report: RetractionReport, auto: bool):
        builder = ev.auto_retract_event if auto else ev.retract_event
        return builder(
            self.store.label(report.retracted),
            self.store.render(report.retracted),
            self._labels(report.casualties),
        )

    # -- revision answers ----------------------------------------------------------

    def _eval_revision_answer(self, line: str) -> list:
        lowered = line.lower()
        if lowered in ("keep.", "keep"):
            return self.answer_revision(keep=True)
        match = _RETRACT_RE.match(line)
        if not match:
            return [
                ev.error_event(
                    "a revision is pending; answer `retract <wffN>[, <wffN>...].` or `keep.`"
                )
            ]
        try:
            chosen = {
                self.store.resolve_label(part.strip())
                for part in match.group(1).split(",")
            }
        except UnknownTermError as exc:
            return [ev.error_event(f"unknown proposition {exc.args[0]!r}")]
        try:
            return self.answer_revision(retractions=chosen)
        except CoverageError as exc:
            sets = "  ".join("(" + " ".join(self._labels(s)) + ")" for s in exc.uncovered)
            return [ev.error_event(f"selection leaves inconsistent sets uncovered: {sets}")]
        except (KeyError, ValueError) as exc:
            return [ev.error_event(str(exc))]

    def answer_revision(self, retractions: Optional[set] = None, keep: bool = False) -> list:
        """Resolve the pending revision and resume any paused inference.

        Raises CoverageError (with the uncovered sets) or KeyError when the
        selection is invalid; the revision then stays pending."""
        if self._pending is None:
            raise RuntimeError("no revision pending")
        pending = self._pending
        if keep:
            apply_manual_choice(self.base, self.ctx, pending.state, keep=True)
            self._pending = None
            out = [ev.info_event("belief space left inconsistent")]
        else:
            reports = apply_manual_choice(
                self.base, self.ctx, pending.state, retractions=retractions
            )
            self._pending = None
            out = [self._retract_event(r, auto=False) for r in reports]
        follow_up = self._next_report(pending.state.contradictands)
        if follow_up is not None:
            state = self._settle(follow_up, out)
            if state is not None:
                self._pending = _Pending(state, pending.work)
                out.append(ev.pending_revision_event(self.revision_view()))
                return out
        return self._run(pending.work, out)

    # -- snapshots -------------------------------------------------------------------

    def snapshot_text(self) -> str:
        lines = [SNAPSHOT_HEADER, f"br-mode {self.ctx.br_mode}."]
        lines.extend(f"{self.store.render(h)}." for h in self.ctx.asserted())
        return "\n".join(lines) + "\n"

    def _save(self, path: str) -> list:
        if self._pending:
            return [ev.error_event("cannot save while a revision is pending")]
        try:
            directory = os.path.dirname(os.path.abspath(path))
            fd, tmp = tempfile.mkstemp(dir=directory, prefix=".snebr-")
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(self.snapshot_text())
            os.replace(tmp, path)
        except OSError as exc:
            return [ev.error_event(f"cannot save snapshot: {exc}")]
        return [
            ev.info_event(
                f"saved {len(self.ctx.hypotheses)} hypotheses to {path}"
            )
        ]

    def _load(self, path: str) -> list:
        try:
            replacement = Session.load_snapshot(
                path, depth_limit=self.depth_limit, firing_cap=self.firing_cap
            )
        except (OSError, SnapshotError) as exc:
            return [ev.error_event(f"cannot load snapshot: {exc}")]
        self.store = replacement.store
        self.base = replacement.base
        self.ctx = replacement.ctx
        self.engine = replacement.engine
        self._pending = None
        return [
            ev.info_event(
                f"loaded {len(self.ctx.hypotheses)} hypotheses from {path}"
            )
        ]

    @classmethod
    def load_snapshot(
        cls, path: str, depth_limit: int = 10, firing_cap: int = 10_000
    ) -> "Session":
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
        lines = text.splitlines()
        if not lines or lines[0].strip() != SNAPSHOT_HEADER:
            raise SnapshotError(
                f"not a snapshot (expected first line {SNAPSHOT_HEADER!r})"
            )
        session = cls(depth_limit=depth_limit, firing_cap=firing_cap)
        session._replaying = True
        try:
            for number, line in enumerate(lines[1:], start=2):
                if not line.strip():
                    continue
                for event in session.eval_line(line):
                    if event.type == "error":
                        raise SnapshotError(
                            f"line {number}: {event.payload['message']}"
                        )
        finally:
            session._replaying = False
        return session

    # -- helpers ------------------------------------------------------------------------

    def _labels(self, tids) -> list:
        return [self.store.label(t) for t in tids]

    def _wff(self, tid: int) -> dict:
        return {"wff": self.store.label(tid), "text": self.store.render(tid)}
