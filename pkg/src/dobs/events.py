"""Typed transcript events.

Every user-visible outcome is an event; the REPL renders them as text and
the HTTP service serializes them as JSON, so both front ends replay
identically from the same inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class Event:
    type: str
    payload: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"type": self.type, **self.payload}


def assert_event(label: str, text: str, new: bool) -> Event:
    return Event("assert", {"wff": label, "text": text, "new": new})


def derive_event(label: str, text: str, origin_set: list, rule: str) -> Event:
    return Event(
        "derive", {"wff": label, "text": text, "origin_set": origin_set, "rule": rule}
    )


def contradiction_event(new: dict, existing: dict, kind: str) -> Event:
    return Event("contradiction", {"new": new, "existing": existing, "kind": kind})


def lists_event(sets: list, lb: list, mc: list, fs: list, cl: list) -> Event:
    return Event("lists", {"sets": sets, "lb": lb, "mc": mc, "fs": fs, "cl": cl})


def auto_retract_event(label: str, text: str, casualties: list) -> Event:
    return Event(
        "auto_retract", {"wff": label, "text": text, "casualties": casualties}
    )


def retract_event(label: str, text: str, casualties: list) -> Event:
    return Event("retract", {"wff": label, "text": text, "casualties": casualties})


def pending_revision_event(state: dict) -> Event:
    return Event("pending_revision", state)


def answer_event(result: str, label: str, text: str, origin_sets: list) -> Event:
    return Event(
        "answer",
        {"result": result, "wff": label, "text": text, "origin_sets": origin_sets},
    )


def beliefs_event(scope: str, rows: list) -> Event:
    return Event("beliefs", {"scope": scope, "rows": rows})


def info_event(message: str) -> Event:
    return Event("info", {"message": message})


def error_event(message: str, line: Optional[int] = None, col: Optional[int] = None) -> Event:
    payload: dict = {"message": message}
    if line is not None:
        payload["line"] = line
        payload["col"] = col
    return Event("error", payload)


def _group(labels: list) -> str:
    return "(" + " ".join(labels) + ")"


def render_lines(event: Event) -> list:
    """Transcript text for one event, in the interactive console style."""
    p = event.payload
    if event.type == "assert":
        note = "" if p["new"] else "  (already asserted)"
        return [f"{p['wff']}: {p['text']}{note}"]
    if event.type == "derive":
        return [f"derived {p['wff']}: {p['text']}  <{','.join(p['origin_set'])}>"]
    if event.type == "contradiction":
        return [
            "The contradiction involves the newly derived proposition:",
            f"    {p['new']['wff']}: {p['new']['text']}",
            "and the previously existing proposition:",
            f"    {p['existing']['wff']}: {p['existing']['text']}",
        ]
    if event.type == "lists":
        lines = [
            "The following sets are known to be inconsistent. To make the",
            "context consistent, remove at least one hypothesis from each of the sets:",
            "    " + "  ".join(_group(s) for s in p["sets"]),
            f"The least believed hypotheses: {_group(p['lb'])}",
            f"The most common hypotheses: {_group(p['mc'])}",
            f"The hypotheses supporting the fewest nodes: {_group(p['fs'])}",
            f"The recommended culprit list: {_group(p['cl'])}",
        ]
        return lines
    if event.type == "auto_retract":
        lines = [
            "I will remove the following node:",
            f"    {p['wff']}: {p['text']}",
        ]
        if p["casualties"]:
            lines.append("    no longer believed: " + " ".join(p["casualties"]))
        return lines
    if event.type == "retract":
        lines = [f"retracted {p['wff']}: {p['text']}"]
        if p["casualties"]:
            lines.append("    no longer believed: " + " ".join(p["casualties"]))
        return lines
    if event.type == "pending_revision":
        return [
            "Belief revision required. Remove at least one hypothesis from each",
            "set (`retract <wffN>[, <wffN>...].`) or answer `keep.`:",
            "    " + "  ".join(_group(s) for s in p["sets"]),
        ]
    if event.type == "answer":
        if p["result"] == "yes":
            sets = "  ".join(_group(s) for s in p["origin_sets"])
            return [f"yes: {p['wff']}: {p['text']}", f"    origin sets: {sets}"]
        return [f"unknown: {p['text']}"]
    if event.type == "beliefs":
        lines = []
        for row in p["rows"]:
            flags = []
            if row["hypothesis"]:
                flags.append("hyp")
            if row["believed"]:
                flags.append("believed")
            if row["source"]:
                flags.append(f"source={row['source']}")
            sets = "  ".join(_group(s) for s in row["origin_sets"])
            suffix = f"  [{', '.join(flags)}]" if flags else "  [unasserted]"
            lines.append(f"{row['wff']}: {row['text']}{suffix}  {sets}".rstrip())
        return lines or ["(nothing)"]
    if event.type == "info":
        return [p["message"]]
    if event.type == "error":
        return [f"error: {p['message']}"]
    return [str(event.to_dict())]
