"""Line-oriented interactive shell over a session."""

from __future__ import annotations

import sys

from .events import render_lines
from .session import Session

BANNER = "dobs interactive shell. Commands end with '.', '!' or '?'. Ctrl-D exits."


def run_repl(session: Session, stdin=None, stdout=None) -> None:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    interactive = stdin.isatty()
    if interactive:
        print(BANNER, file=stdout)
    while True:
        prompt = "revise> " if session.pending_revision else "> "
        if interactive:
            stdout.write(prompt)
            stdout.flush()
        line = stdin.readline()
        if not line:
            break
        if not line.strip():
            continue
        for event in session.eval_line(line):
            for text in render_lines(event):
                print(text, file=stdout)
