"""Command-line entry point: interactive shell by default, --serve for HTTP."""

from __future__ import annotations

import argparse
import os
import sys

from .repl import run_repl
from .session import Session, SnapshotError


def _int_env(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dobs",
        description="Deductively open belief space with credibility-guided revision.",
    )
    parser.add_argument(
        "--serve",
        metavar="ADDR",
        help="run the HTTP/JSON service on host:port instead of the shell",
    )
    parser.add_argument(
        "--load", metavar="PATH", help="start from a snapshot file", default=None
    )
    parser.add_argument(
        "--depth-limit",
        type=int,
        default=_int_env("DOBS_DEPTH_LIMIT", 10),
        help="backward-chaining depth limit (env DOBS_DEPTH_LIMIT)",
    )
    parser.add_argument(
        "--firing-cap",
        type=int,
        default=_int_env("DOBS_FIRING_CAP", 10_000),
        help="rule firings allowed per inference run (env DOBS_FIRING_CAP)",
    )
    parser.add_argument(
        "--max-sessions",
        type=int,
        default=_int_env("DOBS_MAX_SESSIONS", 64),
        help="service session capacity (env DOBS_MAX_SESSIONS)",
    )
    parser.add_argument(
        "--idle-timeout",
        type=float,
        default=float(os.environ.get("DOBS_IDLE_TIMEOUT", 3600)),
        help="seconds before an idle service session expires (env DOBS_IDLE_TIMEOUT)",
    )
    return parser


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    if args.serve:
        from .service import ServiceConfig, serve

        serve(
            args.serve,
            ServiceConfig(
                max_sessions=args.max_sessions,
                idle_timeout=args.idle_timeout,
                depth_limit=args.depth_limit,
                firing_cap=args.firing_cap,
            ),
        )
        return 0
    if args.load:
        try:
            session = Session.load_snapshot(
                args.load, depth_limit=args.depth_limit, firing_cap=args.firing_cap
            )
        except (OSError, SnapshotError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    else:
        session = Session(depth_limit=args.depth_limit, firing_cap=args.firing_cap)
    run_repl(session)
    return 0


if __name__ == "__main__":
    sys.exit(main())
