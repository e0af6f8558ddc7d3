"""Command-line entry point.

    babblebot run --plan plan.json [--output-dir DIR]
    babblebot summarize RESULTS_DIR
    babblebot serve [--host H] [--port N] [--archive-dir DIR] [--seed S]
                    [--static-dir DIR]

Exit codes: 0 ok, 2 config error, 3 I/O error, 4 validation mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .errors import ConfigInvalid, CorruptLog, IoFailure, Mismatch

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_VALIDATION = 4


def _cmd_run(args: argparse.Namespace) -> int:
    from .harness import load_plan, run_experiment

    plan = load_plan(Path(args.plan))
    if args.output_dir is not None:
        plan = replace(plan, output_dir=Path(args.output_dir))
    if args.workers is not None:
        plan = replace(plan, workers=args.workers)
    summary = run_experiment(plan)
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def _cmd_summarize(args: argparse.Namespace) -> int:
    from .harness import summarize

    summary = summarize(Path(args.results_dir))
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        archive_dir=None if args.archive_dir is None else Path(args.archive_dir),
        seed=args.seed,
        static_dir=None if args.static_dir is None else Path(args.static_dir),
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="babblebot",
        description="Run, summarize, and serve babbling-robot learning sessions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a batch experiment plan")
    p_run.add_argument("--plan", required=True, help="path to a plan JSON file")
    p_run.add_argument("--output-dir", default=None, help="override the plan output dir")
    p_run.add_argument("--workers", type=int, default=None, help="parallel worker count")
    p_run.set_defaults(func=_cmd_run)

    p_sum = sub.add_parser("summarize", help="recompute and verify a results dir")
    p_sum.add_argument("results_dir", help="directory produced by `run`")
    p_sum.set_defaults(func=_cmd_summarize)

    p_serve = sub.add_parser("serve", help="serve live caregiver sessions over HTTP")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--archive-dir", default=None, help="episode archive directory")
    p_serve.add_argument("--seed", type=int, default=0, help="condition-assignment seed")
    p_serve.add_argument(
        "--static-dir", default=None, help="built caregiver UI to serve at /"
    )
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CorruptLog, Mismatch) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except IoFailure as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
