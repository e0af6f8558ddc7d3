#!/usr/bin/env python3
"""Run the paired feedback-condition comparison and print the summary.

Usage:
    python scripts/run_dot_comparison.py [--runs 200] [--seed-base 1000]
                                         [--out results/dot_comparison]
"""

import argparse
import json
from pathlib import Path

from babblebot.harness import ExperimentPlan, run_experiment
from babblebot.session import SessionConfig


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=200)
    parser.add_argument("--seed-base", type=int, default=1000)
    parser.add_argument("--out", type=Path, default=Path("results/dot_comparison"))
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    plan = ExperimentPlan(
        base_config=SessionConfig(),
        n_runs_per_condition=args.runs,
        seed_base=args.seed_base,
        output_dir=args.out,
        workers=args.workers,
    )
    summary = run_experiment(plan)
    print(json.dumps(summary, indent=2))
    paired = summary["paired_dot_minus_non_dot"]
    lo, hi = paired["bootstrap_ci_95"]
    print(
        f"\nfinal reward average, dot minus non-dot: "
        f"{paired['mean_diff_final_mar']:+.3f} (95% CI [{lo:+.3f}, {hi:+.3f}]) "
        f"over {paired['n_pairs']} paired seeds"
    )


if __name__ == "__main__":
    main()
