#!/usr/bin/env python3
"""Render reward curves from a results directory's aggregate CSVs.

Usage:
    python scripts/plot_curves.py results/dot_comparison [--out curves.png]
"""

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_aggregate(path: Path):
    iterations, means, sds = [], [], []
    with path.open() as f:
        for row in csv.DictReader(f):
            iterations.append(int(row["iteration"]))
            means.append(float(row["mean_mar"]))
            sds.append(float(row["sd_mar"]))
    return iterations, means, sds


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("results_dir", type=Path)
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args()

    files = sorted(args.results_dir.glob("aggregate_*.csv"))
    if not files:
        raise SystemExit(f"no aggregate CSVs under {args.results_dir}")

    fig, axes = plt.subplots(1, len(files), figsize=(5 * len(files), 4), sharey=True)
    if len(files) == 1:
        axes = [axes]
    for ax, path in zip(axes, files):
        label = path.stem.removeprefix("aggregate_")
        its, means, sds = read_aggregate(path)
        ax.plot(its, means, marker="o", label=label)
        ax.fill_between(
            its,
            [m - s for m, s in zip(means, sds)],
            [m + s for m, s in zip(means, sds)],
            alpha=0.25,
        )
        ax.axhline(0.8, linestyle="--", linewidth=0.8, color="gray")
        ax.set_xlabel("iteration")
        ax.set_title(label)
        ax.set_ylim(-1.05, 1.05)
    axes[0].set_ylabel("reward moving average")
    fig.tight_layout()
    out = args.out or args.results_dir / "curves.png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
