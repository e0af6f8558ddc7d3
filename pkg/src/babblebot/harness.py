"""Batch experiment runner: seeded condition sweeps, file outputs, summaries.

Run k of every condition uses seed_base + k, so the two feedback
conditions are compared on identical random substreams and the paired
per-seed difference isolates the feedback variable.

Outputs under the plan's output directory:

    plan.json               echo of the executed plan
    episodes/<run_id>.json  one episode log per run
    trials.csv              every trial of every run, flat
    aggregate_<cond>.csv    per-iteration mean/population-sd curves
    summary.json            per-condition stats + paired bootstrap CI
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence

import numpy as np

from . import metrics
from .episode_io import dump_episode, load_episode, validate_episode
from .errors import ConfigInvalid, CorruptLog, IoFailure, Mismatch, NoLogsFound
from .feedback import FeedbackCondition
from .rng import substream
from .session import EpisodeLog, SessionConfig, run_episode

BOOTSTRAP_RESAMPLES = 10_000


@dataclass(frozen=True)
class ExperimentPlan:
    base_config: SessionConfig = field(default_factory=SessionConfig)
    n_runs_per_condition: int = 50
    seed_base: int = 0
    conditions: tuple[FeedbackCondition, ...] = (
        FeedbackCondition.DOT,
        FeedbackCondition.NON_DOT,
    )
    output_dir: Path = Path("results")
    workers: int = 1

    def validate(self) -> None:
        if self.n_runs_per_condition < 1:
            raise ConfigInvalid("n_runs_per_condition must be >= 1")
        if not self.conditions:
            raise ConfigInvalid("at least one condition required")
        if len(set(self.conditions)) != len(self.conditions):
            raise ConfigInvalid("conditions must be distinct")
        if self.workers < 1:
            raise ConfigInvalid("workers must be >= 1")
        self.base_config.validate()
        if self.base_config.caregiver is None:
            raise ConfigInvalid("batch runs need a simulated caregiver")

    def to_dict(self) -> dict:
        return {
            "base_config": self.base_config.to_dict(),
            "n_runs_per_condition": self.n_runs_per_condition,
            "seed_base": self.seed_base,
            "conditions": [c.value for c in self.conditions],
            "output_dir": str(self.output_dir),
            "workers": self.workers,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ExperimentPlan":
        try:
            return cls(
                base_config=SessionConfig.from_dict(d.get("base_config", {})),
                n_runs_per_condition=int(d.get("n_runs_per_condition", 50)),
                seed_base=int(d.get("seed_base", 0)),
                conditions=tuple(
                    FeedbackCondition(c)
                    for c in d.get("conditions", ["dot", "non_dot"])
                ),
                output_dir=Path(d.get("output_dir", "results")),
                workers=int(d.get("workers", 1)),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigInvalid(str(exc)) from exc

    def run_configs(self) -> list[tuple[str, SessionConfig]]:
        """(run_id, config) for every run, in deterministic order."""
        from dataclasses import replace

        out = []
        for condition in self.conditions:
            for k in range(self.n_runs_per_condition):
                seed = self.seed_base + k
                run_id = f"{condition.value}_{seed:05d}"
                out.append(
                    (run_id, replace(self.base_config, condition=condition, seed=seed))
                )
        return out


def load_plan(path: Path) -> ExperimentPlan:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoFailure(f"cannot read plan {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"plan {path} is not valid JSON: {exc}") from exc
    return ExperimentPlan.from_dict(data)


# ---------------------------------------------------------------------------
# derived tables


TRIAL_COLUMNS = (
    "run_id",
    "condition",
    "seed",
    "n",
    "expressed_need",
    "word",
    "object",
    "reward",
    "mar",
    "converged",
    "convergence_time",
)


def trials_csv_text(runs: Sequence[tuple[str, EpisodeLog]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRIAL_COLUMNS)
    for run_id, log in runs:
        for t in log.trials:
            writer.writerow(
                [
                    run_id,
                    log.config.condition.value,
                    log.config.seed,
                    t.n,
                    t.expressed_need.value,
                    t.word.text,
                    t.offered_object.value,
                    t.reward,
                    repr(t.mar),
                    log.converged,
                    "" if log.convergence_time is None else log.convergence_time,
                ]
            )
    return buf.getvalue()


def aggregate_csv_text(
    condition: FeedbackCondition, logs: Sequence[EpisodeLog], m: int
) -> str:
    curves = metrics.aggregate_runs([log.rewards for log in logs], m)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["iteration", "mean_mar", "sd_mar", "count", "condition"])
    for c in curves:
        writer.writerow(
            [c.iteration, repr(c.mean), repr(c.sd), c.count, condition.value]
        )
    return buf.getvalue()


def paired_bootstrap_ci(
    diffs: np.ndarray,
    rng: np.random.Generator,
    n_resamples: int = BOOTSTRAP_RESAMPLES,
    alpha: float = 0.05,
) -> tuple[float, float]:
    """Percentile CI for the mean of paired differences."""
    diffs = np.asarray(diffs, dtype=float)
    idx = rng.integers(0, len(diffs), size=(n_resamples, len(diffs)))
    means = diffs[idx].mean(axis=1)
    lo, hi = np.percentile(means, [100 * alpha / 2, 100 * (1 - alpha / 2)])
    return float(lo), float(hi)


def summarize_logs(
    runs: Sequence[tuple[str, EpisodeLog]],
    seed_base: int,
) -> dict:
    """Per-condition stats plus, when both conditions ran on paired seeds,
    the bootstrap CI of the final-reward-average difference."""
    by_condition: dict[str, list[tuple[str, EpisodeLog]]] = {}
    for run_id, log in runs:
        by_condition.setdefault(log.config.condition.value, []).append((run_id, log))

    conditions = {}
    for cond in sorted(by_condition):
        logs = [log for _, log in by_condition[cond]]
        final_mars = [log.final_mar for log in logs]
        conv_times = [
            log.convergence_time for log in logs if log.convergence_time is not None
        ]
        conditions[cond] = {
            "runs": len(logs),
            "mean_final_mar": float(np.mean(final_mars)),
            "sd_final_mar": float(np.std(final_mars)),
            "convergence_fraction": float(np.mean([log.converged for log in logs])),
            "mean_convergence_time": (
                None if not conv_times else float(np.mean(conv_times))
            ),
            "mean_iterations": float(np.mean([len(log.trials) for log in logs])),
        }

    paired = None
    dot = FeedbackCondition.DOT.value
    non = FeedbackCondition.NON_DOT.value
    if dot in by_condition and non in by_condition:
        dot_by_seed = {log.config.seed: log for _, log in by_condition[dot]}
        non_by_seed = {log.config.seed: log for _, log in by_condition[non]}
        shared = sorted(set(dot_by_seed) & set(non_by_seed))
        if shared:
            diffs = np.array(
                [dot_by_seed[s].final_mar - non_by_seed[s].final_mar for s in shared]
            )
            lo, hi = paired_bootstrap_ci(diffs, substream(seed_base, "bootstrap"))
            paired = {
                "n_pairs": len(shared),
                "mean_diff_final_mar": float(diffs.mean()),
                "bootstrap_ci_95": [lo, hi],
                "n_resamples": BOOTSTRAP_RESAMPLES,
                "excludes_zero": bool(lo > 0.0 or hi < 0.0),
            }

    return {
        "schema": "experiment-summary/v1",
        "sd_definition": "population",
        "bootstrap_seed_base": seed_base,
        "conditions": conditions,
        "paired_dot_minus_non_dot": paired,
    }


def _run_one(args: tuple[str, dict]) -> tuple[str, dict]:
    from .episode_io import episode_to_dict

    run_id, config_dict = args
    log = run_episode(SessionConfig.from_dict(config_dict))
    return run_id, episode_to_dict(log)


def run_experiment(plan: ExperimentPlan) -> dict:
    """Execute every run of the plan and write the results bundle.

    Returns the summary document. Deterministic: re-running a plan
    rewrites byte-identical files.
    """
    from .episode_io import episode_from_dict

    plan.validate()
    out = Path(plan.output_dir)
    episodes_dir = out / "episodes"
    try:
        episodes_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"cannot create {episodes_dir}: {exc}") from exc

    jobs = [(run_id, cfg.to_dict()) for run_id, cfg in plan.run_configs()]
    if plan.workers > 1:
        with ProcessPoolExecutor(max_workers=plan.workers) as pool:
            results = dict(pool.map(_run_one, jobs))
    else:
        results = dict(map(_run_one, jobs))
    runs = [(run_id, episode_from_dict(results[run_id])) for run_id, _ in jobs]

    try:
        (out / "plan.json").write_text(
            json.dumps(plan.to_dict(), indent=2) + "\n", encoding="utf-8"
        )
        for run_id, log in runs:
            dump_episode(log, episodes_dir / f"{run_id}.json")
        (out / "trials.csv").write_text(trials_csv_text(runs), encoding="utf-8")
        for condition in plan.conditions:
            logs = [log for _, log in runs if log.config.condition is condition]
            (out / f"aggregate_{condition.value}.csv").write_text(
                aggregate_csv_text(condition, logs, plan.base_config.mar_window),
                encoding="utf-8",
            )
        summary = summarize_logs(runs, plan.seed_base)
        (out / "summary.json").write_text(
            json.dumps(summary, indent=2) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        raise IoFailure(f"cannot write results under {out}: {exc}") from exc
    return summary


def summarize(results_dir: Path) -> dict:
    """Recompute aggregates from raw logs and verify cached files match.

    Raises CorruptLog for schema violations and Mismatch when a cached
    CSV or summary disagrees with the recompute.
    """
    out = Path(results_dir)
    episodes_dir = out / "episodes"
    if not episodes_dir.is_dir():
        raise NoLogsFound(f"{out}: no episodes directory ({episodes_dir} missing)")
    files = sorted(episodes_dir.glob("*.json"))
    if not files:
        raise NoLogsFound(f"{episodes_dir}: zero episode logs found")

    runs: list[tuple[str, EpisodeLog]] = []
    for f in files:
        log = load_episode(f)
        try:
            validate_episode(log, name=f.name)
        except CorruptLog:
            raise
        runs.append((f.stem, log))

    seed_base = 0
    conditions: Optional[list[FeedbackCondition]] = None
    mar_window = runs[0][1].config.mar_window
    plan_path = out / "plan.json"
    if plan_path.exists():
        plan = load_plan(plan_path)
        seed_base = plan.seed_base
        conditions = list(plan.conditions)
        mar_window = plan.base_config.mar_window
    if conditions is None:
        seen = []
        for _, log in runs:
            if log.config.condition not in seen:
                seen.append(log.config.condition)
        conditions = seen

    expected = {"trials.csv": trials_csv_text(runs)}
    for condition in conditions:
        logs = [log for _, log in runs if log.config.condition is condition]
        if logs:
            expected[f"aggregate_{condition.value}.csv"] = aggregate_csv_text(
                condition, logs, mar_window
            )
    summary = summarize_logs(runs, seed_base)
    expected["summary.json"] = json.dumps(summary, indent=2) + "\n"

    for name, text in expected.items():
        cached = out / name
        if cached.exists() and cached.read_text(encoding="utf-8") != text:
            raise Mismatch(f"{cached}: cached file disagrees with recompute")
    return summary
