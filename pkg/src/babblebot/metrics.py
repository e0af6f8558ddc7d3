"""Reward metrics: moving average, convergence time, cross-run curves.

The moving average of rewards at iteration n averages all rewards while
fewer than m have arrived, and the last m afterwards:

    mar(n) = mean(r[1..n])        if n < m
             mean(r[n-m+1..n])    otherwise
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EmptyInput, IndexOutOfRange


def moving_average_reward(rewards: Sequence[int], m: int, n: int) -> float:
    """Windowed reward average at 1-based iteration n."""
    if m < 1:
        raise IndexOutOfRange(f"window m={m} must be >= 1")
    if not (1 <= n <= len(rewards)):
        raise IndexOutOfRange(f"n={n} outside series of length {len(rewards)}")
    if n < m:
        return sum(rewards[:n]) / n
    return sum(rewards[n - m : n]) / m


def mar_curve(rewards: Sequence[int], m: int) -> list[float]:
    return [moving_average_reward(rewards, m, n) for n in range(1, len(rewards) + 1)]


def convergence_time(
    rewards: Sequence[int], m: int, mar_threshold: float
) -> Optional[int]:
    """Smallest n whose moving average reaches the threshold, if any."""
    for n in range(1, len(rewards) + 1):
        if moving_average_reward(rewards, m, n) >= mar_threshold:
            return n
    return None


@dataclass(frozen=True)
class CurveAggregate:
    """Mean and population sd of the reward average at one iteration."""

    iteration: int
    mean: float
    sd: float
    count: int


def aggregate_runs(
    series_list: Sequence[Sequence[int]], m: int
) -> list[CurveAggregate]:
    """Per-iteration mean/sd of the moving average over all runs long enough.

    Runs end at different iterations; iteration n aggregates only the
    runs with at least n rewards, and records how many contributed.
    """
    if not series_list:
        raise EmptyInput("no reward series to aggregate")
    max_len = max(len(s) for s in series_list)
    out: list[CurveAggregate] = []
    for n in range(1, max_len + 1):
        values = [
            moving_average_reward(s, m, n) for s in series_list if len(s) >= n
        ]
        mean = sum(values) / len(values)
        var = sum((v - mean) ** 2 for v in values) / len(values)
        out.append(
            CurveAggregate(iteration=n, mean=mean, sd=math.sqrt(var), count=len(values))
        )
    return out
