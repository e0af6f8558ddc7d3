"""Homeostatic needs, drives, and motivation.

Three internal needs (hunger, thirst, curiosity) each track a level in
[0, 1] that decays every iteration and is restored when the matching
object is received. The drive of a need is its deficit below optimal;
motivation amplifies the drive by the perceived stimulus intensity:

    motivation = drive + drive * stimulus

A need is expressed (babbled about) once its motivation crosses a fixed
threshold; among simultaneous crossers the strongest wins, exact ties
broken by a seeded draw.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional, Sequence, Union

import numpy as np


class NeedKind(Enum):
    HUNGER = "hunger"
    THIRST = "thirst"
    CURIOSITY = "curiosity"


# Canonical iteration order; all per-need loops and serializations use it.
NEEDS: tuple[NeedKind, ...] = (NeedKind.HUNGER, NeedKind.THIRST, NeedKind.CURIOSITY)


def need_index(need: NeedKind) -> int:
    return NEEDS.index(need)


def need_from_name(name: str) -> NeedKind:
    for need in NEEDS:
        if need.value == name:
            return need
    raise ValueError(f"unknown need name: {name!r}")


PerNeed = Mapping[NeedKind, float]


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


def broadcast_per_need(value: Union[float, PerNeed]) -> dict[NeedKind, float]:
    """Expand a scalar to a per-need map; pass maps through (copied)."""
    if isinstance(value, Mapping):
        missing = [n for n in NEEDS if n not in value]
        if missing:
            raise ValueError(f"per-need map missing {missing}")
        return {n: float(value[n]) for n in NEEDS}
    return {n: float(value) for n in NEEDS}


@dataclass(frozen=True)
class HomeostaticState:
    """Per-need levels plus the constants governing their dynamics.

    Levels always stay in [0, 1] (1.0 = fully satiated); decay and
    satiation rates are nonnegative.
    """

    level: PerNeed
    optimal: PerNeed
    decay_rate: PerNeed
    satiation_gain: PerNeed

    def __post_init__(self) -> None:
        for name in ("level", "optimal", "decay_rate", "satiation_gain"):
            per_need = getattr(self, name)
            if any(n not in per_need for n in NEEDS):
                raise ValueError(f"{name} must cover all needs")
        for n in NEEDS:
            if self.decay_rate[n] < 0 or self.satiation_gain[n] < 0:
                raise ValueError("decay_rate and satiation_gain must be >= 0")

    @classmethod
    def create(
        cls,
        level: Union[float, PerNeed] = 1.0,
        optimal: Union[float, PerNeed] = 1.0,
        decay_rate: Union[float, PerNeed] = 0.1,
        satiation_gain: Union[float, PerNeed] = 1.0,
    ) -> "HomeostaticState":
        return cls(
            level={n: _clamp01(v) for n, v in broadcast_per_need(level).items()},
            optimal={n: _clamp01(v) for n, v in broadcast_per_need(optimal).items()},
            decay_rate=broadcast_per_need(decay_rate),
            satiation_gain=broadcast_per_need(satiation_gain),
        )


@dataclass(frozen=True)
class Drive:
    """Deficit of a need: optimal level minus current level, floored at 0."""

    need: NeedKind
    value: float


@dataclass(frozen=True)
class StimulusIntensity:
    """Perceived intensity (in [0, 1]) of the stimulus able to satisfy a need."""

    need: NeedKind
    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _clamp01(float(self.value)))


@dataclass(frozen=True)
class Motivation:
    """Urgency of acting on a need: drive amplified by stimulus intensity."""

    need: NeedKind
    value: float


@dataclass(frozen=True)
class ExpressionThreshold:
    """Motivation level a need must reach before the robot expresses it."""

    theta: float

    def __post_init__(self) -> None:
        if not (0.0 < self.theta < 2.0):
            raise ValueError("theta must lie in (0, 2)")


def decay_step(state: HomeostaticState) -> HomeostaticState:
    """One discrete time step: every need's level drops by its decay rate."""
    new_level = {n: max(0.0, state.level[n] - state.decay_rate[n]) for n in NEEDS}
    return HomeostaticState(
        level=new_level,
        optimal=state.optimal,
        decay_rate=state.decay_rate,
        satiation_gain=state.satiation_gain,
    )


def satisfy(state: HomeostaticState, need: NeedKind) -> HomeostaticState:
    """Restore one need by its satiation gain, capped at the ceiling."""
    new_level = dict(state.level)
    new_level[need] = min(1.0, state.level[need] + state.satiation_gain[need])
    return HomeostaticState(
        level=new_level,
        optimal=state.optimal,
        decay_rate=state.decay_rate,
        satiation_gain=state.satiation_gain,
    )


def compute_drive(state: HomeostaticState, need: NeedKind) -> Drive:
    return Drive(need=need, value=max(0.0, state.optimal[need] - state.level[need]))


def compute_motivation(drive: Drive, stimulus: StimulusIntensity) -> Motivation:
    if drive.need is not stimulus.need:
        raise ValueError("drive and stimulus refer to different needs")
    return Motivation(need=drive.need, value=drive.value + drive.value * stimulus.value)


def select_expressed_need(
    motivations: Sequence[Motivation],
    theta: ExpressionThreshold,
    rng: np.random.Generator,
) -> Optional[NeedKind]:
    """Pick the need to express, if any motivation has reached the threshold.

    Among needs at or above theta the maximal motivation wins; exact ties
    are broken by a uniform draw from ``rng``.
    """
    by_need = {m.need: m for m in motivations}
    if set(by_need) != set(NEEDS) or len(motivations) != len(NEEDS):
        raise ValueError("exactly one motivation per need is required")
    eligible = [by_need[n] for n in NEEDS if by_need[n].value >= theta.theta]
    if not eligible:
        return None
    best = max(m.value for m in eligible)
    tied = [m.need for m in eligible if m.value == best]
    if len(tied) == 1:
        return tied[0]
    return tied[int(rng.integers(len(tied)))]
