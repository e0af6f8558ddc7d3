"""Audiovisual feedback tokens.

Success feedback is a (motion, sound) pair. Under differential outcomes
(DOT) the pair is a fixed bijection with the satisfied need; under the
non-differential control it is drawn uniformly per success, independent
of the need (optionally a fixed shuffled map per session). Failure is
always the same sad signal in both conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .homeostasis import NEEDS, NeedKind


class MotionToken(Enum):
    WAG_ANTENNAE = "wag_antennae"
    ARM_WAVE = "arm_wave"
    NOD_HEAD = "nod_head"
    LOOK_DOWN_LOWER_ANTENNAE = "look_down_lower_antennae"


class SoundToken(Enum):
    HAPPY_BEEP_A = "happy_beep_a"
    HAPPY_BEEP_B = "happy_beep_b"
    HAPPY_BEEP_C = "happy_beep_c"
    SAD_TONE = "sad_tone"


class Valence(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class FeedbackCondition(Enum):
    DOT = "dot"
    NON_DOT = "non_dot"


PositivePair = tuple[MotionToken, SoundToken]

# Fixed need -> (motion, sound) bijection used in the DOT condition.
DOT_MAP: dict[NeedKind, PositivePair] = {
    NeedKind.CURIOSITY: (MotionToken.WAG_ANTENNAE, SoundToken.HAPPY_BEEP_A),
    NeedKind.HUNGER: (MotionToken.ARM_WAVE, SoundToken.HAPPY_BEEP_B),
    NeedKind.THIRST: (MotionToken.NOD_HEAD, SoundToken.HAPPY_BEEP_C),
}

POSITIVE_PAIRS: tuple[PositivePair, ...] = tuple(DOT_MAP[n] for n in NEEDS)


@dataclass(frozen=True)
class FeedbackSignal:
    valence: Valence
    motion: MotionToken
    sound: SoundToken

    def __post_init__(self) -> None:
        if self.valence is Valence.NEGATIVE:
            if (
                self.motion is not MotionToken.LOOK_DOWN_LOWER_ANTENNAE
                or self.sound is not SoundToken.SAD_TONE
            ):
                raise ValueError("negative feedback is always look-down + sad tone")
        else:
            if (
                self.motion is MotionToken.LOOK_DOWN_LOWER_ANTENNAE
                or self.sound is SoundToken.SAD_TONE
            ):
                raise ValueError("positive feedback never uses the negative tokens")


@dataclass(frozen=True)
class FeedbackMap:
    """Condition plus the need->pair map used for positive feedback.

    For per-trial randomized non-DOT the map is ignored; for the fixed
    shuffle variant it holds the session's shuffled bijection.
    """

    condition: FeedbackCondition
    need_map: dict[NeedKind, PositivePair]
    per_trial_random: bool

    @classmethod
    def for_condition(
        cls,
        condition: FeedbackCondition,
        rng: np.random.Generator | None = None,
        fixed_shuffle: bool = False,
    ) -> "FeedbackMap":
        if condition is FeedbackCondition.DOT:
            return cls(condition=condition, need_map=dict(DOT_MAP), per_trial_random=False)
        if fixed_shuffle:
            if rng is None:
                raise ValueError("fixed shuffle needs a random source")
            perm = rng.permutation(len(POSITIVE_PAIRS))
            shuffled = {n: POSITIVE_PAIRS[int(perm[i])] for i, n in enumerate(NEEDS)}
            return cls(condition=condition, need_map=shuffled, per_trial_random=False)
        return cls(condition=condition, need_map=dict(DOT_MAP), per_trial_random=True)


def positive_feedback(
    fb_map: FeedbackMap,
    need: NeedKind,
    rng: np.random.Generator,
) -> FeedbackSignal:
    """Success signal: need-specific under DOT, need-independent otherwise."""
    if fb_map.per_trial_random:
        motion, sound = POSITIVE_PAIRS[int(rng.integers(len(POSITIVE_PAIRS)))]
    else:
        motion, sound = fb_map.need_map[need]
    return FeedbackSignal(valence=Valence.POSITIVE, motion=motion, sound=sound)


def negative_feedback() -> FeedbackSignal:
    """Failure signal, identical for every need and condition."""
    return FeedbackSignal(
        valence=Valence.NEGATIVE,
        motion=MotionToken.LOOK_DOWN_LOWER_ANTENNAE,
        sound=SoundToken.SAD_TONE,
    )
