"""Simulated caregivers.

Three kinds: an oracle (always hands the correct object; testing
instrument that reads the robot's ground truth), a uniform-random
responder, and an associative learner with two routes:

  * a direct word->object strength A, delta-rule updated from trial
    valence and subject to multiplicative forgetting each trial, and
  * an outcome-expectancy route: word->expected-feedback strengths E and
    feedback->object strengths O, both grown on successes only.

Response evidence for object o on hearing word w is

    v(o) = A[w, o] + outcome_weight * sum_f E[w, f] * O[f, o]

sampled through a softmax. The outcome route is informative exactly when
positive feedback identifies the satisfied need, which is what separates
the two feedback conditions.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .feedback import POSITIVE_PAIRS, FeedbackSignal, PositivePair, Valence
from .homeostasis import NeedKind
from .language import Word
from .perception import OBJECT_FOR_NEED, OBJECTS, ObjectKind


@dataclass(frozen=True)
class AssociativeParams:
    alpha_a: float = 0.3
    alpha_e: float = 0.5
    alpha_o: float = 0.5
    outcome_weight: float = 1.0
    temperature: float = 0.25
    retention: float = 0.9

    def __post_init__(self) -> None:
        for name in ("alpha_a", "alpha_e", "alpha_o"):
            v = getattr(self, name)
            if not (0.0 < v <= 1.0):
                raise ValueError(f"{name} must lie in (0, 1]")
        if self.outcome_weight < 0:
            raise ValueError("outcome_weight must be >= 0")
        if self.temperature <= 0:
            raise ValueError("temperature must be > 0")
        if not (0.0 < self.retention <= 1.0):
            raise ValueError("retention must lie in (0, 1]")


@dataclass(frozen=True)
class AssociativeState:
    """Caregiver memory; unmentioned keys carry strength 0."""

    params: AssociativeParams
    a: dict[tuple[str, ObjectKind], float] = field(default_factory=dict)
    e: dict[tuple[str, PositivePair], float] = field(default_factory=dict)
    o: dict[tuple[PositivePair, ObjectKind], float] = field(default_factory=dict)


def response_evidence(state: AssociativeState, word: Word) -> np.ndarray:
    """Combined evidence per object (in canonical object order)."""
    w = word.text
    ev = np.zeros(len(OBJECTS))
    for i, obj in enumerate(OBJECTS):
        direct = state.a.get((w, obj), 0.0)
        outcome = sum(
            state.e.get((w, f), 0.0) * state.o.get((f, obj), 0.0)
            for f in POSITIVE_PAIRS
        )
        ev[i] = direct + state.params.outcome_weight * outcome
    return ev


def caregiver_respond(
    state: AssociativeState,
    word: Word,
    rng: np.random.Generator,
) -> ObjectKind:
    """Softmax draw over the evidence for each object."""
    logits = response_evidence(state, word) / state.params.temperature
    logits -= logits.max()
    p = np.exp(logits)
    p /= p.sum()
    return OBJECTS[int(rng.choice(len(OBJECTS), p=p))]


def caregiver_learn(
    state: AssociativeState,
    word: Word,
    chosen: ObjectKind,
    feedback: FeedbackSignal,
) -> AssociativeState:
    """Update both routes from the robot's feedback, then forget a little.

    The direct route moves toward +1/-1 by the trial valence; the outcome
    routes grow toward 1 only on successes, keyed by the observed
    (motion, sound) pair. Forgetting multiplies every direct strength by
    the retention factor.
    """
    w = word.text
    p = state.params
    r = 1.0 if feedback.valence is Valence.POSITIVE else -1.0
    a = dict(state.a)
    key = (w, chosen)
    a[key] = a.get(key, 0.0) + p.alpha_a * (r - a.get(key, 0.0))
    e = state.e
    o = state.o
    if feedback.valence is Valence.POSITIVE:
        pair = (feedback.motion, feedback.sound)
        e = dict(state.e)
        o = dict(state.o)
        ek = (w, pair)
        e[ek] = e.get(ek, 0.0) + p.alpha_e * (1.0 - e.get(ek, 0.0))
        ok = (pair, chosen)
        o[ok] = o.get(ok, 0.0) + p.alpha_o * (1.0 - o.get(ok, 0.0))
    a = {k: p.retention * v for k, v in a.items()}
    return replace(state, a=a, e=e, o=o)


def associative_state_dict(state: AssociativeState) -> dict:
    """Learned matrices in canonical (word x object / pair) dense form."""
    words = sorted({w for w, _ in state.a} | {w for w, _ in state.e})
    pairs = list(POSITIVE_PAIRS)
    return {
        "words": words,
        "objects": [o.value for o in OBJECTS],
        "pairs": [[m.value, s.value] for m, s in pairs],
        "direct": {
            "shape": [len(words), len(OBJECTS)],
            "data": [state.a.get((w, o), 0.0) for w in words for o in OBJECTS],
        },
        "expectancy": {
            "shape": [len(words), len(pairs)],
            "data": [state.e.get((w, f), 0.0) for w in words for f in pairs],
        },
        "outcome": {
            "shape": [len(pairs), len(OBJECTS)],
            "data": [state.o.get((f, o), 0.0) for f in pairs for o in OBJECTS],
        },
    }


class OracleCaregiver:
    """Always hands the object matching the robot's expressed need.

    Reads ground truth the humans never see; upper-bound fixture only.
    """

    kind = "oracle"

    def respond(
        self,
        word: Word,
        rng: np.random.Generator,
        expressed_need: Optional[NeedKind] = None,
    ) -> ObjectKind:
        if expressed_need is None:
            raise ValueError("oracle caregiver needs the expressed need")
        return OBJECT_FOR_NEED[expressed_need]

    def learn(self, word: Word, chosen: ObjectKind, feedback: FeedbackSignal) -> None:
        pass


class RandomCaregiver:
    kind = "random"

    def respond(
        self,
        word: Word,
        rng: np.random.Generator,
        expressed_need: Optional[NeedKind] = None,
    ) -> ObjectKind:
        return OBJECTS[int(rng.integers(len(OBJECTS)))]

    def learn(self, word: Word, chosen: ObjectKind, feedback: FeedbackSignal) -> None:
        pass


class AssociativeCaregiver:
    kind = "associative"

    def __init__(self, params: AssociativeParams | None = None) -> None:
        self.state = AssociativeState(params=params or AssociativeParams())

    def respond(
        self,
        word: Word,
        rng: np.random.Generator,
        expressed_need: Optional[NeedKind] = None,
    ) -> ObjectKind:
        return caregiver_respond(self.state, word, rng)

    def learn(self, word: Word, chosen: ObjectKind, feedback: FeedbackSignal) -> None:
        self.state = caregiver_learn(self.state, word, chosen, feedback)
