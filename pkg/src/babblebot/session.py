"""The interaction loop: one session of robot-caregiver trials.

Each iteration follows the same cycle: needs decay until one crosses the
expression threshold, the robot babbles a word for it, the caregiver
offers an object, the trial is scored (+1 when the object satisfies the
expressed need), feedback is emitted per the session's condition, and
all learners update. The session ends once the reward moving average
holds above the convergence threshold after a minimum number of
iterations, or at a hard iteration cap.

Everything random flows from one session seed through named substreams,
so a session is a pure function of its config (plus the caregiver's
choices, for live sessions).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Optional, Sequence, Union

import numpy as np

from . import metrics
from .caregivers import (
    AssociativeCaregiver,
    AssociativeParams,
    OracleCaregiver,
    RandomCaregiver,
)
from .errors import (
    ConfigInvalid,
    DegenerateConfig,
    RangeViolation,
    SessionTerminated,
    UnexpectedInput,
    UnlabeledCluster,
)
from .feedback import (
    FeedbackCondition,
    FeedbackMap,
    FeedbackSignal,
    negative_feedback,
    positive_feedback,
)
from .homeostasis import (
    NEEDS,
    ExpressionThreshold,
    HomeostaticState,
    NeedKind,
    broadcast_per_need,
    compute_drive,
    compute_motivation,
    decay_step,
    satisfy,
    select_expressed_need,
)
from .language import (
    DEFAULT_SYLLABLES,
    EpsilonGreedy,
    EpsilonSchedule,
    Softmax,
    SelectionPolicy,
    Vocabulary,
    Word,
    WordNeedValues,
    build_vocabulary,
    choose_word,
    update_value,
)
from .perception import ObjectKind, PerceptionModel, satisfies, synth_features
from .rng import substream

DECAY_SUBSTEP_CAP = 1000


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class NeedParams:
    decay_rate: Mapping[NeedKind, float]
    satiation_gain: Mapping[NeedKind, float]
    optimal: Mapping[NeedKind, float]
    initial_level: Mapping[NeedKind, float]

    @classmethod
    def create(
        cls,
        decay_rate: Union[float, Mapping[NeedKind, float]] = 0.1,
        satiation_gain: Union[float, Mapping[NeedKind, float]] = 1.0,
        optimal: Union[float, Mapping[NeedKind, float]] = 1.0,
        initial_level: Union[float, Mapping[NeedKind, float]] = 1.0,
    ) -> "NeedParams":
        return cls(
            decay_rate=broadcast_per_need(decay_rate),
            satiation_gain=broadcast_per_need(satiation_gain),
            optimal=broadcast_per_need(optimal),
            initial_level=broadcast_per_need(initial_level),
        )

    def to_dict(self) -> dict:
        return {
            name: {n.value: getattr(self, name)[n] for n in NEEDS}
            for name in ("decay_rate", "satiation_gain", "optimal", "initial_level")
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "NeedParams":
        def read(name: str, default: float):
            v = d.get(name, default)
            if isinstance(v, Mapping):
                return {NeedKind(k): float(x) for k, x in v.items()}
            return float(v)

        return cls.create(
            decay_rate=read("decay_rate", 0.1),
            satiation_gain=read("satiation_gain", 1.0),
            optimal=read("optimal", 1.0),
            initial_level=read("initial_level", 1.0),
        )


@dataclass(frozen=True)
class VocabularyConfig:
    syllables: tuple[str, ...] = DEFAULT_SYLLABLES
    n_words: int = 6
    step_size: float = 0.5

    def to_dict(self) -> dict:
        return {
            "syllables": list(self.syllables),
            "n_words": self.n_words,
            "step_size": self.step_size,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "VocabularyConfig":
        return cls(
            syllables=tuple(d.get("syllables", DEFAULT_SYLLABLES)),
            n_words=int(d.get("n_words", 6)),
            step_size=float(d.get("step_size", 0.5)),
        )


@dataclass(frozen=True)
class PolicyConfig:
    kind: str = "epsilon_greedy"  # or "softmax"
    epsilon_start: float = 1.0
    epsilon_end: float = 0.1
    epsilon_horizon: int = 6
    temperature: float = 0.25

    def schedule(self) -> EpsilonSchedule:
        return EpsilonSchedule(
            start=self.epsilon_start, end=self.epsilon_end, horizon=self.epsilon_horizon
        )

    def policy_at(self, n_expressions: int) -> SelectionPolicy:
        if self.kind == "epsilon_greedy":
            return EpsilonGreedy(self.schedule().epsilon_at(n_expressions))
        return Softmax(self.temperature)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "epsilon_start": self.epsilon_start,
            "epsilon_end": self.epsilon_end,
            "epsilon_horizon": self.epsilon_horizon,
            "temperature": self.temperature,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "PolicyConfig":
        return cls(
            kind=str(d.get("kind", "epsilon_greedy")),
            epsilon_start=float(d.get("epsilon_start", 1.0)),
            epsilon_end=float(d.get("epsilon_end", 0.1)),
            epsilon_horizon=int(d.get("epsilon_horizon", 6)),
            temperature=float(d.get("temperature", 0.25)),
        )


@dataclass(frozen=True)
class CaregiverConfig:
    kind: str = "associative"  # oracle | random | associative
    alpha_a: float = 0.3
    alpha_e: float = 0.5
    alpha_o: float = 0.5
    outcome_weight: float = 1.0
    temperature: float = 0.25
    retention: float = 0.9

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "alpha_a": self.alpha_a,
            "alpha_e": self.alpha_e,
            "alpha_o": self.alpha_o,
            "outcome_weight": self.outcome_weight,
            "temperature": self.temperature,
            "retention": self.retention,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "CaregiverConfig":
        return cls(
            kind=str(d.get("kind", "associative")),
            alpha_a=float(d.get("alpha_a", 0.3)),
            alpha_e=float(d.get("alpha_e", 0.5)),
            alpha_o=float(d.get("alpha_o", 0.5)),
            outcome_weight=float(d.get("outcome_weight", 1.0)),
            temperature=float(d.get("temperature", 0.25)),
            retention=float(d.get("retention", 0.9)),
        )


@dataclass(frozen=True)
class PerceptionConfig:
    dim: int = 16
    noise_sigma: float = 0.05
    som_rows: int = 4
    som_cols: int = 4
    som_lr_start: float = 0.5
    som_lr_end: float = 0.01
    som_radius_start: Optional[float] = None  # default: max(rows, cols) / 2
    som_radius_end: float = 1.0
    som_decay_steps: int = 150
    learning_rate: float = 0.1

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "noise_sigma": self.noise_sigma,
            "som_rows": self.som_rows,
            "som_cols": self.som_cols,
            "som_lr_start": self.som_lr_start,
            "som_lr_end": self.som_lr_end,
            "som_radius_start": self.som_radius_start,
            "som_radius_end": self.som_radius_end,
            "som_decay_steps": self.som_decay_steps,
            "learning_rate": self.learning_rate,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "PerceptionConfig":
        radius = d.get("som_radius_start")
        return cls(
            dim=int(d.get("dim", 16)),
            noise_sigma=float(d.get("noise_sigma", 0.05)),
            som_rows=int(d.get("som_rows", 4)),
            som_cols=int(d.get("som_cols", 4)),
            som_lr_start=float(d.get("som_lr_start", 0.5)),
            som_lr_end=float(d.get("som_lr_end", 0.01)),
            som_radius_start=None if radius is None else float(radius),
            som_radius_end=float(d.get("som_radius_end", 1.0)),
            som_decay_steps=int(d.get("som_decay_steps", 150)),
            learning_rate=float(d.get("learning_rate", 0.1)),
        )


@dataclass(frozen=True)
class SessionConfig:
    condition: FeedbackCondition = FeedbackCondition.DOT
    seed: int = 0
    theta: float = 0.6
    needs: NeedParams = field(default_factory=NeedParams.create)
    vocabulary: VocabularyConfig = field(default_factory=VocabularyConfig)
    policy: PolicyConfig = field(default_factory=PolicyConfig)
    caregiver: Optional[CaregiverConfig] = field(default_factory=CaregiverConfig)
    min_iterations: int = 12
    max_iterations: int = 16
    convergence_mar_threshold: float = 0.8
    mar_window: int = 5
    perception: PerceptionConfig = field(default_factory=PerceptionConfig)
    perception_in_loop: bool = False
    nondot_fixed_shuffle: bool = False

    def validate(self) -> None:
        """Raise ConfigInvalid on any out-of-range parameter."""

        def err(msg: str) -> None:
            raise ConfigInvalid(msg)

        if not (0.0 < self.theta < 2.0):
            err(f"theta={self.theta} outside (0, 2)")
        for n in NEEDS:
            if self.needs.decay_rate[n] < 0 or self.needs.satiation_gain[n] < 0:
                err("decay_rate and satiation_gain must be >= 0")
            for name in ("optimal", "initial_level"):
                v = getattr(self.needs, name)[n]
                if not (0.0 <= v <= 1.0):
                    err(f"{name} must lie in [0, 1]")
        if self.vocabulary.n_words < len(NEEDS):
            err(f"vocabulary needs at least {len(NEEDS)} words")
        if self.vocabulary.n_words > len(self.vocabulary.syllables) ** 2:
            err("n_words exceeds syllable-pair capacity")
        if not (0.0 < self.vocabulary.step_size <= 1.0):
            err("step_size must lie in (0, 1]")
        if self.policy.kind not in ("epsilon_greedy", "softmax"):
            err(f"unknown policy kind {self.policy.kind!r}")
        for name in ("epsilon_start", "epsilon_end"):
            v = getattr(self.policy, name)
            if not (0.0 <= v <= 1.0):
                err(f"{name} must lie in [0, 1]")
        if self.policy.epsilon_horizon < 0:
            err("epsilon_horizon must be >= 0")
        if self.policy.temperature <= 0:
            err("policy temperature must be > 0")
        if self.caregiver is not None:
            if self.caregiver.kind not in ("oracle", "random", "associative"):
                err(f"unknown caregiver kind {self.caregiver.kind!r}")
            try:
                _assoc_params(self.caregiver)
            except ValueError as exc:
                err(str(exc))
        if self.min_iterations < 1 or self.max_iterations < 1:
            err("iteration bounds must be >= 1")
        if self.mar_window < 1:
            err("mar_window must be >= 1")
        p = self.perception
        if p.dim < 3:
            err("feature dim must be >= 3")
        if p.noise_sigma < 0:
            err("noise_sigma must be >= 0")
        if p.som_rows < 1 or p.som_cols < 1:
            err("map grid must be at least 1x1")
        if not (0.0 < p.learning_rate <= 1.0):
            err("perceptron learning_rate must lie in (0, 1]")

    def to_dict(self) -> dict:
        return {
            "condition": self.condition.value,
            "seed": self.seed,
            "theta": self.theta,
            "needs": self.needs.to_dict(),
            "vocabulary": self.vocabulary.to_dict(),
            "policy": self.policy.to_dict(),
            "caregiver": None if self.caregiver is None else self.caregiver.to_dict(),
            "min_iterations": self.min_iterations,
            "max_iterations": self.max_iterations,
            "convergence_mar_threshold": self.convergence_mar_threshold,
            "mar_window": self.mar_window,
            "perception": self.perception.to_dict(),
            "perception_in_loop": self.perception_in_loop,
            "nondot_fixed_shuffle": self.nondot_fixed_shuffle,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "SessionConfig":
        try:
            caregiver = d.get("caregiver", CaregiverConfig().to_dict())
            return cls(
                condition=FeedbackCondition(d.get("condition", "dot")),
                seed=int(d.get("seed", 0)),
                theta=float(d.get("theta", 0.6)),
                needs=NeedParams.from_dict(d.get("needs", {})),
                vocabulary=VocabularyConfig.from_dict(d.get("vocabulary", {})),
                policy=PolicyConfig.from_dict(d.get("policy", {})),
                caregiver=None if caregiver is None else CaregiverConfig.from_dict(caregiver),
                min_iterations=int(d.get("min_iterations", 12)),
                max_iterations=int(d.get("max_iterations", 16)),
                convergence_mar_threshold=float(d.get("convergence_mar_threshold", 0.8)),
                mar_window=int(d.get("mar_window", 5)),
                perception=PerceptionConfig.from_dict(d.get("perception", {})),
                perception_in_loop=bool(d.get("perception_in_loop", False)),
                nondot_fixed_shuffle=bool(d.get("nondot_fixed_shuffle", False)),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigInvalid(str(exc)) from exc


def _assoc_params(cfg: CaregiverConfig) -> AssociativeParams:
    return AssociativeParams(
        alpha_a=cfg.alpha_a,
        alpha_e=cfg.alpha_e,
        alpha_o=cfg.alpha_o,
        outcome_weight=cfg.outcome_weight,
        temperature=cfg.temperature,
        retention=cfg.retention,
    )


def build_caregiver(cfg: CaregiverConfig):
    if cfg.kind == "oracle":
        return OracleCaregiver()
    if cfg.kind == "random":
        return RandomCaregiver()
    if cfg.kind == "associative":
        return AssociativeCaregiver(_assoc_params(cfg))
    raise ConfigInvalid(f"unknown caregiver kind {cfg.kind!r}")


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class SamRating:
    """Self-assessment ratings, each dimension on a 1-5 scale."""

    valence: int
    arousal: int
    dominance: int
    likert_answers: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        for name in ("valence", "arousal", "dominance"):
            v = getattr(self, name)
            if not isinstance(v, int) or not (1 <= v <= 5):
                raise RangeViolation(f"{name}={v!r} outside 1..5")
        for qid, answer in self.likert_answers:
            if not isinstance(answer, int) or not (1 <= answer <= 5):
                raise RangeViolation(f"likert {qid!r}={answer!r} outside 1..5")


@dataclass(frozen=True)
class TrialRecord:
    n: int
    expressed_need: NeedKind
    word: Word
    offered_object: ObjectKind
    reward: int
    feedback: FeedbackSignal
    mar: float
    homeostatic_snapshot: Mapping[NeedKind, float]
    latency_ms: Optional[int] = None
    recognized_object: Optional[ObjectKind] = None


@dataclass
class EpisodeLog:
    config: SessionConfig
    trials: list[TrialRecord]
    converged: bool
    convergence_time: Optional[int]
    final_q: WordNeedValues
    survey: Optional[SamRating] = None
    # final learned weights (dense arrays with shape headers): the
    # perception map/readout plus, for associative caregivers, their
    # learned matrices
    models: Optional[dict] = None

    @property
    def rewards(self) -> list[int]:
        return [t.reward for t in self.trials]

    @property
    def final_mar(self) -> float:
        return self.trials[-1].mar


# ---------------------------------------------------------------------------
# state machine


class SessionPhase(Enum):
    IDLE = "idle"
    NEED_ARISES = "need_arises"
    BABBLED = "babbled"
    AWAITING_OBJECT = "awaiting_object"
    EVALUATED = "evaluated"
    FEEDBACK_EMITTED = "feedback_emitted"
    UPDATED = "updated"
    TERMINATED = "terminated"


@dataclass(frozen=True)
class Event:
    kind: str
    payload: dict


def termination_check(rewards: Sequence[int], config: SessionConfig) -> bool:
    """Session end rule: converged after the minimum, or at the hard cap."""
    n = len(rewards)
    if n == 0:
        return False
    mar = metrics.moving_average_reward(rewards, config.mar_window, n)
    if n >= config.min_iterations and mar >= config.convergence_mar_threshold:
        return True
    return n >= config.max_iterations


STREAM_NAMES = ("policy", "ties", "feedback", "caregiver", "noise")


class Session:
    """One interaction session driven phase by phase via advance().

    The caregiver argument is a simulated responder or None for live
    sessions, where objects arrive from outside through advance(input=...).
    """

    def __init__(self, config: SessionConfig, caregiver=None) -> None:
        config.validate()
        self.config = config
        self.caregiver = caregiver
        self.streams = {name: substream(config.seed, name) for name in STREAM_NAMES}
        self.theta = ExpressionThreshold(config.theta)
        self.vocabulary: Vocabulary = build_vocabulary(
            config.vocabulary.syllables, config.vocabulary.n_words, seed=config.seed
        )
        self.values = WordNeedValues.create(self.vocabulary, config.vocabulary.step_size)
        self.state = HomeostaticState(
            level=dict(config.needs.initial_level),
            optimal=dict(config.needs.optimal),
            decay_rate=dict(config.needs.decay_rate),
            satiation_gain=dict(config.needs.satiation_gain),
        )
        p = config.perception
        self.perception = PerceptionModel.create(
            dim=p.dim,
            noise_sigma=p.noise_sigma,
            rows=p.som_rows,
            cols=p.som_cols,
            learning_rate=p.learning_rate,
            rng=substream(config.seed, "som_init"),
            lr_start=p.som_lr_start,
            lr_end=p.som_lr_end,
            radius_end=p.som_radius_end,
            decay_steps=p.som_decay_steps,
            **(
                {}
                if p.som_radius_start is None
                else {"radius_start": p.som_radius_start}
            ),
        )
        self.fb_map = FeedbackMap.for_condition(
            config.condition,
            rng=substream(config.seed, "shuffle"),
            fixed_shuffle=config.nondot_fixed_shuffle,
        )
        self.phase = SessionPhase.IDLE
        self.trials: list[TrialRecord] = []
        self.rewards: list[int] = []
        self.expressions = {n: 0 for n in NEEDS}
        self.converged = False
        self.convergence_time: Optional[int] = None
        self._expressed: Optional[NeedKind] = None
        self._word: Optional[Word] = None
        self._offered: Optional[ObjectKind] = None
        self._offered_features: Optional[np.ndarray] = None
        self._recognized: Optional[ObjectKind] = None
        self._reward: Optional[int] = None
        self._feedback: Optional[FeedbackSignal] = None
        self._latency_ms: Optional[int] = None

    # -- public views ------------------------------------------------------

    @property
    def current_need(self) -> Optional[NeedKind]:
        return self._expressed

    @property
    def current_word(self) -> Optional[Word]:
        return self._word

    @property
    def n_trials(self) -> int:
        return len(self.trials)

    # -- the cycle ---------------------------------------------------------

    def advance(
        self,
        input: Optional[ObjectKind] = None,
        latency_ms: Optional[int] = None,
    ) -> list[Event]:
        """Run one phase transition; returns the events it produced."""
        if self.phase is SessionPhase.TERMINATED:
            raise SessionTerminated("session already terminated")
        if input is not None and self.phase is not SessionPhase.AWAITING_OBJECT:
            raise UnexpectedInput(f"object supplied during {self.phase.value}")
        if input is None and self.phase is SessionPhase.AWAITING_OBJECT:
            raise UnexpectedInput("awaiting an object; advance requires input")

        events: list[Event] = []
        if self.phase in (SessionPhase.IDLE, SessionPhase.UPDATED):
            self._begin_iteration(events)
        elif self.phase is SessionPhase.NEED_ARISES:
            self._babble(events)
        elif self.phase is SessionPhase.BABBLED:
            self._set_phase(SessionPhase.AWAITING_OBJECT, events)
        elif self.phase is SessionPhase.AWAITING_OBJECT:
            self._evaluate(input, latency_ms, events)
        elif self.phase is SessionPhase.EVALUATED:
            self._emit_feedback(events)
        elif self.phase is SessionPhase.FEEDBACK_EMITTED:
            self._apply_updates(events)
        return events

    def _set_phase(self, phase: SessionPhase, events: list[Event]) -> None:
        self.phase = phase
        events.append(Event("phase_changed", {"phase": phase.value}))

    def _begin_iteration(self, events: list[Event]) -> None:
        scene = self.perception.scene_intensities(self.streams["noise"])
        substeps = 0
        while True:
            self.state = decay_step(self.state)
            substeps += 1
            motivations = [
                compute_motivation(compute_drive(self.state, n), scene[n])
                for n in NEEDS
            ]
            need = select_expressed_need(motivations, self.theta, self.streams["ties"])
            if need is not None:
                break
            if substeps >= DECAY_SUBSTEP_CAP:
                raise DegenerateConfig(
                    f"no need crossed theta={self.theta.theta} "
                    f"within {DECAY_SUBSTEP_CAP} decay steps"
                )
        self._expressed = need
        self._set_phase(SessionPhase.NEED_ARISES, events)
        events.append(
            Event(
                "need_expressed",
                {
                    "need": need.value,
                    "motivations": {m.need.value: m.value for m in motivations},
                    "decay_substeps": substeps,
                },
            )
        )

    def _babble(self, events: list[Event]) -> None:
        need = self._expressed
        policy = self.config.policy.policy_at(self.expressions[need])
        self.expressions[need] += 1
        self._word = choose_word(self.values, need, policy, self.streams["policy"])
        self._set_phase(SessionPhase.BABBLED, events)
        events.append(Event("babble", {"word": self._word.text}))

    def _evaluate(
        self,
        offered: ObjectKind,
        latency_ms: Optional[int],
        events: list[Event],
    ) -> None:
        self._offered = offered
        self._latency_ms = latency_ms
        vf = synth_features(
            offered,
            self.config.perception.noise_sigma,
            self.streams["noise"],
            self.config.perception.dim,
        )
        self._offered_features = vf
        self._recognized = None
        if self.config.perception_in_loop:
            try:
                self._recognized, _ = self.perception.recognize(vf)
            except UnlabeledCluster:
                self._recognized = None  # no label evidence yet: use ground truth
        effective = self._recognized if self._recognized is not None else offered
        self._reward = 1 if satisfies(effective) is self._expressed else -1
        self._set_phase(SessionPhase.EVALUATED, events)
        events.append(Event("object_offered", {"object": offered.value}))
        payload = {"reward": self._reward}
        if self.config.perception_in_loop:
            payload["recognized"] = (
                None if self._recognized is None else self._recognized.value
            )
        events.append(Event("evaluated", payload))

    def _emit_feedback(self, events: list[Event]) -> None:
        if self._reward == 1:
            self._feedback = positive_feedback(
                self.fb_map, self._expressed, self.streams["feedback"]
            )
        else:
            self._feedback = negative_feedback()
        self._set_phase(SessionPhase.FEEDBACK_EMITTED, events)
        events.append(
            Event(
                "feedback",
                {
                    "valence": self._feedback.valence.value,
                    "motion": self._feedback.motion.value,
                    "sound": self._feedback.sound.value,
                },
            )
        )

    def _apply_updates(self, events: list[Event]) -> None:
        self.values = update_value(self.values, self._expressed, self._word, self._reward)
        if self._reward == 1:
            self.state = satisfy(self.state, self._expressed)
        self.perception.observe(self._offered_features, self._offered)
        if self.caregiver is not None:
            self.caregiver.learn(self._word, self._offered, self._feedback)
        self.rewards.append(self._reward)
        n = len(self.rewards)
        mar = metrics.moving_average_reward(self.rewards, self.config.mar_window, n)
        self.trials.append(
            TrialRecord(
                n=n,
                expressed_need=self._expressed,
                word=self._word,
                offered_object=self._offered,
                reward=self._reward,
                feedback=self._feedback,
                mar=mar,
                homeostatic_snapshot=dict(self.state.level),
                latency_ms=self._latency_ms,
                recognized_object=self._recognized,
            )
        )
        self._set_phase(SessionPhase.UPDATED, events)
        events.append(
            Event(
                "trial_recorded",
                {"n": n, "max": self.config.max_iterations, "mar": mar},
            )
        )
        if termination_check(self.rewards, self.config):
            self.converged = (
                n >= self.config.min_iterations
                and mar >= self.config.convergence_mar_threshold
            )
            self.convergence_time = metrics.convergence_time(
                self.rewards, self.config.mar_window, self.config.convergence_mar_threshold
            )
            self._set_phase(SessionPhase.TERMINATED, events)
            events.append(Event("terminated", {"converged": self.converged}))
        if self.phase is SessionPhase.TERMINATED:
            self._expressed = None
            self._word = None
        self._latency_ms = None

    def episode_log(self) -> EpisodeLog:
        if self.phase is not SessionPhase.TERMINATED:
            raise SessionTerminated("episode log only available after termination")
        from .caregivers import AssociativeCaregiver, associative_state_dict

        caregiver_models = None
        if isinstance(self.caregiver, AssociativeCaregiver):
            caregiver_models = associative_state_dict(self.caregiver.state)
        return EpisodeLog(
            config=self.config,
            trials=list(self.trials),
            converged=self.converged,
            convergence_time=self.convergence_time,
            final_q=self.values,
            survey=None,
            models={
                "perception": self.perception.state_dict(),
                "caregiver": caregiver_models,
            },
        )


def run_episode(config: SessionConfig, caregiver=None) -> EpisodeLog:
    """Run a full simulated session; deterministic for a given config."""
    if caregiver is None:
        if config.caregiver is None:
            raise ConfigInvalid("simulated run needs a caregiver config")
        caregiver = build_caregiver(config.caregiver)
    session = Session(config, caregiver)
    while session.phase is not SessionPhase.TERMINATED:
        if session.phase is SessionPhase.AWAITING_OBJECT:
            obj = caregiver.respond(
                session.current_word,
                session.streams["caregiver"],
                expressed_need=session.current_need,
            )
            session.advance(input=obj)
        else:
            session.advance()
    return session.episode_log()
