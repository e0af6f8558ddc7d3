"""Episode log persistence, validation, and replay.

Logs are self-describing JSON documents with stable field order, so a
re-run of the same config writes byte-identical files. The validator
recomputes every derived quantity (moving averages, reward consistency,
convergence fields) from the raw trial data.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping, Optional

from . import metrics
from .errors import CorruptLog
from .feedback import FeedbackSignal, MotionToken, SoundToken, Valence
from .homeostasis import NEEDS, NeedKind
from .language import Vocabulary, Word, WordNeedValues
from .perception import ObjectKind, satisfies
from .session import (
    EpisodeLog,
    SamRating,
    SessionConfig,
    TrialRecord,
    run_episode,
)

SCHEMA = "episode-log/v1"


# ---------------------------------------------------------------------------
# to / from plain dicts


def _feedback_to_dict(sig: FeedbackSignal) -> dict:
    return {
        "valence": sig.valence.value,
        "motion": sig.motion.value,
        "sound": sig.sound.value,
    }


def _feedback_from_dict(d: Mapping[str, Any]) -> FeedbackSignal:
    return FeedbackSignal(
        valence=Valence(d["valence"]),
        motion=MotionToken(d["motion"]),
        sound=SoundToken(d["sound"]),
    )


def _trial_to_dict(t: TrialRecord) -> dict:
    return {
        "n": t.n,
        "expressed_need": t.expressed_need.value,
        "word": t.word.text,
        "offered_object": t.offered_object.value,
        "reward": t.reward,
        "feedback": _feedback_to_dict(t.feedback),
        "mar": t.mar,
        "homeostatic_snapshot": {n.value: t.homeostatic_snapshot[n] for n in NEEDS},
        "latency_ms": t.latency_ms,
        "recognized_object": (
            None if t.recognized_object is None else t.recognized_object.value
        ),
    }


def _word_from_text(text: str, vocabulary_words: list[Word]) -> Word:
    for w in vocabulary_words:
        if w.text == text:
            return w
    # Words are two syllables; logs only ever carry vocabulary words, but
    # splitting evenly keeps loading robust to foreign logs.
    half = len(text) // 2
    return Word((text[:half], text[half:]))


def _trial_from_dict(d: Mapping[str, Any], words: list[Word]) -> TrialRecord:
    return TrialRecord(
        n=int(d["n"]),
        expressed_need=NeedKind(d["expressed_need"]),
        word=_word_from_text(d["word"], words),
        offered_object=ObjectKind(d["offered_object"]),
        reward=int(d["reward"]),
        feedback=_feedback_from_dict(d["feedback"]),
        mar=float(d["mar"]),
        homeostatic_snapshot={
            NeedKind(k): float(v) for k, v in d["homeostatic_snapshot"].items()
        },
        latency_ms=None if d.get("latency_ms") is None else int(d["latency_ms"]),
        recognized_object=(
            None
            if d.get("recognized_object") is None
            else ObjectKind(d["recognized_object"])
        ),
    )


def _values_to_dict(values: WordNeedValues) -> dict:
    words = list(values.vocabulary.words)
    return {
        "words": [w.text for w in words],
        "needs": [n.value for n in NEEDS],
        "step_size": values.step_size,
        "q": [[values.q[(n, w)] for w in words] for n in NEEDS],
        "counts": [[values.counts[(n, w)] for w in words] for n in NEEDS],
    }


def _values_from_dict(d: Mapping[str, Any], config: SessionConfig) -> WordNeedValues:
    words = [_word_from_text(text, []) for text in d["words"]]
    vocab = Vocabulary(words=tuple(words), syllable_set=tuple(config.vocabulary.syllables))
    q = {}
    counts = {}
    for i, n in enumerate(NEEDS):
        for j, w in enumerate(words):
            q[(n, w)] = float(d["q"][i][j])
            counts[(n, w)] = int(d["counts"][i][j])
    return WordNeedValues(
        vocabulary=vocab, step_size=float(d["step_size"]), q=q, counts=counts
    )


def _survey_to_dict(s: Optional[SamRating]) -> Optional[dict]:
    if s is None:
        return None
    return {
        "valence": s.valence,
        "arousal": s.arousal,
        "dominance": s.dominance,
        "likert_answers": [[qid, answer] for qid, answer in s.likert_answers],
    }


def _survey_from_dict(d: Optional[Mapping[str, Any]]) -> Optional[SamRating]:
    if d is None:
        return None
    return SamRating(
        valence=int(d["valence"]),
        arousal=int(d["arousal"]),
        dominance=int(d["dominance"]),
        likert_answers=tuple(
            (str(qid), int(answer)) for qid, answer in d.get("likert_answers", [])
        ),
    )


def episode_to_dict(log: EpisodeLog) -> dict:
    return {
        "schema": SCHEMA,
        "config": log.config.to_dict(),
        "trials": [_trial_to_dict(t) for t in log.trials],
        "converged": log.converged,
        "convergence_time": log.convergence_time,
        "final_q": _values_to_dict(log.final_q),
        "survey": _survey_to_dict(log.survey),
        "models": log.models,
    }


def episode_from_dict(d: Mapping[str, Any]) -> EpisodeLog:
    if d.get("schema") != SCHEMA:
        raise CorruptLog(f"unknown schema {d.get('schema')!r}")
    config = SessionConfig.from_dict(d["config"])
    final_q = _values_from_dict(d["final_q"], config)
    words = list(final_q.vocabulary.words)
    return EpisodeLog(
        config=config,
        trials=[_trial_from_dict(t, words) for t in d["trials"]],
        converged=bool(d["converged"]),
        convergence_time=(
            None if d["convergence_time"] is None else int(d["convergence_time"])
        ),
        final_q=final_q,
        survey=_survey_from_dict(d.get("survey")),
        models=d.get("models"),
    )


def dumps_episode(log: EpisodeLog) -> str:
    return json.dumps(episode_to_dict(log), indent=2) + "\n"


def dump_episode(log: EpisodeLog, path: Path) -> None:
    Path(path).write_text(dumps_episode(log), encoding="utf-8")


def load_episode(path: Path) -> EpisodeLog:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorruptLog(f"{path}: not valid JSON ({exc})") from exc
    try:
        return episode_from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptLog(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# validation


def validate_episode(log: EpisodeLog, name: str = "episode") -> None:
    """Check schema-level invariants and internal consistency.

    Raises CorruptLog naming the offending trial and field.
    """
    cfg = log.config
    if not log.trials:
        raise CorruptLog(f"{name}: no trials recorded")
    if len(log.trials) > cfg.max_iterations:
        raise CorruptLog(f"{name}: {len(log.trials)} trials exceed max_iterations")
    rewards: list[int] = []
    for i, t in enumerate(log.trials, start=1):
        where = f"{name}: trial {i}"
        if t.n != i:
            raise CorruptLog(f"{where}: field 'n' is {t.n}, expected {i}")
        if t.reward not in (1, -1):
            raise CorruptLog(f"{where}: field 'reward' is {t.reward}")
        rewards.append(t.reward)
        expected_mar = metrics.moving_average_reward(rewards, cfg.mar_window, i)
        if t.mar != expected_mar:
            raise CorruptLog(
                f"{where}: field 'mar' is {t.mar}, recompute gives {expected_mar}"
            )
        effective = (
            t.recognized_object
            if (cfg.perception_in_loop and t.recognized_object is not None)
            else t.offered_object
        )
        consistent = satisfies(effective) is t.expressed_need
        if (t.reward == 1) != consistent:
            raise CorruptLog(
                f"{where}: field 'reward' inconsistent with object/need mapping"
            )
        if t.reward == 1 and t.feedback.valence is not Valence.POSITIVE:
            raise CorruptLog(f"{where}: field 'feedback' valence mismatch")
        if t.reward == -1 and t.feedback.valence is not Valence.NEGATIVE:
            raise CorruptLog(f"{where}: field 'feedback' valence mismatch")
        for need in NEEDS:
            level = t.homeostatic_snapshot.get(need)
            if level is None or not (0.0 <= level <= 1.0):
                raise CorruptLog(f"{where}: field 'homeostatic_snapshot' out of range")
    expected_ct = metrics.convergence_time(
        rewards, cfg.mar_window, cfg.convergence_mar_threshold
    )
    if log.convergence_time != expected_ct:
        raise CorruptLog(
            f"{name}: field 'convergence_time' is {log.convergence_time}, "
            f"recompute gives {expected_ct}"
        )
    n = len(rewards)
    final_mar = metrics.moving_average_reward(rewards, cfg.mar_window, n)
    expected_converged = (
        n >= cfg.min_iterations and final_mar >= cfg.convergence_mar_threshold
    )
    if log.converged != expected_converged:
        raise CorruptLog(
            f"{name}: field 'converged' is {log.converged}, "
            f"recompute gives {expected_converged}"
        )
    if log.models is not None:
        som = log.models.get("perception", {}).get("som", {})
        readout = log.models.get("perception", {}).get("readout", {})
        n_nodes = cfg.perception.som_rows * cfg.perception.som_cols
        if som.get("weights", {}).get("shape") != [n_nodes, cfg.perception.dim]:
            raise CorruptLog(f"{name}: field 'models.perception.som' shape mismatch")
        if readout.get("omega", {}).get("shape") != [cfg.perception.dim, len(NEEDS)]:
            raise CorruptLog(f"{name}: field 'models.perception.readout' shape mismatch")


# ---------------------------------------------------------------------------
# replay


class _ScriptedCaregiver:
    """Replays a recorded object sequence (used for caregiver-free logs)."""

    kind = "scripted"

    def __init__(self, objects: list[ObjectKind]) -> None:
        self._objects = objects
        self._i = 0

    def respond(self, word, rng, expressed_need=None) -> ObjectKind:
        obj = self._objects[self._i]
        self._i += 1
        return obj

    def learn(self, word, chosen, feedback) -> None:
        pass


def replay_episode(log: EpisodeLog) -> EpisodeLog:
    """Re-run an episode from its own config (and, for live logs, its
    recorded object sequence)."""
    if log.config.caregiver is not None:
        return run_episode(log.config)
    script = _ScriptedCaregiver([t.offered_object for t in log.trials])
    return run_episode(log.config, caregiver=script)


def replays_identically(log: EpisodeLog) -> bool:
    """True when a fresh run of the logged config reproduces the log
    byte for byte. Live logs are compared modulo the fields a replay
    cannot regenerate: per-trial latencies and the post-session survey."""
    replayed = episode_to_dict(replay_episode(log))
    original = episode_to_dict(log)
    if log.config.caregiver is None:
        for t in original["trials"]:
            t["latency_ms"] = None
        original["survey"] = None
    return replayed == original
