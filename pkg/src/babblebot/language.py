"""Babble vocabulary and the need-word value table.

The robot's repertoire is a set of two-syllable words. A bandit value
table q(need, word) drives which word is babbled when a need is
expressed; trial rewards of +1/-1 move the value by an exponential
recency-weighted average, q += alpha * (reward - q).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import CapacityExceeded, EmptyVocabulary, UnknownPair
from .homeostasis import NEEDS, NeedKind
from .rng import substream

DEFAULT_SYLLABLES: tuple[str, ...] = ("na", "wa", "da", "pa", "ba", "ma")

# Infant-babble starter words; they come first in any vocabulary whose
# syllable set can form them, so default builds always contain them.
SEED_WORDS: tuple[tuple[str, str], ...] = (("na", "na"), ("wa", "da"), ("pa", "da"))


@dataclass(frozen=True, order=True)
class Word:
    """A two-syllable babble word."""

    syllables: tuple[str, str]

    def __post_init__(self) -> None:
        if len(self.syllables) != 2:
            raise ValueError("a word has exactly two syllables")
        for s in self.syllables:
            if not s or not s.isascii() or not s.islower():
                raise ValueError(f"syllables must be lowercase ASCII, got {s!r}")

    @property
    def text(self) -> str:
        return "".join(self.syllables)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Vocabulary:
    words: tuple[Word, ...]
    syllable_set: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.words)) != len(self.words):
            raise ValueError("vocabulary words must be distinct")

    def __len__(self) -> int:
        return len(self.words)

    def word_by_text(self, text: str) -> Word:
        for w in self.words:
            if w.text == text:
                return w
        raise KeyError(text)


def build_vocabulary(
    syllable_set: tuple[str, ...] = DEFAULT_SYLLABLES,
    n_words: int = 6,
    seed: int = 0,
) -> Vocabulary:
    """Sample ``n_words`` distinct two-syllable words, deterministically.

    Starter words constructible from ``syllable_set`` are taken first;
    remaining slots are filled by seeded draws over the leftover pairs.

    Raises CapacityExceeded if ``n_words`` exceeds len(syllable_set)**2.
    """
    syllables = tuple(syllable_set)
    capacity = len(syllables) ** 2
    if n_words > capacity:
        raise CapacityExceeded(
            f"{n_words} words requested but {len(syllables)} syllables "
            f"form only {capacity} pairs"
        )
    chosen: list[Word] = []
    for pair in SEED_WORDS:
        if len(chosen) == n_words:
            break
        if pair[0] in syllables and pair[1] in syllables:
            chosen.append(Word(pair))
    remaining = [
        (a, b)
        for a in syllables
        for b in syllables
        if Word((a, b)) not in chosen
    ]
    rng = substream(seed, "vocab")
    n_extra = n_words - len(chosen)
    if n_extra > 0:
        picks = rng.choice(len(remaining), size=n_extra, replace=False)
        chosen.extend(Word(remaining[int(i)]) for i in picks)
    return Vocabulary(words=tuple(chosen), syllable_set=syllables)


@dataclass(frozen=True)
class EpsilonGreedy:
    """Explore uniformly with probability epsilon, otherwise exploit argmax."""

    epsilon: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.epsilon <= 1.0):
            raise ValueError("epsilon must lie in [0, 1]")


@dataclass(frozen=True)
class Softmax:
    """Sample words proportionally to exp(q / temperature)."""

    temperature: float

    def __post_init__(self) -> None:
        if self.temperature <= 0.0:
            raise ValueError("temperature must be > 0")


SelectionPolicy = Union[EpsilonGreedy, Softmax]


@dataclass(frozen=True)
class WordNeedValues:
    """Bandit value table over (need, word) pairs, plus update counts."""

    vocabulary: Vocabulary
    step_size: float
    q: dict[tuple[NeedKind, Word], float]
    counts: dict[tuple[NeedKind, Word], int]

    def __post_init__(self) -> None:
        if not (0.0 < self.step_size <= 1.0):
            raise ValueError("step_size must lie in (0, 1]")

    @classmethod
    def create(cls, vocabulary: Vocabulary, step_size: float = 0.5) -> "WordNeedValues":
        q = {(n, w): 0.0 for n in NEEDS for w in vocabulary.words}
        counts = {(n, w): 0 for n in NEEDS for w in vocabulary.words}
        return cls(vocabulary=vocabulary, step_size=step_size, q=q, counts=counts)

    def q_row(self, need: NeedKind) -> list[float]:
        return [self.q[(need, w)] for w in self.vocabulary.words]


def choose_word(
    values: WordNeedValues,
    need: NeedKind,
    policy: SelectionPolicy,
    rng: np.random.Generator,
) -> Word:
    """Select the word to babble for an expressed need."""
    words = values.vocabulary.words
    if not words:
        raise EmptyVocabulary("cannot babble from an empty vocabulary")
    if isinstance(policy, EpsilonGreedy):
        if rng.random() < policy.epsilon:
            return words[int(rng.integers(len(words)))]
        row = values.q_row(need)
        best = max(row)
        tied = [w for w, v in zip(words, row) if v == best]
        if len(tied) == 1:
            return tied[0]
        return tied[int(rng.integers(len(tied)))]
    row = np.array(values.q_row(need), dtype=float)
    logits = row / policy.temperature
    logits -= logits.max()
    p = np.exp(logits)
    p /= p.sum()
    return words[int(rng.choice(len(words), p=p))]


def update_value(
    values: WordNeedValues,
    need: NeedKind,
    word: Word,
    reward: int,
) -> WordNeedValues:
    """Move q(need, word) toward the reward; every other entry untouched."""
    key = (need, word)
    if key not in values.q:
        raise UnknownPair(f"({need.value}, {word.text}) not in value table")
    if reward not in (1, -1):
        raise ValueError("reward must be +1 or -1")
    q = dict(values.q)
    counts = dict(values.counts)
    q[key] = q[key] + values.step_size * (reward - q[key])
    counts[key] += 1
    return WordNeedValues(
        vocabulary=values.vocabulary,
        step_size=values.step_size,
        q=q,
        counts=counts,
    )


@dataclass(frozen=True)
class EpsilonSchedule:
    """Linear decay of exploration over the first expressions of each need."""

    start: float = 1.0
    end: float = 0.1
    horizon: int = 6

    def epsilon_at(self, n_expressions: int) -> float:
        if self.horizon <= 0:
            return self.end
        frac = min(n_expressions, self.horizon) / self.horizon
        return self.start + (self.end - self.start) * frac
