from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from babblebot.errors import CapacityExceeded, EmptyVocabulary, UnknownPair
from babblebot.homeostasis import NEEDS, NeedKind
from babblebot.language import (
    DEFAULT_SYLLABLES,
    EpsilonGreedy,
    EpsilonSchedule,
    Softmax,
    Word,
    WordNeedValues,
    build_vocabulary,
    choose_word,
    update_value,
)


class TestWord:
    def test_text_concatenates(self):
        assert Word(("na", "na")).text == "nana"

    def test_two_syllables_required(self):
        with pytest.raises(ValueError):
            Word(("na",))  # type: ignore[arg-type]

    def test_lowercase_ascii_required(self):
        with pytest.raises(ValueError):
            Word(("NA", "na"))


class TestBuildVocabulary:
    def test_seed_stable_and_distinct(self):
        syllables = ("na", "wa", "da", "pa")
        all_pairs = {a + b for a in syllables for b in syllables}
        assert len(all_pairs) == 16
        v1 = build_vocabulary(syllables, 3, seed=7)
        v2 = build_vocabulary(syllables, 3, seed=7)
        assert [w.text for w in v1.words] == [w.text for w in v2.words]
        assert len(set(v1.words)) == 3
        assert all(w.text in all_pairs for w in v1.words)

    def test_empty(self):
        assert len(build_vocabulary(("na",), 0, seed=1)) == 0

    def test_capacity_exceeded(self):
        with pytest.raises(CapacityExceeded):
            build_vocabulary(("na",), 2, seed=0)

    def test_default_set_contains_starter_words(self):
        v = build_vocabulary(DEFAULT_SYLLABLES, 6, seed=3)
        texts = [w.text for w in v.words]
        assert {"nana", "wada", "pada"} <= set(texts)
        assert len(texts) == 6

    def test_different_seeds_differ_in_sampled_tail(self):
        tails = {
            tuple(w.text for w in build_vocabulary(DEFAULT_SYLLABLES, 6, seed=s).words[3:])
            for s in range(8)
        }
        assert len(tails) > 1


def make_values(n_words=6, step_size=0.5, seed=0):
    vocab = build_vocabulary(DEFAULT_SYLLABLES, n_words, seed=seed)
    return WordNeedValues.create(vocab, step_size=step_size)


class TestChooseWord:
    def test_full_exploration_is_uniform(self):
        values = make_values()
        rng = np.random.default_rng(99)
        counts = Counter(
            choose_word(values, NeedKind.HUNGER, EpsilonGreedy(1.0), rng).text
            for _ in range(10_000)
        )
        assert len(counts) == 6
        for c in counts.values():
            assert abs(c / 10_000 - 1 / 6) < 0.02

    def test_pure_argmax(self, rng):
        values = make_values()
        target = values.vocabulary.words[2]
        q = dict(values.q)
        for w in values.vocabulary.words:
            q[(NeedKind.THIRST, w)] = -1.0
        q[(NeedKind.THIRST, target)] = 3.0
        values = WordNeedValues(values.vocabulary, values.step_size, q, values.counts)
        for _ in range(20):
            assert choose_word(values, NeedKind.THIRST, EpsilonGreedy(0.0), rng) == target

    def test_softmax_limit_is_argmax(self, rng):
        values = make_values()
        q = dict(values.q)
        for i, w in enumerate(values.vocabulary.words):
            q[(NeedKind.HUNGER, w)] = i * 0.1
        values = WordNeedValues(values.vocabulary, values.step_size, q, values.counts)
        best = values.vocabulary.words[-1]
        for _ in range(20):
            assert choose_word(values, NeedKind.HUNGER, Softmax(1e-6), rng) == best

    def test_empty_vocabulary(self, rng):
        values = WordNeedValues.create(build_vocabulary(("na",), 0, seed=0))
        with pytest.raises(EmptyVocabulary):
            choose_word(values, NeedKind.HUNGER, EpsilonGreedy(0.5), rng)

    def test_argmax_tie_broken_by_rng(self):
        values = make_values()
        seen = {
            choose_word(
                values, NeedKind.HUNGER, EpsilonGreedy(0.0), np.random.default_rng(s)
            ).text
            for s in range(60)
        }
        assert len(seen) > 1  # all-zero q: every word ties


class TestUpdateValue:
    def test_positive_substitution(self):
        values = make_values(step_size=0.5)
        w = values.vocabulary.words[0]
        out = update_value(values, NeedKind.HUNGER, w, +1)
        assert out.q[(NeedKind.HUNGER, w)] == pytest.approx(0.5)

    def test_negative_substitution(self):
        values = make_values(step_size=0.5)
        w = values.vocabulary.words[0]
        out = update_value(values, NeedKind.HUNGER, w, -1)
        assert out.q[(NeedKind.HUNGER, w)] == pytest.approx(-0.5)

    def test_alpha_one_fixed_point(self):
        values = make_values(step_size=1.0)
        w = values.vocabulary.words[1]
        out = update_value(values, NeedKind.THIRST, w, +1)
        assert out.q[(NeedKind.THIRST, w)] == 1.0
        out = update_value(out, NeedKind.THIRST, w, +1)
        assert out.q[(NeedKind.THIRST, w)] == 1.0

    def test_unknown_pair(self):
        values = make_values()
        foreign = Word(("zu", "zu"))
        with pytest.raises(UnknownPair):
            update_value(values, NeedKind.HUNGER, foreign, +1)

    def test_counts_increment(self):
        values = make_values()
        w = values.vocabulary.words[0]
        out = update_value(values, NeedKind.HUNGER, w, +1)
        assert out.counts[(NeedKind.HUNGER, w)] == 1

    def test_touches_exactly_one_entry(self):
        values = make_values()
        w = values.vocabulary.words[3]
        out = update_value(values, NeedKind.CURIOSITY, w, -1)
        changed = [
            k for k in values.q
            if values.q[k] != out.q[k] or values.counts[k] != out.counts[k]
        ]
        assert changed == [(NeedKind.CURIOSITY, w)]

    @given(
        alpha=st.floats(min_value=0.01, max_value=1.0),
        k=st.integers(min_value=1, max_value=50),
    )
    def test_closed_form_after_k_positive_updates(self, alpha, k):
        values = make_values(step_size=alpha)
        w = values.vocabulary.words[0]
        for _ in range(k):
            values = update_value(values, NeedKind.HUNGER, w, +1)
        assert values.q[(NeedKind.HUNGER, w)] == pytest.approx(
            1.0 - (1.0 - alpha) ** k, abs=1e-9
        )

    @given(
        alpha=st.floats(min_value=0.01, max_value=1.0),
        rewards=st.lists(st.sampled_from([1, -1]), max_size=80),
    )
    def test_q_bounded_by_reward_range(self, alpha, rewards):
        values = make_values(step_size=alpha)
        w = values.vocabulary.words[0]
        for r in rewards:
            values = update_value(values, NeedKind.HUNGER, w, r)
            assert -1.0 <= values.q[(NeedKind.HUNGER, w)] <= 1.0


@given(
    data=st.data(),
    alpha=st.floats(min_value=0.05, max_value=1.0),
)
def test_one_positive_update_cannot_displace_a_margin_leader(data, alpha):
    # Under an always-correct caregiver every value is nonnegative; a
    # single +1 update to any word then cannot displace a leader whose
    # margin over all others exceeds the step size.
    values = make_values(step_size=alpha)
    words = values.vocabulary.words
    others = data.draw(
        st.lists(
            st.floats(min_value=0.0, max_value=1.0),
            min_size=len(words) - 1,
            max_size=len(words) - 1,
        )
    )
    leader_q = max(others) + alpha + data.draw(st.floats(min_value=1e-6, max_value=1.0))
    q = dict(values.q)
    q[(NeedKind.HUNGER, words[0])] = min(leader_q, 2.0)
    for w, v in zip(words[1:], others):
        q[(NeedKind.HUNGER, w)] = v
    values = WordNeedValues(values.vocabulary, alpha, q, values.counts)
    spoken = data.draw(st.sampled_from(list(words)))
    after = update_value(values, NeedKind.HUNGER, spoken, +1)
    row = {w: after.q[(NeedKind.HUNGER, w)] for w in words}
    assert max(row, key=row.get) == words[0]


def test_greedy_absorption_with_pure_exploitation():
    # Greedy play plus +1 rewards: once a word leads by more than the
    # step size it is the one spoken from then on, so the argmax is
    # absorbed for good.
    for seed in range(30):
        rng = np.random.default_rng(seed)
        values = make_values(step_size=0.5)
        locked = None
        for _step in range(40):
            words = values.vocabulary.words
            spoken = choose_word(values, NeedKind.HUNGER, EpsilonGreedy(0.0), rng)
            values = update_value(values, NeedKind.HUNGER, spoken, +1)
            row = {w: values.q[(NeedKind.HUNGER, w)] for w in words}
            leader = max(row, key=row.get)
            if locked is not None:
                assert leader == locked
            elif all(row[leader] > row[w] + values.step_size for w in words if w != leader):
                locked = leader
        assert locked is not None


def test_epsilon_schedule_linear_decay():
    sched = EpsilonSchedule(start=1.0, end=0.1, horizon=6)
    assert sched.epsilon_at(0) == pytest.approx(1.0)
    assert sched.epsilon_at(3) == pytest.approx(0.55)
    assert sched.epsilon_at(6) == pytest.approx(0.1)
    assert sched.epsilon_at(60) == pytest.approx(0.1)
