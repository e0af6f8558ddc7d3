import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from babblebot.errors import EmptyInput, IndexOutOfRange
from babblebot.metrics import (
    aggregate_runs,
    convergence_time,
    mar_curve,
    moving_average_reward,
)
from helpers import mar_bruteforce

reward_series = st.lists(st.sampled_from([1, -1]), min_size=1, max_size=40)


class TestMovingAverage:
    def test_short_series_branch(self):
        assert moving_average_reward([1, -1, 1], 5, 3) == pytest.approx(1 / 3)

    def test_window_branch(self):
        assert moving_average_reward([-1, -1, 1, 1, 1, 1, 1], 5, 7) == pytest.approx(1.0)

    def test_window_of_one_returns_last_reward(self):
        series = [1, -1, -1, 1]
        for k in range(1, 5):
            assert moving_average_reward(series, 1, k) == series[k - 1]

    def test_bounds_checked(self):
        with pytest.raises(IndexOutOfRange):
            moving_average_reward([1], 5, 0)
        with pytest.raises(IndexOutOfRange):
            moving_average_reward([1], 5, 2)
        with pytest.raises(IndexOutOfRange):
            moving_average_reward([1], 0, 1)

    @given(rewards=reward_series, m=st.integers(min_value=1, max_value=10))
    def test_matches_bruteforce_oracle(self, rewards, m):
        for n in range(1, len(rewards) + 1):
            assert moving_average_reward(rewards, m, n) == mar_bruteforce(rewards, m, n)

    @given(rewards=reward_series, m=st.integers(min_value=1, max_value=10))
    def test_always_within_reward_range(self, rewards, m):
        for n in range(1, len(rewards) + 1):
            assert -1.0 <= moving_average_reward(rewards, m, n) <= 1.0

    @given(
        prefix=st.lists(st.sampled_from([1, -1]), min_size=1, max_size=10),
        rewards=st.lists(st.sampled_from([1, -1]), min_size=5, max_size=30),
    )
    def test_window_branch_shift_invariant(self, prefix, rewards):
        # once n >= m the value depends only on the last m rewards
        m = 5
        full = prefix + rewards
        for n in range(m, len(rewards) + 1):
            assert moving_average_reward(rewards, m, n) == moving_average_reward(
                full, m, n + len(prefix)
            )


class TestConvergenceTime:
    def test_immediate(self):
        assert convergence_time([1] * 10, 5, 0.8) == 1

    def test_never(self):
        assert convergence_time([-1] * 10, 5, 0.8) is None

    def test_crossing_after_window_flush(self):
        series = [-1, 1, 1, 1, 1, 1]
        curve = [moving_average_reward(series, 5, n) for n in range(1, 7)]
        assert curve[4] == pytest.approx(0.6)
        assert curve[5] == pytest.approx(1.0)
        assert convergence_time(series, 5, 0.8) == 6

    @given(
        rewards=reward_series,
        m=st.integers(min_value=1, max_value=8),
        lo=st.floats(min_value=-1.0, max_value=1.0),
        hi=st.floats(min_value=-1.0, max_value=1.0),
    )
    def test_lower_threshold_never_converges_later(self, rewards, m, lo, hi):
        lo, hi = min(lo, hi), max(lo, hi)
        t_lo = convergence_time(rewards, m, lo)
        t_hi = convergence_time(rewards, m, hi)
        if t_hi is not None:
            assert t_lo is not None and t_lo <= t_hi

    @given(rewards=reward_series, m=st.integers(min_value=1, max_value=8))
    def test_matches_bruteforce_scan(self, rewards, m):
        threshold = 0.8
        expected = None
        for n in range(1, len(rewards) + 1):
            if mar_bruteforce(rewards, m, n) >= threshold:
                expected = n
                break
        assert convergence_time(rewards, m, threshold) == expected


class TestAggregateRuns:
    def test_identical_series_have_zero_sd(self):
        series = [1, -1, 1, 1]
        out = aggregate_runs([series, series], 5)
        assert all(a.sd == 0.0 for a in out)
        assert all(a.count == 2 for a in out)

    def test_singleton_equals_own_curve(self):
        series = [1, 1, -1]
        out = aggregate_runs([series], 5)
        assert [a.mean for a in out] == mar_curve(series, 5)
        assert all(a.sd == 0.0 for a in out)

    def test_ragged_counts(self):
        short = [1] * 12
        long = [-1] * 16
        out = aggregate_runs([short, long], 5)
        assert [a.count for a in out[:12]] == [2] * 12
        assert [a.count for a in out[12:]] == [1] * 4
        assert len(out) == 16

    def test_population_sd(self):
        out = aggregate_runs([[1], [-1]], 5)
        assert out[0].mean == 0.0
        assert out[0].sd == pytest.approx(1.0)  # population, not sample

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            aggregate_runs([], 5)
