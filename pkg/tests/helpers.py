"""Shared test utilities: independent oracle implementations."""

from collections import Counter

import math


def mar_bruteforce(rewards, m, n):
    """Literal windowed-average definition, coded independently of the
    library (explicit 1-based index loops)."""
    if n < m:
        total = 0
        for i in range(1, n + 1):
            total += rewards[i - 1]
        return total / n
    total = 0
    for i in range(n - m + 1, n + 1):
        total += rewards[i - 1]
    return total / m


def mutual_information_bits(samples):
    """Empirical mutual information (base 2) between paired symbols."""
    joint = Counter(samples)
    left = Counter(x for x, _ in samples)
    right = Counter(y for _, y in samples)
    total = len(samples)
    mi = 0.0
    for (x, y), c in joint.items():
        p_xy = c / total
        p_x = left[x] / total
        p_y = right[y] / total
        mi += p_xy * math.log2(p_xy / (p_x * p_y))
    return mi
