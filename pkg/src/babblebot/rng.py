"""Named deterministic random substreams.

Every stochastic component (word policy, tie breaking, feedback draws,
caregiver sampling, feature noise, ...) pulls from its own substream of
the session seed, so a change in one component's draw count can never
shift the numbers another component sees.
"""

import hashlib

import numpy as np


def stream_key(name: str) -> int:
    """Stable 32-bit key for a stream name (independent of PYTHONHASHSEED)."""
    return int.from_bytes(hashlib.sha256(name.encode("utf-8")).digest()[:4], "big")


def substream(seed: int, name: str) -> np.random.Generator:
    """Generator for the named substream of ``seed``.

    Identical (seed, name) pairs always yield identical draw sequences.
    """
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(stream_key(name),))
    )
