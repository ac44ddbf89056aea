"""Named, independent RNG streams derived from a single scenario seed.

Every stochastic consumer (trajectory wander, UAV shake, observation
noise, each optimizer) draws from its own stream, so adding or removing
one consumer never perturbs the draws seen by the others.
"""

import hashlib

import numpy as np


def _label_key(label: str) -> int:
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def stream(seed: int, label: str) -> np.random.Generator:
    """Return a fresh generator for (seed, label); same pair, same draws."""
    seq = np.random.SeedSequence(entropy=[int(seed) & (2**64 - 1), _label_key(label)])
    return np.random.Generator(np.random.PCG64(seq))


class SeedStreams:
    """Factory handing out labelled sub-streams of one 64-bit scenario seed."""

    def __init__(self, seed: int):
        self.seed = int(seed)

    def get(self, label: str) -> np.random.Generator:
        return stream(self.seed, label)
