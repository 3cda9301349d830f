"""Counter-based random streams.

Every random choice in a pipeline run draws from its own Philox stream,
keyed by ``(seed, stage)``. Two runs that share a seed but differ in one
stage's key therefore agree on every other stage bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Stage keys. Values are part of the reproducibility contract; do not renumber.
CLEAN = 0
ADVERSARY = 1
SHUFFLE = 2
LEARNER = 3
TEST = 4
SCHEME = 5

STAGES = {
    "clean": CLEAN,
    "adversary": ADVERSARY,
    "shuffle": SHUFFLE,
    "learner": LEARNER,
    "test": TEST,
    "scheme": SCHEME,
}


def generator(seed: int, *key: int) -> np.random.Generator:
    """Philox generator for ``seed`` and an optional spawn key path."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *key: int) -> int:
    """A 64-bit child seed, e.g. the per-trial seed of trial ``key``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class Streams:
    """Independent per-stage generators derived from one seed.

    ``overrides`` replaces the seed of individual stages; tests use it to
    vary one stage (say the clean draw) while holding the rest fixed.
    """

    seed: int
    overrides: dict = field(default_factory=dict)

    def stage(self, name: str) -> np.random.Generator:
        code = STAGES[name]
        seed = self.overrides.get(name, self.seed)
        return generator(seed, code)

    @classmethod
    def coerce(cls, rng: "Streams | int") -> "Streams":
        if isinstance(rng, Streams):
            return rng
        return cls(int(rng))
