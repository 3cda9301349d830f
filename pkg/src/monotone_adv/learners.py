"""Empirical risk minimizers and majority voters.

Subsample schemes are index lists over ``range(N)`` that depend on ``N``
(and a scheme seed for bagging) only, never on the data. Indices are
0-based here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .domain import Dataset, Domain, Hypothesis, HypothesisClass, SubsetClass, SubsetIndicator, as_ids, subset_unrank
from .exceptions import InvalidParametersError
from . import rng as rngmod


# ---------------------------------------------------------------------------
# ERMs


def erm_first_consistent(cls: HypothesisClass, data: Dataset, rng=None) -> Hypothesis:
    """First consistent member in canonical order (the target whenever it is consistent)."""
    return cls.consistent(data).first()


def erm_random_consistent(cls: HypothesisClass, data: Dataset, rng: np.random.Generator) -> Hypothesis:
    """A uniformly random consistent member."""
    return cls.consistent(data).sample(rng)


def erm_adversarial(cls: HypothesisClass, data: Dataset, rng=None) -> Hypothesis:
    """The adversarial ERM of the fixed-ERM majority lower bound.

    Looks at the first y_T in the data. If no x_i with i in T occurs, it
    returns the indicator of T, otherwise the target; with no y point at
    all it also returns the target. Only defined on the plain subset class.
    """
    if not isinstance(cls, SubsetClass) or cls.copies is not None:
        raise InvalidParametersError("erm_adversarial is defined on the majority_lb class only")
    if data.labels.any():
        # off the monotone pipeline: the target is not consistent, so any rule we add is arbitrary
        return erm_first_consistent(cls, data)
    r, pts = cls.r, data.points
    ys = np.flatnonzero((pts >= r) & (pts < r + cls.domain.n_subsets))
    if ys.size == 0:
        return cls.target
    subset = subset_unrank(int(pts[ys[0]] - r), r, cls.d)
    if np.isin(pts, np.asarray(subset) - 1).any():
        return cls.target
    return SubsetIndicator(cls.domain, subset)


ERMS: dict[str, Callable] = {
    "first": erm_first_consistent,
    "adversarial": erm_adversarial,
    "random": erm_random_consistent,
    "random_consistent": erm_random_consistent,
}


# ---------------------------------------------------------------------------
# subsample schemes


@dataclass(frozen=True, eq=False)
class SubsampleScheme:
    name: str
    N: int
    lists: tuple[np.ndarray, ...]
    min_distinct: int

    @property
    def k(self) -> int:
        return len(self.lists)

    def __eq__(self, other):
        return (
            isinstance(other, SubsampleScheme)
            and (self.name, self.N, self.min_distinct, self.k) == (other.name, other.N, other.min_distinct, other.k)
            and all(np.array_equal(a, b) for a, b in zip(self.lists, other.lists))
        )


def scheme_majority_of_three(N: int) -> SubsampleScheme:
    """Three contiguous blocks; the remainder of N/3 goes to the earlier blocks."""
    if N < 3:
        raise InvalidParametersError(f"Majority-of-Three needs N >= 3, got {N}")
    base, rem = divmod(N, 3)
    sizes = [base + (i < rem) for i in range(3)]
    edges = np.cumsum([0] + sizes)
    lists = tuple(np.arange(edges[i], edges[i + 1]) for i in range(3))
    return SubsampleScheme("majority_of_three", N, lists, base)


def bagging_rounds(N: int, delta: float = 0.01) -> int:
    return math.ceil(10 * math.log(N / delta))


def scheme_bagging(N: int, k: int | None = None, seed: int = 0, delta: float = 0.01) -> SubsampleScheme:
    """``k`` bootstrap lists of size N drawn with replacement from a scheme-local seed."""
    if N < 1:
        raise InvalidParametersError(f"need N >= 1, got {N}")
    k = bagging_rounds(N, delta) if k is None else k
    if k < 1:
        raise InvalidParametersError(f"need k >= 1, got {k}")
    g = rngmod.generator(seed, rngmod.SCHEME, N)
    lists = tuple(g.integers(N, size=N) for _ in range(k))
    min_distinct = min(np.unique(l).size for l in lists)
    return SubsampleScheme("bagging", N, lists, min_distinct)


def scheme_hanneke(N: int) -> SubsampleScheme:
    """Hanneke's recursive scheme.

    Split S into S0 (the first |S| - 3*floor(|S|/4) elements) and three
    blocks S1, S2, S3 of size floor(|S|/4); recurse on S0 three times, each
    time carrying two of the three blocks along. Sets of at most three
    points end the recursion.
    """
    if N < 1:
        raise InvalidParametersError(f"need N >= 1, got {N}")
    out: list[np.ndarray] = []

    def rec(s: np.ndarray, carry: np.ndarray) -> None:
        if s.size <= 3:
            out.append(np.sort(np.concatenate([s, carry])))
            return
        q = s.size // 4
        s0 = s.size - 3 * q
        s1, s2, s3 = s[s0 : s0 + q], s[s0 + q : s0 + 2 * q], s[s0 + 2 * q :]
        head = s[:s0]
        rec(head, np.concatenate([s2, s3, carry]))
        rec(head, np.concatenate([s1, s3, carry]))
        rec(head, np.concatenate([s1, s2, carry]))

    rec(np.arange(N), np.empty(0, dtype=np.int64))
    return SubsampleScheme("hanneke", N, tuple(out), min(l.size for l in out))


def build_scheme(name: str, N: int, seed: int = 0, k: int | None = None) -> SubsampleScheme:
    if name in ("majority_of_three", "mo3"):
        return scheme_majority_of_three(N)
    if name == "bagging":
        return scheme_bagging(N, k=k, seed=seed)
    if name == "hanneke":
        return scheme_hanneke(N)
    raise InvalidParametersError(f"unknown subsample scheme {name!r}")


# ---------------------------------------------------------------------------
# committees


@dataclass(frozen=True)
class Committee:
    """Pointwise majority of its members; an even split predicts 1."""

    members: tuple[Hypothesis, ...]

    def votes(self, ids) -> np.ndarray:
        return np.sum([h.labels(ids) for h in self.members], axis=0)

    def labels(self, ids) -> np.ndarray:
        return (2 * self.votes(ids) >= len(self.members)).astype(np.uint8)

    def __call__(self, x) -> int:
        return int(self.labels(as_ids([x]))[0])


def majority_vote(
    scheme: SubsampleScheme,
    erm: str | Callable,
    cls: HypothesisClass,
    data: Dataset,
    rng: np.random.Generator | None = None,
) -> Committee:
    """Train the base ERM on every subsample of the scheme and return the committee."""
    if scheme.N != len(data):
        raise InvalidParametersError(f"scheme built for N={scheme.N}, dataset has {len(data)} examples")
    fn = ERMS[erm] if isinstance(erm, str) else erm
    members = tuple(fn(cls, data.take(idx), rng) for idx in scheme.lists)
    return Committee(members)


def label_table(predictor, domain: Domain) -> str:
    """Explicit ``point label`` table of a predictor over the whole domain."""
    labels = predictor.labels(np.arange(domain.size))
    return "".join(f"{domain.point(i)} {int(y)}\n" for i, y in enumerate(labels))
