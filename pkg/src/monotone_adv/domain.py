"""Finite point domains, hypotheses and hypothesis classes.

Three structured constructions are provided, all with the constant-zero
target:

* ``build_class_majority_lb(r, d)``: x_1..x_r plus one point y_T per
  d-subset T of [r]; hypotheses are the indicators of the d-subsets on the
  x-points.
* ``build_class_majority_lb_rand(r, d, copies)``: the same domain plus
  z_1..z_K; K near-identical copies of a template per subset, where the
  template for T is 1 on every y_T' with T' != T.
* ``build_class_oig_lb(r)``: x_1..x_r, y_1..y_r; hypothesis i is 1 on
  exactly x_i and y_i.

Point ids are 0-based; the human-facing indices (x_3, y_{1,2}, z_7) are
1-based. Hypotheses in the structured classes are descriptors evaluated in
closed form, so classes with C(r, d) * K members never get materialized.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .exceptions import DomainMismatchError, InvalidParametersError, RealizabilityError


# ---------------------------------------------------------------------------
# subset ranking


def subset_rank(subset: Sequence[int], r: int) -> int:
    """Lexicographic rank of a sorted 1-based subset among all |subset|-subsets of [r]."""
    d = len(subset)
    rank = 0
    prev = 0
    for k, t in enumerate(subset):
        # hockey stick: sum_{v=prev+1}^{t-1} C(r-v, d-k-1)
        rank += math.comb(r - prev, d - k) - math.comb(r - t + 1, d - k)
        prev = t
    return rank


def subset_unrank(rank: int, r: int, d: int) -> tuple[int, ...]:
    """Inverse of :func:`subset_rank`."""
    out = []
    v = 1
    for k in range(d):
        while True:
            block = math.comb(r - v, d - k - 1)
            if rank < block:
                break
            rank -= block
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# points and domains


@dataclass(frozen=True)
class Point:
    id: int
    kind: str  # "x", "y" or "z"
    index: int | tuple[int, ...]

    def __str__(self) -> str:
        if isinstance(self.index, tuple):
            return f"{self.kind}_{{{','.join(map(str, self.index))}}}"
        return f"{self.kind}_{self.index}"


@dataclass(frozen=True)
class Domain:
    """Layout of a finite point domain.

    ``layout`` is one of ``"generic"`` (all points are x's), ``"subsets"``
    (x's, one y per d-subset, then ``copies`` z's) or ``"pairs"`` (x's then
    their y partners).
    """

    layout: str
    r: int
    d: int = 0
    copies: int = 0

    @classmethod
    def generic(cls, size: int) -> "Domain":
        return cls("generic", size)

    @property
    def n_subsets(self) -> int:
        return math.comb(self.r, self.d) if self.layout == "subsets" else 0

    @property
    def size(self) -> int:
        if self.layout == "generic":
            return self.r
        if self.layout == "pairs":
            return 2 * self.r
        return self.r + self.n_subsets + self.copies

    @property
    def x_ids(self) -> np.ndarray:
        return np.arange(self.r, dtype=np.int64)

    def x(self, i: int) -> int:
        if not 1 <= i <= self.r:
            raise DomainMismatchError(f"x_{i} not in domain with r={self.r}")
        return i - 1

    def y(self, key: int | Iterable[int]) -> int:
        if self.layout == "pairs":
            i = int(key)  # type: ignore[arg-type]
            if not 1 <= i <= self.r:
                raise DomainMismatchError(f"y_{i} not in domain with r={self.r}")
            return self.r + i - 1
        if self.layout == "subsets":
            t = tuple(sorted(key))  # type: ignore[arg-type]
            if len(t) != self.d or len(set(t)) != self.d or t[0] < 1 or t[-1] > self.r:
                raise DomainMismatchError(f"y_{t} is not a {self.d}-subset of [{self.r}]")
            return self.r + subset_rank(t, self.r)
        raise DomainMismatchError("generic domains have no y points")

    def z(self, j: int) -> int:
        if self.layout != "subsets" or not 1 <= j <= self.copies:
            raise DomainMismatchError(f"z_{j} not in domain")
        return self.r + self.n_subsets + j - 1

    def point(self, pid: int) -> Point:
        pid = int(pid)
        if not 0 <= pid < self.size:
            raise DomainMismatchError(f"point id {pid} outside domain of size {self.size}")
        if pid < self.r:
            return Point(pid, "x", pid + 1)
        if self.layout == "pairs":
            return Point(pid, "y", pid - self.r + 1)
        off = pid - self.r
        if off < self.n_subsets:
            return Point(pid, "y", subset_unrank(off, self.r, self.d))
        return Point(pid, "z", off - self.n_subsets + 1)

    def points(self) -> list[Point]:
        return [self.point(i) for i in range(self.size)]

    def check(self, ids: np.ndarray) -> None:
        if ids.size and (ids.min() < 0 or ids.max() >= self.size):
            bad = ids[(ids < 0) | (ids >= self.size)][0]
            raise DomainMismatchError(f"point id {bad} outside domain of size {self.size}")


def as_ids(points: Iterable[Point | int] | np.ndarray) -> np.ndarray:
    """Point ids of a sequence of Points or ints as an int64 array."""
    if isinstance(points, np.ndarray):
        return points.astype(np.int64, copy=False)
    return np.array([p.id if isinstance(p, Point) else int(p) for p in points], dtype=np.int64)


# ---------------------------------------------------------------------------
# labeled data


@dataclass(frozen=True)
class LabeledExample:
    point: Point
    label: int


@dataclass(frozen=True, eq=False)
class Dataset:
    """An ordered labeled sample, stored as parallel id/label arrays."""

    points: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "points", as_ids(self.points))
        object.__setattr__(self, "labels", np.asarray(self.labels, dtype=np.uint8))
        if self.points.shape != self.labels.shape:
            raise ValueError("points and labels differ in length")

    def __len__(self) -> int:
        return int(self.points.size)

    def take(self, indices: np.ndarray) -> "Dataset":
        return Dataset(self.points[indices], self.labels[indices])

    def examples(self, domain: Domain) -> list[LabeledExample]:
        return [LabeledExample(domain.point(p), int(y)) for p, y in zip(self.points, self.labels)]

    @classmethod
    def from_examples(cls, examples: Iterable[tuple[Point | int, int] | LabeledExample]) -> "Dataset":
        pts, lab = [], []
        for ex in examples:
            p, y = (ex.point, ex.label) if isinstance(ex, LabeledExample) else ex
            pts.append(p)
            lab.append(y)
        return cls(as_ids(pts), np.array(lab, dtype=np.uint8))


# ---------------------------------------------------------------------------
# hypotheses


@dataclass(frozen=True)
class Hypothesis:
    domain: Domain

    def labels(self, ids: np.ndarray) -> np.ndarray:
        """Labels (uint8) at an array of point ids."""
        ids = as_ids(ids)
        self.domain.check(ids)
        return self._labels(ids)

    def _labels(self, ids: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, x: Point | int) -> int:
        return evaluate(self, x)


@dataclass(frozen=True)
class AllZero(Hypothesis):
    def _labels(self, ids):
        return np.zeros(ids.shape, dtype=np.uint8)

    def __str__(self):
        return "h*"


@dataclass(frozen=True)
class SubsetIndicator(Hypothesis):
    subset: tuple[int, ...]

    def _labels(self, ids):
        return np.isin(ids, np.asarray(self.subset) - 1).astype(np.uint8)

    def __str__(self):
        return f"h_{{{','.join(map(str, self.subset))}}}"


@dataclass(frozen=True)
class SubsetIndicatorCopy(Hypothesis):
    subset: tuple[int, ...]
    copy: int

    def _labels(self, ids):
        dom = self.domain
        out = np.isin(ids, np.asarray(self.subset) - 1)
        y_lo, y_hi = dom.r, dom.r + dom.n_subsets
        own = dom.r + subset_rank(self.subset, dom.r)
        out |= (ids >= y_lo) & (ids < y_hi) & (ids != own)
        out |= ids == (y_hi + self.copy - 1)
        return out.astype(np.uint8)

    def __str__(self):
        return f"h_{{{','.join(map(str, self.subset))}}},{self.copy}"


@dataclass(frozen=True)
class PairSingleton(Hypothesis):
    index: int

    def _labels(self, ids):
        r = self.domain.r
        return ((ids == self.index - 1) | (ids == r + self.index - 1)).astype(np.uint8)

    def __str__(self):
        return f"h_{self.index}"


@dataclass(frozen=True)
class Explicit(Hypothesis):
    bits: bytes

    def _labels(self, ids):
        return np.frombuffer(self.bits, dtype=np.uint8)[ids]

    def __str__(self):
        return "".join(str(b) for b in self.bits)


def evaluate(h: Hypothesis, x: Point | int) -> int:
    """Label of ``h`` at a single point."""
    if isinstance(x, Point):
        if h.domain.point(x.id) != x:
            raise DomainMismatchError(f"{x} does not belong to the hypothesis' domain")
        x = x.id
    return int(h.labels(np.array([x], dtype=np.int64))[0])


def error(h, dist) -> float:
    """Exact error of a predictor under a finite distribution (target constant zero or given)."""
    return float(np.dot(dist.weights, h.labels(dist.support)))


# ---------------------------------------------------------------------------
# consistent sets


class ConsistentSet:
    """The members of a class consistent with a dataset.

    Structured classes supply closed-form counting, ordered iteration and
    uniform sampling of the non-target members, so the set is never
    materialized.
    """

    def __init__(
        self,
        target: Hypothesis | None,
        n_others: int,
        iter_others: Callable[[], Iterator[Hypothesis]],
        sample_other: Callable[[np.random.Generator], Hypothesis],
        common_error: Callable[[object], float | None] | None = None,
    ):
        self.target = target
        self.n_others = n_others
        self._iter_others = iter_others
        self._sample_other = sample_other
        self._common_error = common_error

    def __len__(self) -> int:
        return self.n_others + (self.target is not None)

    def __iter__(self) -> Iterator[Hypothesis]:
        if self.target is not None:
            yield self.target
        if self.n_others:
            yield from self._iter_others()

    def first(self) -> Hypothesis:
        for h in self:
            return h
        raise RealizabilityError("no hypothesis in the class is consistent with the data")

    def sample(self, rng: np.random.Generator) -> Hypothesis:
        total = len(self)
        if total == 0:
            raise RealizabilityError("no hypothesis in the class is consistent with the data")
        u = int(rng.integers(total))
        if self.target is not None:
            if u == 0:
                return self.target
        return self._sample_other(rng)

    def worst_error(self, dist) -> float:
        """Largest exact error over the consistent members."""
        worst = 0.0
        if self.n_others:
            common = self._common_error(dist) if self._common_error else None
            if common is not None:
                worst = common
            else:
                worst = max(error(h, dist) for h in self._iter_others())
        if self.target is not None:
            worst = max(worst, 0.0)
        return worst


def _empty_set(target):
    return ConsistentSet(target, 0, lambda: iter(()), lambda rng: None)


# ---------------------------------------------------------------------------
# classes


class HypothesisClass:
    """A finite, enumerable hypothesis class with its target first.

    Enumeration order is canonical: the target, then the remaining members
    in lexicographic order of their parameters.
    """

    target_index = 0
    structure: str = "explicit"

    def __init__(self, domain: Domain):
        self.domain = domain

    @property
    def target(self) -> Hypothesis:
        return next(iter(self))

    @property
    def params(self) -> dict:
        return {}

    @property
    def spec(self) -> str:
        return " ".join([self.structure] + [f"{k}={v}" for k, v in self.params.items()])

    def __len__(self) -> int:
        raise NotImplementedError

    def __iter__(self) -> Iterator[Hypothesis]:
        raise NotImplementedError

    def __getitem__(self, i: int) -> Hypothesis:
        return next(itertools.islice(iter(self), i, None))

    def label_matrix(self, points) -> np.ndarray:
        """(|class| x |points|) uint8 matrix of labels, rows in canonical order."""
        ids = as_ids(points)
        self.domain.check(ids)
        return np.stack([h._labels(ids) for h in self]) if len(self) else np.zeros((0, ids.size), np.uint8)

    def consistent(self, data: Dataset) -> ConsistentSet:
        """Members agreeing with every label of ``data``."""
        self.domain.check(data.points)
        mat = self.label_matrix(data.points)
        mask = (mat == data.labels[None, :]).all(axis=1)
        idx = np.flatnonzero(mask)
        hyps = list(self)
        target = hyps[0] if idx.size and idx[0] == 0 else None
        others = [hyps[i] for i in idx if i != 0]
        return ConsistentSet(
            target,
            len(others),
            lambda: iter(others),
            lambda rng: others[int(rng.integers(len(others)))],
        )

    def nontarget_error(self, dist) -> float | None:
        """Common exact error of every non-target member under ``dist``, if there is one."""
        return None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec} |H|={len(self)}>"


class ExplicitClass(HypothesisClass):
    """A class given by an explicit 0/1 matrix, one row per hypothesis.

    The row at ``target`` is moved to the front so the canonical order still
    starts with the target.
    """

    structure = "explicit"

    def __init__(self, rows, target: int = 0, domain: Domain | None = None):
        mat = np.asarray(rows, dtype=np.uint8)
        if mat.ndim != 2 or mat.shape[0] == 0:
            raise InvalidParametersError("need a non-empty 2-d label matrix")
        if np.unique(mat, axis=0).shape[0] != mat.shape[0]:
            raise InvalidParametersError("hypotheses must be distinct labelings")
        order = [target] + [i for i in range(mat.shape[0]) if i != target]
        self.matrix = np.ascontiguousarray(mat[order])
        super().__init__(domain or Domain.generic(mat.shape[1]))
        if self.domain.size != mat.shape[1]:
            raise InvalidParametersError("matrix width differs from domain size")
        self._hyps = [Explicit(self.domain, row.tobytes()) for row in self.matrix]

    def __len__(self):
        return self.matrix.shape[0]

    def __iter__(self):
        return iter(self._hyps)

    def __getitem__(self, i):
        return self._hyps[i]

    def label_matrix(self, points):
        ids = as_ids(points)
        self.domain.check(ids)
        return self.matrix[:, ids]


class SubsetClass(HypothesisClass):
    """The d-subset indicator class, optionally with K near-identical copies per subset."""

    def __init__(self, r: int, d: int, copies: int | None = None):
        if not (isinstance(r, (int, np.integer)) and isinstance(d, (int, np.integer))) or d < 1 or r < d:
            raise InvalidParametersError(f"need r >= d >= 1, got r={r}, d={d}")
        if copies is not None and copies < 1:
            raise InvalidParametersError(f"need at least one copy, got {copies}")
        self.r, self.d, self.copies = int(r), int(d), copies
        self.structure = "majority_lb" if copies is None else "majority_lb_rand"
        super().__init__(Domain("subsets", self.r, self.d, copies or 0))
        self._zero = AllZero(self.domain)

    @property
    def params(self):
        p = {"r": self.r, "d": self.d}
        if self.copies is not None:
            p["K"] = self.copies
        return p

    @property
    def target(self):
        return self._zero

    def __len__(self):
        return 1 + math.comb(self.r, self.d) * (self.copies or 1)

    def _member(self, subset, j=None):
        if self.copies is None:
            return SubsetIndicator(self.domain, subset)
        return SubsetIndicatorCopy(self.domain, subset, j)

    def __iter__(self):
        yield self._zero
        for t in itertools.combinations(range(1, self.r + 1), self.d):
            if self.copies is None:
                yield SubsetIndicator(self.domain, t)
            else:
                for j in range(1, self.copies + 1):
                    yield SubsetIndicatorCopy(self.domain, t, j)

    def __getitem__(self, i):
        if i == 0:
            return self._zero
        i -= 1
        k = self.copies or 1
        return self._member(subset_unrank(i // k, self.r, self.d), i % k + 1 if self.copies else None)

    def label_matrix(self, points):
        ids = as_ids(points)
        self.domain.check(ids)
        subsets = np.array(list(itertools.combinations(range(self.r), self.d)), dtype=np.int64)
        xpart = (subsets[:, :, None] == ids[None, None, :]).any(axis=1)
        if self.copies is None:
            body = xpart
        else:
            n_sub = subsets.shape[0]
            yoff = ids - self.r
            is_y = (yoff >= 0) & (yoff < n_sub)
            ypart = is_y[None, :] & (yoff[None, :] != np.arange(n_sub)[:, None])
            zoff = ids - self.r - n_sub
            zpart = zoff[None, :] == np.arange(self.copies)[:, None]
            body = (xpart | ypart)[:, None, :] | zpart[None, :, :]
            body = body.reshape(n_sub * self.copies, ids.size)
        return np.vstack([np.zeros((1, ids.size), bool), body]).astype(np.uint8)

    def nontarget_error(self, dist):
        if _uniform_over(dist, self.domain.x_ids):
            return self.d / self.r
        return None

    def consistent(self, data: Dataset) -> ConsistentSet:
        dom = self.domain
        dom.check(data.points)
        pts, lab = data.points, data.labels
        n_sub = dom.n_subsets
        is_x = pts < self.r
        yoff = pts - self.r
        is_y = (yoff >= 0) & (yoff < n_sub)
        is_z = pts >= self.r + n_sub

        pos_x = {int(p) + 1 for p in pts[is_x & (lab == 1)]}
        neg_x = {int(p) + 1 for p in pts[is_x & (lab == 0)]}
        has_pos = bool(lab.any())
        target = None if has_pos else self._zero

        if pos_x & neg_x or len(pos_x) > self.d:
            return _empty_set(target)
        pool = [i for i in range(1, self.r + 1) if i not in neg_x and i not in pos_x]
        need = self.d - len(pos_x)
        base_count = math.comb(len(pool), need)
        forced = tuple(sorted(pos_x))

        def in_base(t):
            s = set(t)
            return pos_x <= s and not (s & neg_x)

        def iter_base():
            for c in itertools.combinations(sorted(pool + list(forced)), self.d):
                if pos_x <= set(c):
                    yield c

        def sample_base(rng):
            pick = rng.choice(len(pool), size=need, replace=False) if need else []
            return tuple(sorted(forced + tuple(pool[int(i)] for i in pick)))

        if self.copies is None:
            if (lab[is_y | is_z] == 1).any():
                return _empty_set(target)
            return ConsistentSet(
                target,
                base_count,
                lambda: (SubsetIndicator(dom, t) for t in iter_base()),
                lambda rng: SubsetIndicator(dom, sample_base(rng)),
                self.nontarget_error,
            )

        # copies: y_T' is 0 only under T' == T; z_j is 1 only under copy j.
        neg_y = {int(o) for o in yoff[is_y & (lab == 0)]}
        pos_y = {int(o) for o in yoff[is_y & (lab == 1)]}
        zoff = pts - self.r - n_sub
        neg_z = {int(o) + 1 for o in zoff[is_z & (lab == 0)]}
        pos_z = {int(o) + 1 for o in zoff[is_z & (lab == 1)]}

        if pos_z:
            js = [j for j in pos_z if j not in neg_z] if len(pos_z) == 1 else []
        else:
            js = [j for j in range(1, self.copies + 1) if j not in neg_z]

        if neg_y:
            if len(neg_y) > 1:
                subsets = []
            else:
                (own,) = neg_y
                t0 = subset_unrank(own, self.r, self.d)
                subsets = [t0] if in_base(t0) and own not in pos_y else []
            n_t = len(subsets)
            iter_t = lambda: iter(subsets)
            sample_t = lambda rng: subsets[0]
        else:
            excluded = [o for o in pos_y if in_base(subset_unrank(o, self.r, self.d))]
            excluded_set = set(excluded)
            n_t = base_count - len(excluded)

            def iter_t():
                for t in iter_base():
                    if subset_rank(t, self.r) not in excluded_set:
                        yield t

            def sample_t(rng):
                if n_t <= 4 * max(1, len(excluded)):
                    items = list(iter_t())
                    return items[int(rng.integers(len(items)))]
                while True:
                    t = sample_base(rng)
                    if subset_rank(t, self.r) not in excluded_set:
                        return t

        n_others = n_t * len(js)

        def iter_others():
            for t in iter_t():
                for j in js:
                    yield SubsetIndicatorCopy(dom, t, j)

        def sample_other(rng):
            t = sample_t(rng)
            return SubsetIndicatorCopy(dom, t, js[int(rng.integers(len(js)))])

        return ConsistentSet(target, n_others, iter_others, sample_other, self.nontarget_error)


class PairClass(HypothesisClass):
    """h* plus, for each i, the hypothesis that is 1 exactly on x_i and y_i."""

    structure = "oig_lb"

    def __init__(self, r: int):
        if not isinstance(r, (int, np.integer)) or r < 1:
            raise InvalidParametersError(f"need r >= 1, got {r}")
        self.r = int(r)
        super().__init__(Domain("pairs", self.r))
        self._zero = AllZero(self.domain)

    @property
    def params(self):
        return {"r": self.r}

    @property
    def target(self):
        return self._zero

    def __len__(self):
        return self.r + 1

    def __iter__(self):
        yield self._zero
        for i in range(1, self.r + 1):
            yield PairSingleton(self.domain, i)

    def __getitem__(self, i):
        return self._zero if i == 0 else PairSingleton(self.domain, i)

    def label_matrix(self, points):
        ids = as_ids(points)
        self.domain.check(ids)
        pair = np.where(ids < self.r, ids, ids - self.r) + 1
        out = np.zeros((self.r + 1, ids.size), dtype=np.uint8)
        out[pair, np.arange(ids.size)] = 1
        return out

    def nontarget_error(self, dist):
        if _uniform_over(dist, self.domain.x_ids):
            return 1.0 / self.r
        return None

    def consistent(self, data: Dataset) -> ConsistentSet:
        dom = self.domain
        dom.check(data.points)
        pair = np.where(data.points < self.r, data.points, data.points - self.r) + 1
        pos = set(pair[data.labels == 1].tolist())
        neg = set(pair[data.labels == 0].tolist())
        target = None if pos else self._zero
        if pos:
            cands = list(pos - neg) if len(pos) == 1 else []
        else:
            cands = [i for i in range(1, self.r + 1) if i not in neg]
        return ConsistentSet(
            target,
            len(cands),
            lambda: (PairSingleton(dom, i) for i in cands),
            lambda rng: PairSingleton(dom, cands[int(rng.integers(len(cands)))]),
            self.nontarget_error,
        )


def _uniform_over(dist, ids: np.ndarray) -> bool:
    sup = np.asarray(dist.support)
    if sup.size != ids.size or not np.array_equal(np.sort(sup), ids):
        return False
    w = np.asarray(dist.weights)
    return bool(np.allclose(w, 1.0 / ids.size, rtol=0, atol=1e-15))


# ---------------------------------------------------------------------------
# constructions


def build_class_majority_lb(r: int, d: int) -> SubsetClass:
    """h* plus the indicator of every d-subset of {x_1..x_r}; y points are always 0."""
    return SubsetClass(r, d)


def build_class_majority_lb_rand(r: int, d: int, copies: int = 1000) -> SubsetClass:
    """Like :func:`build_class_majority_lb` with ``copies`` z-tagged copies per subset.

    The copy (T, j) is 1 on x_i for i in T, 0 on y_T, 1 on every other y,
    and 1 on z_j only.
    """
    return SubsetClass(r, d, copies)


def build_class_oig_lb(r: int) -> PairClass:
    return PairClass(r)


CONSTRUCTIONS = {
    "majority_lb": build_class_majority_lb,
    "majority_lb_rand": build_class_majority_lb_rand,
    "oig_lb": build_class_oig_lb,
}


def build_class(name: str, **params) -> HypothesisClass:
    """Build a named construction, e.g. ``build_class("majority_lb", r=5, d=2)``."""
    try:
        builder = CONSTRUCTIONS[name]
    except KeyError:
        raise InvalidParametersError(f"unknown class construction {name!r}") from None
    if name == "majority_lb_rand" and "K" in params:
        params["copies"] = params.pop("K")
    return builder(**params)


# ---------------------------------------------------------------------------
# projections and VC dimension


def project(cls: HypothesisClass, points) -> set[tuple[int, ...]]:
    """Distinct label patterns the class realizes on an ordered point list."""
    mat = cls.label_matrix(points)
    return {tuple(int(b) for b in row) for row in np.unique(mat, axis=0)}


def _shattered(mat: np.ndarray, cols: tuple[int, ...]) -> bool:
    codes = mat[:, cols].astype(np.int64) @ (1 << np.arange(len(cols), dtype=np.int64))
    return np.unique(codes).size == 1 << len(cols)


def vc_dimension(cls: HypothesisClass, cap: int = 6) -> int:
    """Exact VC dimension by brute force, truncated at ``cap``.

    A return value equal to ``cap`` means the dimension is at least ``cap``.
    Candidate sets grow level by level from shattered sets only, since every
    subset of a shattered set is shattered.
    """
    mat = cls.label_matrix(np.arange(cls.domain.size))
    varying = np.flatnonzero(mat.min(axis=0) != mat.max(axis=0))
    if varying.size == 0 or cap <= 0:
        return 0
    # identical columns can never sit together in a shattered set
    _, first = np.unique(mat[:, varying].T, axis=0, return_index=True)
    mat = mat[:, varying[np.sort(first)]]
    level = {(c,) for c in range(mat.shape[1])}
    best = 1
    while level and best < cap:
        nxt = set()
        ordered = sorted(level)
        for a_idx, a in enumerate(ordered):
            for b in ordered[a_idx + 1:]:
                if a[:-1] != b[:-1]:
                    break
                cand = a + (b[-1],)
                if all(cand[:k] + cand[k + 1:] in level for k in range(len(cand))) and _shattered(mat, cand):
                    nxt.add(cand)
        if not nxt:
            break
        level = nxt
        best += 1
    return best
