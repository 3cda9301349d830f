"""Clean sampling, monotone adversaries, labeling and shuffling.

A run draws ``n`` clean points i.i.d. from a distribution, hands them to an
adversary that returns ``m`` extra points, labels everything with the
target and presents a uniformly shuffled dataset. The oblivious variant
calls the adversary first, without the clean points.

Each stage draws from its own stream (see :mod:`monotone_adv.rng`), so a
transcript is a pure function of the seed and the configuration.
"""
from __future__ import annotations

import io
import zlib
from dataclasses import dataclass, field

import numpy as np

from .domain import (
    Dataset,
    Domain,
    HypothesisClass,
    LabeledExample,
    as_ids,
    build_class,
)
from .exceptions import DomainMismatchError, InvalidParametersError, ProtocolViolationError
from .rng import Streams


@dataclass(frozen=True, eq=False)
class Distribution:
    """A finite distribution over point ids."""

    support: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        sup = as_ids(self.support)
        w = np.asarray(self.weights, dtype=float)
        if sup.size == 0:
            raise InvalidParametersError("empty support")
        if w.shape != sup.shape or (w < 0).any() or abs(w.sum() - 1.0) > 1e-12:
            raise InvalidParametersError("weights must be non-negative and sum to 1")
        object.__setattr__(self, "support", sup)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "_uniform", bool(np.all(w == w[0])))

    @classmethod
    def uniform(cls, support) -> "Distribution":
        sup = as_ids(support)
        if sup.size == 0:
            raise InvalidParametersError("empty support")
        return cls(sup, np.full(sup.size, 1.0 / sup.size))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self._uniform:
            return self.support[rng.integers(self.support.size, size=size)]
        return rng.choice(self.support, size=size, p=self.weights)


# ---------------------------------------------------------------------------
# adversary strategies on point-id arrays


def adversary_subset_missing(clean: np.ndarray, r: int, d: int, m: int) -> np.ndarray:
    """``m`` copies of y_T for the lexicographically first d-subset T unseen in ``clean``.

    Falls back to ``m`` copies of x_1 when every d-subset is hit. Ids follow
    the ``subsets`` domain layout.
    """
    seen = np.zeros(r, dtype=bool)
    clean = as_ids(clean)
    seen[clean[clean < r]] = True
    missing = np.flatnonzero(~seen)
    dom = Domain("subsets", r, d)
    if missing.size >= d:
        # the smallest d missing indices form the lexicographically first subset
        target = dom.y(tuple(int(i) + 1 for i in missing[:d]))
    else:
        target = dom.x(1)
    return np.full(m, target, dtype=np.int64)


def adversary_pairing(clean: np.ndarray, r: int) -> np.ndarray:
    """The y-partner of every clean occurrence of an x, duplicates included."""
    clean = as_ids(clean)
    if (clean >= r).any():
        raise DomainMismatchError("pairing adversary expects x points only")
    return clean + r


def adversary_coupon_pairing(clean: np.ndarray, r: int, m: int) -> np.ndarray:
    """y_i once per distinct clean x_i (ascending i), padded to ``m`` with the first y."""
    if m != r:
        raise InvalidParametersError(f"coupon pairing needs m == r, got m={m}, r={r}")
    clean = as_ids(clean)
    distinct = np.unique(clean[clean < r])
    out = distinct + r
    pad = out[0] if out.size else r  # y_1
    return np.concatenate([out, np.full(m - out.size, pad, dtype=np.int64)])


# ---------------------------------------------------------------------------
# adversary objects used by the pipeline


class Adversary:
    """Base for pipeline adversaries.

    ``name`` and ``params`` identify the strategy in transcripts and configs.
    """

    name = "adversary"
    oblivious = False

    def output_size(self, n: int) -> int:
        raise NotImplementedError

    def __call__(self, clean: np.ndarray | None, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    @property
    def params(self) -> dict:
        return {}

    @property
    def spec(self) -> str:
        return " ".join([self.name] + [f"{k}={v}" for k, v in self.params.items()])


class SubsetMissing(Adversary):
    name = "subset_missing"

    def __init__(self, r: int, d: int, m: int):
        self.r, self.d, self.m = r, d, m

    @property
    def params(self):
        return {"r": self.r, "d": self.d, "m": self.m}

    def output_size(self, n):
        return self.m

    def __call__(self, clean, rng):
        return adversary_subset_missing(clean, self.r, self.d, self.m)


class Pairing(Adversary):
    name = "pairing"

    def __init__(self, r: int):
        self.r = r

    @property
    def params(self):
        return {"r": self.r}

    def output_size(self, n):
        return n

    def __call__(self, clean, rng):
        return adversary_pairing(clean, self.r)


class CouponPairing(Adversary):
    name = "coupon_pairing"

    def __init__(self, r: int, m: int | None = None):
        self.r = r
        self.m = r if m is None else m
        if self.m != r:
            raise InvalidParametersError(f"coupon pairing needs m == r, got m={self.m}, r={r}")

    @property
    def params(self):
        return {"r": self.r, "m": self.m}

    def output_size(self, n):
        return self.m

    def __call__(self, clean, rng):
        return adversary_coupon_pairing(clean, self.r, self.m)


class FixedList(Adversary):
    """Oblivious adversary that always emits the same points."""

    name = "fixed_list"
    oblivious = True

    def __init__(self, points):
        self.points = as_ids(points)

    @property
    def params(self):
        return {"points": ",".join(map(str, self.points.tolist()))}

    def output_size(self, n):
        return int(self.points.size)

    def __call__(self, clean, rng):
        return self.points.copy()


class UniformOblivious(Adversary):
    """Oblivious adversary emitting ``m`` i.i.d. uniform draws from a fixed pool."""

    name = "uniform_oblivious"
    oblivious = True

    def __init__(self, pool, m: int):
        self.pool = as_ids(pool)
        self.m = m

    @property
    def params(self):
        return {"m": self.m, "pool": ",".join(map(str, self.pool.tolist()))}

    def output_size(self, n):
        return self.m

    def __call__(self, clean, rng):
        return self.pool[rng.integers(self.pool.size, size=self.m)]


# ---------------------------------------------------------------------------
# transcripts


@dataclass(frozen=True, eq=False)
class AdversaryTranscript:
    """Everything one pipeline run produced.

    ``permutation[k]`` is the index into clean‖corrupted of the k-th
    example of the shuffled dataset.
    """

    clean_points: np.ndarray
    corrupted_points: np.ndarray
    permutation: np.ndarray
    labels: np.ndarray  # labels of clean‖corrupted, in that order
    master_seed: int
    adversary: str
    class_spec: str
    oblivious: bool = False
    invocation_order: tuple[str, ...] = ("clean", "adversary", "shuffle")
    domain: Domain | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return int(self.clean_points.size)

    @property
    def m(self) -> int:
        return int(self.corrupted_points.size)

    @property
    def combined_points(self) -> np.ndarray:
        return np.concatenate([self.clean_points, self.corrupted_points])

    @property
    def shuffled(self) -> Dataset:
        pts = self.combined_points[self.permutation]
        return Dataset(pts, self.labels[self.permutation])

    @property
    def clean(self) -> list[LabeledExample]:
        return self._examples(self.clean_points, self.labels[: self.n])

    @property
    def corrupted(self) -> list[LabeledExample]:
        return self._examples(self.corrupted_points, self.labels[self.n :])

    def _examples(self, pts, labels):
        dom = self.domain or Domain.generic(int(pts.max(initial=0)) + 1)
        return [LabeledExample(dom.point(p), int(y)) for p, y in zip(pts, labels)]

    def digest(self) -> int:
        """CRC32 of the shuffled dataset; equal digests pair up transcripts across experiments."""
        ds = self.shuffled
        return zlib.crc32(ds.points.tobytes() + ds.labels.tobytes())

    def to_text(self) -> str:
        """Line-oriented serialization.

        Header lines ``key value``, then one ``role point_id label position``
        line per example of clean‖corrupted, where ``position`` is its index
        after shuffling.
        """
        pos = np.empty_like(self.permutation)
        pos[self.permutation] = np.arange(self.permutation.size)
        buf = io.StringIO()
        buf.write("# monotone-adversary transcript v1\n")
        buf.write(f"n {self.n}\nm {self.m}\nseed {self.master_seed}\n")
        buf.write(f"adversary {self.adversary}\nclass {self.class_spec}\n")
        buf.write(f"oblivious {int(self.oblivious)}\n")
        for k, p in enumerate(self.combined_points):
            role = "clean" if k < self.n else "corrupted"
            buf.write(f"{role} {int(p)} {int(self.labels[k])} {int(pos[k])}\n")
        return buf.getvalue()


def _run(dist, cls, adversary, n, m, rng, oblivious):
    if n < 1:
        raise InvalidParametersError(f"need n >= 1, got {n}")
    declared = adversary.output_size(n)
    if declared != m:
        raise ProtocolViolationError(f"adversary {adversary.name} declares {declared} points, m={m}")
    streams = Streams.coerce(rng)
    if oblivious:
        corrupted = as_ids(adversary(None, streams.stage("adversary")))
        clean = dist.sample(streams.stage("clean"), n)
        order = ("adversary", "clean", "shuffle")
    else:
        clean = dist.sample(streams.stage("clean"), n)
        corrupted = as_ids(adversary(clean.copy(), streams.stage("adversary")))
        order = ("clean", "adversary", "shuffle")
    if corrupted.size != m:
        raise ProtocolViolationError(f"adversary {adversary.name} returned {corrupted.size} points, expected {m}")
    combined = np.concatenate([clean, corrupted])
    cls.domain.check(combined)
    labels = cls.target.labels(combined)
    perm = streams.stage("shuffle").permutation(n + m)
    return AdversaryTranscript(
        clean, corrupted, perm, labels, streams.seed, adversary.spec, cls.spec, oblivious, order, cls.domain
    )


def run_adaptive(dist: Distribution, cls: HypothesisClass, adversary: Adversary, n: int, m: int, rng) -> AdversaryTranscript:
    """One draw from the adaptive monotone process."""
    return _run(dist, cls, adversary, n, m, rng, oblivious=False)


def run_oblivious(dist: Distribution, cls: HypothesisClass, adversary: Adversary, n: int, m: int, rng) -> AdversaryTranscript:
    """One draw from the oblivious process: the adversary runs before and without the clean sample."""
    return _run(dist, cls, adversary, n, m, rng, oblivious=True)


# ---------------------------------------------------------------------------
# parsing and auditing serialized transcripts


class TranscriptFormatError(ValueError):
    pass


@dataclass
class ParsedTranscript:
    header: dict
    roles: list[str]
    points: np.ndarray
    labels: np.ndarray
    positions: np.ndarray


def parse_transcript(text: str) -> ParsedTranscript:
    header: dict = {}
    roles, pts, labs, pos = [], [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key in ("clean", "corrupted"):
            parts = rest.split()
            if len(parts) != 3:
                raise TranscriptFormatError(f"line {lineno}: expected 'role point label position'")
            try:
                p, y, q = (int(v) for v in parts)
            except ValueError:
                raise TranscriptFormatError(f"line {lineno}: non-integer field") from None
            roles.append(key)
            pts.append(p)
            labs.append(y)
            pos.append(q)
        elif key in ("n", "m", "seed", "adversary", "class", "oblivious"):
            header[key] = rest
        else:
            raise TranscriptFormatError(f"line {lineno}: unknown key {key!r}")
    for key in ("n", "m", "class"):
        if key not in header:
            raise TranscriptFormatError(f"missing header {key!r}")
    try:
        header["n"] = int(header["n"])
        header["m"] = int(header["m"])
    except ValueError:
        raise TranscriptFormatError("n and m must be integers") from None
    return ParsedTranscript(header, roles, np.array(pts, np.int64), np.array(labs, np.int64), np.array(pos, np.int64))


def class_from_spec(spec: str) -> HypothesisClass:
    name, *items = spec.split()
    params = {}
    for item in items:
        k, _, v = item.partition("=")
        params[k] = int(v)
    return build_class(name, **params)


def audit_transcript(text: str) -> list[str]:
    """Re-check a serialized transcript; returns a list of violations (empty if clean)."""
    t = parse_transcript(text)
    problems = []
    n_clean = t.roles.count("clean")
    n_corr = t.roles.count("corrupted")
    if n_clean != t.header["n"]:
        problems.append(f"count: {n_clean} clean examples, header n={t.header['n']}")
    if n_corr != t.header["m"]:
        problems.append(f"arity: {n_corr} corrupted examples, header m={t.header['m']}")
    first_corr = t.roles.index("corrupted") if "corrupted" in t.roles else len(t.roles)
    if "clean" in t.roles[first_corr:]:
        problems.append("order: clean example listed after a corrupted one")
    total = len(t.roles)
    if sorted(t.positions.tolist()) != list(range(total)):
        problems.append("permutation: positions are not a permutation of 0..n+m-1")
    try:
        cls = class_from_spec(t.header["class"])
    except (InvalidParametersError, ValueError, TypeError) as exc:
        problems.append(f"class: cannot rebuild {t.header['class']!r} ({exc})")
        return problems
    inside = (t.points >= 0) & (t.points < cls.domain.size)
    for k in np.flatnonzero(~inside):
        problems.append(f"domain: line {k} point {t.points[k]} outside the domain")
    if inside.any():
        truth = cls.target.labels(t.points[inside])
        bad = np.flatnonzero(truth != t.labels[inside])
        for k, want in zip(np.flatnonzero(inside)[bad], truth[bad]):
            problems.append(f"monotonicity: {t.roles[k]} point {t.points[k]} labeled {t.labels[k]}, target says {want}")
    return problems
