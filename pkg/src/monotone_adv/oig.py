"""One-inclusion graphs, min-max out-degree orientations and the OIG predictor.

An orientation stores, for every edge, the endpoint it points to (its
head). A vertex's out-degree counts its incident edges whose head is the
other endpoint. The predictor answers 0 when the edge between the "0
vertex" and the "1 vertex" points at the 0 vertex.

Coordinates (directions) are 0-based positions in the graph's point list.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .domain import Dataset, HypothesisClass, as_ids
from .exceptions import CapacityExceededError, RealizabilityError

STRATEGIES = ("optimal", "rand")


@dataclass(frozen=True, eq=False)
class OneInclusionGraph:
    points: np.ndarray  # point id of every coordinate
    patterns: np.ndarray  # (V, L) uint8, lexicographically sorted
    edges: np.ndarray  # (E, 2) vertex indices, u < v
    directions: np.ndarray  # (E,) coordinate where the endpoints differ

    @property
    def n_vertices(self) -> int:
        return self.patterns.shape[0]

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n_vertices)

    @cached_property
    def _vertex_index(self) -> dict[bytes, int]:
        return {row.tobytes(): i for i, row in enumerate(self.patterns)}

    @cached_property
    def _edge_index(self) -> dict[tuple[int, int], int]:
        return {(int(u), int(v)): e for e, (u, v) in enumerate(self.edges)}

    def vertex(self, pattern) -> int:
        """Index of a pattern, or -1 if no member of the class realizes it."""
        key = np.asarray(pattern, dtype=np.uint8).tobytes()
        return self._vertex_index.get(key, -1)

    def edge_between(self, a: int, b: int) -> int:
        return self._edge_index.get((min(a, b), max(a, b)), -1)

    def dump(self, orientation: "Orientation | None" = None) -> str:
        """Plain-text adjacency dump: vertex patterns, edge triples, orientation heads."""
        lines = [f"# oig vertices={self.n_vertices} edges={self.n_edges} coords={self.points.size}"]
        lines.append("points " + " ".join(map(str, self.points.tolist())))
        for i, row in enumerate(self.patterns):
            lines.append(f"vertex {i} {''.join(map(str, row.tolist()))}")
        for e, ((u, v), k) in enumerate(zip(self.edges.tolist(), self.directions.tolist())):
            head = f" head {int(orientation.heads[e])}" if orientation is not None else ""
            lines.append(f"edge {u} {v} {k}{head}")
        return "\n".join(lines) + "\n"


def graph_from_matrix(mat: np.ndarray, points) -> OneInclusionGraph:
    """Graph on the distinct rows of a (hypotheses x coordinates) label matrix."""
    mat = np.ascontiguousarray(mat, dtype=np.uint8)
    points = as_ids(points)
    L = mat.shape[1]
    packed = np.ascontiguousarray(np.packbits(mat, axis=1))
    keys = packed.view(np.dtype((np.void, packed.shape[1]))).ravel()
    # big-endian bit packing keeps byte order == lexicographic pattern order
    _, first = np.unique(keys, return_index=True)
    patterns = mat[first]
    edges, dirs = _hamming_one(patterns)
    return OneInclusionGraph(points, patterns, edges, dirs)


def _nonzero(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # 2-D nonzero on uint8 is slow; a flat scan of the bool view is not
    idx = np.flatnonzero(np.ascontiguousarray(mat, dtype=np.uint8).view(bool))
    return np.divmod(idx, mat.shape[1])


def _hamming_one(patterns: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    nv = patterns.shape[0]
    if nv < 2:
        return np.zeros((0, 2), np.int64), np.zeros(0, np.int64)
    weight = patterns.sum(axis=1, dtype=np.int64)
    rows, cols = _nonzero(patterns)
    s = sp.csr_matrix((np.ones(rows.size, np.int32), (rows, cols)), shape=patterns.shape)
    overlap = (s @ s.T).tocoo()
    a, b, ov = overlap.row.astype(np.int64), overlap.col.astype(np.int64), overlap.data.astype(np.int64)
    keep = (a < b) & (weight[a] + weight[b] - 2 * ov == 1)
    pairs = [np.stack([a[keep], b[keep]], axis=1)]
    # pairs with no shared 1 are at distance 1 only as (empty pattern, weight-1 pattern)
    empty = np.flatnonzero(weight == 0)
    if empty.size:
        singles = np.flatnonzero(weight == 1)
        z = int(empty[0])
        pairs.append(np.stack([np.minimum(z, singles), np.maximum(z, singles)], axis=1))
    edges = np.concatenate(pairs)
    if edges.size == 0:
        return np.zeros((0, 2), np.int64), np.zeros(0, np.int64)
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    dirs = np.argmax(patterns[edges[:, 0]] != patterns[edges[:, 1]], axis=1).astype(np.int64)
    return edges, dirs


def build_oig(cls: HypothesisClass, train_points, test_point) -> OneInclusionGraph:
    """Graph on train‖test in the given order; the test point is the last coordinate."""
    pts = np.concatenate([as_ids(train_points), as_ids([test_point])])
    return graph_from_matrix(cls.label_matrix(pts), pts)


def canonical_oig(cls: HypothesisClass, points) -> OneInclusionGraph:
    """Graph on a point multiset with coordinates sorted by point id.

    Only the multiset matters, so leave-one-out rounds over the same points
    share one graph (and one deterministic orientation).
    """
    pts = as_ids(points)
    pts = pts[np.argsort(pts, kind="stable")]
    return graph_from_matrix(cls.label_matrix(pts), pts)


# ---------------------------------------------------------------------------
# orientations


@dataclass(frozen=True, eq=False)
class Orientation:
    heads: np.ndarray  # (E,) vertex each edge points to
    max_outdegree: int
    tau: int | None = None

    def outdegrees(self, graph: OneInclusionGraph) -> np.ndarray:
        return outdegrees(graph, self.heads)


def outdegrees(graph: OneInclusionGraph, heads: np.ndarray) -> np.ndarray:
    u, v = graph.edges[:, 0], graph.edges[:, 1]
    tails = np.where(heads == u, v, u)
    return np.bincount(tails, minlength=graph.n_vertices)


def _assign_tails(us: list[int], vs: list[int], nv: int, cap: int) -> list[int] | None:
    """Give every edge a tail endpoint with at most ``cap`` tails per vertex.

    Edges are inserted one at a time; when both endpoints are full, a BFS
    looks for an augmenting path that shifts already placed edges to their
    other endpoint. Returns None when no assignment exists.
    """
    tail = [-1] * len(us)
    load = [0] * nv
    owned: list[list[int]] = [[] for _ in range(nv)]
    for e, (a, b) in enumerate(zip(us, vs)):
        if load[a] < cap:
            tail[e] = a
        elif load[b] < cap:
            tail[e] = b
        else:
            parent = {a: (e, -1), b: (e, -1)}
            queue = deque([a, b])
            found = -1
            while queue and found < 0:
                w = queue.popleft()
                for f in owned[w]:
                    x = us[f] + vs[f] - w
                    if x in parent:
                        continue
                    parent[x] = (f, w)
                    if load[x] < cap:
                        found = x
                        break
                    queue.append(x)
            if found < 0:
                return None
            load[found] += 1
            cur = found
            while True:
                f, w = parent[cur]
                if w < 0:
                    tail[e] = cur
                    owned[cur].append(e)
                    break
                owned[w].remove(f)
                owned[cur].append(f)
                tail[f] = cur
                cur = w
            continue
        load[tail[e]] += 1
        owned[tail[e]].append(e)
    return tail


def orient_min_max_outdegree(graph: OneInclusionGraph) -> Orientation:
    """An orientation whose largest out-degree is the minimum possible.

    Binary search on the bound t; each probe is a capacitated assignment of
    edges to tail endpoints solved with augmenting paths. Deterministic for
    a given graph.
    """
    E = graph.n_edges
    if E == 0:
        return Orientation(np.zeros(0, np.int64), 0, 0)
    us = graph.edges[:, 0].tolist()
    vs = graph.edges[:, 1].tolist()
    deg = graph.degrees()
    lo, hi = 1, int(deg.max())
    best = _assign_tails(us, vs, graph.n_vertices, hi)
    while lo < hi:
        mid = (lo + hi) // 2
        tails = _assign_tails(us, vs, graph.n_vertices, mid)
        if tails is None:
            lo = mid + 1
        else:
            hi, best = mid, tails
    tails = np.asarray(best, dtype=np.int64)
    heads = graph.edges[:, 0] + graph.edges[:, 1] - tails
    achieved = int(outdegrees(graph, heads).max())
    return Orientation(heads, achieved, lo)


def _active_vertices(graph):
    active, inv = np.unique(graph.edges.ravel(), return_inverse=True)
    return active, inv.reshape(-1, 2)


def optimal_orientation_masks(graph: OneInclusionGraph, cap: int = 20) -> tuple[np.ndarray, int]:
    """All orientations with the minimum largest out-degree, by exhaustive enumeration.

    An orientation is encoded as a bit mask: bit e set means edge e points
    to its larger-index endpoint. Returns (masks, tau).
    """
    E = graph.n_edges
    if E > cap:
        raise CapacityExceededError(f"{E} edges exceed the enumeration cap of {cap}")
    if E == 0:
        return np.zeros(1, np.int64), 0
    _, local = _active_vertices(graph)
    nv = int(local.max()) + 1
    tail_if_set = np.zeros((E, nv), np.int16)  # bit set: head = v, tail = u
    tail_if_set[np.arange(E), local[:, 0]] = 1
    tail_if_clear = np.zeros((E, nv), np.int16)
    tail_if_clear[np.arange(E), local[:, 1]] = 1
    shifts = np.arange(E, dtype=np.int64)
    best = None
    kept: list[np.ndarray] = []
    chunk = 1 << 15
    for start in range(0, 1 << E, chunk):
        masks = np.arange(start, min(start + chunk, 1 << E), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.int16)
        out = bits @ tail_if_set + (1 - bits) @ tail_if_clear
        worst = out.max(axis=1)
        low = int(worst.min())
        if best is None or low < best:
            best, kept = low, []
        if low == best:
            kept.append(masks[worst == best])
    return np.concatenate(kept), int(best)


def _heads_from_mask(graph, mask: int) -> np.ndarray:
    bits = (mask >> np.arange(graph.n_edges, dtype=np.int64)) & 1
    return np.where(bits == 1, graph.edges[:, 1], graph.edges[:, 0])


def sample_uniform_optimal_orientation(graph: OneInclusionGraph, rng: np.random.Generator, enumeration_cap: int = 20) -> Orientation:
    """A uniformly random orientation among those with optimal largest out-degree."""
    masks, tau = optimal_orientation_masks(graph, enumeration_cap)
    mask = int(masks[rng.integers(masks.size)])
    return Orientation(_heads_from_mask(graph, mask), tau, tau)


# ---------------------------------------------------------------------------
# prediction


def _prepare(cls, train: Dataset, test_point):
    pts = np.concatenate([train.points, as_ids([test_point])])
    order = np.argsort(pts, kind="stable")  # test is last, so it sorts after equal train ids
    pos = int(np.flatnonzero(order == pts.size - 1)[0])
    labels = np.concatenate([train.labels, [0]]).astype(np.uint8)[order]
    return pts, order, pos, labels


def _endpoints(graph, labels, pos):
    pat = labels.copy()
    pat[pos] = 0
    i0 = graph.vertex(pat)
    pat[pos] = 1
    i1 = graph.vertex(pat)
    if i0 < 0 and i1 < 0:
        raise RealizabilityError("training labels are not realized by any member of the class")
    return i0, i1


def _proba_on_graph(graph, labels, pos, strategy, cap=20) -> float:
    i0, i1 = _endpoints(graph, labels, pos)
    if i1 < 0:
        return 0.0
    if i0 < 0:
        return 1.0
    e = graph.edge_between(i0, i1)
    if strategy == "optimal":
        return float(orient_min_max_outdegree(graph).heads[e] == i1)
    masks, _ = optimal_orientation_masks(graph, cap)
    toward_one = ((masks >> e) & 1) == (1 if graph.edges[e, 1] == i1 else 0)
    return float(toward_one.mean())


def oig_predict(cls: HypothesisClass, train: Dataset, test_point, strategy: str = "optimal", rng=None) -> int:
    """OIG label for ``test_point``.

    ``strategy="optimal"`` uses the deterministic optimal orientation of the
    id-sorted graph; ``"rand"`` samples one uniformly among all optimal
    orientations (needs ``rng``).
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown orientation strategy {strategy!r}")
    pts, order, pos, labels = _prepare(cls, train, test_point)
    graph = graph_from_matrix(cls.label_matrix(pts[order]), pts[order])
    i0, i1 = _endpoints(graph, labels, pos)
    if i1 < 0:
        return 0
    if i0 < 0:
        return 1
    if strategy == "optimal":
        orient = orient_min_max_outdegree(graph)
    else:
        if rng is None:
            raise ValueError("strategy 'rand' needs an rng")
        orient = sample_uniform_optimal_orientation(graph, rng)
    return int(orient.heads[graph.edge_between(i0, i1)] == i1)


def oig_predict_proba(cls: HypothesisClass, train: Dataset, test_point, strategy: str = "rand") -> float:
    """Exact probability that the OIG predictor outputs 1 (0 or 1 for the deterministic strategy)."""
    pts, order, pos, labels = _prepare(cls, train, test_point)
    graph = graph_from_matrix(cls.label_matrix(pts[order]), pts[order])
    return _proba_on_graph(graph, labels, pos, strategy)


class OIGPredictor:
    """The OIG predictor for one training set, with the training projection cached.

    Test points that cannot produce an edge in the test direction are
    answered without building a graph. Under ``"rand"``, graphs are cached
    by the set of (training pattern, test label) pairs, which determines
    the graph up to the position of the test coordinate.
    """

    def __init__(self, cls: HypothesisClass, train: Dataset, strategy: str = "optimal", cap: int = 20):
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown orientation strategy {strategy!r}")
        self.cls, self.train, self.strategy, self.cap = cls, train, strategy, cap
        self._mat = cls.label_matrix(train.points)
        self._consistent = (self._mat == train.labels[None, :]).all(axis=1)
        if not self._consistent.any():
            raise RealizabilityError("training labels are not realized by any member of the class")
        packed = np.ascontiguousarray(np.packbits(self._mat, axis=1))
        keys = packed.view(np.dtype((np.void, packed.shape[1]))).ravel() if packed.shape[1] else np.zeros(len(self._mat))
        _, first, pid = np.unique(keys, return_index=True, return_inverse=True)
        pid = pid.ravel().astype(np.int64)
        self._pid = pid
        self._patterns = self._mat[first]
        n_pat = int(pid.max()) + 1
        self._group_size = np.bincount(pid, minlength=n_pat)
        self._cache: dict[bytes, float] = {}

    def _graph_proba(self, test_point: int, col: np.ndarray) -> float:
        # one row per distinct (training pattern, test label): exactly the vertex set
        pairs = np.unique(self._pid * 2 + col)
        mat = np.concatenate([self._patterns[pairs // 2], (pairs % 2).astype(np.uint8)[:, None]], axis=1)
        if self.strategy == "rand":
            # uniform over optimal orientations does not depend on coordinate order
            pts = np.concatenate([self.train.points, [test_point]])
            labels = np.concatenate([self.train.labels, [0]]).astype(np.uint8)
            graph = graph_from_matrix(mat, pts)
            return _proba_on_graph(graph, labels, pts.size - 1, self.strategy, self.cap)
        pts, order, pos, labels = _prepare(self.cls, self.train, test_point)
        graph = graph_from_matrix(mat[:, order], pts[order])
        return _proba_on_graph(graph, labels, pos, self.strategy, self.cap)

    def _graph_keys(self, cols: np.ndarray) -> list[bytes]:
        h, j = _nonzero(cols)
        J = cols.shape[1]
        ones = np.bincount(self._pid[h] * J + j, minlength=self._group_size.size * J).reshape(-1, J)
        present = np.concatenate([ones < self._group_size[:, None], ones > 0], axis=0)
        packed = np.ascontiguousarray(np.packbits(present, axis=0).T)
        return [row.tobytes() for row in packed]

    def proba(self, test_points) -> np.ndarray:
        """Exact probability of predicting 1 at each test point."""
        ids = as_ids(test_points)
        cols = self.cls.label_matrix(ids)
        sub = cols[self._consistent]
        has1 = sub.any(axis=0)
        has0 = (sub == 0).any(axis=0)
        out = np.where(has1 & ~has0, 1.0, 0.0)
        both = np.flatnonzero(has1 & has0)
        if both.size == 0:
            return out
        if self.strategy != "rand":
            for j in both:
                out[j] = self._graph_proba(int(ids[j]), cols[:, j])
            return out
        for j, key in zip(both, self._graph_keys(cols[:, both])):
            if key not in self._cache:
                self._cache[key] = self._graph_proba(int(ids[j]), cols[:, j])
            out[j] = self._cache[key]
        return out

    def predict(self, test_point, rng: np.random.Generator | None = None) -> int:
        if self.strategy == "rand":
            return oig_predict(self.cls, self.train, test_point, "rand", rng)
        return int(self.proba([test_point])[0])

    def exact_error(self, dist, target=None) -> float:
        """Expected error over a fresh test draw, orientation coins averaged exactly."""
        target = self.cls.target if target is None else target
        p1 = self.proba(dist.support)
        truth = target.labels(dist.support)
        return float(np.dot(dist.weights, np.where(truth == 1, 1.0 - p1, p1)))


# ---------------------------------------------------------------------------
# leave-one-out audit


def target_vertex(graph: OneInclusionGraph, cls: HypothesisClass) -> int:
    return graph.vertex(cls.target.labels(graph.points))


def loo_error_sum(
    cls: HypothesisClass,
    points,
    orientation: Orientation | None = None,
    graph: OneInclusionGraph | None = None,
) -> int:
    """Leave-one-out mistakes of the orientation-driven predictor over a point multiset.

    For each position p the predictor trains on the other positions
    (labeled by the target) and predicts position p, reading the answer off
    the shared graph and orientation. Defaults to the id-sorted graph with
    the deterministic optimal orientation, i.e. what :func:`oig_predict`
    would do in every round.
    """
    if graph is None:
        graph = canonical_oig(cls, points)
    if orientation is None:
        orientation = orient_min_max_outdegree(graph)
    truth = cls.target.labels(graph.points)
    mistakes = 0
    for pos in range(graph.points.size):
        i0, i1 = _endpoints(graph, truth, pos)
        if i1 < 0:
            pred = 0
        elif i0 < 0:
            pred = 1
        else:
            pred = int(orientation.heads[graph.edge_between(i0, i1)] == i1)
        mistakes += pred != truth[pos]
    return int(mistakes)
