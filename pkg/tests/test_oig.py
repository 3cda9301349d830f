import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monotone_adv.domain import Dataset, ExplicitClass, build_class_majority_lb, build_class_oig_lb, vc_dimension
from monotone_adv.exceptions import CapacityExceededError, RealizabilityError
from monotone_adv.oig import (
    OIGPredictor,
    build_oig,
    canonical_oig,
    graph_from_matrix,
    loo_error_sum,
    oig_predict,
    oig_predict_proba,
    optimal_orientation_masks,
    orient_min_max_outdegree,
    sample_uniform_optimal_orientation,
    target_vertex,
)
from monotone_adv.pipeline import Distribution, Pairing, run_adaptive

from oracles import all_orientations, hamming_graph, min_max_outdegree_brute, oig_rand_proba_brute


def small_matrix(max_cols=5, max_rows=10):
    return st.integers(1, max_cols).flatmap(
        lambda L: st.lists(st.lists(st.integers(0, 1), min_size=L, max_size=L), min_size=1, max_size=max_rows)
    )


def test_pair_class_example_graph():
    cls = build_class_oig_lb(2)
    g = build_oig(cls, [cls.domain.x(1)], cls.domain.x(2))
    assert [''.join(map(str, p)) for p in g.patterns] == ["00", "01", "10"]
    assert g.edges.tolist() == [[0, 1], [0, 2]]
    assert g.directions.tolist() == [1, 0]
    assert "edge 0 1 1" in g.dump()


@settings(max_examples=200, deadline=None)
@given(small_matrix())
def test_graph_matches_hamming_oracle(rows):
    mat = np.array(rows, np.uint8)
    g = graph_from_matrix(mat, np.arange(mat.shape[1]))
    verts, edges = hamming_graph(mat)
    assert [tuple(p) for p in g.patterns] == verts
    assert [(int(u), int(v), int(k)) for (u, v), k in zip(g.edges, g.directions)] == edges


@settings(max_examples=200, deadline=None)
@given(small_matrix(max_cols=5, max_rows=12))
def test_solver_matches_exhaustive(rows):
    mat = np.array(rows, np.uint8)
    g = graph_from_matrix(mat, np.arange(mat.shape[1]))
    if g.n_edges > 12:
        return
    o = orient_min_max_outdegree(g)
    tau = min_max_outdegree_brute([tuple(e) for e in g.edges.tolist()], g.n_vertices)
    assert o.max_outdegree == tau
    assert o.outdegrees(g).max(initial=0) == tau
    # every edge points to one of its endpoints
    assert all(h in e for h, e in zip(o.heads.tolist(), g.edges.tolist()))


@settings(max_examples=100, deadline=None)
@given(small_matrix(max_cols=4, max_rows=9))
def test_optimal_masks_are_exactly_the_optimal_orientations(rows):
    mat = np.array(rows, np.uint8)
    g = graph_from_matrix(mat, np.arange(mat.shape[1]))
    if g.n_edges > 10:
        return
    masks, tau = optimal_orientation_masks(g)
    edges = [tuple(e) for e in g.edges.tolist()]
    brute = []
    for k, (heads, out) in enumerate(all_orientations(edges, g.n_vertices)):
        if max(out, default=0) == tau:
            brute.append(k)
    # all_orientations enumerates itertools.product order: edge 0 is the most significant choice
    E = len(edges)
    as_masks = sorted(sum(((k >> (E - 1 - e)) & 1) << e for e in range(E)) for k in brute)
    assert sorted(masks.tolist()) == as_masks


def test_enumeration_cap():
    cls = ExplicitClass([[int(b) for b in format(i, "05b")] for i in range(32)])
    g = graph_from_matrix(cls.label_matrix(np.arange(5)), np.arange(5))
    with pytest.raises(CapacityExceededError):
        optimal_orientation_masks(g, cap=20)
    assert orient_min_max_outdegree(g).max_outdegree == 3  # 5-cube: 80 edges, 32 vertices


def test_sampled_orientation_is_optimal():
    cls = build_class_majority_lb(4, 2)
    g = canonical_oig(cls, np.arange(4))
    rng = np.random.default_rng(1)
    o = sample_uniform_optimal_orientation(g, rng)
    assert o.outdegrees(g).max() == orient_min_max_outdegree(g).max_outdegree


@settings(max_examples=80, deadline=None)
@given(small_matrix(max_cols=5, max_rows=8), st.data())
def test_tau_at_most_vc_dimension(rows, data):
    uniq = sorted(set(map(tuple, rows)))
    cls = ExplicitClass(uniq)
    g = canonical_oig(cls, np.arange(cls.domain.size))
    assert orient_min_max_outdegree(g).max_outdegree <= vc_dimension(cls, cap=6)


@settings(max_examples=120, deadline=None)
@given(small_matrix(max_cols=5, max_rows=8), st.data())
def test_predictor_probability_matches_brute_force(rows, data):
    uniq = sorted(set(map(tuple, rows)))
    full = np.array(uniq, np.uint8)
    cls = ExplicitClass(uniq)
    L = full.shape[1]
    train = data.draw(st.lists(st.integers(0, L - 1), max_size=4))
    test = data.draw(st.integers(0, L - 1))
    labels = [int(full[0, p]) for p in train]  # realizable: the target's labels
    ds = Dataset(np.array(train, np.int64), np.array(labels, np.uint8))
    expect = oig_rand_proba_brute(full, train, labels, test)
    assert oig_predict_proba(cls, ds, test, "rand") == pytest.approx(expect, abs=1e-12)
    pred = OIGPredictor(cls, ds, "rand")
    assert pred.proba([test])[0] == pytest.approx(expect, abs=1e-12)
    det = OIGPredictor(cls, ds, "optimal").proba([test])[0]
    assert det == oig_predict(cls, ds, test, "optimal")


def test_rand_predictor_sampling_matches_probability():
    cls = build_class_oig_lb(3)
    dom = cls.domain
    ds = Dataset(np.array([dom.x(1), dom.y(1)]), np.zeros(2, np.uint8))
    p = oig_predict_proba(cls, ds, dom.x(2))
    assert p == 0.5
    rng = np.random.default_rng(0)
    hits = np.mean([oig_predict(cls, ds, dom.x(2), "rand", rng) for _ in range(2000)])
    assert abs(hits - 0.5) < 0.05
    with pytest.raises(ValueError):
        oig_predict(cls, ds, dom.x(2), "rand")


def test_unrealizable_training_set():
    cls = build_class_oig_lb(3)
    ds = Dataset(np.array([0, 1]), np.array([1, 1], np.uint8))
    with pytest.raises(RealizabilityError):
        OIGPredictor(cls, ds)


def test_exact_error_matches_per_point_average():
    cls = build_class_oig_lb(20)
    dist = Distribution.uniform(cls.domain.x_ids)
    tr = run_adaptive(dist, cls, Pairing(20), 10, 10, 3)
    pred = OIGPredictor(cls, tr.shuffled, "rand")
    per_point = np.mean([oig_predict_proba(cls, tr.shuffled, x, "rand") for x in dist.support])
    assert pred.exact_error(dist) == pytest.approx(per_point, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(small_matrix(max_cols=4, max_rows=8), st.data())
def test_loo_identity_matches_brute_force(rows, data):
    uniq = sorted(set(map(tuple, rows)))
    cls = ExplicitClass(uniq)
    L = cls.domain.size
    pts = np.array(data.draw(st.lists(st.integers(0, L - 1), min_size=1, max_size=5)), np.int64)
    g = canonical_oig(cls, pts)
    o = orient_min_max_outdegree(g)
    loo = loo_error_sum(cls, pts, o, g)
    assert loo == o.outdegrees(g)[target_vertex(g, cls)]
    # brute force: retrain the deterministic predictor on every leave-one-out split
    truth = cls.target.labels(pts)
    mistakes = 0
    for k in range(pts.size):
        rest = np.delete(pts, k)
        ds = Dataset(rest, truth[np.arange(pts.size) != k])
        mistakes += oig_predict(cls, ds, int(pts[k]), "optimal") != truth[k]
    assert loo == mistakes
    assert loo <= max(vc_dimension(cls, cap=6), 0) or g.n_edges == 0
