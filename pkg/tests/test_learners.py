import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from monotone_adv.domain import (
    AllZero,
    Dataset,
    ExplicitClass,
    SubsetIndicator,
    build_class_majority_lb,
    build_class_majority_lb_rand,
    build_class_oig_lb,
)
from monotone_adv.exceptions import InvalidParametersError, RealizabilityError
from monotone_adv.learners import (
    Committee,
    bagging_rounds,
    build_scheme,
    erm_adversarial,
    erm_first_consistent,
    erm_random_consistent,
    label_table,
    majority_vote,
    scheme_bagging,
    scheme_hanneke,
    scheme_majority_of_three,
)

from oracles import consistent_rows, majority_lb_rand_matrix


def ds(pairs):
    return Dataset.from_examples(pairs)


# --- ERMs --------------------------------------------------------------------


def test_first_consistent_prefers_target():
    cls = build_class_oig_lb(4)
    assert erm_first_consistent(cls, ds([(cls.domain.x(1), 0)])) is cls.target


def test_first_consistent_excludes_sampled_pairs():
    cls = build_class_oig_lb(5)
    dom = cls.domain
    data = ds([(dom.x(2), 0), (dom.y(2), 0), (dom.x(4), 0), (dom.y(4), 0)])
    got = {str(h) for h in cls.consistent(data)}
    assert got == {"h*", "h_1", "h_3", "h_5"}


def test_first_consistent_raises_when_unrealizable():
    cls = build_class_oig_lb(3)
    dom = cls.domain
    with pytest.raises(RealizabilityError):
        erm_first_consistent(cls, ds([(dom.x(1), 1), (dom.x(2), 1)]))


def test_adversarial_erm_cases():
    cls = build_class_majority_lb(6, 2)
    dom = cls.domain
    h = erm_adversarial(cls, ds([(dom.x(1), 0), (dom.y((4, 5)), 0)]))
    assert isinstance(h, SubsetIndicator) and h.subset == (4, 5)
    assert erm_adversarial(cls, ds([(dom.y((4, 5)), 0), (dom.x(4), 0)])) is cls.target
    assert erm_adversarial(cls, ds([(dom.x(2), 0)])) is cls.target
    # first y in dataset order wins
    h = erm_adversarial(cls, ds([(dom.y((2, 3)), 0), (dom.y((4, 5)), 0)]))
    assert h.subset == (2, 3)
    with pytest.raises(InvalidParametersError):
        erm_adversarial(build_class_oig_lb(3), ds([]))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 6 + 15 - 1), max_size=8), st.integers(0, 2**31))
def test_every_erm_is_consistent(pts, seed):
    cls = build_class_majority_lb(6, 2)
    data = Dataset(np.array(pts, np.int64), np.zeros(len(pts), np.uint8))
    rng = np.random.default_rng(seed)
    for h in (erm_first_consistent(cls, data), erm_adversarial(cls, data), erm_random_consistent(cls, data, rng)):
        assert np.array_equal(h.labels(data.points), data.labels)


def test_random_erm_uniform_on_five_element_set():
    # K=4 copies: after (y_T, 0) with T unseen the consistent set is {h*} plus 4 copies of h_T
    cls = build_class_majority_lb_rand(4, 1, 4)
    dom = cls.domain
    data = ds([(dom.y((2,)), 0), (dom.x(1), 0)])
    full = majority_lb_rand_matrix(4, 1, 4)
    expect = consistent_rows(full, data.points, data.labels)
    assert expect.size == 5
    rng = np.random.default_rng(2024)
    counts = Counter(str(erm_random_consistent(cls, data, rng)) for _ in range(50_000))
    assert len(counts) == 5
    assert stats.chisquare(list(counts.values())).pvalue > 0.001


def test_random_erm_predicts_t_with_k_over_k_plus_one():
    cls = build_class_majority_lb_rand(5, 1, 1000)
    dom = cls.domain
    data = ds([(dom.y((3,)), 0)])
    cons = cls.consistent(data)
    assert len(cons) == 1001
    rng = np.random.default_rng(0)
    hits = sum(erm_random_consistent(cls, data, rng)(dom.x(3)) for _ in range(20_000))
    p = 1000 / 1001
    assert abs(hits / 20_000 - p) < 4 * math.sqrt(p * (1 - p) / 20_000) + 1e-3


# --- schemes -----------------------------------------------------------------


def test_majority_of_three_blocks():
    s = scheme_majority_of_three(9)
    assert [l.tolist() for l in s.lists] == [[0, 1, 2], [3, 4, 5], [6, 7, 8]]
    assert [l.size for l in scheme_majority_of_three(10).lists] == [4, 3, 3]
    assert scheme_majority_of_three(10).min_distinct == 3
    with pytest.raises(InvalidParametersError):
        scheme_majority_of_three(2)


def test_bagging():
    s = scheme_bagging(1, k=1)
    assert [l.tolist() for l in s.lists] == [[0]]
    assert scheme_bagging(300).k == bagging_rounds(300) == math.ceil(10 * math.log(300 / 0.01))
    assert scheme_bagging(50, seed=3) == scheme_bagging(50, seed=3)
    assert scheme_bagging(50, seed=3) != scheme_bagging(50, seed=4)
    big = scheme_bagging(20_000, k=5)
    frac = np.mean([np.unique(l).size / 20_000 for l in big.lists])
    assert abs(frac - (1 - math.exp(-1))) < 0.01
    for l in big.lists:
        assert np.unique(l).size >= big.min_distinct


def _hanneke_direct(n):
    """Direct expansion of the recursion on explicit Python lists."""

    def rec(s, carry):
        if len(s) <= 3:
            return [sorted(s + carry)]
        q = len(s) // 4
        s0 = len(s) - 3 * q
        a0, a1, a2, a3 = s[:s0], s[s0 : s0 + q], s[s0 + q : s0 + 2 * q], s[s0 + 2 * q :]
        return rec(a0, a2 + a3 + carry) + rec(a0, a1 + a3 + carry) + rec(a0, a1 + a2 + carry)

    return rec(list(range(n)), [])


def test_hanneke_examples():
    assert [l.tolist() for l in scheme_hanneke(3).lists] == [[0, 1, 2]]
    s = scheme_hanneke(12)
    assert s.k == 3 and all(l.size == 9 for l in s.lists)


@pytest.mark.parametrize("N", range(1, 65))
def test_hanneke_size_bound_and_expansion(N):
    s = scheme_hanneke(N)
    assert [l.tolist() for l in s.lists] == _hanneke_direct(N)
    if N >= 4:
        assert all(np.unique(l).size >= math.ceil(N / 2) for l in s.lists)


def test_build_scheme_rejects_unknown():
    assert build_scheme("mo3", 6) == scheme_majority_of_three(6)
    with pytest.raises(InvalidParametersError):
        build_scheme("boosting", 6)


# --- committees ----------------------------------------------------------------


def test_committee_majority_and_ties():
    cls = build_class_majority_lb(4, 1)
    dom = cls.domain
    h0, h1, h2 = cls.target, cls[1], cls[2]
    assert Committee((h0, h0, h1)).labels(np.arange(dom.size)).sum() == 0
    tie = Committee((h0, h1))
    assert tie(dom.x(1)) == 1 and tie(dom.x(2)) == 0


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=7))
def test_committee_equals_naive_recount(idx):
    cls = build_class_majority_lb(7, 1)
    members = tuple(cls[i] for i in idx)
    com = Committee(members)
    for x in range(cls.domain.size):
        votes = sum(h(x) for h in members)
        assert com(x) == int(2 * votes >= len(members))


def test_majority_vote_identical_subsamples_equals_single_erm():
    cls = build_class_majority_lb(5, 1)
    dom = cls.domain
    data = ds([(dom.y((2,)), 0)] * 3)
    com = majority_vote(scheme_majority_of_three(3), "adversarial", cls, data)
    single = erm_adversarial(cls, data)
    assert np.array_equal(com.labels(np.arange(dom.size)), single.labels(np.arange(dom.size)))


def test_majority_vote_predicts_t_when_all_blocks_corrupted():
    cls = build_class_majority_lb(6, 1)
    dom = cls.domain
    y = dom.y((5,))
    data = ds([(dom.x(1), 0), (y, 0), (dom.x(2), 0), (y, 0), (dom.x(1), 0), (y, 0)])
    com = majority_vote(scheme_majority_of_three(6), "adversarial", cls, data)
    assert com(dom.x(5)) == 1
    assert label_table(com, dom).splitlines()[4] == "x_5 1"


def test_majority_vote_size_mismatch():
    cls = build_class_majority_lb(4, 1)
    with pytest.raises(InvalidParametersError):
        majority_vote(scheme_majority_of_three(6), "first", cls, ds([(0, 0)]))


def test_explicit_class_random_erm_uniform():
    rows = [[0, 0, 0], [0, 1, 0], [0, 1, 1], [0, 0, 1], [1, 0, 0], [1, 1, 1]]
    cls = ExplicitClass(rows)
    data = ds([(0, 0)])
    rng = np.random.default_rng(5)
    counts = Counter(str(erm_random_consistent(cls, data, rng)) for _ in range(10_000))
    assert len(counts) == 4
    assert stats.chisquare(list(counts.values())).pvalue > 0.001
    assert isinstance(cls.target, type(cls[0])) and not isinstance(cls.target, AllZero)
