import math

import numpy as np
import pytest

from monotone_adv.domain import build_class_majority_lb, build_class_oig_lb
from monotone_adv.exceptions import DomainMismatchError, InvalidParametersError
from monotone_adv.experiments import (
    ErrorEstimate,
    coupon_r,
    erm_bound,
    estimate_error,
    exp_coupon,
    exp_erm_upper_bound,
    exp_majority_lower_bound,
    exp_oblivious_oig_upper_bound,
    exp_oig_lower_bound,
    exp_oig_lower_bound_general,
    majority_m,
    plot_error_vs_n,
    suite_majority,
)
from monotone_adv.learners import scheme_majority_of_three
from monotone_adv.oig import OIGPredictor
from monotone_adv.pipeline import Distribution


def test_error_estimate_interval():
    est = ErrorEstimate.from_values([0, 1, 0, 1], seed=3)
    assert est.mean == 0.5 and est.trials == 4
    assert est.se == pytest.approx(np.std([0, 1, 0, 1], ddof=1) / 2)
    assert est.ci_low <= est.mean <= est.ci_high
    assert 0 <= est.ci_low and est.ci_high <= 1
    with pytest.raises(InvalidParametersError):
        ErrorEstimate.from_values([])


def test_estimate_error_examples():
    pc = build_class_oig_lb(10)
    dist = Distribution.uniform(pc.domain.x_ids)
    assert estimate_error(pc.target, dist, pc.target).mean == 0
    assert estimate_error(pc[4], dist, pc.target).mean == 1 / 10
    sc = build_class_majority_lb(7, 3)
    sd = Distribution.uniform(sc.domain.x_ids)
    assert estimate_error(sc[5], sd, sc.target).mean == pytest.approx(3 / 7, abs=1e-15)
    sampled = estimate_error(pc[4], dist, pc.target, mode="sampled", trials=20_000, rng=1)
    assert abs(sampled.mean - 0.1) < 4 * sampled.se


def test_estimate_error_mismatch():
    pc = build_class_oig_lb(3)
    with pytest.raises(DomainMismatchError):
        estimate_error(pc.target, Distribution.uniform([0, 17]), pc.target)
    with pytest.raises(InvalidParametersError):
        estimate_error(pc.target, Distribution.uniform([0]), pc.target, mode="bogus")


def test_estimate_error_accepts_probabilistic_predictor():
    cls = build_class_oig_lb(4)
    from monotone_adv.domain import Dataset

    pred = OIGPredictor(cls, Dataset(np.array([0, 4]), np.zeros(2, np.uint8)), "rand")
    dist = Distribution.uniform(cls.domain.x_ids)
    assert estimate_error(pred, dist, cls.target).mean == pytest.approx(pred.exact_error(dist))


def test_derived_parameters():
    assert coupon_r(1000, 1, 4) == math.ceil(4000 / math.log(1000))
    assert coupon_r(300, 1, 4) == 211
    assert majority_m(300, "majority_of_three") == 6
    with pytest.raises(InvalidParametersError):
        coupon_r(1, 1)
    assert erm_bound(300, 1) == pytest.approx(100 * (math.log(300) + math.log(100)) / 300)


def test_majority_m_fixed_point():
    for n in (30, 100, 300):
        m = majority_m(n, "majority_of_three")
        t = scheme_majority_of_three(n + m).min_distinct
        assert m >= math.ceil(2 * n / t)
        if m > 1:
            t0 = scheme_majority_of_three(n + m - 1).min_distinct
            assert m - 1 < math.ceil(2 * n / t0)


def test_oig_lb_n1_is_a_quarter():
    # one clean x and its y partner; the test misses the clean pair w.p. 1/2 and then errs w.p. 1/2
    res = exp_oig_lower_bound(1, 200, 9)
    assert res.mean == 0.25
    assert all(r["m"] == r["n"] for r in res.rows)


def test_oig_lb_small_against_closed_form_and_baseline():
    res = exp_oig_lower_bound(10, 400, 2)
    closed = (1 - 1 / 20) ** 10 / 2
    assert abs(res.mean - closed) < 4 * res.estimate.se + 1e-3
    assert all(r["baseline_error"] <= 1 / 20 for r in res.rows)
    assert res.summary["claim_holds"]


def test_general_oig_records_missing_event():
    res = exp_oig_lower_bound_general(64, 4, 4.0, 40, 1)
    assert res.params["r"] == coupon_r(64, 4, 4.0)
    assert set(res.column("event")) <= {0, 1}
    assert all((r["missing"] >= 4) == bool(r["event"]) for r in res.rows)
    with pytest.raises(InvalidParametersError):
        exp_oig_lower_bound_general(20, 10, 4.0, 5, 1)


def test_majority_without_adversary_is_exact_zero():
    res = exp_majority_lower_bound(60, 1, trials=30, seed=4, m=0)
    assert res.mean == 0


def test_majority_variants_run_and_respect_ceiling():
    for voter in ("majority_of_three", "bagging", "hanneke"):
        res = exp_majority_lower_bound(60, 1, voter=voter, trials=20, seed=1)
        assert all(r["worst_error"] <= r["ceiling"] for r in res.rows)
        assert res.params["m"] == majority_m(60, voter)
    res = exp_majority_lower_bound(60, 1, erm="random", K=50, trials=20, seed=1)
    assert res.name == "majority_lb_rand"
    with pytest.raises(InvalidParametersError):
        exp_majority_lower_bound(60, 1, erm="adversarial", K=5, trials=2, seed=1)


def test_erm_upper_bound_replays_lower_bound_transcripts():
    lb = exp_majority_lower_bound(80, 1, trials=25, seed=12)
    ub = exp_erm_upper_bound("majority_lb", "worst", trials=25, seed=12, n=80, d=1)
    assert lb.column("digest").tolist() == ub.column("digest").tolist()
    r = suite_majority(80, 1).params["r"]
    for row in ub.rows:
        assert row["worst_error"] == (1 / r if row["missing"] >= 1 else 0.0)
        assert row["monotone"] == 1
    for mode in ("first", "random"):
        other = exp_erm_upper_bound("majority_lb", mode, trials=25, seed=12, n=80, d=1)
        assert other.summary["max_error"] <= 1 / r
    assert exp_erm_upper_bound("majority_lb", "first", trials=5, seed=12, n=80, d=1, m=0).mean == 0


def test_oblivious_experiment_audit_columns():
    res = exp_oblivious_oig_upper_bound(20, 10, 60, 5)
    assert all(r["loo_errors"] == r["target_outdegree"] <= 1 for r in res.rows)
    assert res.summary["bound"] == 1 / 21
    res0 = exp_oblivious_oig_upper_bound(20, 0, 20, 5)
    assert res0.summary["bound"] == 1 / 21


def test_coupon_examples():
    assert exp_coupon(1, 1, trials=20, seed=0, r=2).mean == 1.0
    res = exp_coupon(200, 1, 4.0, trials=300, seed=0)
    assert abs(res.summary["mean_missing"] - res.summary["expected_missing"]) < 5
    with pytest.raises(InvalidParametersError):
        exp_coupon(3, 1, 4.0, trials=3, seed=0)


def test_workers_do_not_change_rows():
    a = exp_oig_lower_bound(8, 12, 3, workers=1)
    b = exp_oig_lower_bound(8, 12, 3, workers=3)
    assert a.trials_csv() == b.trials_csv()
    assert a.summary_csv() == b.summary_csv()


def test_csv_shape():
    res = exp_coupon(100, 1, trials=17, seed=2)
    lines = res.trials_csv().splitlines()
    assert lines[0] == "trial,seed,n,r,d,missing,event"
    assert len(lines) == 1 + 17
    assert len(res.summary_csv().splitlines()) == 2


def test_svg_is_deterministic(tmp_path):
    runs = [exp_coupon(n, 1, trials=10, seed=1) for n in (100, 200)]
    plot_error_vs_n(runs, tmp_path / "a.svg")
    plot_error_vs_n(runs, tmp_path / "b.svg")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()
