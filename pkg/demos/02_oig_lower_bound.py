"""The randomized one-inclusion-graph predictor under the pairing adversary.

Each clean x_i drags in y_i, so on the graph every sampled pair is fixed and
every unseen pair is a coin flip for the test point. The measured error tracks
(1 - 1/(2n))^n / 2, which stays above 1/4 for all n, while the same predictor
on clean data alone stays below 1/(2n).
"""
from monotone_adv.experiments import exp_oig_lower_bound

for n in (10, 25, 50, 100):
    res = exp_oig_lower_bound(n, trials=500, seed=3)
    s = res.summary
    print(
        f"n={n:4d}  error={res.mean:.4f} +- {res.estimate.se:.4f}"
        f"  closed_form={s['closed_form']:.4f}  clean_only={s['baseline_mean']:.4f}"
    )
