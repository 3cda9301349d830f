"""Majority voting gains nothing over a single ERM under the subset-missing adversary.

With m = ceil(2n/t) copies of y_T added, every Majority-of-Three block sees
y_T and the adversarial ERM in each block predicts 1 on x_T, so the vote
inherits the full d/r error whenever some d-subset is missed. The worst
consistent ERM on the same transcripts has the same d/r ceiling.
"""
from monotone_adv.experiments import exp_erm_upper_bound, exp_majority_lower_bound

n, d, seed, trials = 300, 1, 5, 2000
vote = exp_majority_lower_bound(n, d, voter="majority_of_three", erm="adversarial", trials=trials, seed=seed)
erm = exp_erm_upper_bound("majority_lb", "worst", trials=trials, seed=seed, n=n, d=d)
r, m = vote.params["r"], vote.params["m"]
print(f"r={r}  m={m}  d/r={d / r:.5f}")
print(f"majority-of-three error  {vote.mean:.5f}  (floor 0.25 d/r = {0.25 * d / r:.5f})")
print(f"worst consistent ERM     {erm.mean:.5f}  (max per trial {erm.summary['max_worst_error']:.5f})")
print("same transcripts:", vote.column("digest").tolist() == erm.column("digest").tolist())

for voter in ("bagging", "hanneke"):
    res = exp_majority_lower_bound(n, d, voter=voter, trials=500, seed=seed)
    print(f"{voter:9s} m={res.params['m']}  error={res.mean:.5f}  event_rate={res.summary['event_rate']:.3f}")
