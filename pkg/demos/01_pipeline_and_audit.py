"""Walk one trial of the adaptive monotone pipeline and audit its transcript.

The pair class on r=4 coordinates: the adversary answers every clean x_i with
its partner y_i, labeled 0 like everything the target labels. Learners then
see a shuffled union in which every label is still correct.
"""
from monotone_adv import Distribution, build_class_oig_lb, run_adaptive
from monotone_adv.pipeline import Pairing, audit_transcript

cls = build_class_oig_lb(4)
dist = Distribution.uniform(cls.domain.x_ids)
tr = run_adaptive(dist, cls, Pairing(4), n=3, m=3, rng=11)

print("clean    :", [str(e.point) for e in tr.clean])
print("corrupted:", [str(e.point) for e in tr.corrupted])
print("shuffled :", [str(cls.domain.point(p)) for p in tr.shuffled.points])
print()
print(tr.to_text())
print("audit:", audit_transcript(tr.to_text()) or "no violations")

# A flipped label breaks monotonicity and the audit says so.
lines = tr.to_text().splitlines()
k = next(i for i, line in enumerate(lines) if line.startswith("corrupted"))
role, p, y, q = lines[k].split()
lines[k] = f"{role} {p} {1 - int(y)} {q}"
print("tampered audit:", audit_transcript("\n".join(lines) + "\n"))
