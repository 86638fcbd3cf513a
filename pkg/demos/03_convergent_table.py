"""Reproduce the convergent table for (p, q) = (-3, 2).

Beyond n = 1260 an exceptional n would force 2cos(2 pi k/n) to sit within
d_req of p/q, which in turn makes k/n a convergent of
theta = arccos(p/(2q)) / (2 pi).  So only the convergents need checking, and
for each one the actual distance d_act is compared with d_req.
"""

import time

from primdiv import verifier
from primdiv.realcf import nearest_coprime_k, theta

print("theta =", theta(-3, 2))

t0 = time.time()
rows = verifier.table1()
print(f"{len(rows)} convergents with 1260 < n <= 2e10 in {time.time() - t0:.2f}s\n")

print(f"{'k':>11} {'n':>12} {'log d_req':>12} {'log d_act':>10}  margin")
for r in rows:
    margin = float(r.d_act_log - r.d_req_log)
    print(f"{r.k:>11} {r.n:>12} {r.dreq_log_int:>12} {float(r.dact_log_1dp):>10}  {margin:.3g}")

# the convergent numerator is also the best coprime k for that n
assert all(nearest_coprime_k(-3, 2, r.n) == r.k for r in rows[:6])
