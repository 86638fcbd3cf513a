"""The cut-offs n_q and a sweep over small q.

For q > 2 the inequality d_req < 4/n^4 kicks in much earlier; n_q is the
last n <= 1260 where it fails.  Above n_q only convergent denominators can
be exceptional.
"""

import time
from collections import Counter

from primdiv import verifier
from primdiv.cli import table2_rows

for row in table2_rows(25):
    print(f"q = {row['label']:>6}: n_q = {row['n_q']}")

rep = verifier.verify_pair(5, 7)
print("\n(p, q) = (5, 7)")
for r in rep.ranges:
    print(f"  ({r.lo}, {r.hi}] {r.method.value}: {r.outcome.value}; {r.detail}")
print("  ->", rep.conclusion.kind.value)

t0 = time.time()
reports = verifier.scan(2, 12)
tally = Counter(r.conclusion.kind.value for r in reports)
print(f"\nq in [2, 12]: {len(reports)} pairs, {dict(tally)} in {time.time() - t0:.1f}s")
