"""Numerical side conditions behind the lower bound for |G_n|.

The product over the four arcs of the circle is certified for small n,
and the sup-norm bound for h_m is compared against sampling.
"""

from primdiv import cyclotomic, verifier

for n in (31, 105, 210, 231, 462, 1001):
    c = verifier.lemma10_certify(n)
    ratio = float((c.lhs_max / c.rhs).log())
    print(f"n={n:<5} route={c.route:<8} |A'|,|B'|,|C'|,|D'| = {c.cardinalities}  "
          f"log(lhs/rhs) = {ratio:8.2f}  pass={c.passed}")

for m in (15, 105, 1155):
    sampled = float(cyclotomic.supnorm_sample(cyclotomic.h_poly(m), 4096))
    print(f"|h_{m}| on the circle ~ {sampled:.2f}, bound {cyclotomic.h_supnorm_bound(m)}")
