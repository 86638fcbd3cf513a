"""Why a single integer evaluation rules most n out.

G_n(p, q) = q^(phi(n)/2) g_n(p/q) is computed exactly.  If |G_n(p, q)| exceeds
the largest prime of n / (n, 3), u_n must have a primitive divisor, so only
the few n that survive this screen need the full definition.
"""

from primdiv import arith, cyclotomic
from primdiv.sequences import Screen, has_primitive_divisor, make_pair, stewart_screen

print("g_12 =", cyclotomic.g_poly(12))
print("g_5  =", cyclotomic.g_poly(5))
print("Phi_105 has coefficient -2:", -2 in cyclotomic.cyclotomic_poly(105).coeffs)

pair = make_pair(-3, 2)
survivors = []
for n in range(13, 331):
    if stewart_screen(pair, n) is Screen.CANDIDATE:
        survivors.append((n, cyclotomic.G_eval(n, -3, 2), arith.stewart_prime_cap(n),
                          has_primitive_divisor(pair, n)))
print("\nn in (12, 330] not cleared by the screen:")
for n, g, cap, prim in survivors:
    print(f"  n={n:<4} G_n = {g:<6} cap = {cap:<4} primitive divisor: {prim}")

digits = len(str(abs(cyclotomic.G_eval(330, -3, 2))))
print(f"\n|G_330(-3, 2)| already has {digits} digits")

# the derivative lower bound used later only needs the factorisation of n
for n in (12, 1291, 30030):
    print(f"|g_n'| >= {float(cyclotomic.g_deriv_lower_bound(n)):.4g} for n = {n}")
