"""Terms of the sequence for (p, q) = (-3, 2) and which of them lack a
primitive divisor.

alpha, beta = (1 +- sqrt(-7)) / 2, so (alpha + beta)^2 = 1 and the sequence is
a Lucas sequence.  Every term up to n = 30 is tested by the exact definition.
"""

from primdiv import element, has_primitive_divisor, make_pair
from primdiv.sequences import enumerate_exceptions, primitive_part

pair = make_pair(-3, 2)
print(f"{pair.kind.value} pair, L = {pair.L}, M = {pair.M}")

for n in range(2, 31):
    u = element(pair, n)
    mark = "" if has_primitive_divisor(pair, n) else "   <- no primitive divisor"
    print(f"u_{n:<2} = {u:>12}  primitive part {primitive_part(pair, n):>8}{mark}")

# u_7 = 7 looks prime, but 7 already divides (alpha - beta)^2 = M = -7
print("\nexceptional n <= 30:", enumerate_exceptions(pair, 2, 30))

for p in (-1, 1, 3):
    other = make_pair(p, 2)
    print(f"(p, q) = ({p}, 2), {other.kind.value}:", enumerate_exceptions(other, 2, 30))
