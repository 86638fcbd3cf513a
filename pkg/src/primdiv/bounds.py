"""Evaluators for the analytic bounds behind the verification: heights, linear
forms in two logarithms, |alpha^n - beta^n|, the arccos inequality and the
explicit thresholds for large n.

All results are balls whose enclosures are rigorous for the stated formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import flint

from . import arith
from .ball import DEFAULT_PREC, RealBall, Undecidable

#: every Lucas/Lehmer n-th term has a primitive divisor beyond this index
PIPELINE_CAP = 2 * 10 ** 10


@dataclass(frozen=True)
class HeightQuery:
    """Minimal polynomial a_d X^d + ... + a_0, lowest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 2 or self.coeffs[-1] <= 0:
            raise ValueError("need degree >= 1 and a positive leading coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def height(query: HeightQuery | Sequence[int], prec: int = DEFAULT_PREC) -> RealBall:
    """Absolute logarithmic height from the minimal polynomial over Z."""
    if not isinstance(query, HeightQuery):
        query = HeightQuery(tuple(query))
    d = query.degree
    acc = RealBall(query.coeffs[-1], prec).log()
    flint.ctx.prec = prec
    roots = flint.fmpz_poly(list(query.coeffs)).complex_roots()
    for r, mult in roots:
        flint.ctx.prec = prec
        a = abs(r)
        if a > 1:
            acc = acc + mult * RealBall._wrap(a, prec).log()
        elif not a < 1:
            # |root| straddles 1: log max(1, |root|) lies in [0, log upper]
            up = RealBall._wrap(a, prec).log()
            flint.ctx.prec = prec
            acc = acc + mult * RealBall._wrap(up.arb.union(flint.arb(0)).nonnegative_part(), prec)
    return acc / d


def height_quadratic_pair(p: int, q: int, prec: int = DEFAULT_PREC) -> RealBall:
    """h(beta/alpha) for the pair (p, q): both roots of qX^2 - pX + q lie on |z| = 1."""
    if q < 1 or abs(p) >= 2 * q:
        raise ValueError("needs q >= 1 and |p| < 2q")
    c = math.gcd(p, q)
    return RealBall(q // c, prec).log() / 2


def height_lower_bound(D: int, prec: int = DEFAULT_PREC) -> RealBall:
    """2 / (D (log 3D)^3), a lower bound for heights of non-roots of unity of degree D."""
    if D < 2:
        raise ValueError("D must be >= 2")
    return RealBall(2, prec) / (D * RealBall(3 * D, prec).log() ** 3)


@dataclass(frozen=True)
class LinearFormQuery:
    """Lambda = b1 log(-1) - b2 log(gamma), with gamma of degree D and height h."""

    D: int
    h: RealBall
    B: RealBall
    b1: int | None = None
    b2: int | None = None
    log_gamma_abs: RealBall | None = None

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("D must be >= 1")
        if not self.h > 0:
            raise ValueError("h must be > 0")
        if not self.B >= 2:
            raise ValueError("B must be >= 2")


def linear_form_log_lower_bound(query: LinearFormQuery) -> RealBall:
    """-81.9 (D log 3D)^3 h (log B)^2, a lower bound for log |Lambda|."""
    prec = query.h.prec
    D = query.D
    dl = D * RealBall(3 * D, prec).log()
    return -RealBall("81.9", prec) * dl ** 3 * query.h * query.B.log() ** 2


def linear_form_lower_bound(query: LinearFormQuery) -> RealBall:
    return linear_form_log_lower_bound(query).exp()


def lmn_parameters(D: int, h: RealBall, b1: int, b2: int, log_gamma_abs: RealBall) -> tuple[RealBall, RealBall]:
    """The quantities a and H fed into the two-logarithm estimate."""
    prec = h.prec
    twenty = RealBall(20, prec)
    a_cand = RealBall("12.85", prec) * abs(log_gamma_abs) + D * h / 2
    a = a_cand if a_cand > twenty else twenty
    inner = RealBall(b1, prec) / (2 * a) + RealBall(b2, prec) / (RealBall("25.7", prec) * RealBall.pi(prec))
    h_cand = D * inner.log() / 2 + RealBall("2.3", prec) * D + RealBall("3.25", prec)
    seventeen = RealBall(17, prec)
    H = h_cand if h_cand > seventeen else seventeen
    return a, H


def lmn_log_bound(a: RealBall | int, H: RealBall | int, prec: int = DEFAULT_PREC) -> RealBall:
    """-9 a H^2, the lower bound for log |Lambda|."""
    a = a if isinstance(a, RealBall) else RealBall(a, prec)
    H = H if isinstance(H, RealBall) else RealBall(H, prec)
    if not (a >= 20 and H >= 17):
        raise ValueError("needs a >= 20 and H >= 17")
    return -9 * a * H ** 2


def lmn_bound(a, H, prec: int = DEFAULT_PREC) -> RealBall:
    return lmn_log_bound(a, H, prec).exp()


def large_B_consistency(D: int, B: int | RealBall, prec: int = DEFAULT_PREC) -> bool:
    """0.66994 D log B > (D/2) log B + 0.657 D + 3.25 (used for B > 679000)."""
    lb = RealBall(B, prec).log() if not isinstance(B, RealBall) else B.log()
    return RealBall("0.66994", prec) * D * lb > D * lb / 2 + RealBall("0.657", prec) * D + RealBall("3.25", prec)


def power_diff_bounds(n: int, d1: int, h: RealBall, log_abs_alpha1: RealBall) -> tuple[RealBall, RealBall]:
    """Lower and upper bounds for log |alpha1^n - beta1^n| when |alpha1| >= |beta1|."""
    if d1 < 2 or n < 2:
        raise ValueError("needs d1 >= 2 and n >= 2")
    if not h > 0:
        raise ValueError("h must be > 0")
    prec = h.prec
    base = n * log_abs_alpha1
    dl = d1 * RealBall(3 * d1, prec).log()
    lower = base - RealBall("81.97", prec) * dl ** 3 * h * RealBall(n, prec).log() ** 2
    upper = RealBall(2, prec).log() + base
    return lower, upper


def power_diff_bounds_n1(d1: int, h: RealBall, log_abs_alpha1: RealBall) -> tuple[RealBall, RealBall]:
    """The n = 1 case: bounds for log |alpha1 - beta1|."""
    prec = h.prec
    ln2 = RealBall(2, prec).log()
    return log_abs_alpha1 - d1 * (h + ln2), ln2 + log_abs_alpha1


def arccos_diff_bound(a) -> RealBall:
    """pi sqrt(a/2): bounds |arccos x - arccos y| whenever |x - y| <= a."""
    a = a if isinstance(a, RealBall) else RealBall(a)
    if a < 0:
        raise ValueError("a must be non-negative")
    if a.cmp(0) == 0:
        return RealBall(0, a.prec)
    return RealBall.pi(a.prec) * (a / 2).sqrt()


def _ceil(x: RealBall) -> int:
    lo, hi = math.ceil(x.lower), math.ceil(x.upper)
    if lo != hi:
        raise Undecidable(f"ceiling of {x} is not unique")
    return lo


def thm2_threshold(d1: int, prec: int = DEFAULT_PREC) -> int:
    """ceil(max(2(2^d1 - 1), 4000 (d1 log 3d1)^12))."""
    if d1 < 2:
        raise ValueError("d1 must be >= 2")
    t = RealBall(4000, prec) * (d1 * RealBall(3 * d1, prec).log()) ** 12
    return max(2 * (2 ** d1 - 1), _ceil(t))


def thm2_working_threshold(d1: int, prec: int = DEFAULT_PREC) -> int:
    """The same with the constant 3900 used in the proof."""
    if d1 < 2:
        raise ValueError("d1 must be >= 2")
    return _ceil(RealBall(3900, prec) * (d1 * RealBall(3 * d1, prec).log()) ** 12)


def thm2_refined_threshold(d1: int, prec: int = DEFAULT_PREC) -> int:
    """ceil(41200 d1^11.45 (log 3d1)^8.59)."""
    if d1 < 2:
        raise ValueError("d1 must be >= 2")
    t = RealBall(41200, prec) * RealBall(d1, prec) ** RealBall("11.45", prec) \
        * RealBall(3 * d1, prec).log() ** RealBall("8.59", prec)
    return _ceil(t)


def thirdineq_lhs(n: int, prec: int = DEFAULT_PREC) -> RealBall:
    """phi(n) / (2^omega(n) (log n)^2)."""
    return RealBall(Fraction(arith.phi(n), 2 ** arith.omega(n)), prec) / RealBall(n, prec).log() ** 2


def thirdineq_rhs(d1: int, prec: int = DEFAULT_PREC) -> RealBall:
    return 41 * RealBall(d1, prec) ** 4 * RealBall(3 * d1, prec).log() ** 3


def thirdineq_check(n: int, d1: int, prec: int = DEFAULT_PREC) -> bool:
    if n < 3 or d1 < 2:
        raise ValueError("needs n >= 3 and d1 >= 2")
    return thirdineq_lhs(n, prec) > thirdineq_rhs(d1, prec)
