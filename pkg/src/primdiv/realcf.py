"""The target angle theta = arccos(p/(2q)) / (2 pi), its continued-fraction
convergents, and the actual and required distances compared at each
convergent.

Logs are natural.  ``d_act`` is |p/q - 2cos(2 pi k/n)|; ``d_req`` is the
largest value of that distance compatible with u_n lacking a primitive
divisor.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import arith
from .ball import DEFAULT_PREC, ExactZero, RealBall, Undecidable, cos_2pi_frac
from .cyclotomic import g_deriv_lower_bound

MAX_PREC = 4096


class PrecisionExhausted(ArithmeticError):
    pass


class Verdict(str, enum.Enum):
    REFUTED = "Refuted"  # d_act > d_req: the index cannot be exceptional
    VIOLATION = "Violation"  # d_act < d_req: the bound does not rule it out
    UNDECIDED = "Undecided"


@dataclass
class ConvergentRecord:
    k: int
    n: int
    partial_quotients_prefix: list[int] = field(default_factory=list)
    d_act_log: Optional[RealBall] = None
    d_req_log: Optional[RealBall] = None
    verdict: Optional[Verdict] = None

    @property
    def dreq_log_int(self) -> int:
        """log d_req truncated to its integer part."""
        return int(self.d_req_log.trunc(0))

    @property
    def dact_log_1dp(self) -> Fraction:
        """log d_act truncated to one decimal place."""
        return self.d_act_log.trunc(1)


def theta(p: int, q: int, prec: int = DEFAULT_PREC) -> RealBall:
    if q < 2 or abs(p) >= 2 * q:
        raise ValueError("needs q >= 2 and |p| < 2q")
    x = RealBall(Fraction(p, 2 * q), prec)
    return x.acos() / (2 * RealBall.pi(prec))


def _expand(x: RealBall, n_max: int) -> tuple[list[int], list[tuple[int, int]], bool]:
    """Partial quotients and convergents of x with denominators <= n_max.

    Returns (quotients, convergents, complete) where complete is False when
    the enclosure ran out before a denominator passed n_max.
    """
    quotients: list[int] = []
    convs: list[tuple[int, int]] = []
    h0, h1, k0, k1 = 0, 1, 1, 0
    y = x
    while True:
        try:
            a = y.unique_floor()
        except Undecidable:
            return quotients, convs, False
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > n_max:
            return quotients, convs, True
        quotients.append(a)
        convs.append((h1, k1))
        frac = y - a
        if frac.cmp(0) == 0:
            return quotients, convs, True  # x is exactly rational
        try:
            frac.sign()
        except Undecidable:
            return quotients, convs, False
        y = 1 / frac


def convergents(theta_source: Callable[[int], RealBall], n_max: int,
                start_prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC) -> list[ConvergentRecord]:
    """All convergents k/n of the source with n <= n_max, self-validated.

    The expansion is recomputed at doubled precision until it reaches n_max
    and the doubled run agrees on the prefix; each convergent is then
    certified to satisfy |theta - k/n| < 1/n^2.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    prec = start_prec
    previous = None
    while prec <= max_prec:
        q, convs, complete = _expand(theta_source(prec), n_max)
        if complete and previous is not None and previous == (q, convs):
            x = theta_source(prec)
            records = []
            for i, (k, n) in enumerate(convs):
                err = abs(x - Fraction(k, n)) * n * n
                if not err < 1:
                    raise PrecisionExhausted(f"cannot certify |theta - {k}/{n}| < 1/{n}^2")
                records.append(ConvergentRecord(k, n, q[: i + 1]))
            return records
        previous = (q, convs) if complete else None
        prec *= 2
    raise PrecisionExhausted(f"expansion did not stabilise below {max_prec} bits")


def d_act_log(p: int, q: int, k: int, n: int, prec: int = DEFAULT_PREC,
              max_prec: int = MAX_PREC) -> RealBall:
    """log |p/q - 2cos(2 pi k/n)|, raising precision until the difference is nonzero."""
    if math.gcd(k, n) != 1 or not 1 <= k or 2 * k >= n:
        raise ValueError(f"need gcd(k, n) = 1 and 1 <= k < n/2, got k={k}, n={n}")
    if n in (3, 4, 6) and Fraction(p, q) == {3: Fraction(-1), 4: Fraction(0), 6: Fraction(1)}[n]:
        raise ExactZero(f"p/q = 2cos(2 pi {k}/{n}) exactly")
    while prec <= max_prec:
        diff = RealBall(Fraction(p, q), prec) - 2 * cos_2pi_frac(k, n, prec)
        if not diff.contains_zero():
            return abs(diff).log()
        prec *= 2
    raise Undecidable(f"|p/q - 2cos(2 pi {k}/{n})| not separated from 0 at {max_prec} bits")


def d_req_log(q: int, n: int, gprime_lower: RealBall) -> RealBall:
    """(phi(n)/2) log(5/(3q)) + log P(n/(n,3)) - log(gprime_lower)."""
    if q < 2 or n <= 30:
        raise ValueError("needs q >= 2 and n > 30")
    if not gprime_lower > 0:
        raise ValueError("the derivative bound must be positive")
    prec = gprime_lower.prec
    half_phi = arith.phi(n) // 2
    return (half_phi * RealBall(Fraction(5, 3 * q), prec).log()
            + RealBall(arith.stewart_prime_cap(n), prec).log()
            - gprime_lower.log())


def d_req_log_bound(q: int, n: int, prec: int = DEFAULT_PREC) -> RealBall:
    """d_req with the factorisation-only derivative bound, valid for every k."""
    return d_req_log(q, n, g_deriv_lower_bound(n, prec))


def rhs_log(n: int, prec: int = DEFAULT_PREC) -> RealBall:
    """log(4 / n^4)."""
    return RealBall(Fraction(4, n ** 4), prec).log()


def rhs_check(q: int, n: int, prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC) -> bool:
    """Is log d_req < log(4/n^4), certified?"""
    while prec <= max_prec:
        try:
            return d_req_log_bound(q, n, prec) < rhs_log(n, prec)
        except Undecidable:
            prec *= 2
    raise Undecidable(f"rhs comparison for q={q}, n={n} undecided at {max_prec} bits")


def nearest_coprime_k(p: int, q: int, n: int, prec: int = DEFAULT_PREC,
                      max_prec: int = MAX_PREC) -> int:
    """The k in [1, n/2) coprime to n minimising |p/q - 2cos(2 pi k/n)|."""
    if n <= 2 or abs(p) >= 2 * q:
        raise ValueError("needs n > 2 and |p| < 2q")
    while prec <= max_prec:
        try:
            return _nearest_at(p, q, n, prec)
        except Undecidable:
            prec *= 2
    raise Undecidable(f"nearest k for n={n} is a tie at {max_prec} bits")


def _nearest_at(p: int, q: int, n: int, prec: int) -> int:
    t = theta(p, q, prec) * n
    lo_k = math.floor(t.lower)
    hi_k = math.ceil(t.upper)
    # 2cos(2 pi k/n) decreases in k on [0, n/2], so the best coprime k is the
    # nearest coprime neighbour of n*theta on one side or the other
    below = next((k for k in range(min(lo_k, (n - 1) // 2), 0, -1) if math.gcd(k, n) == 1), None)
    above = next((k for k in range(max(hi_k, 1), (n + 1) // 2) if math.gcd(k, n) == 1), None)
    cands = sorted({k for k in range(max(lo_k, 1), min(hi_k, (n - 1) // 2) + 1) if math.gcd(k, n) == 1}
                   | {k for k in (below, above) if k is not None})
    x = RealBall(Fraction(p, q), prec)
    dist = {k: abs(x - 2 * cos_2pi_frac(k, n, prec)) for k in cands}
    best = cands[0]
    for k in cands[1:]:
        if dist[k] < dist[best]:
            best = k
        elif not dist[k] > dist[best]:
            raise Undecidable("tie")
    return best


def convergent_record(p: int, q: int, k: int, n: int, prefix: list[int] | None = None,
                      prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC) -> ConvergentRecord:
    """Attach d_act, d_req and the verdict to the convergent k/n of theta(p, q)."""
    rec = ConvergentRecord(k, n, list(prefix or []))
    while prec <= max_prec:
        try:
            rec.d_act_log = d_act_log(p, q, k, n, prec, max_prec)
            rec.d_req_log = d_req_log_bound(q, n, prec)
        except ExactZero:
            rec.verdict = Verdict.VIOLATION
            return rec
        try:
            rec.verdict = Verdict.REFUTED if rec.d_act_log > rec.d_req_log else Verdict.VIOLATION
            return rec
        except Undecidable:
            prec *= 2
    rec.verdict = Verdict.UNDECIDED
    return rec
