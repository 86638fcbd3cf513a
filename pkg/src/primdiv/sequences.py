"""Lucas and Lehmer sequences with q > 0 and |p| < 2q, and an exact test for
primitive divisors.

A pair (p, q) stands for the roots alpha, beta of X^2 - sqrt(p + 2q) X + q, so
(alpha + beta)^2 = p + 2q, alpha beta = q and (alpha - beta)^2 = p - 2q.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from . import arith
from .cyclotomic import G_eval


class SequenceError(ValueError):
    pass


class NotCoprime(SequenceError):
    pass


class RealCase(SequenceError):
    pass


class RootOfUnity(SequenceError):
    pass


class ZeroParameter(SequenceError):
    pass


class Kind(str, enum.Enum):
    LUCAS = "Lucas"
    LEHMER = "Lehmer"


class Screen(str, enum.Enum):
    CERTIFIED_PRIMITIVE = "CertifiedPrimitive"
    CANDIDATE = "Candidate"


@dataclass(frozen=True)
class SequencePair:
    p: int
    q: int
    kind: Kind = field(compare=False)

    @property
    def L(self) -> int:
        """(alpha + beta)^2."""
        return self.p + 2 * self.q

    @property
    def M(self) -> int:
        """(alpha - beta)^2."""
        return self.p - 2 * self.q

    @property
    def sqrt_L(self) -> int | None:
        r = math.isqrt(self.L)
        return r if r * r == self.L else None

    def discriminant_factor(self) -> int:
        """(alpha - beta)^2 for Lucas, (alpha^2 - beta^2)^2 for Lehmer."""
        return self.M if self.kind is Kind.LUCAS else self.L * self.M

    @property
    def first_index(self) -> int:
        return 2 if self.kind is Kind.LUCAS else 3


class SequenceElement(NamedTuple):
    index: int
    value: int


def make_pair(p: int, q: int) -> SequencePair:
    if q == 0 or p + 2 * q == 0:
        raise ZeroParameter(f"(p, q) = ({p}, {q}) has a zero parameter")
    if q < 0 or abs(p) >= 2 * q:
        raise RealCase(f"(p, q) = ({p}, {q}) is not in the complex case q > 0, |p| < 2q")
    if p in (0, q, -q):
        raise RootOfUnity(f"beta/alpha is a root of unity for (p, q) = ({p}, {q})")
    if math.gcd(p + 2 * q, q) != 1:
        raise NotCoprime(f"gcd(p + 2q, q) = {math.gcd(p + 2 * q, q)} for (p, q) = ({p}, {q})")
    L = p + 2 * q
    r = math.isqrt(L)
    return SequencePair(p, q, Kind.LUCAS if r * r == L else Kind.LEHMER)


# -- terms -------------------------------------------------------------------

_memo: dict[tuple[int, int], list[int]] = {}
_memo_lock = threading.Lock()


def _lehmer_terms(pair: SequencePair, n: int) -> list[int]:
    """Lehmer-normalised u_0..u_n."""
    key = (pair.p, pair.q)
    with _memo_lock:
        terms = _memo.setdefault(key, [0, 1])
        if len(terms) <= n:
            L, q = pair.L, pair.q
            while len(terms) <= n:
                i = len(terms) - 2
                # u_{i+2} from u_{i+1}, u_i; the multiplier is L for odd i, 1 for even i
                a = L if i % 2 else 1
                terms.append(a * terms[-1] - q * terms[-2])
        return terms


def element(pair: SequencePair, n: int) -> int:
    """u_n in the pair's own normalisation (Lucas or Lehmer)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    u = _lehmer_terms(pair, n)[n]
    if pair.kind is Kind.LUCAS and n % 2 == 0:
        u *= pair.sqrt_L
    return u


def elements(pair: SequencePair, n_hi: int) -> Iterator[SequenceElement]:
    for n in range(n_hi + 1):
        yield SequenceElement(n, element(pair, n))


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


# -- primitive divisors ------------------------------------------------------

def excluded_product(pair: SequencePair, n: int) -> int:
    """|D| * prod |u_d| over proper divisors d of n that can share primes with u_n.

    Any prime of u_n that divides an earlier u_m also divides u_gcd(m, n),
    so the divisors of n are enough.
    """
    c = abs(pair.discriminant_factor())
    for d in arith.divisors(n):
        if pair.first_index <= d < n:
            c *= abs(element(pair, d))
    return c


def primitive_part(pair: SequencePair, n: int) -> int:
    """|u_n| with every prime shared with the excluded product removed."""
    v = abs(element(pair, n))
    if v == 0:
        raise ArithmeticError(f"u_{n} = 0; beta/alpha would be a root of unity")
    c = excluded_product(pair, n)
    g = math.gcd(v, c)
    while g > 1:
        v //= g
        g = math.gcd(v, g)
    return v


def has_primitive_divisor(pair: SequencePair, n: int) -> bool:
    if n < pair.first_index:
        raise ValueError(f"n must be >= {pair.first_index} for a {pair.kind.value} sequence")
    return primitive_part(pair, n) > 1


def stewart_screen(pair: SequencePair, n: int) -> Screen:
    """Certify a primitive divisor when |G_n(p, q)| exceeds P(n / (n, 3))."""
    if n <= 12:
        raise ValueError("the screen applies only for n > 12")
    if abs(G_eval(n, pair.p, pair.q)) > arith.stewart_prime_cap(n):
        return Screen.CERTIFIED_PRIMITIVE
    return Screen.CANDIDATE


def enumerate_exceptions(pair: SequencePair, n_lo: int, n_hi: int) -> list[int]:
    """Every n in [n_lo, n_hi] for which u_n has no primitive divisor."""
    if not 2 <= n_lo <= n_hi:
        raise ValueError("need 2 <= n_lo <= n_hi")
    out = []
    for n in range(max(n_lo, pair.first_index), n_hi + 1):
        if n > 12 and stewart_screen(pair, n) is Screen.CERTIFIED_PRIMITIVE:
            continue
        if not has_primitive_divisor(pair, n):
            out.append(n)
    if n_lo < pair.first_index:
        # u_2 = 1 in Lehmer normalisation: no prime divides it at all
        out = list(range(n_lo, pair.first_index)) + out
    return out
