"""Factorisation and the arithmetic functions used by the rest of the package.

Numbers here stay below roughly 2e10, so trial division by a cached table of
primes up to 150000 (then a 6k+-1 wheel) is deterministic and fast enough.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

import numpy as np

from .ball import DEFAULT_PREC, RealBall

_SIEVE_LIMIT = 150_000


@lru_cache(maxsize=None)
def _small_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(_SIEVE_LIMIT))


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit (sieve of Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = _small_primes()
    if n <= small[-1]:
        i = bisect.bisect_left(small, n)
        return small[i] == n
    r = math.isqrt(n)
    if r <= small[-1]:
        return all(n % p for p in small[: bisect.bisect_right(small, r)])
    return _miller_rabin(n)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _miller_rabin(n: int) -> bool:
    """Deterministic for n < 3.3e24 with these bases."""
    if n >= 3_317_044_064_679_887_385_961_981:
        raise ValueError("primality test only deterministic below 3.3e24")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1 or not is_prime(p):
                raise ValueError(f"malformed factorisation {self.factors}")
            last = p
            prod *= p ** e
        if prod != self.n:
            raise ValueError(f"factors multiply to {prod}, not {self.n}")

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def divisors(self) -> list[int]:
        """All positive divisors in increasing order."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p ** i for d in divs for i in range(e + 1)]
        return sorted(divs)

    def squarefree_divisors(self) -> list[tuple[int, int]]:
        """(d, mobius(d)) for every squarefree divisor d."""
        out = []
        for mask in product((0, 1), repeat=len(self.factors)):
            d, sign = 1, 1
            for bit, (p, _) in zip(mask, self.factors):
                if bit:
                    d *= p
                    sign = -sign
            out.append((d, sign))
        return sorted(out)


@lru_cache(maxsize=65536)
def factor(n: int) -> Factorization:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    m = n
    out = []
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    else:
        # continue past the table with a 6k +- 1 wheel
        p = _SIEVE_LIMIT + 1 - (_SIEVE_LIMIT + 1) % 6 + 5
        step = 2
        while p * p <= m:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out.append((p, e))
            p += step
            step = 6 - step
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def phi(n: int) -> int:
    r = n
    for p, _ in factor(n):
        r = r // p * (p - 1)
    return r


def omega(n: int) -> int:
    return len(factor(n).factors)


def mobius(n: int) -> int:
    f = factor(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f.factors) % 2 else 1


def largest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError("largest_prime_factor needs n >= 2")
    return factor(n).factors[-1][0]


def kernel_m(n: int) -> int:
    """Greatest odd squarefree divisor of n."""
    r = 1
    for p, _ in factor(n):
        if p != 2:
            r *= p
    return r


def m_prime(n: int) -> int:
    return math.gcd(2, n) * kernel_m(n)


def n_prime(n: int) -> int:
    return n // math.gcd(n, 2)


def divisors(n: int) -> list[int]:
    return factor(n).divisors()


def stewart_prime_cap(n: int) -> int:
    """Largest prime factor of n/gcd(n, 3), or 1 when that quotient is 1."""
    if n < 2:
        raise ValueError("stewart_prime_cap needs n >= 2")
    r = n // math.gcd(n, 3)
    return 1 if r == 1 else largest_prime_factor(r)


def phi_interval(k: int, r: int, n: int) -> int:
    """Number of integers strictly inside (n*r/k, n*(r+1)/k) coprime to n."""
    if k < 1 or not 0 <= r < k or n < 1:
        raise ValueError(f"bad arguments k={k}, r={r}, n={n}")
    # j in the open interval  <=>  n*r < j*k < n*(r+1)
    lo = n * r // k + 1
    hi = -((-n * (r + 1)) // k) - 1
    return sum(1 for j in range(lo, hi + 1) if math.gcd(j, n) == 1)


def lehmer_e(k: int, r: int, n: int) -> int:
    """Lehmer's error term E(k, r, n) = phi(n) - k * phi_interval(k, r, n)."""
    return phi(n) - k * phi_interval(k, r, n)


def interval_members(lo_num: int, lo_den: int, hi_num: int, hi_den: int, n: int) -> list[int]:
    """Integers j coprime to n with lo_num/lo_den < j < hi_num/hi_den."""
    lo = n * lo_num // lo_den + 1
    hi = -((-n * hi_num) // hi_den) - 1
    return [j for j in range(max(lo, 1), hi + 1) if math.gcd(j, n) == 1]


# -- bounds on omega and phi ----------------------------------------------

OMEGA_CONSTANT = "1.3841"
PHI_CONSTANT = "2.50637"


def omega_bound(n: int, prec: int = DEFAULT_PREC) -> RealBall:
    """1.3841 log n / log log n."""
    ln = RealBall(n, prec).log()
    return RealBall(OMEGA_CONSTANT, prec) * ln / ln.log()


def phi_bound(n: int, prec: int = DEFAULT_PREC) -> RealBall:
    """n / (e^gamma log log n + 2.50637 / log log n)."""
    lln = RealBall(n, prec).log().log()
    eg = RealBall.euler_gamma(prec).exp()
    return RealBall(n, prec) / (eg * lln + RealBall(PHI_CONSTANT, prec) / lln)


def check_omega_bound(n: int, prec: int = DEFAULT_PREC) -> bool:
    if n < 3:
        raise ValueError("needs n >= 3")
    return omega(n) < omega_bound(n, prec)


def check_phi_bound(n: int, prec: int = DEFAULT_PREC) -> bool:
    if n < 3:
        raise ValueError("needs n >= 3")
    return phi(n) >= phi_bound(n, prec)


def omega_phi_table(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays omega[0..limit], phi[0..limit] computed by sieving."""
    om = np.zeros(limit + 1, dtype=np.int64)
    ph = np.arange(limit + 1, dtype=np.int64)
    for p in primes_up_to(limit):
        om[p::p] += 1
        ph[p::p] -= ph[p::p] // p
    return om, ph


def bound_failures(limit: int, slack: float = 1e-9) -> tuple[list[int], list[int]]:
    """The n in [3, limit] violating the omega bound, resp. the phi bound.

    Vectorised in double precision; any n whose relative margin is below
    ``slack`` is re-decided by the certified ball checks.
    """
    if limit < 3:
        return [], []
    om, ph = omega_phi_table(limit)
    n = np.arange(3, limit + 1, dtype=np.float64)
    ln = np.log(n)
    lln = np.log(ln)
    om_b = float(OMEGA_CONSTANT) * ln / lln
    ph_b = n / (np.exp(np.euler_gamma) * lln + float(PHI_CONSTANT) / lln)
    om_v = om[3:].astype(np.float64)
    ph_v = ph[3:].astype(np.float64)
    om_margin = (om_b - om_v) / om_b
    ph_margin = (ph_v - ph_b) / ph_b
    om_fail = [int(i) + 3 for i in np.nonzero(om_margin <= -slack)[0]]
    ph_fail = [int(i) + 3 for i in np.nonzero(ph_margin <= -slack)[0]]
    for i in np.nonzero(np.abs(om_margin) < slack)[0]:
        if not check_omega_bound(int(i) + 3):
            om_fail.append(int(i) + 3)
    for i in np.nonzero(np.abs(ph_margin) < slack)[0]:
        if not check_phi_bound(int(i) + 3):
            ph_fail.append(int(i) + 3)
    return sorted(om_fail), sorted(ph_fail)
