"""Exact integer polynomials: cyclotomic polynomials, the minimal polynomials
g_n of 2cos(2pi/n), the cofactors h_m, and bounds on their size on the unit
circle.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable, Sequence

import flint

from . import arith
from .ball import DEFAULT_PREC, RealBall, cos_2pi_frac, sin_2pi_frac


class IntegerPolynomial:
    """Dense polynomial with exact integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntegerPolynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def binomial(cls, d: int) -> "IntegerPolynomial":
        """X^d - 1."""
        return cls([-1] + [0] * (d - 1) + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, IntegerPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntegerPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntegerPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if mono and abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}{'*' + mono if mono else ''}"
            sign = "-" if a < 0 else "+"
            terms.append(f"{sign} {body}")
        s = " ".join(terms)
        return s[2:] if s.startswith("+") else "-" + s[2:]

    def __add__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        n = max(len(self), len(other))
        return IntegerPolynomial(self[i] + other[i] for i in range(n))

    def __sub__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        n = max(len(self), len(other))
        return IntegerPolynomial(self[i] - other[i] for i in range(n))

    def __neg__(self) -> "IntegerPolynomial":
        return IntegerPolynomial(-a for a in self.coeffs)

    def __mul__(self, other) -> "IntegerPolynomial":
        if isinstance(other, int):
            return IntegerPolynomial(a * other for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntegerPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return IntegerPolynomial(out)

    __rmul__ = __mul__

    def divmod(self, divisor: "IntegerPolynomial") -> tuple["IntegerPolynomial", "IntegerPolynomial"]:
        """Long division by a divisor with leading coefficient +-1."""
        lead = divisor.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must have unit leading coefficient")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntegerPolynomial(), IntegerPolynomial(rem)
        quot = [0] * (len(rem) - dd)
        nz = [(j, b) for j, b in enumerate(divisor.coeffs[:-1]) if b]
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + dd] * lead
            if c:
                quot[i] = c
                for j, b in nz:
                    rem[i + j] -= c * b
            rem[i + dd] = 0
        return IntegerPolynomial(quot), IntegerPolynomial(rem)

    __divmod__ = divmod

    def exact_div(self, divisor: "IntegerPolynomial") -> "IntegerPolynomial":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def derivative(self) -> "IntegerPolynomial":
        return IntegerPolynomial(i * a for i, a in enumerate(self.coeffs) if i)

    def inflate(self, k: int) -> "IntegerPolynomial":
        """f(X^k)."""
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, a in enumerate(self.coeffs):
            out[i * k] = a
        return IntegerPolynomial(out)

    def reflect_sign(self) -> "IntegerPolynomial":
        """f(-X)."""
        return IntegerPolynomial(a if i % 2 == 0 else -a for i, a in enumerate(self.coeffs))

    def __call__(self, x):
        """Horner evaluation; works for ints, Fractions and balls."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def homogeneous(self, x: int, y: int, degree: int | None = None) -> int:
        """y^degree * f(x / y) as an exact integer."""
        d = self.degree if degree is None else degree
        acc = 0
        ypow = 1
        # sum a_i x^i y^(d-i), Horner in x with rising powers of y
        for a in reversed(self.coeffs):
            acc = acc * x + a * ypow
            ypow *= y
        # the loop multiplied y^(deg) in total; pad for degree > deg
        return acc * y ** (d - self.degree) if self.coeffs else 0

    def l1_norm(self) -> int:
        return sum(abs(a) for a in self.coeffs)

    def max_coeff(self) -> int:
        return max((abs(a) for a in self.coeffs), default=0)


# -- cache -----------------------------------------------------------------

_lock = threading.Lock()
_phi_cache: dict[int, IntegerPolynomial] = {}
_g_cache: dict[int, IntegerPolynomial] = {}


def _insert(cache: dict, n: int, poly: IntegerPolynomial) -> IntegerPolynomial:
    with _lock:
        return cache.setdefault(n, poly)


def cached_entries() -> list[int]:
    with _lock:
        return sorted(_phi_cache)


def seed_cache(n: int, phi_poly: IntegerPolynomial, g: IntegerPolynomial | None = None) -> None:
    """Insert externally loaded polynomials (used by the on-disk cache)."""
    _insert(_phi_cache, n, phi_poly)
    if g is not None:
        _insert(_g_cache, n, g)


def clear_cache() -> None:
    with _lock:
        _phi_cache.clear()
        _g_cache.clear()


# -- cyclotomic polynomials ------------------------------------------------

def _squarefree_cyclotomic(n: int) -> IntegerPolynomial:
    # X^n - 1 = prod_{d | n} Phi_d, so Phi_n = prod_{d|n} (X^d - 1)^mu(n/d);
    # multiply the + factors, then strip each - factor by exact division.
    f = arith.factor(n)
    num = IntegerPolynomial([1])
    den = []
    for e, mu_e in f.squarefree_divisors():
        d = n // e
        if mu_e == 1:
            num = _mul_binomial(num, d)
        else:
            den.append(d)
    for d in den:
        num = _div_binomial(num, d)
    return num


def _mul_binomial(f: IntegerPolynomial, d: int) -> IntegerPolynomial:
    """f * (X^d - 1) in O(deg f)."""
    c = f.coeffs
    out = [0] * (len(c) + d)
    for i, a in enumerate(c):
        out[i + d] += a
        out[i] -= a
    return IntegerPolynomial(out)


def _div_binomial(f: IntegerPolynomial, d: int) -> IntegerPolynomial:
    """f / (X^d - 1), exact, in O(deg f)."""
    c = list(f.coeffs)
    deg = len(c) - 1
    q = [0] * (deg - d + 1)
    for i in range(deg - d, -1, -1):
        q[i] = c[i + d]
        c[i] += q[i]
        c[i + d] = 0
    if any(c):
        raise ArithmeticError(f"X^{d} - 1 does not divide the product")
    return IntegerPolynomial(q)


def cyclotomic_poly(n: int) -> IntegerPolynomial:
    """The n-th cyclotomic polynomial, exact and cached."""
    if n < 1:
        raise ValueError("n must be >= 1")
    hit = _phi_cache.get(n)
    if hit is not None:
        return hit
    f = arith.factor(n)
    rad = math.prod(f.primes)
    if rad == n:
        poly = _squarefree_cyclotomic(n)
    else:
        poly = cyclotomic_poly(rad).inflate(n // rad)
    return _insert(_phi_cache, n, poly)


# -- g_n, the minimal polynomial of 2cos(2pi/n) ---------------------------

def _dickson_table(h: int) -> list[list[int]]:
    # V_k(Y) with X^k + X^-k = V_k(X + 1/X): V_0 = 2, V_1 = Y, V_{k+1} = Y V_k - V_{k-1}
    v = [[2], [0, 1]]
    for k in range(1, h):
        nxt = [0] + v[k]
        for i, a in enumerate(v[k - 1]):
            nxt[i] -= a
        v.append(nxt)
    return v[: h + 1]


def fold(palindromic: IntegerPolynomial) -> IntegerPolynomial:
    """The g with X^h g(X + 1/X) = f(X) for a palindromic f of degree 2h."""
    c = palindromic.coeffs
    if len(c) % 2 == 0 or any(c[i] != c[-1 - i] for i in range(len(c))):
        raise ValueError("need a palindromic polynomial of even degree")
    h = (len(c) - 1) // 2
    v = _dickson_table(h)
    out = [0] * (h + 1)
    out[0] = c[h]
    for k in range(1, h + 1):
        a = c[h + k]
        if a:
            for i, b in enumerate(v[k]):
                out[i] += a * b
    return IntegerPolynomial(out)


def g_poly(n: int) -> IntegerPolynomial:
    if n < 3:
        raise ValueError("g_n is only defined here for n >= 3")
    hit = _g_cache.get(n)
    if hit is not None:
        return hit
    return _insert(_g_cache, n, fold(cyclotomic_poly(n)))


def G_eval(n: int, p: int, q: int) -> int:
    """G_n(p, q) = q^(phi(n)/2) g_n(p/q), exactly."""
    if q < 1:
        raise ValueError("q must be positive")
    return g_poly(n).homogeneous(p, q)


def cosine_product(n: int, p: int, q: int, prec: int = DEFAULT_PREC) -> RealBall:
    """prod over 1 <= j < n/2, gcd(j, n) = 1 of (p - 2q cos(2 pi j / n))."""
    acc = RealBall(1, prec)
    for j in range(1, (n + 1) // 2):
        if math.gcd(j, n) == 1:
            acc = acc * (p - 2 * q * cos_2pi_frac(j, n, prec))
    return acc


# -- h_m and its sup-norm bound --------------------------------------------

def _check_odd_squarefree(m: int) -> arith.Factorization:
    if m < 1 or m % 2 == 0:
        raise ValueError(f"{m} is not odd")
    f = arith.factor(m)
    if any(e > 1 for _, e in f):
        raise ValueError(f"{m} is not squarefree")
    return f


def h_poly(m: int) -> IntegerPolynomial:
    """(X^m - 1) / Phi_m(X) for odd squarefree m."""
    _check_odd_squarefree(m)
    return IntegerPolynomial.binomial(m).exact_div(cyclotomic_poly(m)) if m > 1 else IntegerPolynomial([1])


def h_supnorm_bound(m: int) -> int:
    """Upper bound for max |h_m| on the unit circle."""
    ps = _check_odd_squarefree(m).primes
    k = len(ps)
    if k == 0:
        return 1
    b = math.prod(ps[i] ** (2 ** (k - i - 2)) for i in range(k - 1))
    return 2 * b if k <= 2 else b


def supnorm_sample(f: IntegerPolynomial, samples: int = 4096, prec: int = DEFAULT_PREC) -> RealBall:
    """max |f(z)| over z = exp(2 pi i t / samples); a lower estimate of the sup norm."""
    if samples < 8:
        raise ValueError("need at least 8 samples")
    if f.degree <= 0:
        return RealBall(abs(f[0]), prec)
    # z^samples = 1 at every sample point, so fold the coefficients mod samples
    # and read all values off one ball DFT
    folded = [0] * samples
    for i, a in enumerate(f.coeffs):
        folded[i % samples] += a
    flint.ctx.prec = prec
    values = flint.acb.dft([flint.acb(a) for a in folded])
    best = abs(values[0])
    for v in values[1:]:
        best = best.max(abs(v))
    return RealBall._wrap(best, prec)


# -- derivatives of g_n ----------------------------------------------------

def g_deriv_poly(n: int) -> IntegerPolynomial:
    return g_poly(n).derivative()


def _check_k(n: int, k: int) -> None:
    if n < 3:
        raise ValueError("n must be >= 3")
    if not 1 <= k or 2 * k >= n:
        raise ValueError(f"k={k} not in [1, n/2)")
    if math.gcd(k, n) != 1:
        raise ValueError(f"gcd({k}, {n}) != 1")


def g_deriv_at(n: int, k: int, prec: int = DEFAULT_PREC) -> RealBall:
    """|g_n'(2 cos(2 pi k / n))| as a ball with about ``prec`` bits of accuracy."""
    _check_k(n, k)
    d = g_deriv_poly(n)
    # coefficients are large and alternate; pay for the cancellation up front
    work = prec + d.max_coeff().bit_length() + 2 * max(d.degree, 1).bit_length()
    y = 2 * cos_2pi_frac(k, n, work)
    return abs(d(y)).with_prec(prec)


def phi_deriv_abs_at(n: int, k: int, prec: int = DEFAULT_PREC) -> RealBall:
    """|Phi_n'(zeta_n^k)| evaluated in complex ball arithmetic."""
    d = cyclotomic_poly(n).derivative()
    work = prec + d.max_coeff().bit_length() + 2 * max(d.degree, 1).bit_length()
    flint.ctx.prec = work
    z = flint.acb.exp_pi_i(flint.acb(flint.arb(flint.fmpq(2 * k, n))))
    acc = flint.acb(0)
    for a in reversed(d.coeffs):
        acc = acc * z + a
    return RealBall._wrap(abs(acc), work).with_prec(prec)


def lemma7_rhs(n: int, k: int, prec: int = DEFAULT_PREC) -> RealBall:
    """|Phi_n'(zeta_n^k)| / (2 |sin(2 pi k / n)|)."""
    return phi_deriv_abs_at(n, k, prec) / (2 * abs(sin_2pi_frac(k, n, prec)))


def g_deriv_lower_bound(n: int, prec: int = DEFAULT_PREC) -> RealBall:
    """n' / (2 * sup-norm bound of h_m), valid at every 2cos(2 pi k/n), gcd(k, n) = 1."""
    if n < 3:
        raise ValueError("n must be >= 3")
    return RealBall(Fraction(arith.n_prime(n), 2 * h_supnorm_bound(arith.kernel_m(n))), prec)


# -- product identity check -------------------------------------------------

def homogeneous_cyclotomic(n: int, a: int, b: int) -> int:
    """Phi_n(a, b) = b^phi(n) Phi_n(a/b)."""
    return cyclotomic_poly(n).homogeneous(a, b)


def mobius_product_check(n: int, a: int, b: int) -> bool:
    """Compare Phi_n(a, b) with prod_{m | n} (a^m - b^m)^mu(n/m) as exact rationals."""
    if n < 2 or not a > b >= 1:
        raise ValueError("needs n >= 2 and a > b >= 1")
    value = Fraction(1)
    for m in arith.divisors(n):
        mu = arith.mobius(n // m)
        if mu:
            value *= Fraction(a ** m - b ** m) ** mu
    return value == homogeneous_cyclotomic(n, a, b)


def lemma8_i_holds(n: int) -> bool:
    """Phi_n(X) == Phi_m((-1)^(m'+1) X^(n/m')) as exact polynomials."""
    m = arith.kernel_m(n)
    mp = arith.m_prime(n)
    base = cyclotomic_poly(m)
    if mp % 2 == 0:
        # (-1)^(m'+1) = -1: substitute -X^(n/m')
        base = base.reflect_sign()
    inner = base.inflate(n // mp)
    return cyclotomic_poly(n) == inner


def lemma8_i_unit(n: int) -> int:
    """The sign e with Phi_n(X) == e * Phi_m((-1)^(m'+1) X^(n/m')).

    e = -1 exactly when m = 1 and n is even, because Phi_1(-Y) = -(Y + 1).
    """
    m, mp = arith.kernel_m(n), arith.m_prime(n)
    base = cyclotomic_poly(m)
    if mp % 2 == 0:
        base = base.reflect_sign()
    inner = base.inflate(n // mp)
    target = cyclotomic_poly(n)
    if target == inner:
        return 1
    if target == -inner:
        return -1
    raise ArithmeticError(f"substitution identity fails for n={n} even up to sign")


def lemma8_ii_holds(p: int, n: int) -> bool:
    """Phi_pn(X) * Phi_n(X) == Phi_n(X^p) for a prime p not dividing n."""
    return cyclotomic_poly(p * n) * cyclotomic_poly(n) == cyclotomic_poly(n).inflate(p)


def fold_identity_holds(n: int) -> bool:
    """X^(phi(n)/2) g_n(X + 1/X) == Phi_n(X)."""
    g = g_poly(n)
    h = g.degree
    # X^h (X + 1/X)^i = X^(h-i) (X^2 + 1)^i
    acc = IntegerPolynomial()
    power = IntegerPolynomial([1])
    x2p1 = IntegerPolynomial([1, 0, 1])
    for i, a in enumerate(g.coeffs):
        if a:
            acc = acc + (power * IntegerPolynomial.monomial(h - i)) * a
        power = power * x2p1
    return acc == cyclotomic_poly(n)
