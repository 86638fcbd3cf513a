"""Rigorous real balls (midpoint + radius) on top of Arb.

Every operation is performed at the ball's own working precision and the
result encloses the exact value.  Order comparisons that cannot be decided
from the enclosures raise :class:`Undecidable` instead of guessing.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

import flint

DEFAULT_PREC = 128

Number = Union[int, Fraction, "RealBall"]


class Undecidable(ArithmeticError):
    """Two balls overlap, so the requested comparison has no certified answer."""


class ExactZero(Undecidable):
    """The quantity is provably zero (so its logarithm does not exist)."""


def _set_prec(prec: int) -> None:
    flint.ctx.prec = prec


def _to_arb(x, prec: int) -> flint.arb:
    if isinstance(x, RealBall):
        return x._v
    if isinstance(x, flint.arb):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a real number here")
    if isinstance(x, int):
        return flint.arb(flint.fmpz(x))
    if isinstance(x, Fraction):
        _set_prec(prec)
        return flint.arb(flint.fmpq(x.numerator, x.denominator))
    if isinstance(x, float):
        return flint.arb(x)
    if isinstance(x, str):
        _set_prec(prec)
        return flint.arb(x)
    raise TypeError(f"cannot make a ball from {type(x).__name__}")


def _arf_to_fraction(x: flint.arb) -> Fraction:
    # x is an exact arb (a midpoint or radius)
    man, exp = x.man_exp()
    man, exp = int(man), int(exp)
    return Fraction(man * 2 ** exp) if exp >= 0 else Fraction(man, 2 ** -exp)


class RealBall:
    """An enclosure ``[mid - rad, mid + rad]`` of one real number."""

    __slots__ = ("_v", "prec")

    def __init__(self, value: Number | float | str | flint.arb = 0, prec: int = DEFAULT_PREC):
        self.prec = prec
        self._v = _to_arb(value, prec)

    @classmethod
    def _wrap(cls, v: flint.arb, prec: int) -> "RealBall":
        out = cls.__new__(cls)
        out._v = v
        out.prec = prec
        return out

    def __reduce__(self):
        # exact: midpoint and radius are dyadic, shipped as (mantissa, exponent)
        return (_from_dyadic, (self._v.mid().man_exp(), self._v.rad().man_exp(), self.prec))

    # -- constants -----------------------------------------------------

    @classmethod
    def pi(cls, prec: int = DEFAULT_PREC) -> "RealBall":
        _set_prec(prec)
        return cls._wrap(flint.arb.pi(), prec)

    @classmethod
    def euler_gamma(cls, prec: int = DEFAULT_PREC) -> "RealBall":
        _set_prec(prec)
        return cls._wrap(flint.arb.const_euler(), prec)

    # -- inspection ----------------------------------------------------

    @property
    def arb(self) -> flint.arb:
        return self._v

    @property
    def mid(self) -> Fraction:
        return _arf_to_fraction(self._v.mid())

    @property
    def rad(self) -> Fraction:
        return _arf_to_fraction(self._v.rad())

    @property
    def lower(self) -> Fraction:
        return self.mid - self.rad

    @property
    def upper(self) -> Fraction:
        return self.mid + self.rad

    def is_finite(self) -> bool:
        return self._v.is_finite()

    def contains(self, x: Number) -> bool:
        if isinstance(x, (int, Fraction)):
            # exact test: a rational need not be representable at this precision
            if not self.is_finite():
                return True
            return self.lower <= x <= self.upper
        return self._v.contains(_to_arb(x, self.prec))

    def overlaps(self, other: Number) -> bool:
        return self._v.overlaps(_to_arb(other, self.prec))

    def contains_zero(self) -> bool:
        return self._v.contains(flint.arb(0))

    def rel_accuracy_bits(self) -> int:
        return self._v.rel_accuracy_bits()

    def __float__(self) -> float:
        return float(self._v.mid())

    def __repr__(self) -> str:
        return f"RealBall({self._v.str(radius=True)}, prec={self.prec})"

    def __str__(self) -> str:
        return self._v.str(radius=True)

    # -- arithmetic ----------------------------------------------------

    def _binary(self, other, op) -> "RealBall":
        prec = max(self.prec, other.prec) if isinstance(other, RealBall) else self.prec
        o = _to_arb(other, prec)
        _set_prec(prec)
        return RealBall._wrap(op(self._v, o), prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __pow__(self, e):
        if isinstance(e, int):
            _set_prec(self.prec)
            return RealBall._wrap(self._v ** e, self.prec)
        return self._binary(e, lambda a, b: a ** b)

    def __neg__(self):
        return RealBall._wrap(-self._v, self.prec)

    def __abs__(self):
        _set_prec(self.prec)
        return RealBall._wrap(abs(self._v), self.prec)

    def _unary(self, name: str) -> "RealBall":
        _set_prec(self.prec)
        return RealBall._wrap(getattr(self._v, name)(), self.prec)

    def sqrt(self):
        return self._unary("sqrt")

    def log(self):
        return self._unary("log")

    def exp(self):
        return self._unary("exp")

    def cos(self):
        return self._unary("cos")

    def sin(self):
        return self._unary("sin")

    def acos(self):
        return self._unary("acos")

    def floor(self):
        return self._unary("floor")

    def with_prec(self, prec: int) -> "RealBall":
        return RealBall._wrap(self._v, prec)

    # -- certified comparisons -----------------------------------------

    def cmp(self, other: Number) -> int:
        """Return -1, 0 or 1; 0 only when both sides are the same exact point."""
        o = _to_arb(other, self.prec)
        _set_prec(self.prec)
        if self._v < o:
            return -1
        if self._v > o:
            return 1
        if self._v.is_exact() and o.is_exact() and self._v == o:
            return 0
        raise Undecidable(f"cannot order {self} and {o.str(radius=True)}")

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def sign(self) -> int:
        return self.cmp(0)

    def unique_floor(self) -> int:
        """floor(x) when it is the same integer on the whole ball."""
        lo, hi = self.lower, self.upper
        a, b = math.floor(lo), math.floor(hi)
        if a != b:
            raise Undecidable(f"floor of {self} is not unique")
        return a

    def trunc(self, places: int = 0) -> Fraction:
        """Truncate toward zero to ``places`` decimals, if that is certified."""
        scale = 10 ** places
        lo, hi = self.lower * scale, self.upper * scale
        a, b = math.trunc(lo), math.trunc(hi)
        if a != b:
            raise Undecidable(f"truncation of {self} to {places} places is not unique")
        return Fraction(a, scale)


def _from_dyadic(mid: tuple, rad: tuple, prec: int) -> RealBall:
    mm, me = mid
    rm, re = rad
    return RealBall._wrap(flint.arb((int(mm), int(me)), (int(rm), int(re))), prec)


def ball(x: Number | float | str, prec: int = DEFAULT_PREC) -> RealBall:
    return x if isinstance(x, RealBall) else RealBall(x, prec)


def pi(prec: int = DEFAULT_PREC) -> RealBall:
    return RealBall.pi(prec)


def log(x: Number, prec: int = DEFAULT_PREC) -> RealBall:
    return ball(x, prec).log()


def sqrt(x: Number, prec: int = DEFAULT_PREC) -> RealBall:
    return ball(x, prec).sqrt()


def cos_2pi_frac(k: int, n: int, prec: int = DEFAULT_PREC) -> RealBall:
    """cos(2*pi*k/n) evaluated from the exact rational 2k/n."""
    _set_prec(prec)
    return RealBall._wrap(flint.arb.cos_pi_fmpq(flint.fmpq(2 * k, n)), prec)


def sin_2pi_frac(k: int, n: int, prec: int = DEFAULT_PREC) -> RealBall:
    _set_prec(prec)
    return RealBall._wrap(flint.arb.sin_pi_fmpq(flint.fmpq(2 * k, n)), prec)


def max_ball(*balls: RealBall) -> RealBall:
    """Enclosure of the maximum of several balls."""
    out = balls[0]
    for b in balls[1:]:
        _set_prec(max(out.prec, b.prec))
        out = RealBall._wrap(out._v.max(b._v), max(out.prec, b.prec))
    return out
