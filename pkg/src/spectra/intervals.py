"""Exact rational interval arithmetic.

All certified comparisons in the package reduce to arithmetic on closed
intervals with ``fractions.Fraction`` endpoints, so every bound is a proof.
Square roots are bracketed with integer ``isqrt`` at a requested bit size;
nothing here ever rounds through binary floats.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

Rat = Union[Fraction, int]


def sqrt_lower(x: Fraction, bits: int = 64) -> Fraction:
    """Largest cheap dyadic-scaled rational known to be <= sqrt(x), x >= 0."""
    if x < 0:
        raise ValueError("sqrt of negative rational")
    if x == 0:
        return Fraction(0)
    scale = 1 << bits
    n, d = x.numerator, x.denominator
    # isqrt(n*d*scale^2) // (d*scale) <= sqrt(n/d)
    return Fraction(isqrt(n * d * scale * scale), d * scale)


def sqrt_upper(x: Fraction, bits: int = 64) -> Fraction:
    """A rational known to be >= sqrt(x), within 2^-bits of the lower bound."""
    if x < 0:
        raise ValueError("sqrt of negative rational")
    if x == 0:
        return Fraction(0)
    scale = 1 << bits
    n, d = x.numerator, x.denominator
    return Fraction(isqrt(n * d * scale * scale) + 1, d * scale)


def decimal_str(x: Fraction, sig: int = 20) -> str:
    """Decimal string of a rational, rounded to ``sig`` significant digits."""
    with decimal.localcontext() as ctx:
        ctx.prec = sig
        ctx.rounding = decimal.ROUND_HALF_EVEN
        val = decimal.Decimal(int(x.numerator)) / decimal.Decimal(int(x.denominator))
    return format(val, "f") if val == val.to_integral_value() and abs(val) < 10**sig else str(val)


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x: Rat) -> "RatInterval":
        f = Fraction(x)
        return RatInterval(f, f)

    @staticmethod
    def of(lo: Rat, hi: Rat) -> "RatInterval":
        return RatInterval(Fraction(lo), Fraction(hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def __add__(self, other: "RatInterval | Rat") -> "RatInterval":
        if isinstance(other, RatInterval):
            return RatInterval(self.lo + other.lo, self.hi + other.hi)
        f = Fraction(other)
        return RatInterval(self.lo + f, self.hi + f)

    __radd__ = __add__

    def __sub__(self, other: "RatInterval | Rat") -> "RatInterval":
        if isinstance(other, RatInterval):
            return RatInterval(self.lo - other.hi, self.hi - other.lo)
        f = Fraction(other)
        return RatInterval(self.lo - f, self.hi - f)

    def __rsub__(self, other: Rat) -> "RatInterval":
        return (-self) + other

    def __mul__(self, other: "RatInterval | Rat") -> "RatInterval":
        if isinstance(other, RatInterval):
            cands = (
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            )
            return RatInterval(min(cands), max(cands))
        f = Fraction(other)
        if f >= 0:
            return RatInterval(self.lo * f, self.hi * f)
        return RatInterval(self.hi * f, self.lo * f)

    __rmul__ = __mul__

    def square(self) -> "RatInterval":
        if self.lo >= 0:
            return RatInterval(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return RatInterval(self.hi * self.hi, self.lo * self.lo)
        return RatInterval(Fraction(0), max(self.lo * self.lo, self.hi * self.hi))

    def power(self, k: int) -> "RatInterval":
        out = RatInterval.point(1)
        base = self
        n = k
        while n:
            if n & 1:
                out = out * base
            base = base.square()
            n >>= 1
        return out

    def inverse(self) -> "RatInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def sqrt(self, bits: int = 64) -> "RatInterval":
        if self.lo < 0:
            raise ValueError("sqrt of interval with negative part")
        return RatInterval(sqrt_lower(self.lo, bits), sqrt_upper(self.hi, bits))

    def contains(self, x: Rat) -> bool:
        f = Fraction(x)
        return self.lo <= f <= self.hi

    def overlaps(self, other: "RatInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def hull(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def strictly_less(self, other: "RatInterval | Rat") -> bool:
        if isinstance(other, RatInterval):
            return self.hi < other.lo
        return self.hi < Fraction(other)

    def strictly_greater(self, other: "RatInterval | Rat") -> bool:
        if isinstance(other, RatInterval):
            return self.lo > other.hi
        return self.lo > Fraction(other)

    def strictly_positive(self) -> bool:
        return self.lo > 0

    def strictly_negative(self) -> bool:
        return self.hi < 0

    def decimal(self, sig: int = 20) -> str:
        """Shared-digit decimal of the enclosure (midpoint when undecided)."""
        a, b = decimal_str(self.lo, sig), decimal_str(self.hi, sig)
        return a if a == b else decimal_str(self.mid, sig)

    def decimal_pair(self, sig: int = 20) -> tuple[str, str]:
        return decimal_str(self.lo, sig), decimal_str(self.hi, sig)

    def __float__(self) -> float:
        return float(self.mid)


@dataclass(frozen=True)
class Box:
    """Axis-aligned complex rectangle re x im with rational corners."""

    re: RatInterval
    im: RatInterval

    @staticmethod
    def point(re: Rat, im: Rat = 0) -> "Box":
        return Box(RatInterval.point(re), RatInterval.point(im))

    @staticmethod
    def from_complex(z: complex) -> "Box":
        # Machine floats are exact dyadic rationals, so this loses nothing.
        return Box(RatInterval.point(Fraction(z.real)), RatInterval.point(Fraction(z.imag)))

    def __add__(self, other: "Box") -> "Box":
        return Box(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Box") -> "Box":
        return Box(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Box":
        return Box(-self.re, -self.im)

    def __mul__(self, other: "Box") -> "Box":
        return Box(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def mag2(self) -> RatInterval:
        return self.re.square() + self.im.square()

    def is_exact(self) -> bool:
        return self.re.width == 0 and self.im.width == 0

    def is_real_line(self) -> bool:
        return self.im.lo == 0 and self.im.hi == 0

    def center(self) -> tuple[Fraction, Fraction]:
        return self.re.mid, self.im.mid

    def __complex__(self) -> complex:
        return complex(float(self.re.mid), float(self.im.mid))

    def decimal_pair(self, sig: int = 20) -> tuple[str, str]:
        return self.re.decimal(sig), self.im.decimal(sig)
