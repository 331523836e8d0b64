"""Shared polynomials and exact brute-force oracles for the test suite."""

from fractions import Fraction
from itertools import product

import pytest

from spectra.polyalg import IntPolynomial


@pytest.fixture
def golden():
    return IntPolynomial.parse("x^2 - x - 1")


@pytest.fixture
def quartic_ap():
    return IntPolynomial.parse("x^4 - x - 1")


@pytest.fixture
def salem4():
    return IntPolynomial.parse("x^4 - x^3 - x^2 - x + 1")


@pytest.fixture
def sqrt_golden():
    return IntPolynomial.parse("x^4 - x^2 - 1")


def reduce_digits(f: IntPolynomial, digits) -> tuple:
    """Exact coordinates of sum digits[k] * x^k in Q[x]/(f), low to high."""
    d = f.degree
    lead = Fraction(f.coeffs[-1])
    # x^d = -(f - lead x^d)/lead, extended to a power table up to the input length.
    pows = [[Fraction(0)] * d for _ in range(len(digits))]
    for k in range(min(d, len(digits))):
        pows[k][k] = Fraction(1)
    for k in range(d, len(digits)):
        prev = pows[k - 1]
        shifted = [Fraction(0)] + prev[:-1]
        carry = prev[-1]
        top = [Fraction(-c) / lead * carry for c in f.coeffs[:-1]]
        pows[k] = [shifted[i] + top[i] for i in range(d)]
    out = [Fraction(0)] * d
    for a, p in zip(digits, pows):
        if a:
            for i in range(d):
                out[i] += a * p[i]
    return tuple(out)


def brute_count(f: IntPolynomial, n: int, digitset=(0, 1)) -> int:
    """Number of distinct sums over digit strings of length n+1, exact."""
    seen = set()
    for digits in product(digitset, repeat=n + 1):
        seen.add(reduce_digits(f, digits))
    return len(seen)
