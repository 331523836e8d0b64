"""Certified root isolation and refinement against sympy's solvers."""

from fractions import Fraction

import pytest
import sympy

from spectra.errors import PrecisionExhausted, UsageError
from spectra.polyalg import IntPolynomial, to_sympy
from spectra.roots import all_roots, select_root

X = sympy.Symbol("x")


@pytest.mark.parametrize(
    "text", ["x^2 - x - 1", "x^4 - x - 1", "x^3 - x - 1", "x^4 - x^3 - x^2 - x + 1"]
)
def test_all_roots_count_matches_degree(text):
    p = IntPolynomial.parse(text)
    boxes = all_roots(p)
    assert len(boxes) == p.degree


def test_boxes_contain_sympy_roots(quartic_ap):
    boxes = all_roots(quartic_ap, eps=Fraction(1, 2**40))
    sroots = sympy.Poly(to_sympy(quartic_ap)).all_roots()
    used = set()
    for r in sroots:
        rv = complex(sympy.N(r, 30))
        hit = None
        for i, b in enumerate(boxes):
            if i in used:
                continue
            box = b.box() if hasattr(b, "box") else b
            if (
                float(box.re.lo) - 1e-9 <= rv.real <= float(box.re.hi) + 1e-9
                and float(box.im.lo) - 1e-9 <= rv.imag <= float(box.im.hi) + 1e-9
            ):
                hit = i
                break
        assert hit is not None, f"no box for root {rv}"
        used.add(hit)


def test_select_root_defaults_to_base_in_interval(golden):
    q = select_root(golden)
    iv = q.interval()
    assert Fraction(1) < iv.lo and iv.hi < Fraction(2)
    phi = sympy.Rational(1, 2) + sympy.sqrt(5) / 2
    lo, hi = sympy.Rational(iv.lo), sympy.Rational(iv.hi)
    assert lo <= phi <= hi


def test_decimal_matches_sympy(quartic_ap):
    q = select_root(quartic_ap)
    printed = q.decimal(12)
    expected = sympy.N(sympy.Poly(to_sympy(quartic_ap)).real_roots()[-1], 14)
    assert abs(float(printed) - float(expected)) < 1e-11


def test_refined_shrinks_and_nests(golden):
    q = select_root(golden)
    wide = q.interval()
    tight = q.refined(Fraction(1, 2**100)).interval()
    # radius <= eps, so the interval is at most 2*eps wide
    assert tight.hi - tight.lo <= Fraction(2, 2**100)
    assert wide.lo <= tight.lo and tight.hi <= wide.hi


def test_select_root_no_candidate_raises():
    with pytest.raises(UsageError):
        select_root(IntPolynomial.parse("x^2 - 9"))


def test_select_root_by_index(quartic_ap):
    roots = [select_root(quartic_ap, index=i) for i in range(4)]
    # index order is deterministic, all four distinct as boxes
    centers = {(r.root.center_re, r.root.center_im) for r in roots}
    assert len(centers) == 4


def test_precision_budget_exhaustion(golden):
    q = select_root(golden)
    with pytest.raises(PrecisionExhausted):
        q.refined(Fraction(1, 2 ** (2 * 4096)))
