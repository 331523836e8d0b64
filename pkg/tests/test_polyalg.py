"""Integer polynomial layer: parsing, transforms and certificates."""

import random
from fractions import Fraction

import pytest
import sympy

from spectra.errors import UsageError
from spectra.polyalg import (
    IntPolynomial,
    certify_irreducible,
    count_real_roots,
    detect_power_structure,
    divexact,
    divides,
    graeffe,
    negation_conjugate_test,
    pair_product_polynomial,
    pair_sum_polynomial,
    poly_gcd,
    reverse,
    squarefree_part,
    to_sympy,
)

X = sympy.Symbol("x")


def test_parse_symbolic_and_comma_agree():
    a = IntPolynomial.parse("x^4 - x - 1")
    b = IntPolynomial.parse("-1,-1,0,0,1")
    assert a == b
    assert a.coeffs == (-1, -1, 0, 0, 1)
    assert a.degree == 4


def test_parse_accepts_unicode_minus():
    a = IntPolynomial.parse("x^2 − x − 1")
    assert a == IntPolynomial.parse("x^2 - x - 1")


@pytest.mark.parametrize(
    "text",
    ["x^2 - x - 1", "x^4 - x - 1", "-x^3 + 2x - 7", "5", "x", "3x^5 + x^2"],
)
def test_to_text_round_trip(text):
    p = IntPolynomial.parse(text)
    assert IntPolynomial.parse(p.to_text()) == p


def test_parse_rejects_garbage():
    for bad in ["", "x^-2", "x + y", "1/2 x", "x**2 $"]:
        with pytest.raises(UsageError):
            IntPolynomial.parse(bad)


def test_eval_exact_fraction(golden):
    assert golden(Fraction(3, 2)) == Fraction(-1, 4)
    assert golden(2) == 1


def test_height_one_flag(golden, quartic_ap):
    assert golden.is_height_one()
    assert quartic_ap.is_height_one()
    assert not IntPolynomial.parse("x^2 - 2x - 1").is_height_one()


def test_arithmetic_matches_sympy(golden, quartic_ap):
    prod = golden * quartic_ap
    sym = sympy.Poly(to_sympy(golden).as_expr() * to_sympy(quartic_ap).as_expr(), X)
    assert to_sympy(prod) == sym
    assert (golden + quartic_ap)(7) == golden(7) + quartic_ap(7)
    assert (golden - quartic_ap)(7) == golden(7) - quartic_ap(7)


def test_primitive_and_content():
    p = IntPolynomial.from_coeffs((6, -9, 12))
    assert p.content() == 3
    assert p.primitive().coeffs == (2, -3, 4)


def test_divides_and_divexact(golden, quartic_ap):
    prod = golden * quartic_ap
    assert divides(golden, prod)
    assert divexact(prod, golden) == quartic_ap
    assert not divides(golden, quartic_ap)


def test_graeffe_squares_roots(golden):
    g = graeffe(golden)
    for r in sympy.Poly(X**2 - X - 1, X).all_roots():
        assert sympy.simplify(to_sympy(g).as_expr().subs(X, r**2)) == 0


def test_graeffe_on_quartic(quartic_ap):
    g = graeffe(quartic_ap)
    assert g.degree == 4
    roots = sympy.Poly(to_sympy(quartic_ap)).all_roots()
    gx = to_sympy(g).as_expr()
    for r in roots:
        assert abs(sympy.N(gx.subs(X, r**2), 40)) < sympy.Float(10) ** -25


def test_reverse_inverts_roots(quartic_ap):
    rev = reverse(quartic_ap)
    assert rev.degree == 4
    rx = to_sympy(rev).as_expr()
    for r in sympy.Poly(to_sympy(quartic_ap)).all_roots():
        assert abs(sympy.N(rx.subs(X, 1 / r), 40)) < sympy.Float(10) ** -25


def test_squarefree_part_drops_multiplicity(golden):
    p = golden * golden * IntPolynomial.parse("x - 2")
    sf = squarefree_part(p)
    assert divides(golden, sf)
    assert divides(IntPolynomial.parse("x - 2"), sf)
    assert sf.degree == 3


def test_poly_gcd(golden, quartic_ap):
    a = golden * quartic_ap
    b = golden * IntPolynomial.parse("x^2 - 2")
    g = poly_gcd(a, b)
    assert g == golden or g == -golden


@pytest.mark.parametrize(
    "text,total,positive",
    [
        ("x^2 - x - 1", 2, 1),
        ("x^4 - x - 1", 2, 1),
        ("x^2 + 1", 0, 0),
        ("x^3 - 2", 1, 1),
        ("x^4 - x^2 - 1", 2, 1),
    ],
)
def test_count_real_roots(text, total, positive):
    p = IntPolynomial.parse(text)
    assert count_real_roots(p) == total
    assert count_real_roots(p, Fraction(0), Fraction(10)) == positive


def test_certify_irreducible_true(quartic_ap):
    ok, notes = certify_irreducible(quartic_ap)
    assert ok


def test_certify_irreducible_false(golden):
    prod = golden * IntPolynomial.parse("x^2 - 2")
    ok, notes = certify_irreducible(prod)
    assert not ok


def test_negation_conjugate_detection(sqrt_golden, quartic_ap):
    assert negation_conjugate_test(sqrt_golden)
    assert not negation_conjugate_test(quartic_ap)
    assert negation_conjugate_test(IntPolynomial.parse("x^2 - 2"))


def test_detect_power_structure(sqrt_golden, golden):
    m, g = detect_power_structure(sqrt_golden)
    assert m == 2
    assert g == golden or g.coeffs == (-1, -1, 1)
    m2, g2 = detect_power_structure(golden)
    assert m2 == 1


def test_pair_product_polynomial_roots(golden):
    # roots of golden: phi and psi; the product polynomial vanishes at phi*psi = -1
    pp = pair_product_polynomial(golden)
    assert pp(-1) == 0


def test_pair_product_on_cubic():
    p = IntPolynomial.parse("x^3 - x - 1")
    pp = pair_product_polynomial(p)
    roots = sympy.Poly(to_sympy(p)).all_roots()
    expr = to_sympy(pp).as_expr()
    for i in range(3):
        for j in range(i + 1, 3):
            v = sympy.N(expr.subs(X, roots[i] * roots[j]), 40)
            assert abs(v) < sympy.Float(10) ** -25


def test_pair_sum_on_cubic():
    p = IntPolynomial.parse("x^3 - x - 1")
    ps = pair_sum_polynomial(p)
    roots = sympy.Poly(to_sympy(p)).all_roots()
    expr = to_sympy(ps).as_expr()
    for i in range(3):
        for j in range(i + 1, 3):
            v = sympy.N(expr.subs(X, roots[i] + roots[j]), 40)
            assert abs(v) < sympy.Float(10) ** -25


def test_scale_arg_neg(quartic_ap):
    neg = quartic_ap.scale_arg_neg()
    assert neg(Fraction(5)) == quartic_ap(Fraction(-5))


def test_strip_power_of_x():
    p = IntPolynomial.parse("x^5 - x^3")
    core, k = p.strip_power_of_x()
    assert k == 3
    assert core == IntPolynomial.parse("x^2 - 1")


def test_random_mul_eval_consistency():
    rng = random.Random(11)
    for _ in range(25):
        a = IntPolynomial.from_coeffs([rng.randint(-4, 4) for _ in range(rng.randint(1, 6))] + [1])
        b = IntPolynomial.from_coeffs([rng.randint(-4, 4) for _ in range(rng.randint(1, 6))] + [1])
        t = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        assert (a * b)(t) == a(t) * b(t)
