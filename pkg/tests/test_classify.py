"""Modulus classification flags with exact tie handling."""

from fractions import Fraction

import pytest

from spectra.classify import classify, modulus_equals_q, modulus_product_is_one
from spectra.errors import UsageError
from spectra.polyalg import IntPolynomial
from spectra.roots import all_roots, select_root


def _setup(text):
    f = IntPolynomial.parse(text)
    q = select_root(f)
    return f, q


def test_golden_ratio_is_pisot(golden):
    q = select_root(golden)
    nc = classify(golden, q)
    assert nc.is_pisot
    assert nc.is_perron
    assert not nc.is_salem
    assert not nc.is_anti_pisot
    assert nc.monic
    assert nc.minimality_verified
    assert (nc.conjugates_inside, nc.conjugates_on_circle, nc.conjugates_outside) == (1, 0, 0)


def test_quartic_perron_anti_pisot(quartic_ap):
    q = select_root(quartic_ap)
    nc = classify(quartic_ap, q)
    assert nc.is_perron
    assert not nc.is_pisot
    assert nc.is_anti_pisot
    assert (nc.conjugates_inside, nc.conjugates_outside) == (1, 2)


def test_salem_quartic(salem4):
    q = select_root(salem4)
    nc = classify(salem4, q)
    assert nc.is_salem
    assert not nc.is_pisot
    assert not nc.is_anti_pisot
    assert nc.conjugates_on_circle == 2
    # the remaining conjugate is 1/q, an exact reciprocal tie inside the disc
    assert nc.conjugates_inside == 1


def test_unit_product_base_is_not_perron():
    f, q = _setup("1,0,0,-1,0,0,-1,0,0,-1,0,0,1")
    nc = classify(f, q)
    assert nc.monic
    assert not nc.is_perron
    assert nc.conjugates_on_circle > 0


def test_sqrt_golden_not_perron(sqrt_golden):
    q = select_root(sqrt_golden)
    nc = classify(sqrt_golden, q)
    # -q is a conjugate: an exact modulus tie defeats the Perron property
    assert not nc.is_perron
    assert not nc.is_pisot


def test_non_monic_never_pisot_or_perron():
    f, q = _setup("2x^2 - 2x - 3")
    nc = classify(f, q)
    assert not nc.monic
    assert not nc.is_perron
    assert not nc.is_pisot


def test_reducible_squarefree_input_flagged():
    f = IntPolynomial.parse("x^2 - x - 1") * IntPolynomial.parse("x^2 - 2")
    q = select_root(f, eps=Fraction(1, 2**30), index=None)
    nc = classify(f, q)
    assert not nc.minimality_verified


def test_classify_rejects_root_outside_window(golden):
    small = select_root(IntPolynomial.parse("x^2 - 9"), index=1)
    with pytest.raises(UsageError):
        classify(golden, small)


def test_modulus_equals_q_exact_tie(sqrt_golden):
    q = select_root(sqrt_golden)
    conj = [b for b in all_roots(sqrt_golden) if b.root.is_real and b.root.center_re < 0]
    assert len(conj) == 1
    assert modulus_equals_q(sqrt_golden, conj[0], q)


def test_modulus_product_one_golden(golden):
    q = select_root(golden)
    other = [b for b in all_roots(golden) if b.root.center_re < 0]
    assert len(other) == 1
    # phi * |psi| = phi * (phi - 1) = 1 exactly
    assert modulus_product_is_one(golden, other[0], q)


def test_modulus_product_not_one(quartic_ap):
    q = select_root(quartic_ap)
    real_neg = [b for b in all_roots(quartic_ap) if b.root.is_real and b.root.center_re < 0]
    assert len(real_neg) == 1
    assert not modulus_product_is_one(quartic_ap, real_neg[0], q)


def test_margins_reported_for_true_flags(golden):
    q = select_root(golden)
    nc = classify(golden, q)
    assert "pisot" in nc.margins
    assert "perron" in nc.margins
