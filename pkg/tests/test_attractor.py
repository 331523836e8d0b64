"""Attractor connectivity, counting region and raster output."""

from fractions import Fraction

import pytest

from spectra.attractor import (
    analyze,
    attractor_to_json,
    connectivity,
    interior_criterion,
    partial_sums,
    rasterize,
    zn_lower_bound,
)
from spectra.errors import NotApplicable, UsageError
from spectra.intervals import Box
from spectra.polyalg import IntPolynomial
from spectra.roots import all_roots, select_root


def test_small_real_lambda_disconnected():
    res = connectivity(Fraction(2, 5))
    assert res.verdict == "disconnected"
    assert res.gap_lower is not None and res.gap_lower > 0


def test_large_real_lambda_connected():
    res = connectivity(Fraction(7, 10))
    assert res.verdict == "connected"
    assert res.witness is not None and res.witness[0] == 1


def test_real_boundary_half_connected():
    res = connectivity(Fraction(1, 2))
    assert res.verdict == "connected"


def test_complex_lambda_disconnected():
    res = connectivity(Box.point(Fraction(11, 20), Fraction(7, 20)), depth=16)
    assert res.verdict == "disconnected"
    assert res.gap_lower is not None and res.gap_lower > 0


def test_connectivity_rejects_expanding_parameter():
    with pytest.raises(UsageError):
        connectivity(Fraction(3, 2))


def test_interior_criterion_box():
    # |Re| <= |lambda|^2 - 1/2 with |lambda| < 1: a point safely inside
    assert interior_criterion(Box.point(Fraction(1, 50), Fraction(3, 4)))
    # real points can never satisfy it
    assert not interior_criterion(Fraction(3, 4))
    # modulus too small: fails the annulus condition
    assert not interior_criterion(Box.point(Fraction(1, 50), Fraction(1, 2)))


def test_zn_lower_bound_interior_growth():
    lam = Box.point(Fraction(1, 50), Fraction(3, 4))
    b4 = zn_lower_bound(lam, 4)
    b8 = zn_lower_bound(lam, 8)
    assert b8.lo > b4.lo > 1


def test_zn_lower_bound_annulus_clause():
    # real 0.7: not interior, but 1/2 < |lambda| < 1 gives |lambda|^-(n+1)
    b = zn_lower_bound(Fraction(7, 10), 5)
    expected = Fraction(10, 7) ** 6
    assert b.lo <= expected <= b.hi


def test_zn_lower_bound_not_applicable():
    with pytest.raises(NotApplicable):
        zn_lower_bound(Fraction(1, 3), 5)


def test_partial_sums_count():
    pts = partial_sums(Fraction(2, 5), 4, (0, 1))
    assert len(pts) == 2**5


def test_analyze_and_json_schema():
    a = analyze(Fraction(2, 5), depth=12)
    payload = attractor_to_json(a)
    assert payload["schema_version"] == 1
    assert payload["connectivity"]["verdict"] == "disconnected"
    assert isinstance(payload["lambda"]["re"], str)


def test_rasterize_header_and_determinism():
    img1 = rasterize(Fraction(2, 5), depth=12, pixels=32)
    img2 = rasterize(Fraction(2, 5), depth=12, pixels=32)
    assert img1 == img2
    assert img1.startswith(b"P5\n32 32\n255\n")
    assert len(img1) == len(b"P5\n32 32\n255\n") + 32 * 32


def test_rasterize_validates_pixels():
    with pytest.raises(UsageError):
        rasterize(Fraction(2, 5), pixels=8)


def test_conjugate_as_algebraic_parameter(quartic_ap):
    # feeding an exact algebraic conjugate exercises the refinable adapter
    conj = [
        b for b in all_roots(quartic_ap) if b.root.is_real and b.root.center_re < 0
    ][0]
    assert not interior_criterion(conj)
    b = zn_lower_bound(conj, 6)
    assert b.lo > 1
