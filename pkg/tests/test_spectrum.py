"""Spectrum enumeration, gap statistics and the smallest positive element."""

import io
from fractions import Fraction

import pytest

from conftest import brute_count, reduce_digits
from spectra.counting import count_distinct
from spectra.errors import EmptyTail, UsageError
from spectra.polyalg import IntPolynomial
from spectra.roots import select_root
from spectra.spectrum import (
    LAMBDA_DIGITS,
    PM_DIGITS,
    Y_DIGITS,
    DigitSet,
    enumerate_spectrum,
    gap_stats,
    gap_stats_to_json,
    pigeonhole_check,
    smallest_positive_lambda,
    spectrum_to_csv,
)


def test_digitset_labels():
    assert Y_DIGITS.label == "0,1"
    assert LAMBDA_DIGITS.label == "-1,0,1"
    assert PM_DIGITS.label == "-1,1"
    assert DigitSet.of((1, 0)).digits == (0, 1)


def test_count_matches_counting_module(golden):
    q = select_root(golden)
    for n in (3, 5, 8):
        r = enumerate_spectrum(golden, q, n, Y_DIGITS)
        assert r.count == count_distinct(golden, n)


def test_values_sorted_and_separated(quartic_ap):
    q = select_root(quartic_ap)
    r = enumerate_spectrum(quartic_ap, q, 6, Y_DIGITS)
    assert r.count == brute_count(quartic_ap, 6)
    prev_hi = None
    for i in range(r.count):
        iv = r.value_interval(i)
        if prev_hi is not None:
            assert iv.lo > prev_hi
        prev_hi = iv.hi


def test_lambda_spectrum_is_symmetric(golden):
    q = select_root(golden)
    r = enumerate_spectrum(golden, q, 5, LAMBDA_DIGITS)
    # symmetric digit set: row residues come in exact +/- pairs
    rows = {r.row(i) for i in range(r.count)}
    for row in rows:
        assert tuple(-c for c in row) in rows


def test_min_gap_equals_smallest_positive_lambda(golden, quartic_ap, salem4):
    for f, n in ((golden, 9), (quartic_ap, 9), (salem4, 8)):
        q = select_root(f)
        r = enumerate_spectrum(f, q, n, Y_DIGITS)
        mg_iv, idx = r.min_gap()
        lam = smallest_positive_lambda(f, q, n)
        gap_res = reduce_digits(f, r.row(idx + 1))
        gap_prev = reduce_digits(f, r.row(idx))
        diff = tuple(a - b for a, b in zip(gap_res, gap_prev))
        lam_res = tuple(Fraction(c) for c in lam.residue)
        assert diff == lam_res[: len(diff)] or diff == lam_res


def test_pigeonhole_bound_certified(golden, salem4):
    for f in (golden, salem4):
        q = select_root(f)
        r = enumerate_spectrum(f, q, 8, Y_DIGITS)
        assert pigeonhole_check(r)


def test_gap_stats_prefix_only(golden):
    q = select_root(golden)
    r = enumerate_spectrum(golden, q, 9, Y_DIGITS)
    gs = gap_stats(r)
    assert gs.min_gap.lo > 0
    assert gs.tail_min_gap.lo >= gs.min_gap.lo
    assert gs.max_gap_tail.hi >= gs.tail_min_gap.lo
    assert gs.tail_start >= 0
    payload = gap_stats_to_json(gs)
    assert payload["schema_version"] == 1
    assert isinstance(payload["min_gap"]["decimal"], str)


def test_gap_stats_empty_for_symmetric_digits(golden):
    q = select_root(golden)
    r = enumerate_spectrum(golden, q, 5, LAMBDA_DIGITS)
    with pytest.raises(EmptyTail):
        gap_stats(r)


def test_smallest_positive_lambda_golden_constant(golden):
    q = select_root(golden)
    values = [smallest_positive_lambda(golden, q, n) for n in (5, 8, 11)]
    # 1/phi = phi - 1 stays the floor for every window length
    for res in values:
        assert res.residue == (Fraction(-1), Fraction(1))
        assert abs(float(res.value.decimal(15)) - 0.6180339887498949) < 1e-12


def test_smallest_positive_lambda_finds_relations(golden):
    q = select_root(golden)
    res = smallest_positive_lambda(golden, q, 6)
    # phi^2 = phi + 1 forces vanishing combinations inside the window
    assert res.relations_found > 0
    assert all(len(w) == 7 for w in res.relation_witnesses)


def test_smallest_positive_lambda_witness_evaluates(quartic_ap):
    q = select_root(quartic_ap)
    res = smallest_positive_lambda(quartic_ap, q, 7)
    assert len(res.witness) == 8
    resid = reduce_digits(quartic_ap, res.witness)
    assert tuple(resid) == tuple(res.residue)


def test_spectrum_csv_shape(golden):
    q = select_root(golden)
    r = enumerate_spectrum(golden, q, 4, Y_DIGITS)
    buf = io.StringIO()
    spectrum_to_csv(r, buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "index,value_decimal,gap_to_next"
    assert len(lines) == r.count + 1
    assert lines[1].startswith("0,0,")
    # last row has no following gap
    assert lines[-1].endswith(",")


def test_enumerate_validates_input(golden):
    q = select_root(golden)
    with pytest.raises(UsageError):
        enumerate_spectrum(golden, q, -1, Y_DIGITS)
