"""Spectra of power sums with constrained digits.

Y_n(q) = {sum a_k q^k : a_k in a digit set} is enumerated exactly in the
quotient ring Q[x]/(f), deduplicated at residue level, and sorted with
certified separations.  Gap statistics over the finalized prefix track the
liminf/limsup of consecutive differences, and a meet-in-the-middle sweep
finds the smallest positive element of Lambda_n(q) with an explicit digit
witness.  Floating point is used only to schedule exact work: every
reported inequality is backed by a rational enclosure or an exact residue
identity.
"""

from __future__ import annotations

import csv
import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .counting import DEFAULT_ROW_CAP, _INT64_SAFE, _monic_int_coeffs, _power_residues_int
from .errors import (
    EmptyTail,
    InvariantViolation,
    PrecisionExhausted,
    UsageError,
    WorkCapExceeded,
)
from .intervals import RatInterval
from .polyalg import (
    IntPolynomial,
    ResidueVector,
    certify_irreducible,
    count_real_roots,
    divides,
    poly_gcd,
)
from .roots import DEFAULT_BUDGET_BITS, AlgebraicNumber

__all__ = [
    "DigitSet",
    "Y_DIGITS",
    "LAMBDA_DIGITS",
    "PM_DIGITS",
    "SpectrumReport",
    "GapStats",
    "LambdaMinResult",
    "enumerate_spectrum",
    "finalized_bound",
    "gap_stats",
    "smallest_positive_lambda",
    "pigeonhole_check",
    "spectrum_to_csv",
    "gap_stats_to_json",
]

DEFAULT_TAIL_FRACTION = Fraction(1, 2)
_SMALL_BRUTE_CAP = 2 * 10**6
_CANDIDATE_CAP = 2 * 10**6


@dataclass(frozen=True)
class DigitSet:
    """Sorted distinct integer digits for the power sums."""

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.digits:
            raise UsageError("digit set must be nonempty")
        canon = tuple(sorted(set(int(d) for d in self.digits)))
        object.__setattr__(self, "digits", canon)

    @staticmethod
    def of(values: Iterable[int]) -> "DigitSet":
        return DigitSet(tuple(values))

    @property
    def label(self) -> str:
        return ",".join(str(d) for d in self.digits)

    @property
    def nonnegative(self) -> bool:
        return self.digits[0] >= 0


Y_DIGITS = DigitSet((0, 1))
LAMBDA_DIGITS = DigitSet((-1, 0, 1))
PM_DIGITS = DigitSet((-1, 1))


def _scaled_power_rows(f: IntPolynomial, upto: int) -> tuple[list[tuple[int, ...]], int]:
    """Integer coordinate rows of den * (x^k mod f) for k = 0..upto.

    The common denominator den is 1 whenever f is monic up to sign.
    """
    a = _monic_int_coeffs(f)
    if a is not None:
        return [tuple(r) for r in _power_residues_int(a, upto)], 1
    d = f.degree
    lead = f.leading
    rows_fr: list[tuple[Fraction, ...]] = [
        tuple([Fraction(1)] + [Fraction(0)] * (d - 1))
    ]
    for _ in range(upto):
        prev = rows_fr[-1]
        top = prev[d - 1]
        nxt = [Fraction(0)] * d
        for i in range(1, d):
            nxt[i] = prev[i - 1]
        if top:
            for i in range(d):
                nxt[i] -= top * Fraction(f.coeffs[i], lead)
        rows_fr.append(tuple(nxt))
    den = 1
    for row in rows_fr:
        for c in row:
            den = den * c.denominator // math.gcd(den, c.denominator)
    rows = [tuple(int(c * den) for c in row) for row in rows_fr]
    return rows, den


def _floor_scaled(x: Fraction, scale: int) -> int:
    return (x.numerator * scale) // x.denominator


def _ceil_scaled(x: Fraction, scale: int) -> int:
    return -((-x.numerator * scale) // x.denominator)


class _PowerEnclosures:
    """Dyadic enclosures of q^0..q^m shared by the certification routines."""

    def __init__(self, q: AlgebraicNumber, m: int, bits: int) -> None:
        self.bits = bits
        self.q = q.refined(Fraction(1, 1 << bits))
        iv = self.q.interval()
        pows = [RatInterval.point(Fraction(1))]
        for _ in range(m):
            pows.append(pows[-1] * iv)
        self.pows = pows
        self.shift = bits + 16
        scale = 1 << self.shift
        self.lo = [_floor_scaled(p.lo, scale) for p in pows]
        self.hi = [_ceil_scaled(p.hi, scale) for p in pows]
        mids = [float(p.mid) for p in pows]
        self.mid_f = np.array(mids, dtype=np.float64)
        self.halfwidth_f = np.array(
            [
                float(p.width) * 0.5000000001 + abs(mf) * 2.0**-50 + 1e-300
                for p, mf in zip(pows, mids)
            ],
            dtype=np.float64,
        )

    def dot_bounds(self, coeffs: Sequence[int]) -> tuple[int, int]:
        lo = 0
        hi = 0
        for c, a, b in zip(coeffs, self.lo, self.hi):
            if c > 0:
                lo += c * a
                hi += c * b
            elif c < 0:
                lo += c * b
                hi += c * a
        return lo, hi

    def dot_interval(self, coeffs: Sequence[int], den: int = 1) -> RatInterval:
        lo, hi = self.dot_bounds(coeffs)
        scale = den << self.shift
        return RatInterval(Fraction(lo, scale), Fraction(hi, scale))


class _Precision:
    """Refinement ladder shared by all exact decisions for one (f, q) run."""

    def __init__(self, q: AlgebraicNumber, m: int, bits: int, budget_bits: int) -> None:
        self.budget_bits = budget_bits
        self.m = m
        self.pe = _PowerEnclosures(q, m, min(bits, budget_bits))

    def ensure(self, bits: int) -> None:
        if bits <= self.pe.bits:
            return
        if bits > self.budget_bits:
            raise PrecisionExhausted(
                f"needed {bits} bits for spectrum separation, budget {self.budget_bits}"
            )
        self.pe = _PowerEnclosures(self.pe.q, self.m, bits)

    def escalate(self) -> None:
        self.ensure(self.pe.bits * 2)


def _value_vanishes_at_q(coeffs: Sequence[int], f: IntPolynomial, q: AlgebraicNumber) -> bool:
    """Exact test of sum(coeffs_i q^i) = 0; only reducible f can say yes."""
    p = IntPolynomial.from_coeffs(list(coeffs))
    if p.is_zero:
        return True
    g = poly_gcd(f, p)
    if g.degree < 1:
        return False
    iv = q.interval()
    # q's box isolates it from every other root of f, so a root of g | f
    # inside the interval can only be q itself.
    return count_real_roots(g, iv.lo, iv.hi) >= 1


class _ValueComparer:
    """Certified signs and enclosures of residue values at q."""

    def __init__(
        self,
        f: IntPolynomial,
        q: AlgebraicNumber,
        prec: _Precision,
        den: int,
        minimality: bool,
    ) -> None:
        self.f = f
        self.q = q
        self.prec = prec
        self.den = den
        self.minimality = minimality

    def interval_of(self, coeffs: Sequence[int]) -> RatInterval:
        return self.prec.pe.dot_interval(coeffs, self.den)

    def sign_of(self, coeffs: Sequence[int]) -> int:
        """Sign of sum(coeffs_i q^i)/den; zero only for exact vanishing."""
        if not any(coeffs):
            return 0
        zero_ruled_out = self.minimality
        while True:
            iv = self.interval_of(coeffs)
            if iv.strictly_positive():
                return 1
            if iv.strictly_negative():
                return -1
            if not zero_ruled_out and self.prec.pe.bits >= 512:
                if _value_vanishes_at_q(coeffs, self.f, self.q):
                    return 0
                zero_ruled_out = True
            self.prec.escalate()

    def positive_interval(self, coeffs: Sequence[int]) -> RatInterval:
        """Strictly positive enclosure; the caller asserts positivity."""
        s = self.sign_of(coeffs)
        if s <= 0:
            raise InvariantViolation(
                "a gap certified during ordering later evaluated nonpositive"
            )
        while True:
            iv = self.interval_of(coeffs)
            if iv.strictly_positive():
                return iv
            self.prec.escalate()


def _require_root_of(f: IntPolynomial, q: AlgebraicNumber) -> None:
    if not q.is_real:
        raise UsageError("q must be a real root")
    if not divides(q.factor, f):
        raise UsageError("q is not a root of the supplied polynomial")


def _require_greater_one(q: AlgebraicNumber) -> AlgebraicNumber:
    cur = q
    for _ in range(64):
        iv = cur.interval()
        if iv.strictly_greater(Fraction(1)):
            return cur
        if iv.hi < 1 or (iv.contains(Fraction(1)) and cur.factor(1) == 0):
            raise UsageError("q must exceed 1")
        cur = cur.refined(cur.root.radius / 16)
    raise PrecisionExhausted("could not separate q from 1")


def _row_tuple(mat, rows_py, i: int) -> tuple[int, ...]:
    if rows_py is not None:
        return rows_py[i]
    return tuple(int(v) for v in mat[i])


def _diff_tuple(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(x) - int(y) for x, y in zip(a, b))


@dataclass(eq=False)
class SpectrumReport:
    """Sorted, exactly deduplicated spectrum with certified separations."""

    f: IntPolynomial
    q: AlgebraicNumber
    n: int
    digitset: DigitSet
    count: int
    scale: int
    finalized_upto: Fraction | None
    merged_duplicates: int
    minimality_certified: bool
    notes: tuple[str, ...]
    _mat: np.ndarray | None = field(repr=False, default=None)
    _rows_py: list | None = field(repr=False, default=None)
    _vals: np.ndarray | None = field(repr=False, default=None)
    _errs: np.ndarray | None = field(repr=False, default=None)
    _prec: _Precision | None = field(repr=False, default=None)
    _cmp: _ValueComparer | None = field(repr=False, default=None)
    _exact_gaps: dict = field(repr=False, default_factory=dict)
    _values_cache: list | None = field(repr=False, default=None)

    @property
    def q_box(self):
        return self.q.root

    def row(self, i: int) -> tuple[int, ...]:
        """Scaled integer residue coordinates of the i-th value."""
        if i < 0 or i >= self.count:
            raise UsageError(f"value index {i} out of range")
        return _row_tuple(self._mat, self._rows_py, i)

    def residue(self, i: int) -> ResidueVector:
        return ResidueVector(
            self.f, tuple(Fraction(c, self.scale) for c in self.row(i))
        )

    def value_interval(self, i: int) -> RatInterval:
        if i < 0 or i >= self.count:
            raise UsageError(f"value index {i} out of range")
        return self._cmp.interval_of(self.row(i))

    @property
    def values(self) -> list[tuple[ResidueVector, str]]:
        """Ascending (residue, 20-digit decimal) pairs; built lazily."""
        if self._values_cache is None:
            self._values_cache = [
                (self.residue(i), self.value_interval(i).decimal(20))
                for i in range(self.count)
            ]
        return self._values_cache

    def gap_interval(self, i: int) -> RatInterval:
        """Certified positive enclosure of values[i+1] - values[i]."""
        if i < 0 or i >= self.count - 1:
            raise UsageError(f"gap index {i} out of range")
        cached = self._exact_gaps.get(i)
        if cached is not None and cached.strictly_positive():
            return cached
        diff = _diff_tuple(self.row(i + 1), self.row(i))
        iv = self._cmp.interval_of(diff)
        if not iv.strictly_positive():
            iv = self._cmp.positive_interval(diff)
        self._exact_gaps[i] = iv
        return iv

    def gap_residue(self, i: int) -> ResidueVector:
        diff = _diff_tuple(self.row(i + 1), self.row(i))
        return ResidueVector(self.f, tuple(Fraction(c, self.scale) for c in diff))

    @property
    def gaps(self) -> list[RatInterval]:
        return [self.gap_interval(i) for i in range(self.count - 1)]

    def _gap_float_bands(self) -> tuple[np.ndarray, np.ndarray]:
        dv = self._vals[1:] - self._vals[:-1]
        band = self._errs[1:] + self._errs[:-1]
        return dv, band

    def _extreme_gap(self, start: int, stop: int, mode: str) -> tuple[RatInterval, int]:
        """Certified (enclosure, first index) of the min or max gap in a range."""
        if stop - start < 1:
            raise EmptyTail("gap range is empty")
        dv, band = self._gap_float_bands()
        dv = dv[start:stop]
        band = band[start:stop]
        if mode == "min":
            pivot = float(np.min(dv + band))
            cand = np.flatnonzero(dv - band <= pivot)
        else:
            pivot = float(np.max(dv - band))
            cand = np.flatnonzero(dv + band >= pivot)
        # Group candidates by exact difference row: identical residues are
        # identical gap values, so only one exact comparison per group.
        groups: dict[tuple[int, ...], int] = {}
        for off in cand:
            i = start + int(off)
            key = _diff_tuple(self.row(i + 1), self.row(i))
            if key not in groups or i < groups[key]:
                groups[key] = i
        reps = sorted(groups.items(), key=lambda kv: kv[1])
        while True:
            ivs = [(self._cmp.interval_of(k), k, idx) for k, idx in reps]
            if mode == "min":
                best = min(ivs, key=lambda t: (t[0].hi, t[2]))
                others_clear = all(
                    t is best or t[0].lo >= best[0].hi for t in ivs
                )
            else:
                best = max(ivs, key=lambda t: (t[0].lo, -t[2]))
                others_clear = all(
                    t is best or t[0].hi <= best[0].lo for t in ivs
                )
            if others_clear:
                iv = best[0]
                if not iv.strictly_positive():
                    iv = self._cmp.positive_interval(best[1])
                return iv, best[2]
            # Merge exact ties (possible only for equal values) and escalate.
            merged: list[tuple[tuple[int, ...], int]] = []
            for key, idx in reps:
                dup = None
                for mkey, midx in merged:
                    if self._cmp.sign_of(_diff_tuple(key, mkey)) == 0:
                        dup = (mkey, midx)
                        break
                if dup is None:
                    merged.append((key, idx))
                else:
                    merged.remove(dup)
                    merged.append((dup[0], min(dup[1], idx)))
            merged.sort(key=lambda kv: kv[1])
            if len(merged) == 1:
                key, idx = merged[0]
                return self._cmp.positive_interval(key), idx
            reps = merged
            self._prec.escalate()

    def min_gap(self) -> tuple[RatInterval, int]:
        """Certified minimum gap over the whole enumerated set."""
        if self.count < 2:
            raise EmptyTail("spectrum has fewer than two values")
        return self._extreme_gap(0, self.count - 1, "min")

    def prefix_count(self) -> int:
        """Number of leading values certified strictly below finalized_upto."""
        if self.finalized_upto is None:
            return 0
        bound = self.finalized_upto
        bf = float(bound)
        margin = 1e-9 * (1.0 + abs(bf))
        lo = int(np.searchsorted(self._vals, bf - margin))
        lo = max(0, lo - 2)
        p = lo
        for i in range(lo, self.count):
            iv = self.value_interval(i)
            while not (iv.hi < bound or iv.lo >= bound):
                if self._value_equals_rational(i, bound):
                    break
                self._prec.escalate()
                iv = self.value_interval(i)
            if iv.hi < bound:
                p = i + 1
            else:
                break
        return p

    def _value_equals_rational(self, i: int, b: Fraction) -> bool:
        """Exact equality of value i against a rational bound."""
        row = self.row(i)
        num = b.numerator * self.scale
        den = b.denominator
        coeffs = [den * c for c in row]
        coeffs[0] -= num
        return _value_vanishes_at_q(coeffs, self.f, self.q)


def enumerate_spectrum(
    f: IntPolynomial,
    q: AlgebraicNumber,
    n: int,
    digits: DigitSet = Y_DIGITS,
    row_cap: int = DEFAULT_ROW_CAP,
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> SpectrumReport:
    """Enumerate {sum a_k q^k : a in digits^(n+1)} with exact dedup.

    Deduplication happens in Q[x]/(f), so equal values with different digit
    strings collapse exactly; the sorted order is certified by rational
    enclosures, falling back to exact residue comparisons for near ties.
    """
    prim = f.primitive()
    if prim.degree < 1:
        raise UsageError("spectrum needs a polynomial of degree >= 1")
    if n < 0:
        raise UsageError("n must be nonnegative")
    _require_root_of(prim, q)
    q = _require_greater_one(q)

    d = prim.degree
    rows, den = _scaled_power_rows(prim, n)
    maxd = max(abs(dd) for dd in digits.digits)
    reach = sum(maxd * max(abs(v) for v in row) for row in rows)
    int64_ok = reach < _INT64_SAFE

    notes: list[str] = []
    mat: np.ndarray | None = None
    rows_py: list | None = None
    if int64_ok:
        cur = np.zeros((1, d), dtype=np.int64)
        for k in range(n + 1):
            rk = np.array(rows[k], dtype=np.int64)
            parts = [cur + dd * rk for dd in digits.digits]
            cur = np.unique(np.vstack(parts), axis=0)
            if cur.shape[0] > row_cap:
                raise WorkCapExceeded(
                    f"spectrum exceeded {row_cap} rows at degree {k}"
                )
        mat = cur
        m = int(mat.shape[0])
    else:
        frontier: set[tuple[int, ...]] = {(0,) * d}
        for k in range(n + 1):
            rk = rows[k]
            frontier = {
                tuple(x + dd * y for x, y in zip(t, rk))
                for t in frontier
                for dd in digits.digits
            }
            if len(frontier) > row_cap:
                raise WorkCapExceeded(
                    f"spectrum exceeded {row_cap} rows at degree {k}"
                )
        rows_py = sorted(frontier)
        m = len(rows_py)
        notes.append("coordinates exceed the fast integer range; exact slow path")

    bits0 = max(192, 128 + 4 * n)
    prec = _Precision(q, max(d - 1, n + 1), bits0, max(budget_bits, bits0))
    minimality = certify_irreducible(prim)[0]
    comparer = _ValueComparer(prim, prec.pe.q, prec, den, minimality)

    if mat is not None:
        A = mat.astype(np.float64)
    else:
        A = np.array(rows_py, dtype=np.float64)
    midv = prec.pe.mid_f[:d]
    hwv = prec.pe.halfwidth_f[:d]
    absA = np.abs(A)
    vals = (A @ midv) / den
    errs = (
        absA @ hwv
        + 4.0 * (d + 2) * 2.0**-52 * (absA @ np.abs(midv))
        + 1e-300
    ) / den * (1.0 + 1e-12)

    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    errs = errs[order]
    if mat is not None:
        mat = mat[order]
    else:
        rows_py = [rows_py[int(i)] for i in order]

    # Resolve runs of float near-ties exactly: sort by certified comparison,
    # merging residues that evaluate to equal values (reducible f only).
    merged = 0
    if m > 1:
        dv = vals[1:] - vals[:-1]
        band = errs[1:] + errs[:-1]
        tight = dv <= band
        if bool(tight.any()):
            pieces: list[np.ndarray] = []
            keep_rows: list = []
            last = 0
            i = 0
            new_index: list[int] = []
            while i < m - 1:
                if not tight[i]:
                    i += 1
                    continue
                j = i + 1
                while j < m - 1 and tight[j]:
                    j += 1
                # run covers sorted positions i..j
                span = list(range(i, j + 1))
                rows_span = [_row_tuple(mat, rows_py, t) for t in span]
                tagged = list(zip(rows_span, span))
                tagged.sort(
                    key=functools.cmp_to_key(
                        lambda a, b: comparer.sign_of(_diff_tuple(a[0], b[0]))
                    )
                )
                dedup: list[tuple[tuple[int, ...], int]] = []
                for rowt, pos in tagged:
                    if dedup and comparer.sign_of(_diff_tuple(rowt, dedup[-1][0])) == 0:
                        merged += 1
                        continue
                    dedup.append((rowt, pos))
                pieces.append(np.arange(last, i))
                pieces.append(np.array([pos for _, pos in dedup], dtype=np.int64))
                last = j + 1
                i = j + 1
            pieces.append(np.arange(last, m))
            final = np.concatenate(pieces)
            vals = vals[final]
            errs = errs[final]
            if mat is not None:
                mat = mat[final]
            else:
                rows_py = [rows_py[int(t)] for t in final]
            m = int(final.shape[0])

    if merged:
        notes.append(
            f"{merged} residue classes evaluate to equal values at q "
            "(input is not the minimal polynomial); merged"
        )

    report = SpectrumReport(
        f=prim,
        q=prec.pe.q,
        n=n,
        digitset=digits,
        count=m,
        scale=den,
        finalized_upto=None,
        merged_duplicates=merged,
        minimality_certified=minimality,
        notes=tuple(notes),
        _mat=mat,
        _rows_py=rows_py,
        _vals=vals,
        _errs=errs,
        _prec=prec,
        _cmp=comparer,
    )

    # Certify every remaining adjacent pair: wide float margins certify
    # directly, near ties get an exact positive enclosure (and must already
    # be distinct after the merge pass).
    if m > 1:
        dv = vals[1:] - vals[:-1]
        band = errs[1:] + errs[:-1]
        for i in np.flatnonzero(dv <= band):
            report.gap_interval(int(i))

    if digits.nonnegative and 0 in digits.digits:
        report.finalized_upto = prec.pe.pows[n + 1].lo
    else:
        report.notes = report.notes + (
            "no finalized prefix: this digit set admits new small elements "
            "at every degree",
        )
    return report


def finalized_bound(f: IntPolynomial, q: AlgebraicNumber, n: int) -> Fraction:
    """Lower enclosure of q^(n+1); values below it are final for {0,1} digits."""
    prim = f.primitive()
    _require_root_of(prim, q)
    q = _require_greater_one(q)
    q = q.refined(Fraction(1, 1 << max(128, 4 * n + 64)))
    return q.interval().power(n + 1).lo


@dataclass(frozen=True)
class GapStats:
    """Gap statistics over the finalized prefix of a spectrum."""

    min_gap: RatInterval
    min_gap_index: int
    tail_min_gap: RatInterval
    max_gap_tail: RatInterval
    record_min_positions: tuple[int, ...]
    tail_fraction: Fraction
    tail_start: int
    prefix_values: int
    notes: tuple[str, ...]


def gap_stats(
    r: SpectrumReport, tail_fraction: Fraction = DEFAULT_TAIL_FRACTION
) -> GapStats:
    """Certified min/max gap statistics over the finalized prefix.

    The tail window is the last tail_fraction of the prefix gaps; liminf and
    limsup claims are never made from finite data, only these enclosures.
    """
    t = Fraction(tail_fraction)
    if not 0 < t < 1:
        raise UsageError("tail_fraction must lie strictly between 0 and 1")
    if r.finalized_upto is None:
        raise EmptyTail("spectrum has no finalized prefix for this digit set")
    p = r.prefix_count()
    if p < 2:
        raise EmptyTail("finalized prefix has fewer than two values")
    g = p - 1
    tail_len = min(g, math.ceil(t * g))
    tail_start = g - tail_len

    min_iv, min_idx = r._extreme_gap(0, g, "min")
    tail_min_iv, _ = r._extreme_gap(tail_start, g, "min")
    max_tail_iv, _ = r._extreme_gap(tail_start, g, "max")

    if min_iv.lo > tail_min_iv.hi or tail_min_iv.lo > max_tail_iv.hi:
        raise InvariantViolation("gap statistics enclosures are inconsistent")

    # Record positions: first strict improvements of the running minimum.
    dv, band = r._gap_float_bands()
    records: list[int] = []
    cur = -1
    for i in range(g):
        if cur < 0:
            records.append(i)
            cur = i
            continue
        lo_i, hi_i = dv[i] - band[i], dv[i] + band[i]
        lo_c, hi_c = dv[cur] - band[cur], dv[cur] + band[cur]
        if hi_i < lo_c:
            s = -1
        elif lo_i > hi_c:
            s = 1
        else:
            s = r._cmp.sign_of(
                _diff_tuple(
                    _diff_tuple(r.row(i + 1), r.row(i)),
                    _diff_tuple(r.row(cur + 1), r.row(cur)),
                )
            )
        if s < 0:
            records.append(i)
            cur = i
    return GapStats(
        min_gap=min_iv,
        min_gap_index=min_idx,
        tail_min_gap=tail_min_iv,
        max_gap_tail=max_tail_iv,
        record_min_positions=tuple(records),
        tail_fraction=t,
        tail_start=tail_start,
        prefix_values=p,
        notes=(
            "tail window fraction is a reporting default, not a derived constant",
        ),
    )


def pigeonhole_check(r: SpectrumReport, budget_bits: int = DEFAULT_BUDGET_BITS) -> bool:
    """Certify min_gap <= (q^(n+1)/(q-1)) / (count-1) on the full spectrum."""
    if r.count < 2:
        return True
    mg_iv, mg_idx = r.min_gap()
    diff = _diff_tuple(r.row(mg_idx + 1), r.row(mg_idx))
    while True:
        pe = r._prec.pe
        bound = (pe.pows[r.n + 1] * (pe.pows[1] - Fraction(1)).inverse()) * Fraction(
            1, r.count - 1
        )
        if mg_iv.hi <= bound.lo:
            return True
        if mg_iv.lo > bound.hi:
            raise InvariantViolation(
                "pigeonhole bound violated: enumeration or certification bug"
            )
        r._prec.escalate()
        mg_iv = r._cmp.interval_of(diff)


@dataclass(frozen=True)
class LambdaMinResult:
    """Smallest positive element of Lambda_n(q) with witness and relations."""

    value: RatInterval
    witness: tuple[int, ...]
    residue: tuple[Fraction, ...]
    n: int
    split: int
    relations_found: int
    relation_witnesses: tuple[tuple[int, ...], ...]
    notes: tuple[str, ...]


def _decode_digits(index: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(index % 3 - 1)
        index //= 3
    return out


def _stack_lambda(rows: list[tuple[int, ...]], lo: int, hi: int) -> np.ndarray:
    """All sums sum_{k in [lo,hi)} a_k rows[k], a_k in {-1,0,1}, index-decodable.

    Row number i encodes digits a_{lo+j} = (i // 3^j) % 3 - 1.
    """
    d = len(rows[0])
    cur = np.zeros((1, d), dtype=np.int64)
    for k in range(lo, hi):
        rk = np.array(rows[k], dtype=np.int64)
        # blocks stack in digit order -1, 0, +1, so the base-3 digit written
        # at local position k-lo is exactly a_k + 1
        cur = np.vstack([cur - rk, cur, cur + rk])
    return cur


def smallest_positive_lambda(
    f: IntPolynomial,
    q: AlgebraicNumber,
    n: int,
    row_cap: int = DEFAULT_ROW_CAP,
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> LambdaMinResult:
    """Minimum of {|v| : v in Lambda_n(q), v != 0} by meet-in-the-middle.

    Lambda_n(q) = Y_n(q) - Y_n(q) is split at position ceil(n/2); one half is
    sorted and the other swept against it.  Exact zeros are excluded from the
    minimum and reported as height-one relations with up to 32 witnesses.
    """
    prim = f.primitive()
    if prim.degree < 1:
        raise UsageError("lambda-min needs a polynomial of degree >= 1")
    if n < 1:
        raise UsageError("lambda-min needs n >= 1")
    _require_root_of(prim, q)
    q = _require_greater_one(q)

    d = prim.degree
    rows, den = _scaled_power_rows(prim, n)
    reach = sum(max(abs(v) for v in row) for row in rows)
    if reach >= _INT64_SAFE:
        if 3 ** (n + 1) > _SMALL_BRUTE_CAP:
            raise WorkCapExceeded(
                "coordinates exceed the fast integer range and the exact "
                "fallback cap of 3^(n+1) vectors"
            )
    split = (n + 1) // 2
    low_size = 3**split
    high_size = 3 ** (n + 1 - split)
    if max(low_size, high_size) * d * 8 > row_cap * 32:
        raise WorkCapExceeded(
            f"meet-in-the-middle halves exceed the row cap at n={n}"
        )

    bits0 = max(192, 128 + 4 * n)
    prec = _Precision(q, max(d - 1, n + 1), bits0, max(budget_bits, bits0))
    minimality = certify_irreducible(prim)[0]
    comparer = _ValueComparer(prim, prec.pe.q, prec, den, minimality)
    notes: list[str] = []
    if not minimality:
        notes.append(
            "input not certified minimal: relation counting is residue-level "
            "plus any zeros met during the sweep"
        )

    cl = _stack_lambda(rows, 0, split)
    ch = _stack_lambda(rows, split, n + 1)

    lu, l_first, l_cnt = np.unique(cl, axis=0, return_index=True, return_counts=True)
    hu, h_first, h_cnt = np.unique(ch, axis=0, return_index=True, return_counts=True)

    # Exact relation counting: residue-level zeros of the combined vector.
    def _void(arr: np.ndarray) -> np.ndarray:
        c = np.ascontiguousarray(arr)
        return c.view([("", c.dtype)] * c.shape[1]).ravel()

    neg_lu = np.ascontiguousarray(-lu)
    common, idx_l, idx_h = np.intersect1d(
        _void(neg_lu), _void(hu), assume_unique=True, return_indices=True
    )
    del common
    pair_count = 0
    relation_witnesses: list[tuple[int, ...]] = []
    for a, b in zip(idx_l, idx_h):
        pair_count += int(l_cnt[a]) * int(h_cnt[b])
        if len(relation_witnesses) < 32:
            wit = tuple(
                _decode_digits(int(l_first[a]), split)
                + _decode_digits(int(h_first[b]), n + 1 - split)
            )
            if any(wit):
                relation_witnesses.append(wit)
    relations_found = pair_count - 1  # drop the all-zero digit vector
    # Relations living entirely inside one half pair with the trivial zero
    # row of the other and are invisible above (the first occurrence of the
    # zero residue may be the all-zero digit string); surface a few.
    zl = [int(v) for v in np.flatnonzero(~cl.any(axis=1))[:3]]
    zh = [int(v) for v in np.flatnonzero(~ch.any(axis=1))[:3]]
    for a in zl:
        for b in zh:
            wit = tuple(
                _decode_digits(a, split) + _decode_digits(b, n + 1 - split)
            )
            if any(wit) and wit not in relation_witnesses and len(relation_witnesses) < 32:
                relation_witnesses.append(wit)
    del cl, ch

    midv = prec.pe.mid_f[:d]
    hwv = prec.pe.halfwidth_f[:d]

    def _float_vals(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        a = mat.astype(np.float64)
        absa = np.abs(a)
        v = (a @ midv) / den
        e = (
            absa @ hwv
            + 4.0 * (d + 2) * 2.0**-52 * (absa @ np.abs(midv))
            + 1e-300
        ) / den * (1.0 + 1e-12)
        return v, e

    lv, le = _float_vals(lu)
    hv, he = _float_vals(hu)
    horder = np.argsort(hv, kind="stable")
    hs = hv[horder]
    hes = he[horder]

    # Pass 1: a certified upper bound on the minimum positive value, from
    # pairs whose float sum clears its own error band.
    best_up = math.inf
    pos = np.searchsorted(hs, -lv, side="left")
    for off in (-1, 0, 1, 2, 3):
        j = pos + off
        ok = (j >= 0) & (j < hs.shape[0])
        if not ok.any():
            continue
        s = lv[ok] + hs[j[ok]]
        b = le[ok] + hes[j[ok]]
        definite = s > b
        if definite.any():
            best_up = min(best_up, float(np.min((s + b)[definite])))
    if not math.isfinite(best_up):
        raise InvariantViolation("no positive value found in Lambda_n")

    # Pass 2: collect every pair whose true value could lie in (0, best_up].
    max_he = float(np.max(hes)) if hes.size else 0.0
    pad = 10.0 * (float(np.max(le)) + max_he) + 1e-12
    lo_idx = np.searchsorted(hs, -lv - le - max_he - pad, side="left")
    hi_idx = np.searchsorted(hs, -lv + best_up + le + max_he + pad, side="right")
    spans = hi_idx - lo_idx
    total = int(np.sum(np.maximum(spans, 0)))
    if total > _CANDIDATE_CAP:
        raise WorkCapExceeded(
            f"lambda-min candidate window holds {total} pairs; raise precision"
        )

    best_iv: RatInterval | None = None
    best_key: tuple[int, ...] | None = None
    best_pair: tuple[int, int] | None = None
    extra_zero_pairs = 0
    for i in np.flatnonzero(spans > 0):
        i = int(i)
        for jj in range(int(lo_idx[i]), int(hi_idx[i])):
            j = int(horder[jj])
            combined = tuple(int(a) + int(b) for a, b in zip(lu[i], hu[j]))
            if not any(combined):
                continue  # exact residue relation, already counted
            sgn = comparer.sign_of(combined)
            if sgn == 0:
                extra_zero_pairs += int(l_cnt[i]) * int(h_cnt[j])
                if len(relation_witnesses) < 32:
                    wit = _decode_digits(int(l_first[i]), split) + _decode_digits(
                        int(h_first[j]), n + 1 - split
                    )
                    relation_witnesses.append(tuple(wit))
                continue
            if sgn < 0:
                continue
            iv = comparer.interval_of(combined)
            while not iv.strictly_positive():
                prec.escalate()
                iv = comparer.interval_of(combined)
            if best_iv is None:
                best_iv, best_key, best_pair = iv, combined, (i, j)
                continue
            while True:
                if iv.hi <= best_iv.lo:
                    best_iv, best_key, best_pair = iv, combined, (i, j)
                    break
                if iv.lo >= best_iv.hi:
                    break
                if comparer.sign_of(_diff_tuple(combined, best_key)) == 0:
                    break  # exact tie: keep the earlier witness
                prec.escalate()
                iv = comparer.interval_of(combined)
                best_iv = comparer.interval_of(best_key)
    if best_iv is None or best_key is None or best_pair is None:
        raise InvariantViolation("candidate sweep lost every positive value")
    relations_found += extra_zero_pairs

    # Tighten the reported enclosure for presentation.
    while (
        best_iv.width > best_iv.lo * Fraction(1, 1 << 40)
        and prec.pe.bits * 2 <= prec.budget_bits
    ):
        prec.escalate()
        best_iv = comparer.interval_of(best_key)

    i, j = best_pair
    witness = tuple(
        _decode_digits(int(l_first[i]), split)
        + _decode_digits(int(h_first[j]), n + 1 - split)
    )
    return LambdaMinResult(
        value=best_iv,
        witness=witness,
        residue=tuple(Fraction(c, den) for c in best_key),
        n=n,
        split=split,
        relations_found=relations_found,
        relation_witnesses=tuple(relation_witnesses),
        notes=tuple(notes),
    )


def spectrum_to_csv(report: SpectrumReport, path) -> None:
    """Write index, value_decimal, gap_to_next rows with a header."""
    close = False
    if hasattr(path, "write"):
        handle = path
    else:
        handle = open(path, "w", newline="")
        close = True
    try:
        w = csv.writer(handle)
        w.writerow(["index", "value_decimal", "gap_to_next"])
        for i in range(report.count):
            gap = (
                report.gap_interval(i).decimal(20) if i < report.count - 1 else ""
            )
            w.writerow([i, report.value_interval(i).decimal(20), gap])
    finally:
        if close:
            handle.close()


def gap_stats_to_json(gs: GapStats) -> dict:
    """JSON-ready dict with decimal strings only (never binary floats)."""
    def pair(iv: RatInterval) -> dict:
        lo, hi = iv.decimal_pair(20)
        return {"lo": lo, "hi": hi, "decimal": iv.decimal(20)}

    return {
        "schema_version": 1,
        "min_gap": pair(gs.min_gap),
        "min_gap_index": gs.min_gap_index,
        "tail_min_gap": pair(gs.tail_min_gap),
        "max_gap_tail": pair(gs.max_gap_tail),
        "record_min_positions": list(gs.record_min_positions),
        "tail_fraction": str(gs.tail_fraction),
        "tail_start": gs.tail_start,
        "prefix_values": gs.prefix_values,
        "notes": list(gs.notes),
    }
