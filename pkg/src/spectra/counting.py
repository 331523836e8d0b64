"""Counting distinct power sums z_n = #{sum a_k x^k mod f : a in {0,1}^(n+1)}.

Counting residues modulo f counts the sums at every root of f simultaneously,
so one exact count serves q and all of its conjugates.  The fast path keeps
residue coordinates as int64 numpy rows with an exact overflow bound computed
ahead of time; when the bound fails, a slow exact path over rational tuples
takes over.  Numeric clustering exists for non-algebraic inputs only and
refuses to answer near its tolerance boundary instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    InvariantViolation,
    NoPowerStructure,
    ToleranceAmbiguity,
    UsageError,
    WorkCapExceeded,
)
from .intervals import RatInterval
from .polyalg import IntPolynomial, detect_power_structure, reverse
from .roots import AlgebraicNumber

DEFAULT_ROW_CAP = 1 << 24
_INT64_SAFE = 1 << 62


def _monic_int_coeffs(f: IntPolynomial) -> list[int] | None:
    """Coefficients a_0..a_{d-1} with x^d = -(a_0 + ... + a_{d-1}x^{d-1}), or None."""
    if f.leading == 1:
        return list(f.coeffs[:-1])
    if f.leading == -1:
        return [-c for c in f.coeffs[:-1]]
    return None


def _power_residues_int(a: list[int], upto: int) -> list[list[int]]:
    """Integer coordinate vectors of x^k mod f for k = 0..upto, monic f."""
    d = len(a)
    rows = [[1] + [0] * (d - 1)]
    for _ in range(upto):
        prev = rows[-1]
        top = prev[d - 1]
        nxt = [0] * d
        for i in range(1, d):
            nxt[i] = prev[i - 1]
        if top:
            for i in range(d):
                nxt[i] -= top * a[i]
        rows.append(nxt)
    return rows


def count_distinct_series(
    f: IntPolynomial, n: int, row_cap: int = DEFAULT_ROW_CAP
) -> list[int]:
    """z_0, z_1, ..., z_n by incremental residue enumeration with exact dedup."""
    prim = f.primitive()
    if prim.degree < 1:
        raise UsageError("counting needs a polynomial of degree >= 1")
    if n < 0:
        raise UsageError("n must be nonnegative")
    d = prim.degree
    a = _monic_int_coeffs(prim)
    if a is not None:
        powers = _power_residues_int(a, n)
        reach = 0
        for row in powers:
            reach += max(abs(v) for v in row)
        if reach < _INT64_SAFE:
            return _series_int64(powers, n, row_cap)
    return _series_exact(prim, n, row_cap)


def _series_int64(powers: list[list[int]], n: int, row_cap: int) -> list[int]:
    d = len(powers[0])
    cur = np.zeros((1, d), dtype=np.int64)
    counts: list[int] = []
    for k in range(n + 1):
        rk = np.array(powers[k], dtype=np.int64)
        cur = np.unique(np.vstack([cur, cur + rk]), axis=0)
        if cur.shape[0] > row_cap:
            raise WorkCapExceeded(
                f"residue count exceeded {row_cap} rows at n={k}"
            )
        counts.append(int(cur.shape[0]))
    return counts


def _series_exact(f: IntPolynomial, n: int, row_cap: int) -> list[int]:
    d = f.degree
    lead = f.leading
    # x^k mod f with rational coordinates (non-monic leading coefficient).
    powers: list[tuple[Fraction, ...]] = [tuple([Fraction(1)] + [Fraction(0)] * (d - 1))]
    for _ in range(n):
        prev = powers[-1]
        top = prev[d - 1]
        nxt = [Fraction(0)] * d
        for i in range(1, d):
            nxt[i] = prev[i - 1]
        if top:
            for i in range(d):
                nxt[i] -= top * Fraction(f.coeffs[i], lead)
        powers.append(tuple(nxt))
    cur: set[tuple[Fraction, ...]] = {tuple([Fraction(0)] * d)}
    counts: list[int] = []
    for k in range(n + 1):
        rk = powers[k]
        cur |= {tuple(x + y for x, y in zip(t, rk)) for t in list(cur)}
        if len(cur) > row_cap:
            raise WorkCapExceeded(f"residue count exceeded {row_cap} rows at n={k}")
        counts.append(len(cur))
    return counts


def count_distinct(f: IntPolynomial, n: int, row_cap: int = DEFAULT_ROW_CAP) -> int:
    """Exact number of distinct values of sum_{k<=n} a_k x^k mod f, a_k in {0,1}.

    Equals z_n(q) at every root q of f when f is the minimal polynomial; for
    reducible squarefree f it counts residues, the common refinement over all
    roots.
    """
    return count_distinct_series(f, n, row_cap)[-1]


def count_distinct_numeric(beta, n: int, tol: float, row_cap: int = DEFAULT_ROW_CAP):
    """Count tol-separated clusters of the 2^(n+1) sums sum a_k beta^k.

    Algebraic input (an AlgebraicNumber) delegates to the exact residue count.
    Numeric clustering raises tolerance-ambiguity whenever some pair sits in
    the gray band [tol/4, 4*tol]: such counts are not scale-robust.
    """
    if isinstance(beta, AlgebraicNumber):
        return count_distinct(beta.factor, n, row_cap)
    if tol <= 0:
        raise UsageError("tolerance must be positive")
    b = complex(beta)
    if abs(b) == 0:
        raise UsageError("beta must be nonzero")
    if (1 << (n + 1)) > row_cap:
        raise WorkCapExceeded(f"2^{n + 1} sums exceed the work cap {row_cap}")
    vals = np.zeros(1, dtype=np.complex128)
    pk = 1.0 + 0.0j
    for _ in range(n + 1):
        vals = np.concatenate([vals, vals + pk])
        pk *= b
    order = np.lexsort((vals.imag, vals.real))
    vals = vals[order]
    lo_band, hi_band = tol / 4.0, 4.0 * tol
    m = len(vals)
    parent = np.arange(m)

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    j_start = 0
    for i in range(m):
        while vals[i].real - vals[j_start].real > hi_band:
            j_start += 1
        for j in range(j_start, i):
            dist = abs(vals[i] - vals[j])
            if lo_band <= dist <= hi_band:
                raise ToleranceAmbiguity(
                    f"pair distance {dist:.3e} falls in [tol/4, 4*tol] for tol={tol:.3e}"
                )
            if dist < lo_band:
                parent[find(i)] = find(j)
    return int(sum(1 for i in range(m) if find(i) == i))


def verify_inversion(f: IntPolynomial, n: int, row_cap: int = DEFAULT_ROW_CAP) -> bool:
    """Check z_n(f) == z_n(reverse(f)); reciprocal roots give equal counts."""
    return count_distinct(f, n, row_cap) == count_distinct(reverse(f), n, row_cap)


@dataclass(frozen=True)
class CountSeries:
    """z_n for n = 0..N with optional growth ratios z_n/q^n.

    ``divergence`` is a heuristic flag (true when the running minimum of the
    ratio over the last quarter of indices certifiably exceeds twice the
    minimum over the first quarter); it is evidence, never a proof.
    """

    beta_desc: str
    counts: tuple[int, ...]
    ratios: tuple[RatInterval, ...] = ()
    divergence: bool | None = None
    notes: tuple[str, ...] = field(default=("growth diagnostic is heuristic evidence only",))

    def __post_init__(self) -> None:
        for i, z in enumerate(self.counts):
            if not 1 <= z <= (1 << (i + 1)):
                raise InvariantViolation(f"z_{i}={z} outside [1, 2^{i + 1}]")
            if i and not self.counts[i - 1] <= z <= 2 * self.counts[i - 1]:
                raise InvariantViolation(f"z_{i}={z} not in [z_{i - 1}, 2 z_{i - 1}]")


def growth_ratio(
    f: IntPolynomial,
    q: AlgebraicNumber,
    n_max: int,
    row_cap: int = DEFAULT_ROW_CAP,
) -> CountSeries:
    """Counts and certified ratio enclosures z_n/q^n for n = 0..n_max."""
    counts = count_distinct_series(f, n_max, row_cap)
    qq = q.refined(Fraction(1, 2**80))
    iv = qq.interval()
    if not iv.strictly_greater(1):
        raise UsageError("growth ratios need q > 1")
    ratios = [iv.power(k).inverse() * z for k, z in enumerate(counts)]
    m = len(ratios)
    diag: bool | None = None
    if m >= 8:
        quarter = m // 4
        head_min_hi = min(r.hi for r in ratios[:quarter])
        tail_min_lo = min(r.lo for r in ratios[m - quarter:])
        diag = bool(tail_min_lo > 2 * head_min_hi)
    return CountSeries(
        beta_desc=f.to_text(),
        counts=tuple(counts),
        ratios=tuple(ratios),
        divergence=diag,
    )


def power_count_identity(f: IntPolynomial, k: int, row_cap: int = DEFAULT_ROW_CAP) -> bool:
    """Exact check of z_{mk}(f) == z_k(g) * z_{k-1}(g)^(m-1) when f(x) = g(x^m).

    The inner digits of a {0,1} expansion in x split by residue of the
    exponent mod m, which is what makes the product formula exact.
    """
    m, g = detect_power_structure(f.primitive())
    if m < 2:
        raise NoPowerStructure(f"{f} has no g(x^m) structure with m >= 2")
    if k < 1:
        raise UsageError("k must be >= 1")
    lhs = count_distinct(f, m * k, row_cap)
    series = count_distinct_series(g, k, row_cap)
    rhs = series[k] * series[k - 1] ** (m - 1)
    return lhs == rhs
