"""Self-similar attractors A = lambda*A union (1 + lambda*A) for |lambda| < 1.

Connectivity, the interior criterion on the annulus 1/sqrt(2) <= |lambda| < 1,
the implied lower bounds on distinct power-sum counts, and a deterministic
raster of the attractor.  All verdicts rest on exact rational or certified
interval arithmetic; boundary ties are resolved exactly when lambda is
algebraic (that is, whenever the input carries a defining polynomial or is a
rational point).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .classify import locate_root, negation_of, same_value
from .errors import (
    NotApplicable,
    PrecisionExhausted,
    UsageError,
    WorkCapExceeded,
)
from .heightsearch import find_height_one_multiple
from .intervals import Box, RatInterval, sqrt_lower, sqrt_upper
from .polyalg import (
    IntPolynomial,
    count_real_roots,
    graeffe,
    pair_product_polynomial,
    pair_sum_polynomial,
    poly_gcd,
    squarefree_part,
)
from .roots import DEFAULT_BUDGET_BITS, AlgebraicNumber, isolate_roots

__all__ = [
    "ConnectivityResult",
    "AttractorAnalysis",
    "connectivity",
    "interior_criterion",
    "zn_lower_bound",
    "analyze",
    "attractor_to_json",
    "partial_sums",
    "rasterize",
    "DEFAULT_SEARCH_DEPTH",
]

DEFAULT_SEARCH_DEPTH = 40
DEFAULT_NODE_CAP = 2_000_000
_RASTER_POINT_CAP = 1 << 26


# -- uniform view of the contraction parameter --------------------------------


class _Lambda:
    """Input adapter: a refinable enclosure plus optional exact structure.

    Accepts an AlgebraicNumber, an exact rational or complex point (machine
    floats are dyadic, so nothing is lost), or a raw Box.  Raw boxes with
    positive width cannot be refined, so ties on them exhaust precision
    instead of resolving.
    """

    def __init__(self, value) -> None:
        self.alg: AlgebraicNumber | None = None
        self.exact: tuple[Fraction, Fraction] | None = None
        self.raw: Box | None = None
        if isinstance(value, AlgebraicNumber):
            self.alg = value
            rb = value.root
            if rb.is_exact:
                self.exact = (rb.center_re, rb.center_im)
        elif isinstance(value, Box):
            if value.is_exact():
                self.exact = (value.re.lo, value.im.lo)
            else:
                self.raw = value
        elif isinstance(value, complex):
            self.exact = (Fraction(value.real), Fraction(value.imag))
        elif isinstance(value, (int, float, Fraction)):
            self.exact = (Fraction(value), Fraction(0))
        else:
            raise UsageError(
                f"cannot interpret {type(value).__name__} as a contraction parameter"
            )

    @property
    def refinable(self) -> bool:
        return self.raw is None

    def enclosure(self, eps: Fraction) -> Box:
        if self.exact is not None:
            return Box(RatInterval.point(self.exact[0]), RatInterval.point(self.exact[1]))
        if self.alg is not None:
            return self.alg.refined(eps).box()
        assert self.raw is not None
        return self.raw

    def is_real(self) -> bool | None:
        """Exactly real, exactly not, or None when a raw box straddles."""
        if self.exact is not None:
            return self.exact[1] == 0
        if self.alg is not None:
            return self.alg.is_real
        assert self.raw is not None
        if self.raw.im.lo == self.raw.im.hi == 0:
            return True
        if not self.raw.im.contains(0):
            return False
        return None

    def relation_polynomial(self) -> IntPolynomial | None:
        """An integer polynomial vanishing at lambda, when one is known."""
        if self.alg is not None:
            return self.alg.factor
        if self.exact is not None:
            a, b = self.exact
            if b == 0:
                return IntPolynomial.from_coeffs([-a.numerator, a.denominator])
            # (x - l)(x - conj l) = x^2 - 2 Re(l) x + |l|^2, cleared:
            m = a * a + b * b
            den = a.denominator
            den = den * m.denominator // gcd(den, m.denominator)
            return IntPolynomial.from_coeffs(
                [int(m * den), int(-2 * a * den), den]
            ).primitive()
        return None

    def describe(self) -> str:
        box = self.enclosure(Fraction(1, 2**48))
        re, im = box.decimal_pair(12)
        return re if self.is_real() else f"{re} + {im}i"


# -- exact comparisons against rationals --------------------------------------


def _real_square_equals(alg: AlgebraicNumber, c: Fraction) -> bool:
    """lambda^2 == c exactly, for real algebraic lambda."""
    h = IntPolynomial.from_coeffs([-c.numerator, 0, c.denominator])
    g = poly_gcd(alg.factor, h)
    if g.degree < 1:
        return False
    # lambda's interval isolates it among the factor's roots, so any root of
    # g (a divisor of the factor) inside that interval can only be lambda.
    iv = alg.interval()
    return count_real_roots(g, iv.lo, iv.hi) >= 1


def _alg_equals_rational(aa: AlgebraicNumber, c: Fraction, budget_bits: int) -> bool:
    """Exact equality of a located real algebraic number with a rational."""
    if aa.factor(c) != 0:
        return False
    cur = aa
    bits = 64
    while bits <= budget_bits:
        rb = cur.root
        dr = c - rb.center_re
        d2 = dr * dr + rb.center_im * rb.center_im
        r2 = rb.radius * rb.radius
        if d2 < r2:
            return True  # c is a factor root strictly inside the isolating disc
        if d2 > r2:
            return False
        cur = cur.refined(Fraction(1, 2**bits))
        bits *= 2
    raise PrecisionExhausted("boundary membership of a rational candidate undecided")


class _Mag2Oracle:
    """Comparisons of |lambda|^2 against rationals, exact on ties.

    Interval refinement decides strict cases; persistent ties fall back to
    locating |lambda|^2 as an algebraic number (via the root-squaring
    transform for real lambda, pairwise root products otherwise), which is
    only attempted for refinable inputs.
    """

    def __init__(self, lam: _Lambda, budget_bits: int) -> None:
        self.lam = lam
        self.budget_bits = budget_bits
        self._located: AlgebraicNumber | None = None

    def located_mag2(self) -> AlgebraicNumber:
        if self._located is None:
            alg = self.lam.alg
            if alg is None:
                raise PrecisionExhausted("no defining polynomial for exact ties")
            if alg.is_real:
                target = graeffe(alg.factor)
                self._located = locate_root(
                    target,
                    lambda eps: alg.refined(eps).interval().square(),
                    self.budget_bits,
                )
            else:
                target = pair_product_polynomial(alg.factor)
                self._located = locate_root(
                    target,
                    lambda eps: alg.refined(eps).mag2(),
                    self.budget_bits,
                )
        return self._located

    def compare(self, c: Fraction) -> int:
        """Sign of |lambda|^2 - c, with exact zero detection."""
        if self.lam.exact is not None:
            a, b = self.lam.exact
            m = a * a + b * b
            return (m > c) - (m < c)
        bits = 48
        tried_exact = False
        while True:
            iv = self.lam.enclosure(Fraction(1, 2**bits)).mag2()
            if iv.strictly_greater(c):
                return 1
            if iv.strictly_less(c):
                return -1
            if not tried_exact and bits >= 768 and self.lam.alg is not None:
                alg = self.lam.alg
                if alg.is_real:
                    if _real_square_equals(alg, c):
                        return 0
                else:
                    if _alg_equals_rational(self.located_mag2(), c, self.budget_bits):
                        return 0
                tried_exact = True
            bits *= 2
            if bits > self.budget_bits:
                raise PrecisionExhausted(
                    f"|lambda|^2 vs {c} undecided within {self.budget_bits} bits"
                )


def _compose_affine_half(g: IntPolynomial) -> IntPolynomial:
    """Integer polynomial with root 2m - 1 for each root m of g."""
    d = g.degree
    out = [0] * (d + 1)
    # 2^d * g((y+1)/2) = sum_k a_k (y+1)^k 2^(d-k)
    for k, a in enumerate(g.coeffs):
        if a == 0:
            continue
        binom = [1]
        for _ in range(k):
            binom = [1] + [binom[i] + binom[i + 1] for i in range(len(binom) - 1)] + [1]
        scale = a * 2 ** (d - k)
        for i, b in enumerate(binom):
            out[i] += scale * b
    return IntPolynomial.from_coeffs(out).primitive()


def _purely_imaginary(alg: AlgebraicNumber, budget_bits: int) -> bool:
    """Re(lambda) == 0 exactly, for non-real algebraic lambda.

    lambda^2 is a root of the root-squaring transform of the factor; lambda
    is purely imaginary iff that root is real (necessarily negative).  The
    square's enclosure is trapped inside exactly one certified disc, whose
    realness is an exact attribute.
    """
    target = squarefree_part(graeffe(alg.factor))
    eps = Fraction(1, 2**48)
    discs = isolate_roots(target, eps=eps, budget_bits=budget_bits)
    bits = 64
    cur = alg
    while bits <= budget_bits:
        cur = cur.refined(Fraction(1, 2**bits))
        sq = cur.box() * cur.box()
        inside = []
        for rb in discs:
            dr = max(abs(sq.re.lo - rb.center_re), abs(sq.re.hi - rb.center_re))
            di = max(abs(sq.im.lo - rb.center_im), abs(sq.im.hi - rb.center_im))
            if dr * dr + di * di <= rb.radius * rb.radius:
                inside.append(rb)
        if len(inside) == 1:
            return inside[0].is_real
        bits *= 2
        if inside == [] and eps > Fraction(1, 2**192):
            eps = eps / 2**48
            discs = isolate_roots(target, eps=eps, budget_bits=budget_bits)
    raise PrecisionExhausted("could not attribute lambda^2 to a single disc")


def _abs_interval(iv: RatInterval) -> RatInterval:
    if iv.lo >= 0:
        return iv
    if iv.hi <= 0:
        return -iv
    return RatInterval(Fraction(0), max(-iv.lo, iv.hi))


def _re_boundary_tie(lam: _Lambda, mag: _Mag2Oracle, budget_bits: int) -> bool:
    """Decide |Re lambda| == |lambda|^2 - 1/2 exactly for non-real algebraic lambda
    whose real part is certifiably nonzero."""
    alg = lam.alg
    if alg is None:
        raise PrecisionExhausted("no defining polynomial for exact ties")
    ps = pair_sum_polynomial(alg.factor)
    two_re = locate_root(
        ps,
        lambda eps: alg.refined(eps).box().re * 2,
        budget_bits,
    )
    if two_re.interval().strictly_negative():
        two_re = negation_of(two_re)
    m_alg = mag.located_mag2()
    two_m_minus_1 = locate_root(
        _compose_affine_half(m_alg.factor),
        lambda eps: alg.refined(eps).mag2() * 2 - 1,
        budget_bits,
    )
    return same_value(two_re, two_m_minus_1, budget_bits)


# -- interior criterion --------------------------------------------------------


def interior_criterion(lam_value, budget_bits: int = DEFAULT_BUDGET_BITS) -> bool:
    """Certified test of 1/sqrt(2) <= |lambda| < 1 and |Re lambda| <= |lambda|^2 - 1/2.

    Both non-strict boundaries are decided exactly for algebraic inputs; a
    raw interval input that lands on a boundary raises PrecisionExhausted
    because no amount of refinement can break the tie.
    """
    lam = _Lambda(lam_value)
    if lam.exact is not None:
        a, b = lam.exact
        m = a * a + b * b
        return m >= Fraction(1, 2) and m < 1 and abs(a) <= m - Fraction(1, 2)
    mag = _Mag2Oracle(lam, budget_bits)
    if mag.compare(Fraction(1, 2)) < 0:
        return False
    if mag.compare(Fraction(1)) >= 0:
        return False
    # remaining clause: |Re| <= |lambda|^2 - 1/2, inclusive
    bits = 48
    tried_pure = False
    while bits <= budget_bits:
        box = lam.enclosure(Fraction(1, 2**bits))
        t = box.mag2() - _abs_interval(box.re) - Fraction(1, 2)
        if t.lo >= 0:
            return True
        if t.hi < 0:
            return False
        if bits >= 768 and lam.alg is not None:
            if lam.alg.is_real:
                # real tie means lambda^2 - |lambda| - 1/2 == 0; both sign
                # cases are integer quadratics vanishing at lambda.
                for h in (
                    IntPolynomial.from_coeffs([-1, -2, 2]),  # 2x^2 - 2x - 1
                    IntPolynomial.from_coeffs([-1, 2, 2]),   # 2x^2 + 2x - 1
                ):
                    g = poly_gcd(lam.alg.factor, h)
                    if g.degree >= 1:
                        iv = lam.alg.interval()
                        if count_real_roots(g, iv.lo, iv.hi) >= 1:
                            return True
            elif box.re.contains(0):
                if not tried_pure:
                    tried_pure = True
                    if _purely_imaginary(lam.alg, budget_bits):
                        # Re is exactly 0; the clause reduces to
                        # |lambda|^2 >= 1/2, already certified above.
                        return True
            else:
                return _re_boundary_tie(lam, mag, budget_bits)
        bits *= 2
    raise PrecisionExhausted(
        f"interior boundary tie undecided within {budget_bits} bits"
    )


# -- counting lower bounds ------------------------------------------------------


def zn_lower_bound(lam_value, n: int, budget_bits: int = DEFAULT_BUDGET_BITS) -> RatInterval:
    """Enclosure of the strongest applicable lower bound on z_n at lambda.

    Interior points get |lambda|^(-2(n+1)); points with 1/2 < |lambda| < 1
    (both strict) get |lambda|^(-(n+1)); anything else is NotApplicable.
    """
    if n < 0:
        raise UsageError("n must be >= 0")
    lam = _Lambda(lam_value)
    interior = interior_criterion(lam_value, budget_bits)
    if not interior:
        mag = _Mag2Oracle(lam, budget_bits)
        if mag.compare(Fraction(1, 4)) <= 0 or mag.compare(Fraction(1)) >= 0:
            raise NotApplicable(
                "the counting bounds need 1/2 < |lambda| < 1; "
                f"|lambda| = {lam.describe()} does not qualify"
            )
    bits = 96
    while True:
        m = lam.enclosure(Fraction(1, 2**bits)).mag2()
        if m.lo > 0 and m.hi < 1:
            break
        bits *= 2
        if bits > budget_bits:
            raise PrecisionExhausted("cannot bound |lambda|^2 inside (0, 1)")
    if interior:
        return m.power(n + 1).inverse()
    return m.power(n + 1).inverse().sqrt(128)


def _zn_exponent(lam_value, budget_bits: int) -> int | None:
    if interior_criterion(lam_value, budget_bits):
        return 2
    lam = _Lambda(lam_value)
    mag = _Mag2Oracle(lam, budget_bits)
    try:
        if mag.compare(Fraction(1, 4)) > 0 and mag.compare(Fraction(1)) < 0:
            return 1
    except PrecisionExhausted:
        return None
    return None


# -- connectivity ---------------------------------------------------------------


@dataclass(frozen=True)
class ConnectivityResult:
    """Verdict on whether the attractor is connected.

    ``witness`` is a coefficient prefix b_0, b_1, ... with b_0 = 1: for a
    connected verdict it is either a finite exact relation (a height-one
    polynomial vanishing at lambda) or the start of the interval-construction
    sequence on the real line.  ``gap_lower`` is a certified positive lower
    bound on the distance between the two affine copies when disconnected.
    """

    verdict: str  # "connected" | "disconnected" | "unknown"
    depth: int
    nodes: int
    witness: tuple[int, ...] | None = None
    gap_lower: Fraction | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.verdict not in ("connected", "disconnected", "unknown"):
            raise UsageError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "disconnected" and (
            self.gap_lower is None or self.gap_lower <= 0
        ):
            raise UsageError("disconnected verdicts need a positive certified gap")


def _require_contraction(lam: _Lambda, budget_bits: int) -> None:
    mag = _Mag2Oracle(lam, budget_bits)
    if mag.compare(Fraction(1)) >= 0:
        raise UsageError("the attractor needs |lambda| < 1")


def _real_abs_interval(lam: _Lambda, bits: int) -> RatInterval:
    return _abs_interval(lam.enclosure(Fraction(1, 2**bits)).re)


def _greedy_real_prefix(lam: _Lambda, length: int) -> tuple[int, ...]:
    lf = abs(complex(lam.enclosure(Fraction(1, 2**64))).real)
    digits = [1]
    rem = -1.0  # want sum_{k>=1} b_k l^k == -1
    p = 1.0
    for _ in range(length):
        p *= lf
        b = min((-1, 0, 1), key=lambda d: abs(rem - d * p))
        digits.append(b)
        rem -= b * p
    return tuple(digits)


def connectivity(
    lam_value,
    depth: int = DEFAULT_SEARCH_DEPTH,
    node_cap: int = DEFAULT_NODE_CAP,
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> ConnectivityResult:
    """Connectedness of A = lambda*A union (1 + lambda*A).

    The attractor is connected iff the two affine copies meet, i.e. iff some
    power series with coefficients in {-1, 0, 1} and constant term 1
    vanishes at lambda.  Real inputs are settled exactly by the half
    criterion.  Otherwise a finite height-one relation proves connectedness,
    and a branch-and-bound over coefficient prefixes proves disconnectedness
    when every prefix forces |partial sum| beyond the tail's reach.  A
    search that exhausts depth or the node cap without either proof returns
    unknown.
    """
    if depth < 1:
        raise UsageError("depth must be >= 1")
    lam = _Lambda(lam_value)
    _require_contraction(lam, budget_bits)

    is_real = lam.is_real()
    if is_real:
        mag = _Mag2Oracle(lam, budget_bits)
        side = mag.compare(Fraction(1, 4))
        if side >= 0:
            note = (
                "real |lambda| >= 1/2: the attractor is the interval "
                "[-|lambda|/(1-|lambda|), 1/(1-|lambda|)] up to reflection"
            )
            return ConnectivityResult(
                verdict="connected",
                depth=0,
                nodes=0,
                witness=_greedy_real_prefix(lam, min(depth, 16)),
                notes=(note,),
            )
        bits = 64
        while True:
            r = _real_abs_interval(lam, bits)
            if r.hi < Fraction(1, 2):
                break
            bits *= 2
            if bits > budget_bits:
                raise PrecisionExhausted("|lambda| vs 1/2 undecided")
        gap = (1 - 2 * r.hi) / (1 - r.hi)
        return ConnectivityResult(
            verdict="disconnected",
            depth=0,
            nodes=0,
            gap_lower=gap,
            notes=("real |lambda| < 1/2: the two affine copies cannot cover the hull",),
        )

    # Exact witness first: cheap, and it settles every connected algebraic case
    # this module cares about.
    rel = lam.relation_polynomial()
    notes: list[str] = []
    if rel is not None and rel.constant != 0:
        dmax = max(rel.degree, min(depth, rel.degree + 12))
        try:
            res = find_height_one_multiple(rel, dmax=dmax, node_budget=200_000)
        except WorkCapExceeded:
            res = None
            notes.append("height-one witness search hit its node budget")
        if res is not None and res.status == "found":
            w = res.witness
            assert w is not None
            core, _ = w.strip_power_of_x()
            if core.constant < 0:
                core = -core
            return ConnectivityResult(
                verdict="connected",
                depth=core.degree,
                nodes=0,
                witness=core.coeffs,
                notes=("exact height-one relation vanishing at lambda",),
            )

    # Branch and bound for a disconnection certificate.
    bits = 96
    box = lam.enclosure(Fraction(1, 2**bits))
    m = box.mag2()
    r = m.sqrt(96)
    if not r.hi < 1:
        raise PrecisionExhausted("cannot bound |lambda| strictly below 1")
    pw: list[Box] = [Box.point(1)]
    for _ in range(depth + 1):
        pw.append(pw[-1] * box)
    # tail after index k is at most r^(k+1) / (1 - r)
    geo = 1 - r.hi
    tail_hi: list[Fraction] = []
    p_acc = Fraction(1)
    for _ in range(depth + 1):
        p_acc *= r.hi
        tail_hi.append(p_acc / geo)

    nodes = 0
    min_margin: Fraction | None = None
    survivors = 0
    stack: list[tuple[int, Box]] = [(0, pw[0])]
    capped = False
    while stack:
        k, part = stack.pop()
        nodes += 1
        if nodes > node_cap:
            capped = True
            break
        low = sqrt_lower(part.mag2().lo, 64)
        if low > tail_hi[k]:
            margin = low - tail_hi[k]
            min_margin = margin if min_margin is None else min(min_margin, margin)
            continue
        if k == depth:
            survivors += 1
            break  # one survivor already blocks a disconnection proof
        stack.append((k + 1, part))
        stack.append((k + 1, part + pw[k + 1]))
        stack.append((k + 1, part - pw[k + 1]))

    if capped:
        notes.append(f"prefix search stopped at the {node_cap}-node cap")
        return ConnectivityResult(
            verdict="unknown", depth=depth, nodes=nodes, notes=tuple(notes)
        )
    if survivors == 0:
        assert min_margin is not None and min_margin > 0
        notes.append("every coefficient prefix forces the copies apart")
        return ConnectivityResult(
            verdict="disconnected",
            depth=depth,
            nodes=nodes,
            gap_lower=min_margin,
            notes=tuple(notes),
        )
    notes.append(
        "surviving prefixes at full depth but no finite relation found"
    )
    return ConnectivityResult(
        verdict="unknown", depth=depth, nodes=nodes, notes=tuple(notes)
    )


# -- aggregate view and serialization -------------------------------------------


@dataclass(frozen=True)
class AttractorAnalysis:
    """One-stop summary for a contraction parameter."""

    enclosure: Box
    connectivity: ConnectivityResult
    interior: bool
    zn_exponent: int | None
    notes: tuple[str, ...] = ()


def analyze(
    lam_value,
    depth: int = DEFAULT_SEARCH_DEPTH,
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> AttractorAnalysis:
    lam = _Lambda(lam_value)
    conn = connectivity(lam_value, depth=depth, budget_bits=budget_bits)
    interior = interior_criterion(lam_value, budget_bits)
    exponent = _zn_exponent(lam_value, budget_bits)
    return AttractorAnalysis(
        enclosure=lam.enclosure(Fraction(1, 2**64)),
        connectivity=conn,
        interior=interior,
        zn_exponent=exponent,
    )


def attractor_to_json(analysis: AttractorAnalysis) -> dict:
    re_s, im_s = analysis.enclosure.decimal_pair(20)
    conn = analysis.connectivity
    out = {
        "schema_version": 1,
        "lambda": {"re": re_s, "im": im_s},
        "connectivity": {
            "verdict": conn.verdict,
            "depth": conn.depth,
            "nodes": conn.nodes,
            "witness": list(conn.witness) if conn.witness is not None else None,
            "gap_lower": str(conn.gap_lower) if conn.gap_lower is not None else None,
            "notes": list(conn.notes),
        },
        "interior": analysis.interior,
        "zn_exponent": analysis.zn_exponent,
    }
    return out


# -- rasterization ---------------------------------------------------------------


def partial_sums(lam_value, depth: int, digits: tuple[int, int] = (0, 1)) -> np.ndarray:
    """All 2^(depth+1) partial sums sum_k b_k lambda^k as complex128.

    The two admissible digit alphabets are (0, 1) and (-1, 1); the second
    one is the affine image of the first under z -> 2z - 1/(1 - lambda).
    """
    if tuple(sorted(digits)) not in ((0, 1), (-1, 1)):
        raise UsageError("digit set must be (0, 1) or (-1, 1)")
    if depth < 0:
        raise UsageError("depth must be >= 0")
    if 1 << (depth + 1) > _RASTER_POINT_CAP:
        raise WorkCapExceeded(
            f"2^{depth + 1} raster points exceed the cap of {_RASTER_POINT_CAP}"
        )
    lam = _Lambda(lam_value)
    lf = complex(lam.enclosure(Fraction(1, 2**64)))
    if abs(lf) >= 1.0:
        raise UsageError("the attractor needs |lambda| < 1")
    d0, d1 = sorted(digits)
    vals = np.zeros(1, dtype=np.complex128)
    p = 1.0 + 0.0j
    for _ in range(depth + 1):
        vals = np.concatenate([vals + d0 * p, vals + d1 * p])
        p *= lf
    return vals


def rasterize(
    lam_value,
    depth: int = 22,
    pixels: int = 800,
    digits: tuple[int, int] = (0, 1),
) -> bytes:
    """Deterministic binary PPM (P5) raster of the depth-limited attractor.

    The viewport is the square hull of the point cloud's bounding box with a
    2 percent margin; every point is checked against the a-priori disc of
    radius 1/(1 - |lambda|).
    """
    if pixels < 16 or pixels > 4096:
        raise UsageError("pixels must be in [16, 4096]")
    if tuple(sorted(digits)) not in ((0, 1), (-1, 1)):
        raise UsageError("digit set must be (0, 1) or (-1, 1)")
    if depth < 0:
        raise UsageError("depth must be >= 0")
    if 1 << (depth + 1) > _RASTER_POINT_CAP:
        raise WorkCapExceeded(
            f"2^{depth + 1} raster points exceed the cap of {_RASTER_POINT_CAP}"
        )
    lam = _Lambda(lam_value)
    lf = complex(lam.enclosure(Fraction(1, 2**64)))
    if abs(lf) >= 1.0:
        raise UsageError("the attractor needs |lambda| < 1")

    split = (depth + 1) // 2
    d0, d1 = sorted(digits)
    low = np.zeros(1, dtype=np.complex128)
    p = 1.0 + 0.0j
    for _ in range(split):
        low = np.concatenate([low + d0 * p, low + d1 * p])
        p *= lf
    high = np.zeros(1, dtype=np.complex128)
    ph = p
    for _ in range(depth + 1 - split):
        high = np.concatenate([high + d0 * ph, high + d1 * ph])
        ph *= lf

    radius = 1.0 / (1.0 - abs(lf))
    peak = np.abs(low).max() + np.abs(high).max()
    if peak > radius * (1 + 1e-9):
        raise UsageError("partial sums escaped the a-priori disc")

    re_lo = low.real.min() + high.real.min()
    re_hi = low.real.max() + high.real.max()
    im_lo = low.imag.min() + high.imag.min()
    im_hi = low.imag.max() + high.imag.max()
    side = max(re_hi - re_lo, im_hi - im_lo, 1e-12) * 1.02
    cx = (re_lo + re_hi) / 2.0
    cy = (im_lo + im_hi) / 2.0
    x0 = cx - side / 2.0
    y1 = cy + side / 2.0

    img = np.zeros((pixels, pixels), dtype=np.uint8)
    scale = (pixels - 1) / side
    chunk = max(1, _RASTER_POINT_CAP // max(len(low), 1) // 8)
    for start in range(0, len(high), chunk):
        pts = low[None, :] + high[start : start + chunk, None]
        xi = np.clip(((pts.real - x0) * scale).astype(np.int64), 0, pixels - 1)
        yi = np.clip(((y1 - pts.imag) * scale).astype(np.int64), 0, pixels - 1)
        img[yi.ravel(), xi.ravel()] = 255
    header = f"P5\n{pixels} {pixels}\n255\n".encode("ascii")
    return header + img.tobytes()
