"""Height-one multiples and the three-root product filter.

A polynomial is height-one when every coefficient lies in {-1, 0, 1}.
Whether a given integer polynomial divides such a polynomial of bounded
degree is decided by branch and bound over the cofactor; impossibility for
every degree can sometimes be certified outright, because three distinct
nonzero roots of a height-one polynomial have modulus product at least
sqrt(27/256) = 0.32475...  A product enclosure strictly below 27/256 in
squared terms is therefore a proof that no height-one multiple exists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PrecisionExhausted, UsageError, WorkCapExceeded, ZeroConstantTerm
from .intervals import RatInterval, sqrt_lower, sqrt_upper
from .polyalg import IntPolynomial, divides, squarefree_part
from .roots import DEFAULT_BUDGET_BITS, RootBox, isolate_roots

__all__ = [
    "HeightOneResult",
    "FilterCertificate",
    "SamplerResult",
    "find_height_one_multiple",
    "three_root_filter",
    "claim_sampler",
    "min_triple_product_numeric",
    "height_one_analysis",
    "TRIPLE_PRODUCT_MAG2_BOUND",
    "TRIPLE_PRODUCT_THRESHOLD",
]

# |z1 z2 z3| >= sqrt(27/256) for distinct nonzero roots of a height-one
# polynomial; the filter compares squared products against the exact
# rational 27/256, which is strictly below the decimal threshold used in
# reported certificates.
TRIPLE_PRODUCT_MAG2_BOUND = Fraction(27, 256)
TRIPLE_PRODUCT_THRESHOLD = Fraction(32476, 100000)

DEFAULT_NODE_BUDGET = 10**8
DEFAULT_COFACTOR_CAP = 64


@dataclass(frozen=True)
class FilterCertificate:
    """Three distinct root boxes whose modulus product breaks the bound."""

    boxes: tuple[RootBox, RootBox, RootBox]
    product: RatInterval
    product_mag2: RatInterval

    def __post_init__(self) -> None:
        if not self.product_mag2.hi < TRIPLE_PRODUCT_MAG2_BOUND:
            raise UsageError(
                "filter certificate requires a squared product strictly "
                "below 27/256"
            )


@dataclass(frozen=True)
class HeightOneResult:
    """Outcome of the bounded height-one multiple search."""

    status: str  # "found" | "none-upto" | "filtered"
    searched_degree: int
    coefficient_cap: int
    witness: IntPolynomial | None = None
    filter_certificate: FilterCertificate | None = None

    def __post_init__(self) -> None:
        if self.status not in ("found", "none-upto", "filtered"):
            raise UsageError(f"unknown status {self.status!r}")
        if self.status == "found":
            if self.witness is None or not self.witness.is_height_one():
                raise UsageError("found status requires a height-one witness")


def find_height_one_multiple(
    f: IntPolynomial,
    dmax: int,
    coeff_cap: int = DEFAULT_COFACTOR_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> HeightOneResult:
    """Search for a height-one multiple of f with degree <= dmax.

    Branch and bound over the cofactor g of p = f * g: each product
    coefficient must land in {-1, 0, 1}, so every free coefficient g_j has
    at most three integer candidates (t - s_j) / f_0.  Degrees are tried
    ascending and the first witness is minimal; the cofactor coefficients
    are capped at coeff_cap, which NoneUpTo reports as part of the bound.
    """
    prim = f.primitive()
    if prim.is_zero() or prim.degree < 1:
        raise UsageError("the query polynomial must have degree >= 1")
    if prim.constant == 0:
        raise ZeroConstantTerm(
            "strip powers of x first: height-one multiples of x*h reduce to h"
        )
    if dmax < prim.degree:
        raise UsageError("dmax must be at least deg f")
    if prim.is_height_one():
        return HeightOneResult(
            status="found",
            searched_degree=prim.degree,
            coefficient_cap=coeff_cap,
            witness=prim,
        )

    d = prim.degree
    fc = prim.coeffs
    f0 = fc[0]
    nodes = 0

    for target_deg in range(d, dmax + 1):
        e = target_deg - d
        g = [0] * (e + 1)

        def extend(j: int) -> list[int] | None:
            nonlocal nodes
            if j > e:
                # all cofactor coefficients fixed; verify the tail products
                for k in range(j, target_deg + 1):
                    s = 0
                    for i in range(max(0, k - e), min(d, k) + 1):
                        s += fc[i] * g[k - i]
                    if abs(s) > 1:
                        return None
                return list(g)
            # p_j = f_0 g_j + s_j with s_j fixed by earlier choices
            s = 0
            for i in range(1, min(d, j) + 1):
                s += fc[i] * g[j - i]
            for t in (-1, 0, 1):
                num = t - s
                if num % f0:
                    continue
                cand = num // f0
                if abs(cand) > coeff_cap:
                    continue
                if j == 0 and cand <= 0:
                    continue  # canonical cofactor: g_0 > 0
                if j == e and cand == 0:
                    continue  # exact degree: leading cofactor coefficient != 0
                nodes += 1
                if nodes > node_budget:
                    raise WorkCapExceeded(
                        f"height-one search exceeded {node_budget} nodes"
                    )
                g[j] = cand
                got = extend(j + 1)
                if got is not None:
                    return got
            g[j] = 0
            return None

        found = extend(0)
        if found is not None:
            witness = prim * IntPolynomial.from_coeffs(found)
            if not witness.is_height_one() or not divides(prim, witness):
                raise UsageError("internal witness verification failed")
            return HeightOneResult(
                status="found",
                searched_degree=target_deg,
                coefficient_cap=coeff_cap,
                witness=witness,
            )
    return HeightOneResult(
        status="none-upto",
        searched_degree=dmax,
        coefficient_cap=coeff_cap,
    )


def three_root_filter(
    f: IntPolynomial,
    eps: Fraction = Fraction(1, 2**40),
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> FilterCertificate | None:
    """Certificate that f cannot divide a height-one polynomial, or None.

    Finds three distinct roots whose modulus product is certifiably below
    the height-one triple bound.  Zero roots are stripped first (they say
    nothing about the nonzero-root product) and an enclosure that straddles
    the exact 27/256 threshold yields None, never a certificate.
    """
    if f.degree < 3:
        raise UsageError("the triple filter needs degree >= 3")
    core, _ = squarefree_part(f).strip_power_of_x()
    if core.degree < 3:
        return None
    cur_eps = eps
    for _ in range(8):
        try:
            boxes = isolate_roots(core, eps=cur_eps, budget_bits=budget_bits)
        except PrecisionExhausted:
            return None
        mags = [(rb.box().mag2(), rb) for rb in boxes]
        mags.sort(key=lambda t: (t[0].hi + t[0].lo, t[0].hi))
        triple = mags[:3]
        prod = triple[0][0] * triple[1][0] * triple[2][0]
        if prod.hi < TRIPLE_PRODUCT_MAG2_BOUND:
            product = RatInterval(
                sqrt_lower(max(prod.lo, Fraction(0)), 96), sqrt_upper(prod.hi, 96)
            )
            return FilterCertificate(
                boxes=(triple[0][1], triple[1][1], triple[2][1]),
                product=product,
                product_mag2=prod,
            )
        if prod.lo > TRIPLE_PRODUCT_MAG2_BOUND:
            return None
        cur_eps = cur_eps / 2**16
    return None


def min_triple_product_numeric(f: IntPolynomial) -> float:
    """Floating modulus product of the three smallest roots (sampler metric)."""
    if f.degree < 3:
        raise UsageError("need degree >= 3")
    core, _ = f.primitive().strip_power_of_x()
    if core.degree < 3:
        raise UsageError("fewer than three nonzero roots")
    coeffs = list(reversed(core.coeffs))
    roots = np.roots(np.array(coeffs, dtype=np.float64))
    mods = np.sort(np.abs(roots))
    return float(mods[0] * mods[1] * mods[2])


@dataclass(frozen=True)
class SamplerResult:
    """Global minimum observed by the randomized triple-product stress test."""

    minimum: float
    witness: IntPolynomial
    samples: int
    degree_max: int
    seed: int


def claim_sampler(degree_max: int, samples: int, seed: int) -> SamplerResult:
    """Observed minimum of |z1 z2 z3| over random height-one polynomials.

    Draws fixed-seed random height-one polynomials with nonzero leading and
    constant coefficients, takes the three smallest root moduli of each,
    and reports the global minimum with its witness.  Purely empirical
    evidence for the triple-product bound; no enclosure is claimed.
    """
    if samples < 1:
        raise UsageError("samples must be >= 1")
    if degree_max < 3:
        raise UsageError("degree_max must be >= 3")
    rng = random.Random(seed)
    best = float("inf")
    best_poly: IntPolynomial | None = None
    for _ in range(samples):
        d = rng.randint(3, degree_max)
        coeffs = [rng.choice((-1, 0, 1)) for _ in range(d + 1)]
        coeffs[0] = rng.choice((-1, 1))
        coeffs[d] = rng.choice((-1, 1))
        p = IntPolynomial.from_coeffs(coeffs)
        prod = min_triple_product_numeric(p)
        if prod < best:
            best = prod
            best_poly = p
    assert best_poly is not None
    return SamplerResult(
        minimum=best,
        witness=best_poly,
        samples=samples,
        degree_max=degree_max,
        seed=seed,
    )


def height_one_analysis(
    f: IntPolynomial,
    dmax: int,
    coeff_cap: int = DEFAULT_COFACTOR_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> HeightOneResult:
    """Bounded search first, impossibility filter second.

    Found wins; otherwise a triple-product certificate upgrades the bounded
    NoneUpTo to Filtered, which holds for every degree.
    """
    res = find_height_one_multiple(f, dmax, coeff_cap, node_budget)
    if res.status == "found":
        return res
    cert = three_root_filter(f) if f.degree >= 3 else None
    if cert is not None:
        return HeightOneResult(
            status="filtered",
            searched_degree=res.searched_degree,
            coefficient_cap=coeff_cap,
            filter_certificate=cert,
        )
    return res
