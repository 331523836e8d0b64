"""Classification of real algebraic numbers in (1, 2) by conjugate moduli.

Strict modulus comparisons are settled by interval refinement.  Exact ties
(a conjugate on the unit circle, a conjugate of modulus exactly q, products
of conjugate pairs hitting q^2 or 1/q^2) are settled by exact algebra:

* unit-circle conjugates are counted exactly through gcd(p, reverse(p)) and
  the substitution t = x + 1/x, then pinned down by refining until exactly
  that many discs still straddle the circle;
* equality of two real algebraic numbers given as roots of known polynomials
  is decided through the gcd of those polynomials and certified root discs,
  never through floating-point coincidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import InvariantViolation, PrecisionExhausted, UsageError
from .intervals import RatInterval, decimal_str, sqrt_lower, sqrt_upper
from .polyalg import (
    IntPolynomial,
    certify_irreducible,
    count_real_roots,
    divexact,
    graeffe,
    pair_product_polynomial,
    poly_gcd,
    reverse,
    squarefree_part,
)
from .roots import AlgebraicNumber, all_roots

Refiner = Callable[[Fraction], RatInterval]


@dataclass(frozen=True)
class NumberClass:
    """Modulus-based classification flags with certified evidence.

    ``margins`` maps each true flag to a decimal lower bound on the modulus
    gap backing it ("exact" when the flag rests on an exact-tie certificate).
    Conjugates are the other roots of the classified polynomial;
    ``minimality_verified`` records whether that polynomial was certified
    irreducible, so the conjugate set is provably the right one.
    """

    is_pisot: bool
    is_perron: bool
    is_salem: bool
    is_anti_pisot: bool
    margins: dict[str, str]
    minimality_verified: bool
    conjugates_inside: int
    conjugates_on_circle: int
    conjugates_outside: int
    monic: bool
    notes: tuple[str, ...] = ()


# -- exact equality of real algebraic numbers ---------------------------------


def negation_of(num: AlgebraicNumber) -> AlgebraicNumber:
    """The algebraic number -x, with mirrored defining data and disc."""
    rb = num.root
    from dataclasses import replace

    mirrored = replace(rb, center_re=-rb.center_re, center_im=-rb.center_im)
    fac = num.factor.scale_arg_neg().primitive()
    if fac.leading < 0:
        fac = -fac
    defin = num.defining.scale_arg_neg().primitive()
    if defin.leading < 0:
        defin = -defin
    return AlgebraicNumber(defin, fac, mirrored, num.budget_bits)


def locate_root(
    target: IntPolynomial,
    refine: Refiner,
    budget_bits: int = 4096,
) -> AlgebraicNumber:
    """Identify a real value, known to be a root of ``target``, among its roots.

    ``refine(eps)`` must return enclosures of the value that shrink with eps.
    The value lies in exactly one certified disc; once the enclosure excludes
    every other real-root disc, that disc is it.
    """
    sq = squarefree_part(target)
    nums = [n for n in all_roots(sq, budget_bits=budget_bits) if n.is_real]
    bits = 48
    while bits <= budget_bits:
        iv = refine(Fraction(1, 2**bits))
        hits = [n for n in nums if n.interval().overlaps(iv)]
        if len(hits) == 1:
            return hits[0]
        if not hits:
            raise InvariantViolation(
                f"value in {iv.decimal_pair(6)} is not a real root of {target}"
            )
        bits *= 2
    raise PrecisionExhausted(f"could not attribute value to a single root of {target}")


def _contained_in_disc(w: AlgebraicNumber, num: AlgebraicNumber) -> bool | None:
    """Is w's value inside num's disc?  None while undecided (refine more)."""
    wb, nb = w.root, num.root
    dr = wb.center_re - nb.center_re
    di = wb.center_im - nb.center_im
    d2 = dr * dr + di * di
    inner = nb.radius - wb.radius
    if inner >= 0 and d2 <= inner * inner:
        return True
    outer = nb.radius + wb.radius
    if d2 > outer * outer:
        return False
    return None


def same_value(a: AlgebraicNumber, b: AlgebraicNumber, budget_bits: int = 4096) -> bool:
    """Exact equality of two real algebraic numbers with certified discs.

    Equal values are a common root of both squarefree factors, hence of their
    gcd; a trivial gcd is an immediate (and cheap) proof of inequality.  For a
    nontrivial gcd, each of its real roots is tested for membership in both
    discs; disc membership pins the value exactly because each certified disc
    contains exactly one root of its own factor.
    """
    g = poly_gcd(a.factor, b.factor)
    if g.degree < 1:
        return False
    for w in all_roots(g, budget_bits=budget_bits):
        if not w.is_real:
            continue
        if w.root.is_exact:
            # Rational candidate: decide by exact evaluation and closed-disc
            # membership (a disc's unique factor root is w iff w is a root
            # lying in the disc).
            ok = True
            for num in (a, b):
                if num.factor(w.root.center_re) != 0:
                    ok = False
                    break
                dr = w.root.center_re - num.root.center_re
                di = num.root.center_im
                if dr * dr + di * di > num.root.radius ** 2:
                    ok = False
                    break
            if ok:
                return True
            continue
        wa = w
        ok_a = ok_b = None
        bits = 48
        while bits <= budget_bits and (ok_a is None or ok_b is None):
            if ok_a is None:
                ok_a = _contained_in_disc(wa, a)
            if ok_b is None:
                ok_b = _contained_in_disc(wa, b)
            if ok_a is False or ok_b is False:
                break
            if ok_a is None or ok_b is None:
                wa = wa.refined(Fraction(1, 2**bits))
                bits *= 2
        if ok_a is None or ok_b is None:
            raise PrecisionExhausted("root membership undecided within budget")
        if ok_a and ok_b:
            return True
    return False


# -- unit-circle root counting -------------------------------------------------


def _fold_palindromic(h2: IntPolynomial) -> IntPolynomial:
    """For palindromic h2 of even degree 2m, the degree-m w with h2 = x^m w(x+1/x)."""
    m = h2.degree // 2
    c = h2.coeffs
    # X^j + X^-j in t = X + 1/X: T0 = 2, T1 = t, T_{j+1} = t*T_j - T_{j-1}
    t_prev = IntPolynomial((2,))
    t_cur = IntPolynomial((0, 1))
    w = IntPolynomial((c[m],))
    for j in range(1, m + 1):
        w = w + t_cur * IntPolynomial((c[m + j],))
        t_prev, t_cur = t_cur, IntPolynomial((0, 1)) * t_cur - t_prev
    return w


def unit_circle_count(p: IntPolynomial) -> int:
    """Exact number of distinct roots of p on the unit circle.

    Roots on the circle are closed under inversion, so they live in
    h = gcd(p, reverse(p)).  After splitting off x = 1 and x = -1, h is
    palindromic of even degree and its circle roots correspond one-to-two
    with the real roots of the folded polynomial in t = x + 1/x on (-2, 2).
    """
    q = squarefree_part(p)
    q, _ = q.strip_power_of_x()
    if q.degree < 1:
        return 0
    h = poly_gcd(q, reverse(q))
    if h.leading < 0:
        h = -h
    if h.degree < 1:
        return 0
    count = 0
    for val in (Fraction(1), Fraction(-1)):
        if h(val) == 0:
            count += 1
            h = divexact(h, IntPolynomial((-val.numerator, val.denominator)))
    if h.degree < 1:
        return count
    if reverse(h) != h or h.degree % 2 != 0:
        raise InvariantViolation("reciprocal part is not an even palindrome")
    w = _fold_palindromic(h)
    # w(+-2) != 0 since x = +-1 was split off, so the closed count is the open one.
    count += 2 * count_real_roots(w, Fraction(-2), Fraction(2))
    return count


def unit_circle_split(
    nums: list[AlgebraicNumber],
    circle_count: int,
    budget_bits: int = 4096,
) -> tuple[set[int], list[AlgebraicNumber]]:
    """Indices of the roots lying exactly on the unit circle.

    A circle root straddles |z| = 1 at every precision, so refining until
    exactly ``circle_count`` discs still straddle identifies them soundly.
    """
    work = list(nums)
    bits = 48
    while True:
        straddle = [i for i, n in enumerate(work) if n.mag2().contains(Fraction(1))]
        if len(straddle) < circle_count:
            raise InvariantViolation("fewer straddling discs than certified circle roots")
        if len(straddle) == circle_count:
            return set(straddle), work
        if bits > budget_bits:
            raise PrecisionExhausted("could not separate near-circle roots from circle roots")
        eps = Fraction(1, 2**bits)
        for i in straddle:
            work[i] = work[i].refined(eps)
        bits *= 2


# -- modulus comparisons with exact tie handling --------------------------------


def _decide_against_one(
    num: AlgebraicNumber, on_circle: bool, budget_bits: int
) -> tuple[int, AlgebraicNumber]:
    """-1 inside, 0 on circle (exact), +1 outside; refined as needed."""
    if on_circle:
        return 0, num
    bits = 48
    cur = num
    while bits <= budget_bits * 2:
        m2 = cur.mag2()
        if m2.strictly_less(1):
            return -1, cur
        if m2.strictly_greater(1):
            return 1, cur
        cur = cur.refined(Fraction(1, 2**bits))
        bits *= 2
    raise PrecisionExhausted("modulus comparison against 1 exhausted budget")


def modulus_equals_q(
    p: IntPolynomial,
    alpha: AlgebraicNumber,
    q: AlgebraicNumber,
    budget_bits: int = 4096,
) -> bool:
    """Exact test |alpha| = q for a conjugate alpha of the root q of p.

    Real alpha: alpha = -q, an equality of algebraic numbers.  Non-real
    alpha: alpha*conj(alpha) is a root of the pairwise-product polynomial
    and q^2 is a root of the root-squaring transform; compare those.
    """
    if alpha.is_real:
        return same_value(alpha, negation_of(q), budget_bits)
    pp = pair_product_polynomial(squarefree_part(p))
    gr = graeffe(squarefree_part(p))
    if poly_gcd(squarefree_part(pp), squarefree_part(gr)).degree < 1:
        return False
    state_a = {"n": alpha}
    state_q = {"n": q}

    def ref_aa(eps: Fraction) -> RatInterval:
        state_a["n"] = state_a["n"].refined(eps)
        return state_a["n"].mag2()

    def ref_q2(eps: Fraction) -> RatInterval:
        state_q["n"] = state_q["n"].refined(eps)
        return state_q["n"].interval().square()

    x1 = locate_root(pp, ref_aa, budget_bits)
    x2 = locate_root(gr, ref_q2, budget_bits)
    return same_value(x1, x2, budget_bits)


def modulus_product_is_one(
    p: IntPolynomial,
    alpha: AlgebraicNumber,
    q: AlgebraicNumber,
    budget_bits: int = 4096,
) -> bool:
    """Exact test |alpha| * q = 1 for non-real alpha; real alpha: alpha = +-1/q.

    Non-real: alpha*conj(alpha) must equal 1/q^2, a root of the reversed
    root-squaring transform.
    """
    sq = squarefree_part(p)
    sq, _ = sq.strip_power_of_x()
    if alpha.is_real:
        rev = reverse(sq)
        # 1/q is a root of rev; -1/q is a root of rev(-x).
        for target_poly, sign in ((rev, 1), (rev.scale_arg_neg(), -1)):
            g = poly_gcd(alpha.factor, target_poly.primitive())
            if g.degree < 1:
                continue
            state = {"n": q}

            def ref(eps: Fraction, s=sign) -> RatInterval:
                state["n"] = state["n"].refined(eps)
                iv = state["n"].interval().inverse()
                return iv if s == 1 else -iv

            cand = locate_root(target_poly, ref, budget_bits)
            if same_value(alpha, cand, budget_bits):
                return True
        return False
    pp = pair_product_polynomial(sq)
    target = reverse(graeffe(sq))
    if poly_gcd(squarefree_part(pp), squarefree_part(target)).degree < 1:
        return False
    state_a = {"n": alpha}
    state_q = {"n": q}

    def ref_aa(eps: Fraction) -> RatInterval:
        state_a["n"] = state_a["n"].refined(eps)
        return state_a["n"].mag2()

    def ref_invq2(eps: Fraction) -> RatInterval:
        state_q["n"] = state_q["n"].refined(eps)
        return state_q["n"].interval().square().inverse()

    x1 = locate_root(pp, ref_aa, budget_bits)
    x2 = locate_root(target, ref_invq2, budget_bits)
    return same_value(x1, x2, budget_bits)


def _decide_against_q(
    p: IntPolynomial,
    alpha: AlgebraicNumber,
    q: AlgebraicNumber,
    budget_bits: int,
) -> tuple[int, AlgebraicNumber, AlgebraicNumber]:
    """-1 for |alpha| < q, 0 for exact tie, +1 for |alpha| > q."""
    bits = 48
    a, qq = alpha, q
    tie_checked = False
    while bits <= budget_bits * 2:
        am2 = a.mag2()
        qm2 = qq.interval().square()
        if am2.strictly_less(qm2):
            return -1, a, qq
        if am2.strictly_greater(qm2):
            return 1, a, qq
        if bits >= 192 and not tie_checked:
            tie_checked = True
            if modulus_equals_q(p, a, qq, budget_bits):
                return 0, a, qq
        eps = Fraction(1, 2**bits)
        a = a.refined(eps)
        qq = qq.refined(eps)
        bits *= 2
    raise PrecisionExhausted("modulus comparison against q exhausted budget")


# -- the classifier --------------------------------------------------------------


def _match_index(nums: list[AlgebraicNumber], root: AlgebraicNumber, budget_bits: int) -> int:
    cur = root
    bits = 64
    while bits <= budget_bits * 2:
        hits = [
            i
            for i, n in enumerate(nums)
            if n.root.dist2_to(cur.root) <= (n.root.radius + cur.root.radius) ** 2
        ]
        if len(hits) == 1:
            return hits[0]
        cur = cur.refined(Fraction(1, 2**bits))
        bits *= 2
    raise PrecisionExhausted("could not match the selected root to an isolation disc")


def classify(p: IntPolynomial, root: AlgebraicNumber) -> NumberClass:
    """Classify the root of squarefree p against its conjugate moduli.

    Conjugates are the other roots of p; when p is not certifiably
    irreducible this is a superset of the true conjugate set and
    ``minimality_verified`` is False.  Pisot, Perron and Salem additionally
    require the leading coefficient to be +-1 (an algebraic integer).
    """
    prim = p.primitive()
    if prim.degree < 1:
        raise UsageError("cannot classify a constant polynomial")
    if poly_gcd(prim, prim.derivative()).degree != 0:
        raise UsageError("classification requires a squarefree polynomial")
    if not root.is_real:
        raise UsageError("classification target must be a real root")
    budget = root.budget_bits
    probe = root
    while True:
        iv = probe.interval()
        if iv.strictly_greater(1) and iv.strictly_less(2):
            break
        if iv.strictly_less(1) or iv.strictly_greater(2):
            raise UsageError("classification target must lie in the open interval (1, 2)")
        if (iv.contains(Fraction(1)) and probe.defining(Fraction(1)) == 0) or (
            iv.contains(Fraction(2)) and probe.defining(Fraction(2)) == 0
        ):
            raise UsageError("classification target must lie in the open interval (1, 2)")
        probe = probe.refined(probe.root.radius / 16)
    monic = prim.is_monic_up_to_sign()
    notes: list[str] = []
    if not monic:
        notes.append("leading coefficient is not +-1: Pisot/Perron/Salem are off the table")

    nums = all_roots(prim, budget_bits=budget)
    qi = _match_index(nums, root, budget)
    k = unit_circle_count(prim)
    on_circle, nums = unit_circle_split(nums, k, budget)
    if qi in on_circle:
        raise InvariantViolation("the selected root in (1,2) cannot lie on the unit circle")

    inside = outside = circle = 0
    below_q = ties_q = above_q = 0
    q = nums[qi]
    min_inside_gap: Fraction | None = None
    min_outside_gap: Fraction | None = None
    min_q_gap: Fraction | None = None
    for i, alpha in enumerate(nums):
        if i == qi:
            continue
        side, alpha = _decide_against_one(alpha, i in on_circle, budget)
        if side == 0:
            circle += 1
        elif side < 0:
            inside += 1
            gap = 1 - sqrt_upper(alpha.mag2().hi)
            min_inside_gap = gap if min_inside_gap is None else min(min_inside_gap, gap)
        else:
            outside += 1
            gap = sqrt_lower(alpha.mag2().lo) - 1
            min_outside_gap = gap if min_outside_gap is None else min(min_outside_gap, gap)
        vs_q, alpha, q = _decide_against_q(prim, alpha, q, budget)
        if vs_q < 0:
            below_q += 1
            gap = q.interval().lo - sqrt_upper(alpha.mag2().hi)
            min_q_gap = gap if min_q_gap is None else min(min_q_gap, gap)
        elif vs_q == 0:
            ties_q += 1
        else:
            above_q += 1

    n_conj = len(nums) - 1
    is_perron = monic and above_q == 0 and ties_q == 0 and below_q == n_conj
    is_pisot = monic and inside == n_conj and circle == 0 and outside == 0
    is_salem = monic and outside == 0 and circle >= 1
    is_anti = inside == 1 and outside >= 1

    margins: dict[str, str] = {}
    if is_pisot and min_inside_gap is not None:
        margins["pisot"] = decimal_str(min_inside_gap, 10)
    if is_perron and min_q_gap is not None:
        margins["perron"] = decimal_str(min_q_gap, 10)
    if is_salem:
        margins["salem"] = "exact"
    if is_anti:
        parts = [g for g in (min_inside_gap, min_outside_gap) if g is not None]
        margins["anti_pisot"] = decimal_str(min(parts), 10) if parts else "exact"

    verified, _ = certify_irreducible(prim)
    return NumberClass(
        is_pisot=is_pisot,
        is_perron=is_perron,
        is_salem=is_salem,
        is_anti_pisot=is_anti,
        margins=margins,
        minimality_verified=verified,
        conjugates_inside=inside,
        conjugates_on_circle=circle,
        conjugates_outside=outside,
        monic=monic,
        notes=tuple(notes),
    )
