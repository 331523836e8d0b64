"""Decision rules for the gap behaviour of signed power-sum spectra.

The engine turns certified facts about a base q in (1, 2) -- conjugate
geometry, height-one annihilators, power structure -- into one of four
conclusions about the gaps of Lambda(q).  Every fired rule carries a
certificate with the exact quantities that were compared, so a verdict can
be re-checked without re-running the searches that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .attractor import _purely_imaginary, interior_criterion
from .classify import (
    NumberClass,
    _decide_against_one,
    _decide_against_q,
    _match_index,
    classify,
    locate_root,
    modulus_product_is_one,
    same_value,
    unit_circle_count,
)
from .counting import growth_ratio
from .errors import InvariantViolation, PrecisionExhausted, UsageError, WorkCapExceeded
from .heightsearch import find_height_one_multiple, three_root_filter
from .intervals import RatInterval
from .polyalg import (
    IntPolynomial,
    certify_irreducible,
    count_real_roots,
    detect_power_structure,
    graeffe,
    negation_conjugate_test,
    pair_product_polynomial,
    poly_gcd,
    reverse,
    squarefree_part,
)
from .roots import DEFAULT_BUDGET_BITS, AlgebraicNumber, all_roots, select_root
from .spectrum import smallest_positive_lambda

DENSE_L0 = "DenseL0"
DENSE_L0_AND_L0 = "DenseL0AndL0"
DISCRETE = "Discrete"
INCONCLUSIVE = "Inconclusive"

# deepest degree the height-one multiple search explores by default
DEFAULT_SEARCH_DEGREE = 20

_DEC = 12

RULE_IDS = ("R0", "R1", "R2", "R3", "R4", "R5", "R6", "R7")


@dataclass(frozen=True)
class RuleRecord:
    """One fired rule: its conclusion and a re-checkable certificate."""

    rule_id: str
    conclusion: str
    citation: str
    certificate: dict

    def __post_init__(self) -> None:
        if self.rule_id not in RULE_IDS:
            raise InvariantViolation(f"unknown rule id {self.rule_id!r}")
        if self.conclusion not in (DENSE_L0, DENSE_L0_AND_L0, DISCRETE):
            raise InvariantViolation("a fired rule must decide something")


@dataclass(frozen=True)
class Verdict:
    """Aggregated conclusion with the full list of rules that fired.

    ``liminf_flag`` and ``limsup_flag`` report the two gap quantities
    independently; one is never inferred from the other beyond the
    implication limsup = 0 => liminf = 0.
    """

    conclusion: str
    rules_applied: tuple[RuleRecord, ...]
    liminf_flag: str
    limsup_flag: str
    q_decimal: str
    q_squared_below_two: bool
    classification: NumberClass
    caveats: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        ids = self.rule_ids
        if (self.conclusion == DISCRETE) != ("R1" in ids):
            raise InvariantViolation("Discrete and the Pisot rule must coincide")
        if "R1" in ids and len(ids) > 1:
            raise InvariantViolation("the Pisot rule preempts every denseness rule")
        if "R1" in ids and "R3" in ids:
            raise InvariantViolation("uniform discreteness and a small conjugate cannot coexist")
        if self.conclusion == DENSE_L0_AND_L0 and not self.q_squared_below_two:
            raise InvariantViolation("a vanishing limsup needs q^2 < 2 certified")
        if self.conclusion in (DENSE_L0, DENSE_L0_AND_L0) and not ids:
            raise InvariantViolation("a denseness conclusion needs at least one fired rule")

    @property
    def rule_ids(self) -> tuple[str, ...]:
        return tuple(r.rule_id for r in self.rules_applied)


def _box_decimals(num: AlgebraicNumber) -> dict:
    re_s, im_s = num.box().decimal_pair(_DEC)
    return {"re": re_s, "im": im_s}


def _iv_decimals(iv: RatInterval) -> dict:
    lo, hi = iv.decimal_pair(_DEC)
    return {"lo": lo, "hi": hi}


def resolve_root(
    f: IntPolynomial,
    index: int | None = None,
    interval: tuple[Fraction, Fraction] | None = None,
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> AlgebraicNumber:
    """Pick the working root by sorted index, by a real interval, or default.

    The interval form selects the unique real root inside the open interval
    (a, b); zero or several candidates raise UsageError.
    """
    if index is not None and interval is not None:
        raise UsageError("pick the root by index or by interval, not both")
    if interval is None:
        return select_root(f, index, budget_bits=budget_bits)
    a, b = interval
    if not a < b:
        raise UsageError("root interval needs a < b")
    hits = []
    for num in all_roots(f, budget_bits=budget_bits):
        if not num.is_real:
            continue
        cur = num
        while True:
            iv = cur.interval()
            if iv.strictly_greater(a) and iv.strictly_less(b):
                hits.append(cur)
                break
            if iv.strictly_less(a) or iv.strictly_greater(b):
                break
            if (iv.contains(a) and cur.defining(a) == 0) or (
                iv.contains(b) and cur.defining(b) == 0
            ):
                break
            cur = cur.refined(cur.root.radius / 16)
    if len(hits) != 1:
        raise UsageError(
            f"the interval ({a}, {b}) selects {len(hits)} real roots; need exactly one"
        )
    return hits[0]


def _q_squared_below_two(work: IntPolynomial, q: AlgebraicNumber, budget_bits: int) -> bool:
    """Certified q^2 < 2, with the tie q^2 = 2 settled through graeffe(work)."""
    g = graeffe(work)
    if g(Fraction(2)) == 0:
        # some root of work squares to 2; q itself does iff x^2 - 2 shares q
        shared = poly_gcd(q.factor, IntPolynomial.from_coeffs([-2, 0, 1]))
        if shared.degree >= 1:
            iv = q.interval()
            if count_real_roots(shared, iv.lo, iv.hi) >= 1:
                return False
    bits = 48
    cur = q
    while bits <= budget_bits * 2:
        s = cur.interval().square()
        if s.strictly_less(2):
            return True
        if s.strictly_greater(2):
            return False
        cur = cur.refined(Fraction(1, 2**bits))
        bits *= 2
    raise PrecisionExhausted("comparing q^2 against 2 exhausted the budget")


def _decide_product_against_one(
    work: IntPolynomial,
    alpha: AlgebraicNumber,
    q: AlgebraicNumber,
    budget_bits: int,
) -> tuple[int, AlgebraicNumber, AlgebraicNumber]:
    """-1 for q|alpha| < 1, 0 for the exact tie, +1 for q|alpha| > 1."""
    bits = 48
    a, qq = alpha, q
    tie_checked = False
    while bits <= budget_bits * 2:
        prod2 = a.mag2() * qq.interval().square()
        if prod2.strictly_less(1):
            return -1, a, qq
        if prod2.strictly_greater(1):
            return 1, a, qq
        if bits >= 192 and not tie_checked:
            tie_checked = True
            if modulus_product_is_one(work, a, qq, budget_bits):
                return 0, a, qq
        eps = Fraction(1, 2**bits)
        a = a.refined(eps)
        qq = qq.refined(eps)
        bits *= 2
    raise PrecisionExhausted("comparing q*|alpha| against 1 exhausted the budget")


def _mag2_times_q_is_one(
    work: IntPolynomial,
    lam: AlgebraicNumber,
    q: AlgebraicNumber,
    budget_bits: int,
) -> bool:
    """Exact test q * |lambda|^2 = 1, i.e. |lambda|^2 equals the root 1/q."""
    rev = reverse(work).primitive()
    if lam.is_real:
        source = squarefree_part(graeffe(work))
    else:
        source = squarefree_part(pair_product_polynomial(work))
    if poly_gcd(source, squarefree_part(rev)).degree < 1:
        return False
    state_l = {"n": lam}
    state_q = {"n": q}

    def ref_m2(eps: Fraction) -> RatInterval:
        state_l["n"] = state_l["n"].refined(eps)
        return state_l["n"].mag2()

    def ref_invq(eps: Fraction) -> RatInterval:
        state_q["n"] = state_q["n"].refined(eps)
        return state_q["n"].interval().inverse()

    x1 = locate_root(source, ref_m2, budget_bits)
    x2 = locate_root(rev, ref_invq, budget_bits)
    return same_value(x1, x2, budget_bits)


def _inverse_mag2_exceeds_q(
    work: IntPolynomial,
    lam: AlgebraicNumber,
    q: AlgebraicNumber,
    budget_bits: int,
) -> tuple[bool, AlgebraicNumber, AlgebraicNumber]:
    """Certified |lambda|^(-2) > q; the exact tie counts as not exceeding."""
    bits = 48
    a, qq = lam, q
    tie_checked = False
    while bits <= budget_bits * 2:
        t = a.mag2() * qq.interval()
        if t.strictly_less(1):
            return True, a, qq
        if t.strictly_greater(1):
            return False, a, qq
        if bits >= 384 and not tie_checked:
            tie_checked = True
            if _mag2_times_q_is_one(work, a, qq, budget_bits):
                return False, a, qq
        eps = Fraction(1, 2**bits)
        a = a.refined(eps)
        qq = qq.refined(eps)
        bits *= 2
    raise PrecisionExhausted("comparing |lambda|^(-2) against q exhausted the budget")


def _square_is_real(lam: AlgebraicNumber, budget_bits: int) -> bool:
    """For non-real lam: is lam^2 real, i.e. is lam purely imaginary?"""
    bits = 48
    cur = lam
    while bits <= budget_bits * 2:
        re = cur.box().re
        if not re.contains(Fraction(0)):
            return False
        if bits >= 384:
            return _purely_imaginary(cur, budget_bits)
        cur = cur.refined(Fraction(1, 2**bits))
        bits *= 2
    raise PrecisionExhausted("deciding whether a conjugate is purely imaginary exhausted the budget")


def _defines_pisot(
    g: IntPolynomial, beta: AlgebraicNumber, budget_bits: int
) -> tuple[bool, str | None]:
    """Does g define beta > 1 as a Pisot number (within g's root set)?"""
    prim = g.primitive()
    if not prim.is_monic_up_to_sign():
        return False, None
    if unit_circle_count(prim) > 0:
        return False, None
    nums = all_roots(prim, budget_bits=budget_bits)
    bi = _match_index(nums, beta, budget_bits)
    worst: RatInterval | None = None
    for i, other in enumerate(nums):
        if i == bi:
            continue
        side, other = _decide_against_one(other, False, budget_bits)
        if side >= 0:
            return False, None
        m2 = other.mag2()
        if worst is None or m2.hi > worst.hi:
            worst = m2
    if worst is None:
        return True, "no conjugates"
    return True, _iv_decimals(worst)["hi"]


# -- the eight rules ---------------------------------------------------------------


def _rule_pisot(nc: NumberClass) -> RuleRecord | None:
    if not nc.is_pisot:
        return None
    return RuleRecord(
        rule_id="R1",
        conclusion=DISCRETE,
        citation=(
            "q is a Pisot number: nonzero signed power sums keep a uniform "
            "positive distance from zero, so the spectrum is uniformly discrete "
            "and both gap flags are positive"
        ),
        certificate={
            "pisot_margin": nc.margins.get("pisot", "exact"),
            "conjugates_inside": nc.conjugates_inside,
            "minimality_verified": nc.minimality_verified,
        },
    )


def _rule_height_one(
    work: IntPolynomial,
    q: AlgebraicNumber,
    below2: bool,
    dmax: int,
    budget_bits: int,
    caveats: list[str],
) -> tuple[RuleRecord | None, bool, IntPolynomial | None]:
    """R0: certified absence of height-one annihilators, direct and squared.

    Returns (record, height_one_premise_confirmed, witness).  The premise flag
    reports whether q is known to be a root of some height-one polynomial,
    which is what the anti-Pisot rule needs.
    """
    core, _ = work.strip_power_of_x()
    confirmed = False
    witness: IntPolynomial | None = None
    direct_cert: dict | None = None
    if core.is_height_one():
        confirmed = True
        witness = core
    else:
        try:
            res = find_height_one_multiple(core, max(dmax, core.degree))
        except WorkCapExceeded:
            res = None
            caveats.append("the direct height-one multiple search hit its work cap")
        if res is not None and res.status == "found":
            confirmed = True
            witness = res.witness
        elif res is not None and core.degree >= 3:
            for tag, target in (("defining", core), ("reversed", reverse(core).primitive())):
                cert = three_root_filter(target, budget_bits=budget_bits)
                if cert is not None:
                    direct_cert = {
                        "searched_degree": res.searched_degree,
                        "filter_target": tag,
                        "target_polynomial": target.to_text(),
                        "triple_product": _iv_decimals(cert.product),
                        "threshold": "0.32476 (squared bound 27/256)",
                    }
                    break

    composite_cert: dict | None = None
    if below2:
        g2 = graeffe(work)
        state = {"n": q}

        def ref(eps: Fraction) -> RatInterval:
            state["n"] = state["n"].refined(eps)
            return state["n"].interval().square()

        q2 = locate_root(g2, ref, budget_bits)
        mp2 = q2.factor
        irreducible, _ = certify_irreducible(mp2)
        if not irreducible:
            caveats.append(
                "the polynomial located for q^2 is not certified minimal: "
                "the squared height-one route was skipped"
            )
        elif not mp2.is_height_one():
            try:
                res2 = find_height_one_multiple(mp2, max(dmax, mp2.degree))
            except WorkCapExceeded:
                res2 = None
                caveats.append("the squared height-one multiple search hit its work cap")
            if res2 is not None and res2.status == "none-upto" and mp2.degree >= 3:
                for tag, target in (("defining", mp2), ("reversed", reverse(mp2).primitive())):
                    cert = three_root_filter(target, budget_bits=budget_bits)
                    if cert is not None:
                        composite_cert = {
                            "squared_polynomial": mp2.to_text(),
                            "searched_degree": res2.searched_degree,
                            "filter_target": tag,
                            "target_polynomial": target.to_text(),
                            "triple_product": _iv_decimals(cert.product),
                            "threshold": "0.32476 (squared bound 27/256)",
                        }
                        break

    if direct_cert is None and composite_cert is None:
        return None, confirmed, witness
    if composite_cert is not None:
        conclusion = DENSE_L0_AND_L0
        citation = (
            "no height-one polynomial annihilates q^2 (bounded search plus the "
            "three-root product filter), so all squared-base digit sums are "
            "distinct, the liminf gap at q^2 is zero, and q^2 < 2 turns that "
            "into a vanishing limsup gap at q"
        )
    else:
        conclusion = DENSE_L0
        citation = (
            "no height-one polynomial annihilates q (bounded search plus the "
            "three-root product filter), so all 2^(n+1) digit sums are distinct "
            "and the pigeonhole forces the liminf gap to zero"
        )
    certificate = {"q_squared_below_two": below2}
    if direct_cert is not None:
        certificate["direct"] = direct_cert
    if composite_cert is not None:
        certificate["composite"] = composite_cert
    return RuleRecord("R0", conclusion, citation, certificate), confirmed, witness


def _rule_non_perron(
    work: IntPolynomial,
    q: AlgebraicNumber,
    conj: list[AlgebraicNumber],
    nc: NumberClass,
    below2: bool,
    budget_bits: int,
) -> RuleRecord | None:
    if not nc.monic or nc.is_perron:
        return None
    strict: AlgebraicNumber | None = None
    tie: AlgebraicNumber | None = None
    for alpha in conj:
        side, alpha, q = _decide_against_q(work, alpha, q, budget_bits)
        if side > 0:
            strict = alpha
            break
        if side == 0 and tie is None:
            tie = alpha
    witness = strict if strict is not None else tie
    if witness is None:
        raise InvariantViolation("non-Perron classification without a dominating conjugate")
    upgraded = below2 and not negation_conjugate_test(work)
    citation = (
        "a conjugate u matches or exceeds q in modulus, so digit strings "
        "inject into power sums of u and z_n >> q^n: the liminf gap is zero"
    )
    if upgraded:
        citation += (
            "; q^2 < 2 and -q is not a conjugate of q, so the squared base "
            "inherits a dominating conjugate and the limsup gap vanishes too"
        )
    return RuleRecord(
        rule_id="R2",
        conclusion=DENSE_L0_AND_L0 if upgraded else DENSE_L0,
        citation=citation,
        certificate={
            "witness": _box_decimals(witness),
            "witness_modulus_squared": _iv_decimals(witness.mag2()),
            "q_modulus_squared": _iv_decimals(q.interval().square()),
            "comparison": "greater" if strict is not None else "equal",
            "q_squared_below_two": below2,
            "negation_is_conjugate": negation_conjugate_test(work),
        },
    )


def _rule_conjugate_products(
    work: IntPolynomial,
    q: AlgebraicNumber,
    conj: list[AlgebraicNumber],
    below2: bool,
    budget_bits: int,
) -> tuple[RuleRecord | None, RuleRecord | None]:
    """R3 (q|alpha| < 1) and R4 (non-real with q|alpha| = 1) in one sweep."""
    small: AlgebraicNumber | None = None
    unit: AlgebraicNumber | None = None
    for alpha in conj:
        quick = alpha.mag2() * q.interval().square()
        if quick.strictly_greater(1):
            continue
        side, alpha, q = _decide_product_against_one(work, alpha, q, budget_bits)
        if side < 0 and small is None:
            small = alpha
        elif side == 0 and not alpha.is_real and unit is None:
            unit = alpha
        if small is not None and unit is not None:
            break
    upgrade_tail = (
        "; q^2 < 2, so the same argument applied to q^2 drives the limsup gap to zero"
    )
    r3 = None
    if small is not None:
        r3 = RuleRecord(
            rule_id="R3",
            conclusion=DENSE_L0_AND_L0 if below2 else DENSE_L0,
            citation=(
                "a conjugate alpha satisfies q*|alpha| < 1: counting the sums "
                "through 1/alpha gives z_n >> q^n, so the liminf gap is zero"
                + (upgrade_tail if below2 else "")
            ),
            certificate={
                "witness": _box_decimals(small),
                "product_squared": _iv_decimals(small.mag2() * q.interval().square()),
                "q_squared_below_two": below2,
            },
        )
    r4 = None
    if unit is not None:
        # The limsup route squares the witness: it needs alpha^2 non-real, or
        # a defining polynomial in x^4 (then -q^2 is conjugate to q^2).  A
        # purely imaginary witness without that structure leaves the limsup
        # flag undetermined.
        four_divisible = all(i % 4 == 0 for i, c in enumerate(work.coeffs) if c != 0)
        blocked = (
            below2
            and not four_divisible
            and _square_is_real(unit, budget_bits)
        )
        upgraded = below2 and not blocked
        citation = (
            "a non-real conjugate alpha satisfies q*|alpha| = 1 exactly: the "
            "Galois action then yields a conjugate of modulus at least q, so "
            "z_n >> q^n and the liminf gap is zero"
        )
        if upgraded:
            citation += (
                "; q^2 < 2 and alpha^2 stays a usable witness for the squared "
                "base, so the limsup gap vanishes too"
            )
        elif blocked:
            citation += (
                "; the witness is purely imaginary and the polynomial is not "
                "a polynomial in x^4, so the squared-base route is unavailable "
                "and the limsup flag stays open"
            )
        r4 = RuleRecord(
            rule_id="R4",
            conclusion=DENSE_L0_AND_L0 if upgraded else DENSE_L0,
            citation=citation,
            certificate={
                "witness": _box_decimals(unit),
                "tie_route": "pairwise-product polynomial shares the root 1/q^2",
                "q_squared_below_two": below2,
                "witness_square_real": blocked,
            },
        )
    return r3, r4


def _rule_anti_pisot(
    nc: NumberClass, confirmed: bool, witness: IntPolynomial | None
) -> RuleRecord | None:
    if not (nc.is_anti_pisot and confirmed):
        return None
    return RuleRecord(
        rule_id="R5",
        conclusion=DENSE_L0,
        citation=(
            "q is anti-Pisot and annihilated by a height-one polynomial: the "
            "conjugate product has modulus 1, so the single conjugate inside "
            "the unit disc satisfies q*|alpha| < 1 and the liminf gap is zero"
        ),
        certificate={
            "conjugates_inside": nc.conjugates_inside,
            "conjugates_outside": nc.conjugates_outside,
            "anti_pisot_margin": nc.margins.get("anti_pisot", "exact"),
            "height_one_witness": None if witness is None else witness.to_text(),
        },
    )


def _rule_sqrt_pisot(
    work: IntPolynomial,
    q: AlgebraicNumber,
    nc: NumberClass,
    budget_bits: int,
) -> RuleRecord | None:
    if nc.is_pisot:
        return None
    m, g = detect_power_structure(work)
    if m != 2:
        return None
    state = {"n": q}

    def ref(eps: Fraction) -> RatInterval:
        state["n"] = state["n"].refined(eps)
        return state["n"].interval().square()

    beta = locate_root(g, ref, budget_bits)
    pisot, margin = _defines_pisot(g, beta, budget_bits)
    if not pisot:
        return None
    return RuleRecord(
        rule_id="R6",
        conclusion=DENSE_L0,
        citation=(
            "q is the square root of the Pisot number q^2 and is not itself "
            "Pisot, so -q must be a conjugate of q; that makes q non-Perron "
            "and the liminf gap zero"
        ),
        certificate={
            "inner_polynomial": g.to_text(),
            "beta": beta.decimal(_DEC),
            "beta_conjugate_modulus_squared_max": margin,
        },
    )


def _rule_interior(
    work: IntPolynomial,
    q: AlgebraicNumber,
    conj: list[AlgebraicNumber],
    budget_bits: int,
) -> RuleRecord | None:
    for lam in conj:
        m2 = lam.mag2()
        if m2.strictly_less(Fraction(1, 2)) or m2.strictly_greater(1):
            continue
        if not interior_criterion(lam, budget_bits=budget_bits):
            continue
        exceeds, lam, q = _inverse_mag2_exceeds_q(work, lam, q, budget_bits)
        if not exceeds:
            continue
        return RuleRecord(
            rule_id="R7",
            conclusion=DENSE_L0,
            citation=(
                "a conjugate lambda lies in the interior counting region "
                "(1/2 <= |lambda|^2 < 1 and |Re lambda| <= |lambda|^2 - 1/2), "
                "so z_n >= |lambda|^(-2(n+1)); |lambda|^(-2) > q then forces "
                "z_n >> q^n and the liminf gap is zero"
            ),
            certificate={
                "witness": _box_decimals(lam),
                "witness_modulus_squared": _iv_decimals(lam.mag2()),
                "growth_base": _iv_decimals(lam.mag2().inverse()),
                "q": _iv_decimals(q.interval()),
            },
        )
    return None


# -- the engine --------------------------------------------------------------------


def verdict(
    f: IntPolynomial,
    root_index: int | None = None,
    root_interval: tuple[Fraction, Fraction] | None = None,
    dmax: int = DEFAULT_SEARCH_DEGREE,
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> Verdict:
    """Evaluate every rule against the selected root and keep all that fire.

    The conclusion is the strongest fired result; the Pisot rule preempts the
    denseness rules, a situation the engine asserts can never arise from a
    sound rule evaluation.
    """
    prim = f.primitive()
    if prim.degree < 1:
        raise UsageError("the verdict needs a nonconstant polynomial")
    caveats: list[str] = []
    work = squarefree_part(prim)
    if work.degree != prim.degree:
        caveats.append("repeated factors were removed before rule evaluation")
    q = resolve_root(work, root_index, root_interval, budget_bits)
    nc = classify(work, q)
    if not nc.minimality_verified:
        caveats.append(
            "irreducibility is not certified: the conjugate set may be a "
            "proper superset and denseness witnesses may be spurious"
        )
    below2 = _q_squared_below_two(work, q, budget_bits)

    nums = all_roots(work, budget_bits=budget_bits)
    qi = _match_index(nums, q, budget_bits)
    conj = [a for i, a in enumerate(nums) if i != qi]

    r1 = _rule_pisot(nc)
    r0, height_one_confirmed, witness = _rule_height_one(
        work, q, below2, dmax, budget_bits, caveats
    )
    r2 = _rule_non_perron(work, q, conj, nc, below2, budget_bits)
    r3, r4 = _rule_conjugate_products(work, q, conj, below2, budget_bits)
    r5 = _rule_anti_pisot(nc, height_one_confirmed, witness)
    r6 = _rule_sqrt_pisot(work, q, nc, budget_bits)
    r7 = _rule_interior(work, q, conj, budget_bits)

    fired = tuple(r for r in (r0, r1, r2, r3, r4, r5, r6, r7) if r is not None)
    notes: list[str] = list(nc.notes)
    if r1 is not None:
        if len(fired) > 1:
            raise InvariantViolation(
                "a denseness rule fired alongside the Pisot rule: "
                + ", ".join(r.rule_id for r in fired)
            )
        conclusion = DISCRETE
    elif fired:
        conclusion = (
            DENSE_L0_AND_L0
            if any(r.conclusion == DENSE_L0_AND_L0 for r in fired)
            else DENSE_L0
        )
    else:
        conclusion = INCONCLUSIVE
        if nc.is_salem:
            notes.append(
                "Salem base: the only conjugate inside the unit disc is the "
                "real 1/q with q*|1/q| = 1 exactly, and whether the liminf "
                "gap vanishes in that case is an open problem"
            )
    if conclusion == DENSE_L0 and negation_conjugate_test(work) and below2:
        notes.append(
            "-q is a conjugate of q, so the limsup gap stays undetermined "
            "even though q^2 < 2"
        )

    if conclusion == DISCRETE:
        flags = ("positive", "positive")
    elif conclusion == DENSE_L0_AND_L0:
        flags = ("zero", "zero")
    elif conclusion == DENSE_L0:
        flags = ("zero", "unknown")
    else:
        flags = ("unknown", "unknown")

    return Verdict(
        conclusion=conclusion,
        rules_applied=fired,
        liminf_flag=flags[0],
        limsup_flag=flags[1],
        q_decimal=q.decimal(_DEC),
        q_squared_below_two=below2,
        classification=nc,
        caveats=tuple(caveats),
        notes=tuple(notes),
    )


def verdict_to_json(v: Verdict) -> dict:
    """JSON-ready dict with decimal strings only; schema_version is stable."""
    return {
        "schema_version": 1,
        "conclusion": v.conclusion,
        "rules": [
            {
                "id": r.rule_id,
                "conclusion": r.conclusion,
                "citation": r.citation,
                "certificate": r.certificate,
            }
            for r in v.rules_applied
        ],
        "liminf_flag": v.liminf_flag,
        "limsup_flag": v.limsup_flag,
        "q": v.q_decimal,
        "q_squared_below_two": v.q_squared_below_two,
        "classification": {
            "pisot": v.classification.is_pisot,
            "perron": v.classification.is_perron,
            "salem": v.classification.is_salem,
            "anti_pisot": v.classification.is_anti_pisot,
            "minimality_verified": v.classification.minimality_verified,
            "conjugates_inside": v.classification.conjugates_inside,
            "conjugates_on_circle": v.classification.conjugates_on_circle,
            "conjugates_outside": v.classification.conjugates_outside,
        },
        "caveats": list(v.caveats),
        "notes": list(v.notes),
    }


# -- empirical crosscheck -----------------------------------------------------------


@dataclass(frozen=True)
class CrosscheckReport:
    """Finite-depth data held against a verdict; tension is a flag, not a veto."""

    verdict: Verdict
    counts: tuple[int, ...]
    ratio_last: str
    lambda_trail: tuple[tuple[int, str], ...]
    tension: bool
    notes: tuple[str, ...]


def empirical_crosscheck(
    f: IntPolynomial,
    root_index: int | None = None,
    root_interval: tuple[Fraction, Fraction] | None = None,
    n_max: int = 20,
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> CrosscheckReport:
    """Run the counting and min-gap probes and compare them with the verdict.

    A Discrete verdict next to a collapsing minimum, or a denseness verdict
    next to a perfectly stable one, is flagged as tension for a human to
    look at; the theorem-backed verdict is never overridden.
    """
    if n_max < 4:
        raise UsageError("the crosscheck needs n_max >= 4")
    v = verdict(f, root_index, root_interval, budget_bits=budget_bits)
    work = squarefree_part(f.primitive())
    q = resolve_root(work, root_index, root_interval, budget_bits)
    series = growth_ratio(work, q, n_max)
    samples = sorted({max(2, n_max // 4), n_max // 2, (3 * n_max) // 4, n_max})
    trail: list[tuple[int, Fraction, Fraction, str]] = []
    for n in samples:
        res = smallest_positive_lambda(work, q, n, budget_bits=budget_bits)
        trail.append((n, res.value.lo, res.value.hi, res.value.decimal(_DEC)))

    last_lo, last_hi = trail[-1][1], trail[-1][2]
    notes: list[str] = []
    tension = False
    if v.conclusion == DISCRETE:
        if last_hi < Fraction(1, 100):
            tension = True
            notes.append(
                "Discrete verdict but the smallest positive element fell below "
                "0.01: one of the two computations is wrong"
            )
        else:
            notes.append("minimum positive element stays bounded away from zero")
    elif v.conclusion in (DENSE_L0, DENSE_L0_AND_L0):
        stable = all(lo >= Fraction(1, 10) for _, lo, _, _ in trail) and all(
            trail[i][1] == trail[-1][1] for i in range(len(trail))
        )
        if stable:
            tension = True
            notes.append(
                "denseness verdict but the smallest positive element is frozen "
                "at a value >= 0.1: one of the two computations is wrong"
            )
        else:
            notes.append("minimum positive element shrinks with depth")
    else:
        notes.append("no theorem applies; the trend below is evidence, not proof")
    notes.append(
        f"smallest positive element at n={trail[0][0]} is {trail[0][3]}"
        f" and at n={trail[-1][0]} is {trail[-1][3]}"
    )

    ratio_last = series.ratios[-1].decimal(_DEC) if series.ratios else "n/a"
    return CrosscheckReport(
        verdict=v,
        counts=series.counts,
        ratio_last=ratio_last,
        lambda_trail=tuple((n, dec) for n, _, _, dec in trail),
        tension=tension,
        notes=tuple(notes),
    )
