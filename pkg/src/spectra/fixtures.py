"""Pinned regression fixtures: nine worked bases with audited outcomes.

Each fixture carries the polynomial, the expected conclusion with the exact
set of rules that fire, and approximate values (roots, moduli, products) at
tolerance 1e-4.  ``run_fixture`` re-derives everything with certified
arithmetic and reports every mismatch; the bundled regression table and the
acceptance suite both drive through it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .classify import locate_root
from .criteria import Verdict, verdict
from .errors import SpectraError
from .heightsearch import three_root_filter
from .intervals import RatInterval
from .polyalg import IntPolynomial, graeffe, reverse
from .roots import DEFAULT_BUDGET_BITS, all_roots, select_root

APPROX_TOL = Fraction(1, 10000)


@dataclass(frozen=True)
class Fixture:
    """One base polynomial together with every pinned expectation."""

    name: str
    example: str
    coeffs: tuple[int, ...]
    conclusion: str
    rules: tuple[str, ...]
    facts: tuple[tuple[str, ...], ...]
    note: str = ""

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial.from_coeffs(list(self.coeffs))


# fact kinds: ("q", dec) selected root; ("real_conjugate", dec) a real conjugate;
# ("conjugate_modulus", dec) some conjugate modulus; ("product_q_modulus", dec)
# q*|alpha| for some conjugate; ("inverse_q", dec) 1/q; ("conjugate_box", re, im)
# a conjugate near re + i*|im|; ("growth_base", dec) |lambda|^(-2) for some
# conjugate; ("squared_triple_product", dec) the three-root filter product for
# the polynomial of q^2 or its reverse.
FIXTURES: tuple[Fixture, ...] = (
    Fixture(
        name="quartic-anti-pisot",
        example="1",
        coeffs=(-1, -1, 0, 0, 1),
        conclusion="DenseL0AndL0",
        rules=("R3", "R5"),
        facts=(
            ("q", "1.22074"),
            ("real_conjugate", "-0.72449"),
        ),
        note="anti-Pisot with a single conjugate inside the disc",
    ),
    Fixture(
        name="quintic-real-small-conjugate",
        example="2",
        coeffs=(1, -1, -1, 0, -1, 1),
        conclusion="DenseL0",
        rules=("R3",),
        facts=(
            ("q", "1.52626"),
            ("real_conjugate", "0.59509"),
        ),
        note="real small conjugate without the anti-Pisot shape",
    ),
    Fixture(
        name="quintic-complex-small-conjugate",
        example="3",
        coeffs=(-1, -1, 1, 0, -1, 1),
        conclusion="DenseL0AndL0",
        rules=("R0", "R3"),
        facts=(
            ("q", "1.26278"),
            ("conjugate_modulus", "0.74090"),
            ("product_q_modulus", "0.93559"),
        ),
        note="complex small conjugate; the squared base also has no height-one annihilator",
    ),
    Fixture(
        name="octic-small-pair",
        example="4",
        coeffs=(1, -1, 1, 1, 1, -1, -1, -1, 1),
        conclusion="DenseL0",
        rules=("R3",),
        facts=(
            ("q", "1.52501"),
            ("conjugate_modulus", "0.64387"),
            ("inverse_q", "0.65574"),
        ),
        note="q > sqrt(2): the limsup flag stays open",
    ),
    Fixture(
        name="degree12-unit-product",
        example="5",
        coeffs=(1, 0, 0, -1, 0, 0, -1, 0, 0, -1, 0, 0, 1),
        conclusion="DenseL0AndL0",
        rules=("R2", "R4"),
        facts=(
            ("q", "1.19863"),
        ),
        note="q*|alpha| = 1 exactly for a non-real conjugate; q is a cube root of a Salem number",
    ),
    Fixture(
        name="degree11-interior-conjugate",
        example="6",
        coeffs=(1, 0, 1, 0, -1, 0, 1, 0, 0, -1, -1, 1),
        conclusion="DenseL0",
        rules=("R7",),
        facts=(
            ("q", "1.5006"),
            ("conjugate_box", "0.02625", "0.7414"),
            ("growth_base", "1.81696"),
        ),
        note="only the interior counting region reaches this base",
    ),
    Fixture(
        name="degree18-dominant-pair",
        example="7",
        coeffs=(-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0, 0, -1, 0, 1, 0, 1),
        conclusion="DenseL0AndL0",
        rules=("R0", "R2"),
        facts=(
            ("q", "1.22289"),
            ("conjugate_box", "-0.03958", "1.3109"),
            ("squared_triple_product", "0.226024"),
        ),
        note="a conjugate pair dominates q; the squared base is certified free of height-one annihilators",
    ),
    Fixture(
        name="quintic-no-criterion",
        example="8",
        coeffs=(-1, 1, 0, -1, -1, 1),
        conclusion="Inconclusive",
        rules=(),
        facts=(
            ("q", "1.54991"),
            ("conjugate_modulus", "1.04492"),
            ("conjugate_modulus", "0.76871"),
        ),
        note="every rule stays silent",
    ),
    Fixture(
        name="quartic-salem",
        example="8",
        coeffs=(1, -1, -1, -1, 1),
        conclusion="Inconclusive",
        rules=(),
        facts=(
            ("q", "1.72208"),
        ),
        note="Salem base: the unit-product conjugate is real, which decides nothing",
    ),
)


def _within(iv: RatInterval, pin: Fraction, tol: Fraction = APPROX_TOL) -> bool:
    return iv.lo > pin - tol and iv.hi < pin + tol


def _mag_within(m2: RatInterval, pin: Fraction, tol: Fraction = APPROX_TOL) -> bool:
    lo = (pin - tol) ** 2
    return m2.lo > lo and m2.hi < (pin + tol) ** 2


def _squared_filter_product(
    f: IntPolynomial, budget_bits: int
) -> RatInterval | None:
    """Three-root filter product for the polynomial of q^2 (or its reverse)."""
    q = select_root(f, budget_bits=budget_bits)
    state = {"n": q}

    def ref(eps: Fraction) -> RatInterval:
        state["n"] = state["n"].refined(eps)
        return state["n"].interval().square()

    mp2 = locate_root(graeffe(f), ref, budget_bits).factor
    for target in (mp2, reverse(mp2).primitive()):
        cert = three_root_filter(target, budget_bits=budget_bits)
        if cert is not None:
            return cert.product
    return None


def check_facts(fix: Fixture, budget_bits: int = DEFAULT_BUDGET_BITS) -> list[str]:
    """Re-derive every pinned approximate value; returns the mismatches."""
    f = fix.polynomial()
    q = select_root(f, budget_bits=budget_bits)
    nums = all_roots(f, budget_bits=budget_bits)
    failures: list[str] = []
    for fact in fix.facts:
        kind, args = fact[0], [Fraction(a) for a in fact[1:]]
        if kind == "q":
            if not _within(q.interval(), args[0]):
                failures.append(f"selected root is {q.decimal(8)}, pinned {fact[1]}")
        elif kind == "real_conjugate":
            if not any(
                n.is_real and _within(n.interval(), args[0]) for n in nums
            ):
                failures.append(f"no real conjugate near {fact[1]}")
        elif kind == "conjugate_modulus":
            if not any(_mag_within(n.mag2(), args[0]) for n in nums):
                failures.append(f"no conjugate of modulus near {fact[1]}")
        elif kind == "product_q_modulus":
            q2 = q.interval().square()
            if not any(_mag_within(n.mag2() * q2, args[0]) for n in nums):
                failures.append(f"no conjugate with q*|alpha| near {fact[1]}")
        elif kind == "inverse_q":
            if not _within(q.interval().inverse(), args[0]):
                failures.append(f"1/q is not near {fact[1]}")
        elif kind == "conjugate_box":
            re_pin, im_pin = args
            hit = False
            for n in nums:
                if n.is_real:
                    continue
                b = n.box()
                im = b.im if b.im.lo > 0 else -b.im
                if _within(b.re, re_pin) and _within(im, im_pin, Fraction(1, 1000)):
                    hit = True
                    break
            if hit is False:
                failures.append(f"no conjugate near {fact[1]} +/- {fact[2]}i")
        elif kind == "growth_base":
            if not any(
                n.mag2().strictly_greater(Fraction(1, 2))
                and n.mag2().strictly_less(1)
                and _within(n.mag2().inverse(), args[0])
                for n in nums
            ):
                failures.append(f"no interior conjugate with |lambda|^-2 near {fact[1]}")
        elif kind == "squared_triple_product":
            prod = _squared_filter_product(f, budget_bits)
            if prod is None:
                failures.append("the squared base produced no filter certificate")
            elif not _within(prod, args[0]):
                failures.append(
                    f"filter product is {prod.decimal(8)}, pinned {fact[1]}"
                )
        else:
            failures.append(f"unknown fact kind {kind!r}")
    return failures


@dataclass(frozen=True)
class FixtureResult:
    fixture: Fixture
    verdict: Verdict | None
    passed: bool
    failures: tuple[str, ...]
    elapsed: float


def run_fixture(fix: Fixture, budget_bits: int = DEFAULT_BUDGET_BITS) -> FixtureResult:
    """Full regression for one fixture: facts, conclusion, and exact rule set."""
    t0 = time.monotonic()
    failures = check_facts(fix, budget_bits)
    v: Verdict | None = None
    try:
        v = verdict(fix.polynomial(), budget_bits=budget_bits)
    except SpectraError as exc:
        failures.append(f"verdict raised {type(exc).__name__}: {exc}")
    if v is not None:
        if v.conclusion != fix.conclusion:
            failures.append(f"conclusion is {v.conclusion}, pinned {fix.conclusion}")
        if v.rule_ids != fix.rules:
            failures.append(
                f"rules are {list(v.rule_ids)}, pinned {list(fix.rules)}"
            )
    return FixtureResult(
        fixture=fix,
        verdict=v,
        passed=not failures,
        failures=tuple(failures),
        elapsed=time.monotonic() - t0,
    )


def run_all(budget_bits: int = DEFAULT_BUDGET_BITS) -> tuple[FixtureResult, ...]:
    return tuple(run_fixture(fix, budget_bits) for fix in FIXTURES)
