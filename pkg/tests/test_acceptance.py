"""End-to-end acceptance gates, one pass/fail line per criterion.

Each criterion re-derives its claim from scratch at the stated tolerance and
prints exactly one summary line; the asserts keep pytest honest about it.
"""

import random
import time
from fractions import Fraction

from conftest import reduce_digits
from spectra.attractor import connectivity, interior_criterion, zn_lower_bound
from spectra.classify import locate_root
from spectra.counting import count_distinct, power_count_identity, verify_inversion
from spectra.fixtures import FIXTURES, check_facts, run_all
from spectra.heightsearch import claim_sampler, find_height_one_multiple, three_root_filter
from spectra.polyalg import IntPolynomial, graeffe, reverse
from spectra.roots import all_roots, select_root
from spectra.spectrum import Y_DIGITS, enumerate_spectrum, pigeonhole_check, smallest_positive_lambda

EX1 = IntPolynomial.from_coeffs((-1, -1, 0, 0, 1))
EX4 = IntPolynomial.from_coeffs((1, -1, 1, 1, 1, -1, -1, -1, 1))
EX5 = IntPolynomial.from_coeffs((1, 0, 0, -1, 0, 0, -1, 0, 0, -1, 0, 0, 1))
EX6 = IntPolynomial.from_coeffs((1, 0, 1, 0, -1, 0, 1, 0, 0, -1, -1, 1))
EX7 = IntPolynomial.from_coeffs(
    (-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0, 0, -1, 0, 1, 0, 1)
)
GOLDEN = IntPolynomial.from_coeffs((-1, -1, 1))
SALEM = IntPolynomial.from_coeffs((1, -1, -1, -1, 1))


def _report(capsys, num: int, ok: bool, detail: str, elapsed: float) -> None:
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"criterion {num}: {status} - {detail} ({elapsed:.1f}s)")


def _conjugate_by_modulus(f: IntPolynomial, modulus: float):
    best, dist = None, float("inf")
    for b in all_roots(f, eps=Fraction(1, 2**40)):
        rb = b.root
        m = (float(rb.center_re) ** 2 + float(rb.center_im) ** 2) ** 0.5
        if abs(m - modulus) < dist:
            best, dist = b, abs(m - modulus)
    return best


def _squared_base_poly(f: IntPolynomial, budget_bits: int = 4096) -> IntPolynomial:
    q = select_root(f)
    g2 = graeffe(f)
    state = {"n": q}

    def ref(eps):
        state["n"] = state["n"].refined(eps)
        return state["n"].interval().square()

    return locate_root(g2, ref, budget_bits).factor


def test_criterion_1_root_reproduction(capsys):
    """Every pinned decimal fact re-derives within 1e-4 from scratch."""
    t0 = time.perf_counter()
    failures = []
    for fix in FIXTURES:
        failures.extend(check_facts(fix))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 5.0
    detail = f"{sum(len(f.facts) for f in FIXTURES)} pinned root facts within 1e-4"
    if failures:
        detail += "; " + "; ".join(failures[:3])
    _report(capsys, 1, ok, detail, elapsed)
    assert not failures
    assert elapsed < 5.0


def test_criterion_2_verdict_regression(capsys):
    """The nine fixtures reproduce their conclusions and rule attributions."""
    t0 = time.perf_counter()
    results = run_all()
    by_example = {}
    for r in results:
        by_example.setdefault(r.fixture.example, []).append(r)
    failures = [
        f"{r.fixture.name}: {'; '.join(r.failures)}" for r in results if not r.passed
    ]

    def rules_of(ex):
        return {rid for r in by_example[ex] for rid in (r.verdict.rule_ids if r.verdict else ())}

    checks = [
        ("ex1 anti-Pisot full conclusion", "R5" in rules_of("1")
         and by_example["1"][0].verdict.conclusion == "DenseL0AndL0"),
        ("ex3 small-conjugate upgrade", "R3" in rules_of("3")
         and by_example["3"][0].verdict.conclusion == "DenseL0AndL0"),
        ("ex4 liminf only", by_example["4"][0].verdict.conclusion == "DenseL0"
         and by_example["4"][0].verdict.limsup_flag == "unknown"),
        ("ex5 exact unit product", "R4" in rules_of("5")),
        ("ex6 interior route", "R7" in rules_of("6")),
        ("ex7 dominant conjugate", "R2" in rules_of("7")),
        ("ex8 inconclusive", all(
            r.verdict is not None and r.verdict.conclusion == "Inconclusive"
            for r in by_example["8"]
        )),
    ]
    failures.extend(name for name, good in checks if not good)
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 30.0
    passed = sum(1 for ex, rs in by_example.items() if all(r.passed for r in rs))
    _report(capsys, 2, ok, f"{passed}/{len(by_example)} examples with expected attributions", elapsed)
    assert not failures, failures
    assert elapsed < 30.0


def test_criterion_3_exact_identities(capsys):
    """Inversion and power-structure count identities hold exactly."""
    t0 = time.perf_counter()
    rng = random.Random(1)
    bad = []
    for _ in range(50):
        d = rng.randint(2, 8)
        coeffs = [rng.choice((-1, 0, 1)) for _ in range(d)] + [rng.choice((-1, 1))]
        if coeffs[0] == 0:
            coeffs[0] = rng.choice((-1, 1))
        f = IntPolynomial.from_coeffs(coeffs)
        n = rng.randint(2, 10)
        if not verify_inversion(f, n):
            bad.append(f"inversion {f.to_text()} n={n}")
    for k in (1, 2, 3):
        if not power_count_identity(EX5, k):
            bad.append(f"power identity base12 k={k}")
    quartic = IntPolynomial.parse("x^4 + x^2 + 1")
    for k in (1, 2, 3, 4):
        if not power_count_identity(quartic, k):
            bad.append(f"power identity x^4+x^2+1 k={k}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60.0
    _report(capsys, 3, ok, "50 seeded inversions + 7 power-count identities, exact", elapsed)
    assert not bad, bad
    assert elapsed < 60.0


def test_criterion_4_counting_bounds(capsys):
    """Certified conjugate lower bounds never exceed the true counts."""
    t0 = time.perf_counter()
    c4 = _conjugate_by_modulus(EX4, 0.64387)
    c6 = _conjugate_by_modulus(EX6, 0.7418683)
    assert not interior_criterion(c4)
    assert interior_criterion(c6)
    bad = []
    for f, conj, name in ((EX4, c4, "annulus"), (EX6, c6, "interior")):
        for n in range(15):
            z = count_distinct(f, n)
            bound = zn_lower_bound(conj, n)
            if not z >= bound.hi:
                bad.append(f"{name} n={n}: z_n={z} < {float(bound.hi):.2f}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120.0
    _report(capsys, 4, ok, "z_n >= certified conjugate bounds for n <= 14, both clauses", elapsed)
    assert not bad, bad
    assert elapsed < 120.0


def test_criterion_5_pigeonhole_duality(capsys):
    """Min spectrum gap equals the smallest positive signed sum, exactly."""
    t0 = time.perf_counter()
    bad = []
    for f in (GOLDEN, EX1, SALEM):
        q = select_root(f)
        for n in (6, 13, 20):
            r = enumerate_spectrum(f, q, n, Y_DIGITS)
            mg_iv, idx = r.min_gap()
            diff = tuple(
                a - b for a, b in zip(r.row(idx + 1), r.row(idx))
            )
            lam = smallest_positive_lambda(f, q, n)
            if tuple(Fraction(c) for c in diff) != tuple(lam.residue):
                bad.append(f"{f.to_text()} n={n}: gap residue != lambda-min residue")
            if not pigeonhole_check(r):
                bad.append(f"{f.to_text()} n={n}: pigeonhole bound failed")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120.0
    _report(capsys, 5, ok, "9 spectra: min gap == smallest positive sum, pigeonhole certified", elapsed)
    assert not bad, bad
    assert elapsed < 120.0


def test_criterion_6_pisot_vs_dense_trend(capsys):
    """The smallest positive sum stays flat for Pisot, collapses for dense."""
    t0 = time.perf_counter()
    qg = select_root(GOLDEN)
    golden_vals = [smallest_positive_lambda(GOLDEN, qg, n) for n in range(5, 26)]
    residues = {v.residue for v in golden_vals}
    golden_ok = len(residues) == 1 and all(v.value.lo >= Fraction(1, 10) for v in golden_vals)

    q1 = select_root(EX1)
    dense_vals = [smallest_positive_lambda(EX1, q1, n) for n in range(5, 25)]
    noninc = all(
        dense_vals[i + 1].value.lo <= dense_vals[i].value.hi
        for i in range(len(dense_vals) - 1)
    )
    collapses = dense_vals[-1].value.hi < Fraction(1, 100)
    elapsed = time.perf_counter() - t0
    ok = golden_ok and noninc and collapses and elapsed < 300.0
    _report(
        capsys, 6, ok,
        "flat floor 0.618 for the Pisot base, monotone collapse below 1e-2 by n=24 for the dense one",
        elapsed,
    )
    assert golden_ok
    assert noninc and collapses
    assert elapsed < 300.0


def test_criterion_7_claim_stress(capsys):
    """Random stress keeps the triple product above the filter threshold."""
    t0 = time.perf_counter()
    sampled = claim_sampler(degree_max=12, samples=10**4, seed=1)
    threshold_ok = sampled.minimum >= 0.32476

    mp2 = _squared_base_poly(EX7)
    search = find_height_one_multiple(mp2, 20)
    none_upto = search.status == "none-upto" and search.searched_degree == 20
    cert = three_root_filter(reverse(mp2).primitive())
    cert_ok = cert is not None and abs(float(cert.product.decimal(8)) - 0.226024) < 1e-4
    below = cert is not None and float(cert.product.decimal(8)) < 0.32476
    elapsed = time.perf_counter() - t0
    ok = threshold_ok and none_upto and cert_ok and below and elapsed < 600.0
    _report(
        capsys, 7, ok,
        f"10^4 samples min {sampled.minimum:.5f} >= 0.32476; certificate 0.226024 beats it",
        elapsed,
    )
    assert threshold_ok
    assert none_upto
    assert cert_ok and below
    assert elapsed < 600.0


def test_criterion_8_attractor_sanity(capsys):
    """Connectivity flips between 0.4 and 0.7; the interior inequality holds."""
    t0 = time.perf_counter()
    disc = connectivity(Fraction(2, 5)).verdict == "disconnected"
    conn = connectivity(Fraction(7, 10)).verdict == "connected"
    c6 = _conjugate_by_modulus(EX6, 0.7418683)
    interior = interior_criterion(c6)
    box = c6.refined(Fraction(1, 2**60)).box()
    re_abs = max(abs(float(box.re.lo)), abs(float(box.re.hi)))
    mag2 = box.mag2()
    slack = float(mag2.lo) - 0.5
    printed = abs(re_abs - 0.02625) < 1e-4 and abs(slack - 0.05037) < 1e-4
    elapsed = time.perf_counter() - t0
    ok = disc and conn and interior and printed and elapsed < 10.0
    _report(
        capsys, 8, ok,
        "0.4 disconnected, 0.7 connected, interior margin 0.02625 < 0.05037 certified",
        elapsed,
    )
    assert disc and conn
    assert interior and printed
    assert elapsed < 10.0
