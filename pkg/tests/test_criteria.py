"""Verdict engine: rule firing, invariants and empirical crosschecks."""

from fractions import Fraction

import pytest

from spectra.criteria import (
    CrosscheckReport,
    RuleRecord,
    Verdict,
    empirical_crosscheck,
    resolve_root,
    verdict,
    verdict_to_json,
)
from spectra.errors import InvariantViolation, UsageError
from spectra.polyalg import IntPolynomial


def test_pisot_base_discrete(golden):
    v = verdict(golden)
    assert v.conclusion == "Discrete"
    assert v.rule_ids == ("R1",)
    assert v.liminf_flag == "positive"
    assert v.limsup_flag == "positive"


def test_anti_pisot_base_full_conclusion(quartic_ap):
    v = verdict(quartic_ap)
    assert v.conclusion == "DenseL0AndL0"
    assert v.rule_ids == ("R3", "R5")
    assert v.liminf_flag == "zero"
    assert v.limsup_flag == "zero"
    assert v.q_squared_below_two
    assert v.q_decimal.startswith("1.2207440846")


def test_salem_base_inconclusive(salem4):
    v = verdict(salem4)
    assert v.conclusion == "Inconclusive"
    assert v.rule_ids == ()
    assert v.liminf_flag == "unknown"
    assert any("Salem" in note for note in v.notes)


def test_sqrt_pisot_negation_blocks_limsup(sqrt_golden):
    v = verdict(sqrt_golden)
    assert v.conclusion == "DenseL0"
    assert set(v.rule_ids) == {"R2", "R4", "R6", "R7"}
    assert v.q_squared_below_two
    assert v.limsup_flag == "unknown"
    assert any("-q is a conjugate" in note for note in v.notes)


def test_sqrt_three_non_perron():
    v = verdict(IntPolynomial.parse("x^2 - 3"))
    assert v.conclusion == "DenseL0"
    assert set(v.rule_ids) == {"R2", "R6"}
    assert not v.q_squared_below_two


def test_composite_route_upgrades_to_and_l0():
    # complex small-conjugate base: direct citation plus the squared-base route
    f = IntPolynomial.parse("-1,-1,1,0,-1,1")
    v = verdict(f)
    assert v.conclusion == "DenseL0AndL0"
    assert v.rule_ids == ("R0", "R3")
    r0 = v.rules_applied[0]
    assert "composite" in r0.certificate
    assert r0.certificate["composite"]["filter_target"] in ("defining", "reversed")


def test_non_monic_input_handled():
    v = verdict(IntPolynomial.parse("2x^2 - 2x - 1"))
    # not an algebraic integer: the Perron-based rules stay quiet
    assert "R1" not in v.rule_ids
    assert "R2" not in v.rule_ids


def test_reducible_input_gets_squarefree_caveat():
    f = IntPolynomial.parse("x^2 - x - 1") * IntPolynomial.parse("x^2 - x - 1")
    v = verdict(f)
    assert v.conclusion == "Discrete"
    assert any("repeated factors" in c for c in v.caveats)


def test_resolve_root_interval(golden):
    q = resolve_root(golden, None, (Fraction(3, 2), Fraction(17, 10)))
    assert q.decimal(10).startswith("1.618")
    with pytest.raises(UsageError):
        resolve_root(golden, None, (Fraction(0), Fraction(1)))


def test_resolve_root_rejects_double_selector(golden):
    with pytest.raises(UsageError):
        verdict(golden, root_index=0, root_interval=(Fraction(1), Fraction(2)))


def test_rule_record_validation():
    with pytest.raises(InvariantViolation):
        RuleRecord("R9", "DenseL0", "nope", {})
    with pytest.raises(InvariantViolation):
        RuleRecord("R3", "Sideways", "nope", {})


def _stub_rule(rule_id, conclusion):
    return RuleRecord(rule_id, conclusion, "stub citation", {})


def test_verdict_invariants_enforced():
    base = dict(
        q_decimal="1.5",
        q_squared_below_two=False,
        classification=None,
        caveats=(),
        notes=(),
    )
    with pytest.raises(InvariantViolation):
        Verdict(
            conclusion="Discrete",
            rules_applied=(_stub_rule("R3", "DenseL0"),),
            liminf_flag="positive",
            limsup_flag="positive",
            **base,
        )
    with pytest.raises(InvariantViolation):
        Verdict(
            conclusion="DenseL0AndL0",
            rules_applied=(_stub_rule("R3", "DenseL0AndL0"),),
            liminf_flag="zero",
            limsup_flag="zero",
            **base,
        )
    with pytest.raises(InvariantViolation):
        Verdict(
            conclusion="DenseL0",
            rules_applied=(),
            liminf_flag="zero",
            limsup_flag="unknown",
            **base,
        )


def test_verdict_json_schema(quartic_ap):
    payload = verdict_to_json(verdict(quartic_ap))
    assert payload["schema_version"] == 1
    assert payload["conclusion"] == "DenseL0AndL0"
    assert [r["id"] for r in payload["rules"]] == ["R3", "R5"]
    for r in payload["rules"]:
        assert r["citation"]
    assert payload["classification"]["anti_pisot"] is True


def test_crosscheck_discrete_no_tension(golden):
    rep = empirical_crosscheck(golden, n_max=10)
    assert isinstance(rep, CrosscheckReport)
    assert rep.verdict.conclusion == "Discrete"
    assert not rep.tension
    # the trail stays pinned at 1/phi
    assert all(float(dec) > 0.1 for _, dec in rep.lambda_trail)


def test_crosscheck_dense_shrinks(quartic_ap):
    rep = empirical_crosscheck(quartic_ap, n_max=16)
    assert rep.verdict.conclusion == "DenseL0AndL0"
    assert not rep.tension
    first = float(rep.lambda_trail[0][1])
    last = float(rep.lambda_trail[-1][1])
    assert last < first


def test_crosscheck_minimum_window(golden):
    with pytest.raises(UsageError):
        empirical_crosscheck(golden, n_max=3)
