from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from licol.exactnum import span_equal
from licol.families import (
    CASES,
    ConstraintError,
    FamilyId,
    ParamAssignment,
    SamplerExhausted,
    case_ids,
    get_case,
    make_family,
    matched_cases,
    max_sampler_attempts,
    predict_case,
    rational_roots,
    sample_params,
)
from licol.geometry import jacobi_check

F = Fraction
FULL = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def P(family, **kw):
    return ParamAssignment(family, kw)


def test_family_ids():
    assert [f.value for f in FamilyId] == [f"G{i}" for i in range(1, 8)]
    assert FamilyId.parse("g5") is FamilyId.G5
    assert FamilyId.G4.unimodular and not FamilyId.G5.unimodular
    with pytest.raises(ValueError, match="unknown family"):
        FamilyId.parse("G8")


def test_case_inventory():
    counts = {f: len(case_ids(f)) for f in FamilyId}
    assert counts == {FamilyId.G1: 1, FamilyId.G2: 2, FamilyId.G3: 11, FamilyId.G4: 4,
                      FamilyId.G5: 5, FamilyId.G6: 5, FamilyId.G7: 2}
    assert get_case("G1.beta0").family is FamilyId.G1
    with pytest.raises(KeyError):
        get_case("G3.case12")


def test_make_family_examples():
    L = make_family(P(FamilyId.G1, alpha=1, beta=0))
    assert L.bracket_basis(0, 1) == (1, 0, 0)
    assert L.bracket_basis(0, 2) == (-1, 0, 0)
    assert L.bracket_basis(1, 2) == (0, 1, 1)
    L = make_family(P(FamilyId.G4, alpha=0, beta=0, eta=1))
    assert L.bracket_basis(0, 1) == (0, -1, 2)
    assert L.bracket_basis(0, 2) == (0, 0, 1)
    assert L.bracket_basis(1, 2) == (0, 0, 0)


def test_constraint_errors():
    with pytest.raises(ConstraintError, match="G5 requires αγ\\+βδ=0"):
        make_family(P(FamilyId.G5, alpha=1, delta=1, beta=0, gamma=1))
    with pytest.raises(ConstraintError, match="η"):
        make_family(P(FamilyId.G4, alpha=0, beta=0, eta=2))
    with pytest.raises(ConstraintError):
        make_family(P(FamilyId.G7, alpha=1, beta=0, gamma=1, delta=0))


def test_assignment_validation():
    with pytest.raises(ValueError, match="missing"):
        P(FamilyId.G1, alpha=1)
    with pytest.raises(ValueError, match="no parameter"):
        P(FamilyId.G1, alpha=1, beta=1, gamma=1)
    with pytest.raises(TypeError):
        P(FamilyId.G1, alpha=0.5, beta=1)
    assert P(FamilyId.G1, alpha=F(2, 4), beta=1) == P(FamilyId.G1, alpha=F(1, 2), beta=1)


def test_sampler_examples():
    got = sample_params(FamilyId.G1, "G1.beta0", 3, seed=7)
    assert len(got) == 3 and len(set(got)) == 3
    assert all(p["beta"] == 0 and p["alpha"] != 0 for p in got)
    got = sample_params(FamilyId.G3, "G3.case1", 3, seed=1)
    assert all(p["alpha"] + p["beta"] + p["gamma"] == 0 for p in got)
    got = sample_params(FamilyId.G4, "G4.case1", 2, seed=0)
    assert {p.key() for p in got} == {("G4", 2, 0, 1), ("G4", -2, 0, -1)}


def test_sampler_is_deterministic():
    a = sample_params(FamilyId.G6, "G6.case3", 10, seed=3)
    b = sample_params(FamilyId.G6, "G6.case3", 10, seed=3)
    c = sample_params(FamilyId.G6, "G6.case3", 10, seed=4)
    assert a == b and a != c


def test_sampler_exhaustion_reports_partial():
    with pytest.raises(SamplerExhausted) as exc:
        sample_params(FamilyId.G4, "G4.case1", 5, seed=0)
    assert len(exc.value.partial) == 2
    assert "2 of 5" in str(exc.value)


def test_attempt_budget_from_environment(monkeypatch):
    monkeypatch.delenv("LICOL_MAX_SAMPLER_ATTEMPTS", raising=False)
    assert max_sampler_attempts() == 10000
    monkeypatch.setenv("LICOL_MAX_SAMPLER_ATTEMPTS", "3")
    assert max_sampler_attempts() == 3
    with pytest.raises(SamplerExhausted):
        sample_params(FamilyId.G3, "G3.case5", 50, seed=0)
    monkeypatch.setenv("LICOL_MAX_SAMPLER_ATTEMPTS", "zero")
    with pytest.raises(ValueError):
        max_sampler_attempts()


def test_predict_case_examples():
    pred = predict_case(P(FamilyId.G3, alpha=1, beta=1, gamma=1))
    assert pred.case_ids == ["G3.case2"] and span_equal(pred.span, FULL)
    pred = predict_case(P(FamilyId.G7, alpha=1, beta=5, gamma=0, delta=1))
    assert "G7.case1" in pred.case_ids and span_equal(pred.span, FULL)
    pred = predict_case(P(FamilyId.G5, alpha=1, delta=1, beta=0, gamma=0))
    assert pred.case_ids == [] and pred.span == [] and pred.lam == 0


@pytest.mark.parametrize("family", list(FamilyId))
def test_generated_families_satisfy_jacobi(family):
    for p in sample_params(family, f"{family}.generic", 25, seed=13):
        assert not p.violations()
        assert jacobi_check(make_family(p)) == [], p.describe()


@pytest.mark.parametrize("family", list(FamilyId))
def test_complement_samples_match_no_case(family):
    for p in sample_params(family, f"{family}.complement", 30, seed=1):
        assert matched_cases(p) == []


def test_case_samples_satisfy_their_predicate():
    for family, cases in CASES.items():
        for case in cases:
            if case.finite:
                continue
            for p in sample_params(family, case.id, 5, seed=2):
                assert case.predicate(p.values)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4))
def test_rational_roots_are_roots(roots):
    # build prod (x - r) and check every small root is found
    coeffs = [F(1)]
    for r in roots:
        coeffs = [b - r * a for a, b in zip(coeffs + [F(0)], [F(0)] + coeffs)]
    found = rational_roots(coeffs)
    assert set(found) == set(F(r) for r in roots)


def test_rational_roots_fractional():
    # 6x^2 - x - 1 = (3x + 1)(2x - 1), coefficients by ascending degree
    assert set(rational_roots([F(-1), F(-1), F(6)])) == {F(-1, 3), F(1, 2)}
