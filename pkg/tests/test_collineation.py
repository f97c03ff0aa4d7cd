import random
from fractions import Fraction

import pytest

from licol.collineation import (
    ROW_PAIRS,
    build_system,
    residual,
    residual_check,
    solve_collineations,
)
from licol.exactnum import span_equal
from licol.families import (
    FamilyId,
    ParamAssignment,
    family_ring,
    make_family,
    predict_case,
    reduce_poly,
    reductions,
    sample_params,
    symbolic_family,
    symbolic_system,
)
from licol.geometry import LORENTZIAN, LieAlgebra3, lie_derivative_ric, ricci
from licol.verify import outside_span_residuals

F = Fraction
Z = F(0)
FULL = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def fam(family, **kw):
    return make_family(ParamAssignment(family, kw))


def test_abelian_system():
    s = build_system(LieAlgebra3.abelian(Z))
    assert all(r[k] == 0 for r in s.rows for k in range(3))
    assert [r[3] for r in s.rows] == [-2, 0, 0, -2, 0, 2]


def test_solve_examples():
    s = solve_collineations(fam(FamilyId.G1, alpha=1, beta=0))
    assert s.dim == 3 and span_equal(s.vrc_basis, FULL) and s.lambda_forced_zero
    s = solve_collineations(fam(FamilyId.G1, alpha=1, beta=1))
    assert s.dim == 0 and s.vrc_basis == []
    s = solve_collineations(LieAlgebra3.abelian(Z))
    assert s.dim == 3 and s.lambda_forced_zero
    s = solve_collineations(fam(FamilyId.G7, alpha=1, beta=5, gamma=0, delta=1))
    assert span_equal(s.vrc_basis, FULL)
    s = solve_collineations(fam(FamilyId.G5, alpha=1, beta=0, gamma=0, delta=1))
    assert s.dim == 0


def test_symbolic_input_rejected():
    with pytest.raises(TypeError, match="parametric solving unsupported; evaluate parameters first"):
        solve_collineations(symbolic_family(FamilyId.G1))


def test_residual_examples():
    L = fam(FamilyId.G1, alpha=1, beta=0)
    assert residual(L, (1, 0, 0), 0).is_zero()
    A = LieAlgebra3.abelian(Z)
    assert residual(A, (0, 0, 1), 0).is_zero()


def test_g4_case1_point_residuals():
    L = fam(FamilyId.G4, eta=1, alpha=2, beta=0)
    s = solve_collineations(L)
    assert all(r.is_zero() for r in residual_check(L, LORENTZIAN, s))
    # the kernel here is three-dimensional, larger than the two generators
    # the classification lists for this point
    assert s.dim == 3


def _entry(system, pair, col):
    return system.row_for(*pair)[col]


def test_symbolic_entries():
    g1 = symbolic_system(FamilyId.G1)
    a, b = family_ring(FamilyId.G1).gens[:2]
    assert _entry(g1, (1, 1), 0) == 6 * a ** 2 * b

    g2 = symbolic_system(FamilyId.G2)
    a, b, c = family_ring(FamilyId.G2).gens[:3]
    assert _entry(g2, (1, 1), 0) == -a ** 2 * c + 4 * b ** 2 * c

    g6 = symbolic_system(FamilyId.G6)
    assert all(_entry(g6, (0, 0), k).is_zero() for k in range(3))


def test_g3_entry_is_half_the_published_product():
    a, b, c = family_ring(FamilyId.G3).gens[:3]
    got = _entry(symbolic_system(FamilyId.G3), (1, 2), 0)
    assert got == (b - c) * (a ** 2 - (b + c) ** 2) * F(1, 2)


def test_g7_entry_agrees_on_the_constraint_set():
    a, b, c, d = family_ring(FamilyId.G7).gens
    got = _entry(symbolic_system(FamilyId.G7), (0, 1), 1)
    published = -b * c ** 2 * F(1, 2)
    assert got != published
    for chart in reductions(FamilyId.G7):
        assert reduce_poly(got - published, chart).is_zero()


def test_g4_eta_required():
    with pytest.raises(ValueError):
        symbolic_system(FamilyId.G4)
    with pytest.raises(ValueError):
        symbolic_system(FamilyId.G1, eta=1)
    assert symbolic_system(FamilyId.G4, eta=-1) != symbolic_system(FamilyId.G4, eta=1)


def _samples(per_family=10, seed=2):
    for f in FamilyId:
        yield from sample_params(f, f"{f}.generic", per_family, seed)


def test_matrix_and_operator_agree():
    rng = random.Random(4)
    for p in _samples(4):
        L = make_family(p)
        m = build_system(L).as_matrix()
        ric = ricci(L)
        for _ in range(25):
            v = [F(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(4)]
            lhs = m.matvec(v)
            r = residual(L, v[:3], v[3], LORENTZIAN, ric)
            assert lhs == [r[i, j] for i, j in ROW_PAIRS]


def test_solution_invariants():
    for p in _samples():
        L = make_family(p)
        s = solve_collineations(L)
        m = build_system(L).as_matrix()
        for v in s.kernel_basis:
            assert all(x == 0 for x in m.matvec(v))
        assert all(r.is_zero() for r in residual_check(L, LORENTZIAN, s))
        proj = [v[:3] for v in s.kernel_basis]
        assert span_equal(proj, s.vrc_basis) if proj else s.vrc_basis == []
        assert s.lambda_forced_zero == all(v[3] == 0 for v in s.kernel_basis)


def test_lambda_is_trivial_on_every_family():
    # Ric is never a nonzero multiple of g here, so lambda must vanish
    for p in _samples(25, seed=9):
        assert solve_collineations(make_family(p)).lambda_forced_zero


def test_maximality_outside_the_span():
    rng = random.Random(8)
    for p in _samples(3, seed=6):
        L = make_family(p)
        s = solve_collineations(L)
        found = outside_span_residuals(L, s, 20, rng)
        if s.dim < 3:
            assert len(found) == 20
        assert all(nonzero for _, nonzero in found)


def test_prediction_matches_solver_on_spec_points():
    p = ParamAssignment(FamilyId.G3, dict(alpha=1, beta=1, gamma=1))
    pred = predict_case(p)
    assert "G3.case2" in pred.case_ids
    assert span_equal(solve_collineations(make_family(p)).vrc_basis, pred.span)


def test_symbolic_system_evaluates_to_numeric():
    for f in FamilyId:
        for p in sample_params(f, f"{f}.generic", 10, seed=12):
            eta = p.values.get("eta")
            sym = symbolic_system(f, eta=int(eta) if eta is not None else None)
            num = build_system(make_family(p))
            assert sym.map(lambda x: x.evaluate(p.values)) == num


def test_lie_derivative_columns_are_unit_derivatives():
    L = fam(FamilyId.G2, alpha=2, beta=1, gamma=1)
    s = build_system(L)
    ric = ricci(L)
    for k in range(3):
        d = lie_derivative_ric(L, ric, L.unit(k))
        assert [r[k] for r in s.rows] == [d[i, j] for i, j in ROW_PAIRS]
