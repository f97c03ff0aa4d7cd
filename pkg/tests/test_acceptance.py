"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line; the lines are
collected in ``RESULTS`` and repeated in the pytest terminal summary.  Run the
file directly (``python3 tests/test_acceptance.py``) to get just those lines.
"""

import random
import sys
import time
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from licol.collineation import build_system, residual_check, solve_collineations  # noqa: E402
from licol.exactnum import span_equal  # noqa: E402
from licol.families import (  # noqa: E402
    CASES,
    FamilyId,
    SamplerExhausted,
    make_family,
    predict_case,
    sample_params,
    symbolic_system,
)
from licol.geometry import (  # noqa: E402
    LORENTZIAN,
    bianchi_check,
    jacobi_check,
    levi_civita,
    lie_derivative_ric,
    ricci,
)
from licol.verify import (  # noqa: E402
    MATCH,
    MATCH_MOD,
    MISMATCH,
    ROW_SIGN,
    compare_ricci,
    compare_system,
    etas_for,
)
from oracles import lie_derivative_matrix, ricci_besse  # noqa: E402

SEED = 42
CASE_SAMPLES = 25
COMPLEMENT_SAMPLES = 100
RESULTS: dict[int, str] = {}

F = Fraction
EPS = (1, 1, -1)


def _report(n: int, ok: bool, detail: str) -> bool:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def _draw(family, case_id, count, eta=None):
    try:
        return sample_params(family, case_id, count, SEED, eta=eta)
    except SamplerExhausted as exc:
        return exc.partial


@lru_cache(maxsize=None)
def _classification_runs():
    """Every sampled point of criteria 3 and 4 with its solver output."""
    start = time.perf_counter()
    cases, complements = [], []
    for family in FamilyId:
        for case in CASES[family]:
            for eta in etas_for(family):
                pts = []
                for p in _draw(family, case.id, CASE_SAMPLES, eta):
                    L = make_family(p)
                    pts.append((p, L, solve_collineations(L), predict_case(p)))
                cases.append((case.id, eta, pts))
        pts = []
        for p in _draw(family, f"{family}.complement", COMPLEMENT_SAMPLES):
            L = make_family(p)
            pts.append((p, L, solve_collineations(L), predict_case(p)))
        complements.append((family, pts))
    return cases, complements, time.perf_counter() - start


def _tag(case_id, eta):
    return case_id + (f"[eta={eta}]" if eta is not None else "")


# -- criterion 1 --------------------------------------------------------------

def test_criterion_1_symbolic_ricci():
    bad = []
    for family in FamilyId:
        for c in compare_ricci(family):
            if family is FamilyId.G3:
                # only the vanishing off-diagonal pattern is comparable
                if c.transcribed == "0" and c.status != MATCH:
                    bad.append(f"G3 {c.entry}")
            elif c.status not in (MATCH, MATCH_MOD):
                eta = f" eta={c.eta}" if c.eta is not None else ""
                bad.append(f"{c.family}{eta} Ric{c.entry}: derived {c.derived}, published {c.transcribed}")
    ok = _report(1, not bad, "all Ricci entries agree" if not bad else "; ".join(bad))
    assert ok, bad


# -- criterion 2 --------------------------------------------------------------

EXPECTED_FLAGS = {("G1", None, "(1,3)", "lambda3")}


def test_criterion_2_symbolic_systems():
    flagged, unflagged = set(), []
    for family in FamilyId:
        for c in compare_system(family):
            if c.status in (MATCH, MATCH_MOD, ROW_SIGN):
                continue
            if c.status == MISMATCH and c.derived:
                flagged.add((c.family, c.eta, c.entry, c.column))
            else:
                unflagged.append((c.family, c.entry, c.column))
    extra = sorted(flagged - EXPECTED_FLAGS, key=str)
    missing = sorted(EXPECTED_FLAGS - flagged, key=str)
    ok = not unflagged and not extra and not missing
    detail = f"{len(flagged)} flagged entries, each with its derived polynomial"
    if extra:
        detail += "; beyond the expected G1 (1,3) lambda3: " + ", ".join(
            f"{f}{'' if e is None else f' eta={e}'} {entry} {col}" for f, e, entry, col in extra)
    if missing:
        detail += f"; expected flag absent: {missing}"
    _report(2, ok, detail)
    assert ok, detail


# -- criterion 3 --------------------------------------------------------------

def test_criterion_3_soundness():
    cases, _, elapsed = _classification_runs()
    problems = []
    for case_id, eta, pts in cases:
        short = len(pts) < CASE_SAMPLES
        wrong = sum(not span_equal(sol.vrc_basis, pred.span) for _, _, sol, pred in pts)
        lam = sum(not sol.lambda_forced_zero for _, _, sol, _ in pts)
        if short or wrong or lam:
            problems.append(f"{_tag(case_id, eta)} {len(pts)} samples, {wrong} span mismatches"
                            + (f", {lam} lambda failures" if lam else ""))
    ok = not problems and elapsed < 60
    detail = f"{len(cases)} case runs in {elapsed:.1f}s"
    if problems:
        detail += "; " + "; ".join(problems)
    _report(3, ok, detail)
    assert ok, detail


# -- criterion 4 --------------------------------------------------------------

def test_criterion_4_completeness():
    _, complements, _ = _classification_runs()
    problems = []
    for family, pts in complements:
        nontrivial = [p for p, _, sol, _ in pts if sol.dim]
        if len(pts) < COMPLEMENT_SAMPLES or nontrivial:
            example = f" e.g. {nontrivial[0].describe()}" if nontrivial else ""
            problems.append(f"{family}: {len(pts)} samples, {len(nontrivial)} nontrivial{example}")
    ok = not problems
    _report(4, ok, "trivial on every complement sample" if ok else "; ".join(problems))
    assert ok, problems


# -- criterion 5 --------------------------------------------------------------

def test_criterion_5_geometric_properties():
    rng = random.Random(SEED)
    failures = []
    count = 0
    for family in FamilyId:
        for p in sample_params(family, f"{family}.generic", 25, SEED):
            count += 1
            L = make_family(p)
            conn = levi_civita(L)
            ric = ricci(L)
            where = f"{family}({p.describe()})"
            if conn.torsion_residuals(L) or conn.metric_residuals(LORENTZIAN):
                failures.append(f"{where} connection")
            if not ric.is_symmetric():
                failures.append(f"{where} Ricci symmetry")
            if jacobi_check(L):
                failures.append(f"{where} Jacobi")
            if bianchi_check(L, conn):
                failures.append(f"{where} Bianchi")
            v = tuple(F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
            w = tuple(F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
            s = F(rng.randint(-9, 9), rng.randint(1, 9))
            ld = lambda x: lie_derivative_ric(L, ric, x)  # noqa: E731
            if (ld(tuple(a + b for a, b in zip(v, w))) != ld(v) + ld(w)
                    or ld(tuple(s * a for a in v)) != ld(v) * s):
                failures.append(f"{where} linearity")
            for t in (F(2), F(-1), F(1, 3)):
                Lt = L.scaled(t)
                rt = ricci(Lt)
                if rt != ric * t ** 2 or lie_derivative_ric(Lt, rt, v) != ld(v) * t ** 3:
                    failures.append(f"{where} scaling t={t}")
    ok = not failures
    _report(5, ok, f"{count} tuples, all identities exact" if ok else "; ".join(failures[:5]))
    assert ok, failures


# -- criterion 6 --------------------------------------------------------------

def _oracle_residual(L, v, lam, ric_rows):
    ld = lie_derivative_matrix(L.c, ric_rows, v, F(0))
    return [[ld[i][j] - (2 * lam * EPS[i] if i == j else 0) for j in range(3)] for i in range(3)]


def _absorbable(ld):
    """True when ``ld`` equals ``2 lambda g`` for some lambda."""
    off = [ld[i][j] for i in range(3) for j in range(3) if i != j]
    return not any(off) and ld[0][0] == ld[1][1] == -ld[2][2]


def test_criterion_6_oracle_equivalence():
    cases, complements, _ = _classification_runs()
    rng = random.Random(SEED)
    solutions = 0
    residual_bad = []
    outside_checked = 0
    outside_bad = []
    runs = [pts for _, _, pts in cases] + [pts for _, pts in complements]
    for pts in runs:
        for p, L, sol, _ in pts:
            solutions += 1
            ric = ricci_besse(L.c, F(0))
            for k in sol.kernel_basis:
                r = _oracle_residual(L, k[:3], k[3], ric)
                if any(x for row in r for x in row):
                    residual_bad.append(p.describe())
            if any(not t.is_zero() for t in residual_check(L, LORENTZIAN, sol)):
                residual_bad.append(p.describe())
            if 0 < sol.dim < 3:
                n = 0
                while n < 20:
                    v = [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3)]
                    if span_equal(sol.vrc_basis + [v], sol.vrc_basis):
                        continue
                    n += 1
                    outside_checked += 1
                    if _absorbable(lie_derivative_matrix(L.c, ric, v, F(0))):
                        outside_bad.append(f"{p.family}({p.describe()}) v={v}")
    ok = not residual_bad and not outside_bad
    detail = (f"{solutions} solver outputs re-checked, {outside_checked} outside-span vectors"
              " all with nonzero residual")
    if not ok:
        detail = f"residual failures {residual_bad[:3]}, outside-span zeros {outside_bad[:3]}"
    _report(6, ok, detail)
    assert ok, detail


# -- criterion 7 --------------------------------------------------------------

def test_criterion_7_symbolic_numeric():
    bad = []
    for family in FamilyId:
        for p in sample_params(family, f"{family}.generic", 10, SEED + 1):
            eta = p.values.get("eta")
            sym = symbolic_system(family, None if eta is None else int(eta))
            if sym.map(lambda x: x.evaluate(p.values)) != build_system(make_family(p)):
                bad.append(f"{family}({p.describe()})")
    ok = _report(7, not bad, "70 assignments agree entrywise" if not bad else ", ".join(bad))
    assert ok, bad


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
    sys.exit(0 if all("PASS" in line for line in RESULTS.values()) else 1)
