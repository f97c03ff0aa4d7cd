"""Checks of the published classification against the exact pipeline.

Three kinds of check are run per family:

* coefficient-level comparison of the derived Ricci tensor and collineation
  system with the transcriptions in :mod:`licol.reference`;
* soundness: for each classification case, the computed collineation span at
  sampled parameters equals the case's predicted span and ``lambda`` is 0;
* completeness: parameters that satisfy no case give the trivial space.

Transcription discrepancies are informational.  The pass flag only depends on
the sampled span, ``lambda`` and residual checks.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import __version__
from .collineation import COLUMNS, ROW_PAIRS, SolutionSpace, residual, residual_check, solve_collineations
from .exactnum import format_rational, span_basis, span_equal
from .families import (
    CASES,
    FamilyId,
    ParamAssignment,
    SamplerExhausted,
    make_family,
    predict_case,
    reduce_poly,
    reductions,
    sample_params,
    symbolic_family,
    symbolic_system,
)
from .geometry import LORENTZIAN, LieAlgebra3, ricci
from .multipoly import Polynomial
from .reference import DISPLAYED_ROWS, RICCI_ZERO_PATTERN, reference_ricci, reference_system

__all__ = [
    "Comparison",
    "CaseRecord",
    "compare_ricci",
    "compare_system",
    "check_case",
    "check_complement",
    "outside_span_residuals",
    "run_verify",
    "report_json",
    "report_text",
    "etas_for",
]

MATCH = "match"
MATCH_MOD = "match_mod_constraints"
ROW_SIGN = "row_sign"
MISMATCH = "mismatch"
RECORDED = "recorded"


def etas_for(family: FamilyId) -> tuple[int | None, ...]:
    return (1, -1) if family is FamilyId.G4 else (None,)


@dataclass
class Comparison:
    kind: str
    family: str
    eta: int | None
    entry: str
    column: str | None
    status: str
    derived: str
    transcribed: str
    displayed: bool = True


def _entry_name(ij: tuple[int, int]) -> str:
    return f"({ij[0] + 1},{ij[1] + 1})"


def _vanishes(family: FamilyId, p: Polynomial) -> bool:
    """True when ``p`` is zero on the family's constraint set."""
    if family is FamilyId.G4:
        # eta has already been substituted by the caller
        return p.is_zero()
    return all(reduce_poly(p, chart).is_zero() for chart in reductions(family))


def _classify(family: FamilyId, derived: Polynomial, ref: Polynomial) -> str:
    if derived == ref:
        return MATCH
    if _vanishes(family, derived - ref):
        return MATCH_MOD
    return MISMATCH


def compare_ricci(family: FamilyId) -> list[Comparison]:
    derived_all = ricci(symbolic_family(family), LORENTZIAN)
    out = []
    for eta in etas_for(family):
        derived = derived_all if eta is None else derived_all.map(lambda p: p.subs({"eta": eta}))
        if family in RICCI_ZERO_PATTERN:
            zeros = RICCI_ZERO_PATTERN[family]
            for i, j, d in derived.upper():
                if (i, j) in zeros:
                    status = MATCH if d.is_zero() else MISMATCH
                    out.append(Comparison("ricci", family.value, eta, _entry_name((i, j)), None,
                                          status, str(d), "0"))
                else:
                    out.append(Comparison("ricci", family.value, eta, _entry_name((i, j)), None,
                                          RECORDED, str(d), "not comparable"))
            continue
        ref = reference_ricci(family, eta)
        for i, j, d in derived.upper():
            t = ref[i, j]
            out.append(Comparison("ricci", family.value, eta, _entry_name((i, j)), None,
                                  _classify(family, d, t), str(d), str(t)))
    return out


def compare_system(family: FamilyId) -> list[Comparison]:
    out = []
    for eta in etas_for(family):
        derived = symbolic_system(family, eta)
        ref = reference_system(family, eta)
        for r, ij in enumerate(ROW_PAIRS):
            drow, trow = derived.rows[r], ref.rows[r]
            statuses = [_classify(family, d, t) for d, t in zip(drow, trow)]
            # A homogeneous equation may be published multiplied by -1.
            if MISMATCH in statuses and drow[3] == 0 and trow[3] == 0:
                if all(_vanishes(family, d + t) for d, t in zip(drow, trow)):
                    statuses = [s if s == MATCH and d == 0 else ROW_SIGN
                                for s, d in zip(statuses, drow)]
            for c, (d, t, s) in enumerate(zip(drow, trow, statuses)):
                out.append(Comparison("system", family.value, eta, _entry_name(ij), COLUMNS[c],
                                      s, str(d), str(t), ij in DISPLAYED_ROWS[family]))
    return out


def _fmt_span(vectors: Iterable[Sequence[Fraction]]) -> list[list[str]]:
    return [[format_rational(x) for x in v] for v in vectors]


@dataclass
class CaseRecord:
    case_id: str
    eta: int | None
    condition: str
    requested: int
    samples_run: int = 0
    matches: int = 0
    mismatches: list[dict] = field(default_factory=list)
    lambda_failures: int = 0
    residual_failures: int = 0
    warning: str | None = None

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.lambda_failures and not self.residual_failures


def _check_point(p: ParamAssignment, predicted: Sequence[Sequence[Fraction]], rec: CaseRecord,
                 matched: list[str]) -> SolutionSpace:
    L = make_family(p)
    sol = solve_collineations(L)
    rec.samples_run += 1
    if any(not t.is_zero() for t in residual_check(L, LORENTZIAN, sol)):
        rec.residual_failures += 1
    if not sol.lambda_forced_zero:
        rec.lambda_failures += 1
    if span_equal(sol.vrc_basis, predicted):
        rec.matches += 1
    else:
        rec.mismatches.append({
            "params": {k: format_rational(v) for k, v in p.values.items()},
            "matched_cases": matched,
            "computed_span": _fmt_span(sol.vrc_basis),
            "predicted_span": _fmt_span(span_basis(predicted, 3)),
        })
    return sol


def _draw(family, case_id, count, seed, eta, rec) -> list[ParamAssignment]:
    try:
        return sample_params(family, case_id, count, seed, eta=eta)
    except SamplerExhausted as exc:
        rec.warning = str(exc)
        return exc.partial


def check_case(case_id: str, samples: int, seed: int, eta: int | None = None) -> CaseRecord:
    """Soundness of one case: computed span equals the predicted span."""
    family = FamilyId(case_id.split(".")[0])
    case = next(c for c in CASES[family] if c.id == case_id)
    rec = CaseRecord(case_id, eta, case.condition, samples)
    for p in _draw(family, case_id, samples, seed, eta, rec):
        pred = predict_case(p)
        _check_point(p, pred.span, rec, pred.case_ids)
    return rec


def check_complement(family: FamilyId, samples: int, seed: int) -> CaseRecord:
    """Completeness: no case holds, so the space must be trivial."""
    case_id = f"{family}.complement"
    rec = CaseRecord(case_id, None, "family constraints hold and no case holds", samples)
    for p in _draw(family, case_id, samples, seed, None, rec):
        _check_point(p, [], rec, [])
    return rec


def outside_span_residuals(L: LieAlgebra3, sol: SolutionSpace, count: int,
                           rng: random.Random, max_tries: int = 1000) -> list[tuple[list[Fraction], bool]]:
    """Residual test for vectors rejection-sampled outside the computed span.

    For each vector ``v`` the residual ``L_v Ric - 2 lambda g`` is examined at
    every ``lambda`` that could possibly cancel it (only the ``g``-direction
    can be absorbed).  Returns ``(v, nonzero)`` pairs; when the span is full
    there is nothing to sample and the list is empty.
    """
    if len(sol.vrc_basis) == 3:
        return []
    ric = ricci(L, LORENTZIAN)
    out = []
    tries = 0
    while len(out) < count and tries < max_tries:
        tries += 1
        v = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3)]
        if span_equal(sol.vrc_basis + [v], sol.vrc_basis) if sol.vrc_basis else not any(v):
            continue
        zero_lam = residual(L, v, Fraction(0), LORENTZIAN, ric)
        # the only lambda that can cancel the residual is read off the (1,1) entry
        lam = zero_lam[0, 0] / 2
        nonzero = not residual(L, v, lam, LORENTZIAN, ric).is_zero()
        out.append((v, nonzero))
    return out


def run_verify(families: Sequence[FamilyId] | None = None, samples: int = 25, seed: int = 0,
               complement_samples: int = 100) -> dict:
    if samples < 1:
        raise ValueError("samples per case must be at least 1")
    if families is None:
        families = list(FamilyId)
    families = sorted(set(families), key=lambda f: f.value)
    fam_reports = []
    discrepancies = []
    notes = []
    warnings = []
    totals = dict(samples=0, span_mismatches=0, lambda_failures=0, residual_failures=0,
                  ricci_mismatches=0, system_mismatches=0, exhausted_cases=0)
    for family in families:
        comps = compare_ricci(family) + compare_system(family)
        for c in comps:
            if c.status == MISMATCH:
                discrepancies.append(asdict(c))
                totals["ricci_mismatches" if c.kind == "ricci" else "system_mismatches"] += 1
            elif c.status in (MATCH_MOD, ROW_SIGN):
                notes.append(asdict(c))
        records = [check_case(case.id, samples, seed, eta)
                   for case in CASES[family] for eta in etas_for(family)]
        records.append(check_complement(family, max(complement_samples, 1), seed))
        for rec in records:
            totals["samples"] += rec.samples_run
            totals["span_mismatches"] += len(rec.mismatches)
            totals["lambda_failures"] += rec.lambda_failures
            totals["residual_failures"] += rec.residual_failures
            if rec.warning:
                totals["exhausted_cases"] += 1
                warnings.append(rec.warning)
        fam_reports.append({
            "family": family.value,
            "unimodular": family.unimodular,
            "ricci": _summary(c for c in comps if c.kind == "ricci"),
            "system": _summary(c for c in comps if c.kind == "system"),
            "cases": [_record_dict(r) for r in records],
        })
    passed = (totals["span_mismatches"] == 0 and totals["lambda_failures"] == 0
              and totals["residual_failures"] == 0)
    return {
        "tool": "licol",
        "version": __version__,
        "seed": seed,
        "samples_per_case": samples,
        "complement_samples": complement_samples,
        "families": fam_reports,
        "discrepancies": discrepancies,
        "notes": notes,
        "warnings": warnings,
        "totals": totals,
        "pass": passed,
    }


def _summary(comps: Iterable[Comparison]) -> dict:
    counts: dict[str, int] = {}
    for c in comps:
        counts[c.status] = counts.get(c.status, 0) + 1
    return dict(sorted(counts.items()))


def _record_dict(rec: CaseRecord) -> dict:
    d = asdict(rec)
    d["ok"] = rec.ok
    return d


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def report_text(report: dict) -> str:
    lines = []
    for fam in report["families"]:
        lines.append(f"{fam['family']}: ricci {_counts(fam['ricci'])}; system {_counts(fam['system'])}")
        for rec in fam["cases"]:
            tag = rec["case_id"] + (f"[eta={rec['eta']}]" if rec["eta"] is not None else "")
            state = "ok" if rec["ok"] else "FAIL"
            lines.append(f"  {tag:<24} {state:<4} {rec['matches']}/{rec['samples_run']} spans"
                         f" (requested {rec['requested']})")
            for m in rec["mismatches"][:3]:
                params = ", ".join(f"{k}={v}" for k, v in m["params"].items())
                lines.append(f"      {params}: computed {m['computed_span']} predicted {m['predicted_span']}")
            if rec["warning"]:
                lines.append(f"      warning: {rec['warning']}")
    if report["discrepancies"]:
        lines.append("transcription discrepancies (derived | transcribed):")
        for d in report["discrepancies"]:
            where = d["entry"] + (f" {d['column']}" if d["column"] else "")
            eta = f" eta={d['eta']}" if d["eta"] is not None else ""
            lines.append(f"  {d['family']}{eta} {d['kind']} {where}: {d['derived']} | {d['transcribed']}")
    t = report["totals"]
    lines.append(f"samples {t['samples']}, span mismatches {t['span_mismatches']}, "
                 f"lambda failures {t['lambda_failures']}, residual failures {t['residual_failures']}, "
                 f"exhausted samplers {t['exhausted_cases']}")
    lines.append("PASS" if report["pass"] else "FAIL")
    return "\n".join(lines) + "\n"


def _counts(summary: dict) -> str:
    return ", ".join(f"{k} {v}" for k, v in summary.items())
