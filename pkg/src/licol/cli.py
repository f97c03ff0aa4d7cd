"""Command-line interface: ``licol ricci|solve|symbolic-system|verify``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .collineation import (
    COLUMNS,
    ROW_PAIRS,
    SolutionSpace,
    build_system,
    residual_check,
    solve_collineations,
)
from .exactnum import format_rational, parse_rational
from .families import (
    ConstraintError,
    FamilyId,
    ParamAssignment,
    family_ring,
    make_family,
    symbolic_family,
    symbolic_system,
)
from .geometry import LORENTZIAN, LieAlgebra3, jacobi_check, levi_civita, ricci
from .verify import report_json, report_text, run_verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONSTRAINT = 2
EXIT_MISMATCH = 3
EXIT_RESIDUAL = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- algebra documents --------------------------------------------------------


def algebra_from_document(doc: Any) -> LieAlgebra3:
    """Build an algebra from ``{"structure_constants": [{i, j, k, value}, ...]}``.

    Indices are 1-based.  An entry for ``(j, i, k)`` is implied by one for
    ``(i, j, k)``; listing both is allowed only when the values are negatives.
    """
    if not isinstance(doc, dict):
        raise UsageError("algebra document must be a JSON object")
    entries = doc.get("structure_constants", [])
    if not isinstance(entries, list):
        raise UsageError("structure_constants must be a list")
    c: dict[tuple[int, int, int], Fraction] = {}
    for n, e in enumerate(entries):
        if not isinstance(e, dict):
            raise UsageError(f"structure_constants[{n}] must be an object")
        try:
            i, j, k = (e[key] for key in ("i", "j", "k"))
            raw = e["value"]
        except KeyError as exc:
            raise UsageError(f"structure_constants[{n}] is missing {exc.args[0]!r}") from None
        for name, idx in (("i", i), ("j", j), ("k", k)):
            if isinstance(idx, bool) or not isinstance(idx, int) or not 1 <= idx <= 3:
                raise UsageError(f"structure_constants[{n}].{name} must be 1, 2 or 3")
        if isinstance(raw, bool) or not isinstance(raw, (str, int)):
            raise UsageError(f"structure_constants[{n}].value must be a rational string like \"p/q\"")
        try:
            value = parse_rational(str(raw))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"structure_constants[{n}]: {exc}") from None
        if i == j:
            if value != 0:
                raise UsageError(f"structure_constants[{n}]: [e{i}, e{i}] must be zero")
            continue
        key, val = ((i, j, k), value) if i < j else ((j, i, k), -value)
        if key in c and c[key] != val:
            raise UsageError(f"structure_constants[{n}]: inconsistent value for "
                             f"C^{k}_{{{i}{j}}} (antisymmetry or duplicate)")
        c[key] = val
    table = {}
    for i in range(3):
        for j in range(i + 1, 3):
            table[i, j] = tuple(c.get((i + 1, j + 1, k + 1), Fraction(0)) for k in range(3))
    return LieAlgebra3.from_brackets(table, Fraction(0))


def algebra_to_document(L: LieAlgebra3, **metadata) -> dict:
    """Canonical document: only ``i < j`` nonzero entries, sorted."""
    entries = [
        {"i": i + 1, "j": j + 1, "k": k + 1, "value": format_rational(L.c[i][j][k])}
        for i in range(3) for j in range(i + 1, 3) for k in range(3)
        if L.c[i][j][k] != 0
    ]
    doc = {key: val for key, val in metadata.items() if val is not None}
    doc["structure_constants"] = entries
    return doc


def parse_params(family: FamilyId, text: str | None) -> ParamAssignment:
    values = {}
    for item in filter(None, (s.strip() for s in (text or "").split(","))):
        name, sep, raw = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise UsageError(f"bad parameter {item!r}; expected name=value")
        if name in values:
            raise UsageError(f"parameter {name} given twice")
        try:
            values[name] = parse_rational(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(str(exc)) from None
    try:
        return ParamAssignment(family, values)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _family(text: str) -> FamilyId:
    try:
        return FamilyId.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_algebra(args) -> tuple[LieAlgebra3, str]:
    if (args.family is None) == (args.input is None):
        raise UsageError("give exactly one of --family or --input")
    if args.input is not None:
        if args.params:
            raise UsageError("--params only applies with --family")
        try:
            with open(args.input, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed JSON in {args.input}: {exc}") from None
        name = doc.get("name") if isinstance(doc, dict) else None
        return algebra_from_document(doc), name or args.input
    p = parse_params(_family(args.family), args.params)
    return make_family(p), f"{p.family}({p.describe()})"


# -- serialization of results -------------------------------------------------


def _vec(v: Sequence[Fraction]) -> list[str]:
    return [format_rational(x) for x in v]


def tensor_to_json(t) -> list[list[str]]:
    return [[format_rational(t[i, j]) for j in range(3)] for i in range(3)]


def solution_to_json(s: SolutionSpace) -> dict:
    return {
        "dim": s.dim,
        "kernel_basis": [_vec(v) for v in s.kernel_basis],
        "vrc_basis": [_vec(v) for v in s.vrc_basis],
        "lambda_forced_zero": s.lambda_forced_zero,
    }


def solution_from_json(d: dict) -> SolutionSpace:
    return SolutionSpace(
        kernel_basis=[[parse_rational(x) for x in v] for v in d["kernel_basis"]],
        vrc_basis=[[parse_rational(x) for x in v] for v in d["vrc_basis"]],
        lambda_forced_zero=bool(d["lambda_forced_zero"]),
    )


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


# -- commands -----------------------------------------------------------------


def cmd_ricci(args) -> int:
    L, name = _load_algebra(args)
    conn = levi_civita(L, LORENTZIAN)
    ric = ricci(L, LORENTZIAN)
    jac = jacobi_check(L)
    for triple, res in jac:
        print(f"warning: Jacobi identity fails on {triple}: residual {_vec(res)}", file=sys.stderr)
    gamma = [
        {"i": i + 1, "j": j + 1, "k": k + 1, "value": format_rational(conn.gamma[i][j][k])}
        for i in range(3) for j in range(3) for k in range(3) if conn.gamma[i][j][k] != 0
    ]
    if args.json:
        _emit({"algebra": name, "ricci": tensor_to_json(ric), "connection": gamma,
               "jacobi_ok": not jac})
        return EXIT_OK
    print(f"algebra: {name}")
    print("Ricci tensor:")
    for i, j, x in ric.upper():
        print(f"  Ric(e{i + 1},e{j + 1}) = {format_rational(x)}")
    print("Levi-Civita connection (nonzero, nabla_{e_i} e_j = sum_k Gamma^k_ij e_k):")
    for g in gamma:
        print(f"  Gamma^{g['k']}_{g['i']}{g['j']} = {g['value']}")
    if not gamma:
        print("  (all zero)")
    print(f"Jacobi identity: {'holds' if not jac else 'FAILS'}")
    return EXIT_OK


def cmd_solve(args) -> int:
    L, name = _load_algebra(args)
    sol = solve_collineations(L, LORENTZIAN)
    residuals = residual_check(L, LORENTZIAN, sol)
    bad = [n for n, t in enumerate(residuals) if not t.is_zero()]
    if args.json:
        out = solution_to_json(sol)
        out["algebra"] = name
        out["residuals_zero"] = not bad
        _emit(out)
    else:
        print(f"algebra: {name}")
        print(f"dim V_RC = {sol.dim}")
        print("kernel basis (lambda1, lambda2, lambda3, lambda):")
        for v in sol.kernel_basis:
            print("  (" + ", ".join(_vec(v)) + ")")
        if not sol.kernel_basis:
            print("  (none)")
        print("V_RC basis:")
        for v in sol.vrc_basis:
            print("  " + " + ".join(f"({x})*e{k + 1}" for k, x in enumerate(_vec(v)) if x != "0"))
        if not sol.vrc_basis:
            print("  (trivial)")
        print(f"lambda forced to 0: {'yes' if sol.lambda_forced_zero else 'no'}")
        print(f"residual check: {'ok' if not bad else 'FAILED'}")
    if bad:
        print(f"error: nonzero residual for kernel vectors {bad}", file=sys.stderr)
        return EXIT_RESIDUAL
    return EXIT_OK


def cmd_symbolic_system(args) -> int:
    if args.family is None:
        raise UsageError("--family is required")
    family = _family(args.family)
    if args.eta is not None and family is not FamilyId.G4:
        raise UsageError("--eta only applies to G4")
    if family is FamilyId.G4 and args.eta is None:
        # the raw system keeps eta as a variable; also show both signs
        systems = [("raw", build_system(symbolic_family(family), LORENTZIAN))]
        systems += [(f"eta={e}", symbolic_system(family, e)) for e in (1, -1)]
    else:
        label = f"eta={args.eta}" if args.eta is not None else "system"
        systems = [(label, symbolic_system(family, args.eta))]
    if args.json:
        out = {"family": family.value, "variables": list(family_ring(family).names),
               "columns": list(COLUMNS), "systems": {}}
        for label, s in systems:
            out["systems"][label] = [
                {"row": f"({i + 1},{j + 1})", "coefficients": [str(x) for x in row]}
                for (i, j), row in zip(ROW_PAIRS, s.rows)
            ]
        _emit(out)
        return EXIT_OK
    for n, (label, s) in enumerate(systems):
        if n:
            print()
        print(f"{family} {label}:")
        for line in s.render():
            print("  " + line)
    return EXIT_OK


def _families_arg(values: list[str] | None) -> list[FamilyId] | None:
    if not values:
        return None
    names = [x for v in values for x in v.replace(",", " ").split()]
    return [_family(x) for x in names]


def cmd_verify(args) -> int:
    fams = _families_arg((args.families or []) + ([args.family] if args.family else []))
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    if args.complement_samples < 1:
        raise UsageError("--complement-samples must be at least 1")
    report = run_verify(fams, samples=args.samples, seed=args.seed,
                        complement_samples=args.complement_samples)
    text = report_json(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text if args.json else report_text(report))
    if report["totals"]["residual_failures"]:
        return EXIT_RESIDUAL
    return EXIT_OK if report["pass"] else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="licol", description="Exact conformal Ricci collineations of "
                     "3-dimensional Lorentzian Lie algebras.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def algebra_args(p):
        p.add_argument("--family", help="one of G1..G7")
        p.add_argument("--params", help="comma-separated name=value, e.g. alpha=1,beta=2/3")
        p.add_argument("--input", help="algebra document (JSON)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("ricci", help="connection, Ricci tensor and Jacobi status")
    algebra_args(p)
    p.set_defaults(func=cmd_ricci)

    p = sub.add_parser("solve", help="solve L_V Ric = 2 lambda g")
    algebra_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("symbolic-system", help="print the parametric 6x4 system of a family")
    p.add_argument("--family", help="one of G1..G7")
    p.add_argument("--eta", type=int, choices=(1, -1), help="sign for G4")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_symbolic_system)

    p = sub.add_parser("verify", help="check the classification of G1..G7")
    p.add_argument("--families", nargs="+", help="subset of families (default: all)")
    p.add_argument("--family", help="a single family")
    p.add_argument("--samples", type=int, default=25, help="samples per case (default 25)")
    p.add_argument("--complement-samples", type=int, default=100,
                   help="samples outside every case, per family (default 100)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstraintError as exc:
        print(f"constraint violation: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except ValueError as exc:
        # e.g. LICOL_MAX_SAMPLER_ATTEMPTS that is not an integer
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
