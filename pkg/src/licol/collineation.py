"""Left-invariant conformal Ricci collineations ``L_V Ric = 2 lambda g``.

Writing ``V = l1 e1 + l2 e2 + l3 e3`` the condition is a homogeneous linear
system in ``(l1, l2, l3, lambda)`` with one row per unordered index pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .exactnum import Matrix, format_rational, nullspace, span_basis
from .geometry import LORENTZIAN, LieAlgebra3, Metric, SymTensor2, lie_derivative_ric, ricci

__all__ = [
    "ROW_PAIRS",
    "COLUMNS",
    "CollineationSystem",
    "SolutionSpace",
    "build_system",
    "solve_collineations",
    "residual_check",
    "residual",
]

ROW_PAIRS: tuple[tuple[int, int], ...] = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
COLUMNS = ("lambda1", "lambda2", "lambda3", "lambda")


@dataclass(frozen=True)
class CollineationSystem:
    """6x4 coefficient array; rows follow ``ROW_PAIRS``, columns ``COLUMNS``."""

    rows: tuple[tuple[Any, Any, Any, Any], ...]

    def __getitem__(self, ij: tuple[int, int]):
        return self.rows[ij[0]][ij[1]]

    def row_for(self, i: int, j: int) -> tuple:
        return self.rows[ROW_PAIRS.index((min(i, j), max(i, j)))]

    def is_numeric(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for r in self.rows for x in r)

    def as_matrix(self) -> Matrix:
        if not self.is_numeric():
            raise TypeError("parametric solving unsupported; evaluate parameters first")
        return Matrix.from_rows(self.rows, 4)

    def map(self, fn) -> "CollineationSystem":
        return CollineationSystem(tuple(tuple(fn(x) for x in r) for r in self.rows))

    def render(self) -> list[str]:
        """One equation per row, e.g. ``(1,1): (-3*alpha*beta^2)*lambda2 + ... = 0``."""
        lines = []
        for (i, j), row in zip(ROW_PAIRS, self.rows):
            terms = []
            for name, coef in zip(COLUMNS, row):
                if coef == 0:
                    continue
                text = format_rational(coef) if isinstance(coef, (int, Fraction)) else str(coef)
                terms.append(f"({text})*{name}")
            lhs = " + ".join(terms) if terms else "0"
            lines.append(f"({i + 1},{j + 1}): {lhs} = 0")
        return lines


@dataclass(frozen=True)
class SolutionSpace:
    kernel_basis: list[list[Fraction]]
    vrc_basis: list[list[Fraction]]
    lambda_forced_zero: bool

    @property
    def dim(self) -> int:
        return len(self.vrc_basis)


def build_system(L: LieAlgebra3, metric: Metric = LORENTZIAN) -> CollineationSystem:
    ric = ricci(L, metric)
    # L_V Ric is linear in V, so column k is L_{e_k} Ric
    derivs = [lie_derivative_ric(L, ric, L.unit(k)) for k in range(3)]
    rows = []
    for i, j in ROW_PAIRS:
        rows.append((derivs[0][i, j], derivs[1][i, j], derivs[2][i, j],
                     L.zero - 2 * metric.entry(i, j)))
    return CollineationSystem(tuple(rows))


def solve_collineations(L: LieAlgebra3, metric: Metric = LORENTZIAN) -> SolutionSpace:
    if not isinstance(L.zero, (int, Fraction)):
        raise TypeError("parametric solving unsupported; evaluate parameters first")
    m = build_system(L, metric).as_matrix()
    kernel = nullspace(m)
    projected = [v[:3] for v in kernel]
    vrc = span_basis(projected, 3) if projected else []
    return SolutionSpace(
        kernel_basis=kernel,
        vrc_basis=vrc,
        lambda_forced_zero=all(v[3] == 0 for v in kernel),
    )


def residual(L: LieAlgebra3, v: Sequence, lam, metric: Metric = LORENTZIAN,
             ric: SymTensor2 | None = None) -> SymTensor2:
    """``L_V Ric - 2 lambda g`` computed straight from the geometry."""
    if ric is None:
        ric = ricci(L, metric)
    ld = lie_derivative_ric(L, ric, v)
    return SymTensor2([[ld[i, j] - 2 * lam * metric.entry(i, j) for j in range(3)]
                       for i in range(3)])


def residual_check(L: LieAlgebra3, metric: Metric, s: SolutionSpace) -> list[SymTensor2]:
    """Residual tensor for each kernel vector; all must be zero."""
    ric = ricci(L, metric)
    return [residual(L, v[:3], v[3], metric, ric) for v in s.kernel_basis]
