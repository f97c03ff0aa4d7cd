"""Left-invariant pseudo-Riemannian geometry of 3-dimensional Lie algebras.

Everything here works over any scalar type that supports ``+``, ``-``, ``*``
and multiplication by a :class:`~fractions.Fraction`: plain rationals for
numeric work, :class:`~licol.multipoly.Polynomial` for symbolic work.

Index conventions (0-based internally):

* ``c[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
* ``gamma[i][j][k]`` is the coefficient of ``e_k`` in ``nabla_{e_i} e_j``.
* a curvature operator ``R[k][l]`` is the ``e_k`` component of ``R(e_i, e_j) e_l``.

The basis is pseudo-orthonormal, ``g = diag(eps)`` with ``eps = (1, 1, -1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

__all__ = [
    "LieAlgebra3",
    "Metric",
    "LORENTZIAN",
    "Connection",
    "SymTensor2",
    "bracket",
    "jacobi_check",
    "levi_civita",
    "curvature",
    "ricci",
    "ricci_from_connection",
    "lie_derivative_ric",
    "bianchi_check",
]

HALF = Fraction(1, 2)
DIM = 3
_R = range(DIM)


def _sum(items, zero):
    total = zero
    for x in items:
        total = total + x
    return total


def _dot(pairs, zero):
    # sum of products, skipping products with a zero factor (most entries are zero)
    total = zero
    for a, b in pairs:
        if a and b:
            total = total + a * b
    return total


@dataclass(frozen=True)
class Metric:
    eps: tuple[int, int, int] = (1, 1, -1)

    def __post_init__(self):
        if len(self.eps) != DIM or any(e not in (1, -1) for e in self.eps):
            raise ValueError(f"signature must be three entries of +-1, got {self.eps}")

    def __call__(self, x: Sequence, y: Sequence):
        return _sum((self.eps[k] * x[k] * y[k] for k in _R), x[0] * 0)

    def entry(self, i: int, j: int) -> int:
        return self.eps[i] if i == j else 0


LORENTZIAN = Metric((1, 1, -1))


class LieAlgebra3:
    """Structure constants ``c[i][j][k]`` of a 3-dimensional Lie algebra.

    Antisymmetry in ``(i, j)`` is enforced at construction.  The Jacobi
    identity is not; see :func:`jacobi_check`.
    """

    __slots__ = ("c", "zero")

    def __init__(self, c: Sequence[Sequence[Sequence[Any]]], zero: Any = None):
        if zero is None:
            zero = Fraction(0)
        c = tuple(tuple(tuple(zero + c[i][j][k] for k in _R) for j in _R) for i in _R)
        for i in _R:
            for j in _R:
                for k in _R:
                    if c[i][j][k] != -c[j][i][k]:
                        raise ValueError(
                            f"structure constants are not antisymmetric at "
                            f"(i={i + 1}, j={j + 1}, k={k + 1})")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "zero", zero)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra3 is immutable")

    @classmethod
    def from_brackets(cls, brackets: Mapping[tuple[int, int], Sequence], zero: Any = None) -> "LieAlgebra3":
        """Build from ``{(i, j): [e_i, e_j]}`` with ``i < j`` (0-based); the rest is implied."""
        if zero is None:
            zero = Fraction(0)
        c = [[[zero] * DIM for _ in _R] for _ in _R]
        for (i, j), vec in brackets.items():
            if not (0 <= i < j < DIM):
                raise ValueError(f"bracket key must satisfy 0 <= i < j < 3, got {(i, j)}")
            for k in _R:
                c[i][j][k] = zero + vec[k]
                c[j][i][k] = -(zero + vec[k])
        return cls(c, zero)

    @classmethod
    def abelian(cls, zero: Any = None) -> "LieAlgebra3":
        return cls.from_brackets({}, zero)

    @property
    def one(self):
        return self.zero + 1

    def unit(self, i: int) -> tuple:
        return tuple(self.one if k == i else self.zero for k in _R)

    def bracket_basis(self, i: int, j: int) -> tuple:
        return self.c[i][j]

    def scaled(self, t) -> "LieAlgebra3":
        return LieAlgebra3([[[t * x for x in row] for row in plane] for plane in self.c], self.zero)

    def map(self, fn: Callable[[Any], Any], zero: Any = None) -> "LieAlgebra3":
        """Apply ``fn`` to every structure constant, e.g. to evaluate parameters."""
        return LieAlgebra3([[[fn(x) for x in row] for row in plane] for plane in self.c],
                           zero if zero is not None else fn(self.zero))

    def __eq__(self, other):
        return isinstance(other, LieAlgebra3) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"LieAlgebra3({self.c!r})"


@dataclass(frozen=True)
class Connection:
    gamma: tuple

    def __call__(self, i: int, j: int) -> tuple:
        return self.gamma[i][j]

    def torsion_residuals(self, L: LieAlgebra3) -> list[tuple[int, int, int]]:
        """Indices where ``Gamma^k_ij - Gamma^k_ji != C^k_ij``."""
        g = self.gamma
        return [(i, j, k) for i in _R for j in _R for k in _R
                if g[i][j][k] - g[j][i][k] != L.c[i][j][k]]

    def metric_residuals(self, metric: Metric = LORENTZIAN) -> list[tuple[int, int, int]]:
        """Indices where ``eps_k Gamma^k_ij + eps_j Gamma^j_ik != 0``."""
        g, eps = self.gamma, metric.eps
        return [(i, j, k) for i in _R for j in _R for k in _R
                if eps[k] * g[i][j][k] + eps[j] * g[i][k][j] != 0]


class SymTensor2:
    """A 3x3 array of scalars representing a bilinear form in the frame."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Any]]):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("SymTensor2 is immutable")

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.rows[i][j]

    def is_symmetric(self) -> bool:
        return all(self.rows[i][j] == self.rows[j][i] for i in _R for j in _R)

    def __call__(self, x: Sequence, y: Sequence):
        zero = self.rows[0][0] * 0
        return _dot(((x[i] * y[j], self.rows[i][j]) for i in _R for j in _R if x[i] and y[j]), zero)

    def map(self, fn: Callable[[Any], Any]) -> "SymTensor2":
        return SymTensor2([[fn(x) for x in r] for r in self.rows])

    def __add__(self, other: "SymTensor2") -> "SymTensor2":
        return SymTensor2([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "SymTensor2") -> "SymTensor2":
        return SymTensor2([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __mul__(self, t) -> "SymTensor2":
        return self.map(lambda x: x * t)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def upper(self) -> list[tuple[int, int, Any]]:
        """Entries with ``i <= j`` in row order (1,1),(1,2),(1,3),(2,2),(2,3),(3,3)."""
        return [(i, j, self.rows[i][j]) for i in _R for j in _R if i <= j]

    def __eq__(self, other):
        return isinstance(other, SymTensor2) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SymTensor2({self.rows!r})"


def bracket(L: LieAlgebra3, x: Sequence, y: Sequence) -> tuple:
    zero = L.zero
    return tuple(
        _dot(((x[i] * y[j], L.c[i][j][k]) for i in _R for j in _R if i != j and x[i] and y[j]), zero)
        for k in _R
    )


def jacobi_check(L: LieAlgebra3) -> list[tuple[tuple[int, int, int], tuple]]:
    """Violations of ``[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j] = 0``.

    In dimension 3 only the triple (1, 2, 3) can fail; it is the only one
    checked after the antisymmetry already enforced by :class:`LieAlgebra3`.
    """
    e = [L.unit(i) for i in _R]
    i, j, l = 0, 1, 2
    terms = (
        bracket(L, bracket(L, e[i], e[j]), e[l]),
        bracket(L, bracket(L, e[j], e[l]), e[i]),
        bracket(L, bracket(L, e[l], e[i]), e[j]),
    )
    residual = tuple(_sum((t[k] for t in terms), L.zero) for k in _R)
    if all(r == 0 for r in residual):
        return []
    return [((i + 1, j + 1, l + 1), residual)]


def levi_civita(L: LieAlgebra3, metric: Metric = LORENTZIAN) -> Connection:
    """Koszul formula for left-invariant fields:

    ``2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)``

    with ``g`` diagonal, so raising the index is a multiplication by ``eps_k``.
    """
    c, eps = L.c, metric.eps
    gamma = tuple(
        tuple(
            tuple(
                (c[i][j][k] * eps[k] - c[j][k][i] * eps[i] + c[k][i][j] * eps[j]) * (eps[k] * HALF)
                for k in _R)
            for j in _R)
        for i in _R)
    return Connection(gamma)


def _nabla_matrix(conn: Connection, i: int):
    # column m holds nabla_{e_i} e_m
    g = conn.gamma
    return [[g[i][m][n] for m in _R] for n in _R]


def _matmul(a, b, zero):
    return [[_dot(((a[r][t], b[t][s]) for t in _R), zero) for s in _R] for r in _R]


def curvature(L: LieAlgebra3, conn: Connection, i: int, j: int) -> tuple:
    """``R(e_i, e_j) = nabla_i nabla_j - nabla_j nabla_i - nabla_[e_i, e_j]``.

    Left-invariant fields have constant frame components, so each covariant
    derivative acts as a constant matrix and the curvature is a commutator.
    """
    zero = L.zero
    a = _nabla_matrix(conn, i)
    b = _nabla_matrix(conn, j)
    ab = _matmul(a, b, zero)
    ba = _matmul(b, a, zero)
    br = L.c[i][j]
    nab = [_nabla_matrix(conn, k) for k in _R]
    return tuple(
        tuple(
            ab[r][s] - ba[r][s] - _dot(((br[k], nab[k][r][s]) for k in _R), zero)
            for s in _R)
        for r in _R)


def ricci_from_connection(L: LieAlgebra3, conn: Connection, metric: Metric = LORENTZIAN) -> SymTensor2:
    eps = metric.eps
    zero = L.zero
    R = {(i, m): curvature(L, conn, i, m) for i in _R for m in _R}

    # rho(X,Y) = sum_m -eps_m g(R(X,e_m)Y, e_m); g(w, e_m) = eps_m w^m
    def rho(i, j):
        return _sum((-eps[m] * eps[m] * R[i, m][m][j] for m in _R), zero)

    r = [[rho(i, j) for j in _R] for i in _R]
    return SymTensor2([[(r[i][j] + r[j][i]) * HALF for j in _R] for i in _R])


def ricci(L: LieAlgebra3, metric: Metric = LORENTZIAN) -> SymTensor2:
    return ricci_from_connection(L, levi_civita(L, metric), metric)


def lie_derivative_ric(L: LieAlgebra3, ric: SymTensor2, v: Sequence) -> SymTensor2:
    """``(L_V Ric)(e_i, e_j) = -Ric([V, e_i], e_j) - Ric(e_i, [V, e_j])``.

    The directional term ``V[Ric(e_i, e_j)]`` is dropped: for left-invariant
    arguments the function ``Ric(e_i, e_j)`` is constant on the group.
    """
    zero = L.zero
    e = [L.unit(i) for i in _R]
    ad = [bracket(L, v, e[i]) for i in _R]
    # Ric(w, e_j) = sum_k w^k Ric_kj
    m = [[_dot(((ad[i][k], ric[k, j]) for k in _R), zero) for j in _R] for i in _R]
    return SymTensor2([[zero - m[i][j] - m[j][i] for j in _R] for i in _R])


def bianchi_check(L: LieAlgebra3, conn: Connection) -> list[tuple[int, int, int]]:
    """Triples where ``R(x,y)z + R(y,z)x + R(z,x)y != 0`` on basis vectors."""
    R = {(i, j): curvature(L, conn, i, j) for i in _R for j in _R}
    bad = []
    for x in _R:
        for y in _R:
            for z in _R:
                for k in _R:
                    s = R[x, y][k][z] + R[y, z][k][x] + R[z, x][k][y]
                    if s != 0:
                        bad.append((x + 1, y + 1, z + 1))
                        break
    return bad
