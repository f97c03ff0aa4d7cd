"""Published Ricci tensors and collineation systems, transcribed as text.

Polynomials are written in the package's own grammar (ASCII parameter names,
``^`` for powers).  Row and entry keys are 0-based index pairs ``(i, j)`` with
``i <= j``.  The published systems sometimes list only the equations that are
not trivially satisfied.  Rows that were left out are filled in from the
published Lie-derivative components, and ``DISPLAYED_ROWS`` records which
rows were actually listed.

G3's published Ricci entries use auxiliary symbols that are never defined,
so only their zero pattern is transcribed.
"""

from __future__ import annotations

from functools import lru_cache

from .collineation import CollineationSystem, ROW_PAIRS
from .families import FamilyId, family_ring
from .multipoly import Polynomial

__all__ = [
    "RICCI",
    "RICCI_ZERO_PATTERN",
    "SYSTEMS",
    "DISPLAYED_ROWS",
    "reference_ricci",
    "reference_system",
]

G = FamilyId

RICCI: dict[FamilyId, dict[tuple[int, int], str]] = {
    G.G1: {
        (0, 0): "-beta^2/2",
        (0, 1): "-alpha*beta",
        (0, 2): "alpha*beta",
        (1, 1): "-2*alpha^2 - beta^2/2",
        (1, 2): "2*alpha^2",
        (2, 2): "-2*alpha^2 + beta^2/2",
    },
    G.G2: {
        (0, 0): "-alpha^2/2 - 2*gamma^2",
        (0, 1): "0",
        (0, 2): "0",
        (1, 1): "alpha^2/2 - alpha*beta",
        (1, 2): "-alpha*gamma + 2*beta*gamma",
        (2, 2): "-alpha^2/2 + alpha*beta",
    },
    G.G4: {
        (0, 0): "-alpha^2/2",
        (0, 1): "0",
        (0, 2): "0",
        (1, 1): "alpha^2/2 + 2*eta*(alpha - beta) - alpha*beta + 2",
        (1, 2): "alpha + 2*eta - beta",
        (2, 2): "-alpha^2/2 - 2*beta*eta + alpha*beta + 2",
    },
    G.G5: {
        (0, 0): "alpha^2 + alpha*delta + (beta^2 - gamma^2)/2",
        (0, 1): "0",
        (0, 2): "0",
        (1, 1): "delta^2 + alpha*delta - (beta^2 - gamma^2)/2",
        (1, 2): "0",
        (2, 2): "-(alpha^2 + delta^2 + (beta + gamma)^2/2)",
    },
    G.G6: {
        (0, 0): "-alpha^2 - delta^2 + (beta - gamma)^2/2",
        (0, 1): "0",
        (0, 2): "0",
        (1, 1): "-alpha^2 - alpha*delta + (beta^2 - gamma^2)/2",
        (1, 2): "0",
        (2, 2): "delta^2 + alpha*delta + (beta^2 - gamma^2)/2",
    },
    G.G7: {
        (0, 0): "-gamma^2/2",
        (0, 1): "0",
        (0, 2): "0",
        (1, 1): "-alpha^2 - gamma^2/2 + alpha*delta - beta*gamma",
        (1, 2): "alpha^2 - alpha*delta + beta*gamma",
        (2, 2): "-alpha^2 - gamma^2/2 + alpha*delta - beta*gamma",
    },
}

# Entries published as literally zero for G3; the diagonal is not usable.
RICCI_ZERO_PATTERN: dict[FamilyId, tuple[tuple[int, int], ...]] = {
    G.G3: ((0, 1), (0, 2), (1, 2)),
}

_G5_A = "(alpha^2 + alpha*delta + (beta^2 - gamma^2)/2)"
_G5_D = "(delta^2 + alpha*delta - (beta^2 - gamma^2)/2)"
_G6_A = "(-alpha^2 - alpha*delta + (beta^2 - gamma^2)/2)"
_G6_D = "(delta^2 + alpha*delta + (beta^2 - gamma^2)/2)"

# Columns: lambda1, lambda2, lambda3, lambda (the last is -2 g(e_i, e_j)).
SYSTEMS: dict[FamilyId, dict[tuple[int, int], tuple[str, str, str, str]]] = {
    G.G1: {
        (0, 0): ("0", "-3*alpha*beta^2", "3*alpha*beta^2", "-2"),
        (0, 1): ("3/2*alpha*beta^2", "-3*alpha^2*beta", "3*alpha^2*beta", "0"),
        (0, 2): ("-3/2*alpha*beta^2", "3*alpha^2*beta", "alpha^2*beta", "0"),
        (1, 1): ("6*alpha^2*beta", "0", "-3*alpha*beta^2", "-2"),
        (1, 2): ("-6*alpha^2*beta", "3/2*alpha*beta^2", "3/2*alpha*beta^2", "0"),
        (2, 2): ("6*alpha^2*beta", "-3*alpha*beta^2", "0", "2"),
    },
    G.G2: {
        (0, 0): ("0", "0", "0", "-2"),
        (0, 1): ("0", "alpha^2*gamma/2 - 2*beta^2*gamma",
                 "-alpha^3/2 - alpha*gamma^2 - 2*beta*gamma^2 + alpha*beta^2 - alpha^2*beta/2", "0"),
        (0, 2): ("0", "alpha^3/2 + alpha*gamma^2 + 2*beta*gamma^2 - alpha*beta^2 + alpha^2*beta/2",
                 "alpha^2*gamma/2 - 2*beta^2*gamma", "0"),
        (1, 1): ("-alpha^2*gamma + 4*beta^2*gamma", "0", "0", "-2"),
        (1, 2): ("0", "0", "0", "0"),
        (2, 2): ("-alpha^2*gamma + 4*beta^2*gamma", "0", "0", "2"),
    },
    G.G3: {
        (0, 0): ("0", "0", "0", "-2"),
        (0, 1): ("0", "0", "(alpha - beta)*(gamma^2 - (alpha + beta)^2)", "0"),
        (0, 2): ("0", "(alpha - gamma)*(beta^2 - (alpha + gamma)^2)", "0", "0"),
        (1, 1): ("0", "0", "0", "-2"),
        (1, 2): ("(beta - gamma)*(alpha^2 - (beta + gamma)^2)", "0", "0", "0"),
        (2, 2): ("0", "0", "0", "2"),
    },
    G.G4: {
        (0, 0): ("0", "0", "0", "-2"),
        (0, 1): ("0", "-alpha^2/2 + beta^2 - 2*beta*eta + 2",
                 "-alpha^3/2 - alpha^2*beta/2 + alpha*beta^2 - 2*alpha*beta*eta"
                 " + 2*beta^2*eta + alpha - 3*beta + 2*eta", "0"),
        (0, 2): ("0", "alpha^3/2 + alpha^2*beta/2 - alpha*beta^2 + 2*alpha*beta*eta"
                 " + 2*beta^2*eta - alpha^2*eta - alpha - 5*beta + 2*eta",
                 "-alpha^2/2 + beta^2 - 4*beta*eta + 2", "0"),
        (1, 1): ("alpha^2 - 2*beta^2 + 4*beta*eta + 4", "0", "0", "-2"),
        (1, 2): ("eta*(alpha - 2*beta + 2*eta)*(alpha + 2*beta - 2*eta)", "0", "0", "0"),
        (2, 2): ("alpha^2 - 2*beta^2 + 8*beta*eta - 4", "0", "0", "2"),
    },
    G.G5: {
        (0, 0): ("0", "0", f"2*alpha*{_G5_A}", "-2"),
        (0, 1): ("0", "0", f"beta*{_G5_D} + gamma*{_G5_A}", "0"),
        (0, 2): (f"{_G5_A}*alpha", f"{_G5_A}*gamma", "0", "0"),
        (1, 1): ("0", "0", f"2*delta*{_G5_D}", "-2"),
        (1, 2): (f"{_G5_D}*beta", f"{_G5_D}*delta", "0", "0"),
        (2, 2): ("0", "0", "0", "2"),
    },
    G.G6: {
        (0, 0): ("0", "0", "0", "-2"),
        (0, 1): ("0", f"{_G6_A}*alpha", f"{_G6_A}*gamma", "0"),
        (0, 2): ("0", f"{_G6_D}*beta", f"{_G6_D}*delta", "0"),
        (1, 1): (f"-2*alpha*{_G6_A}", "0", "0", "-2"),
        (1, 2): (f"-beta*{_G6_D} - gamma*{_G6_A}", "0", "0", "0"),
        (2, 2): (f"-2*delta*{_G6_D}", "0", "0", "2"),
    },
    G.G7: {
        (0, 0): ("0", "0", "0", "-2"),
        (0, 1): ("0", "-beta*gamma^2/2", "beta*gamma^2/2 - gamma^3/2", "0"),
        (0, 2): ("0", "beta*gamma^2/2 + gamma^3/2", "-beta*gamma^2/2", "0"),
        (1, 1): ("beta*gamma^2", "0", "delta*gamma^2", "-2"),
        (1, 2): ("-beta*gamma^2", "-delta*gamma^2/2", "-delta*gamma^2/2", "0"),
        (2, 2): ("beta*gamma^2", "delta*gamma^2", "0", "2"),
    },
}

DISPLAYED_ROWS: dict[FamilyId, tuple[tuple[int, int], ...]] = {
    G.G1: ROW_PAIRS,
    G.G2: ((0, 0), (0, 1), (0, 2), (1, 1)),
    G.G3: ((0, 0), (0, 1), (0, 2), (1, 2)),
    G.G4: ROW_PAIRS,
    G.G5: ROW_PAIRS,
    G.G6: ROW_PAIRS,
    G.G7: ROW_PAIRS,
}


@lru_cache(maxsize=None)
def _parse(family: FamilyId, text: str) -> Polynomial:
    return family_ring(family).parse(text)


def reference_ricci(family: FamilyId, eta: int | None = None) -> dict[tuple[int, int], Polynomial]:
    """Transcribed Ricci entries; empty for G3."""
    out = {}
    for ij, text in RICCI.get(family, {}).items():
        p = _parse(family, text)
        if eta is not None:
            p = p.subs({"eta": eta})
        out[ij] = p
    return out


def reference_system(family: FamilyId, eta: int | None = None) -> CollineationSystem:
    table = SYSTEMS[family]
    rows = []
    for ij in ROW_PAIRS:
        row = []
        for text in table[ij]:
            p = _parse(family, text)
            if eta is not None:
                p = p.subs({"eta": eta})
            row.append(p)
        rows.append(tuple(row))
    return CollineationSystem(tuple(rows))
