"""The seven families G1..G7 of 3-dimensional Lorentzian Lie algebras.

Each family is a bracket table in a pseudo-orthonormal basis with ``e3``
timelike, plus parameter constraints.  Each family also carries the cases of
its collineation classification: an exact predicate on the parameters, the
predicted collineation span, and a sampler producing exact rational points
that satisfy the predicate.
"""

from __future__ import annotations

import enum
import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .collineation import CollineationSystem, build_system
from .exactnum import format_rational, parse_rational, span_basis
from .geometry import LORENTZIAN, LieAlgebra3
from .multipoly import PolyRing, Polynomial

__all__ = [
    "FamilyId",
    "ConstraintError",
    "SamplerExhausted",
    "ParamAssignment",
    "PredictedCase",
    "Case",
    "CASES",
    "family_ring",
    "brackets",
    "make_family",
    "symbolic_family",
    "symbolic_system",
    "case_ids",
    "get_case",
    "sample_params",
    "predict_case",
    "reductions",
    "reduce_poly",
    "matched_cases",
    "max_sampler_attempts",
]

PARAM_NAMES = ("alpha", "beta", "gamma", "delta", "eta")
GREEK = {"alpha": "α", "beta": "β", "gamma": "γ", "delta": "δ", "eta": "η"}


class FamilyId(enum.Enum):
    G1 = "G1"
    G2 = "G2"
    G3 = "G3"
    G4 = "G4"
    G5 = "G5"
    G6 = "G6"
    G7 = "G7"

    @property
    def unimodular(self) -> bool:
        return self in (FamilyId.G1, FamilyId.G2, FamilyId.G3, FamilyId.G4)

    @property
    def params(self) -> tuple[str, ...]:
        return _PARAMS[self]

    @classmethod
    def parse(cls, text: str) -> "FamilyId":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise ValueError(f"unknown family {text!r}; expected one of G1..G7") from None

    def __str__(self):
        return self.value


_PARAMS = {
    FamilyId.G1: ("alpha", "beta"),
    FamilyId.G2: ("alpha", "beta", "gamma"),
    FamilyId.G3: ("alpha", "beta", "gamma"),
    FamilyId.G4: ("alpha", "beta", "eta"),
    FamilyId.G5: ("alpha", "beta", "gamma", "delta"),
    FamilyId.G6: ("alpha", "beta", "gamma", "delta"),
    FamilyId.G7: ("alpha", "beta", "gamma", "delta"),
}

_RING4 = PolyRing(("alpha", "beta", "gamma", "delta"))
_RING5 = PolyRing(("alpha", "beta", "gamma", "delta", "eta"))


def family_ring(family: FamilyId) -> PolyRing:
    return _RING5 if family is FamilyId.G4 else _RING4


class ConstraintError(ValueError):
    pass


class SamplerExhausted(RuntimeError):
    def __init__(self, message: str, partial: list["ParamAssignment"]):
        super().__init__(message)
        self.partial = partial


def brackets(family: FamilyId, p: Mapping[str, object]) -> dict[tuple[int, int], tuple]:
    """``{(i, j): [e_i, e_j]}`` for ``i < j`` (0-based) as coefficient triples."""
    a = p.get("alpha")
    b = p.get("beta")
    g = p.get("gamma")
    d = p.get("delta")
    if family is FamilyId.G1:
        return {(0, 1): (a, 0, -b), (0, 2): (-a, -b, 0), (1, 2): (b, a, a)}
    if family is FamilyId.G2:
        return {(0, 1): (0, g, -b), (0, 2): (0, -b, -g), (1, 2): (a, 0, 0)}
    if family is FamilyId.G3:
        return {(0, 1): (0, 0, -g), (0, 2): (0, -b, 0), (1, 2): (a, 0, 0)}
    if family is FamilyId.G4:
        h = p.get("eta")
        return {(0, 1): (0, -1, 2 * h - b), (0, 2): (0, -b, 1), (1, 2): (a, 0, 0)}
    if family is FamilyId.G5:
        return {(0, 1): (0, 0, 0), (0, 2): (a, b, 0), (1, 2): (g, d, 0)}
    if family is FamilyId.G6:
        return {(0, 1): (0, a, b), (0, 2): (0, g, d), (1, 2): (0, 0, 0)}
    if family is FamilyId.G7:
        return {(0, 1): (-a, -b, -b), (0, 2): (a, b, b), (1, 2): (g, d, d)}
    raise ValueError(f"unknown family {family!r}")


def _constraint_violations(family: FamilyId, v: Mapping[str, Fraction]) -> list[str]:
    a, b, g, d = (v.get(k) for k in ("alpha", "beta", "gamma", "delta"))
    bad = []
    if family is FamilyId.G1 and a == 0:
        bad.append("G1 requires α≠0")
    elif family is FamilyId.G2 and g == 0:
        bad.append("G2 requires γ≠0")
    elif family is FamilyId.G4 and v.get("eta") not in (1, -1):
        bad.append("G4 requires η=1 or η=-1")
    elif family in (FamilyId.G5, FamilyId.G6, FamilyId.G7):
        if a + d == 0:
            bad.append(f"{family} requires α+δ≠0")
        if family is FamilyId.G5 and a * g + b * d != 0:
            bad.append("G5 requires αγ+βδ=0")
        if family is FamilyId.G6 and a * g - b * d != 0:
            bad.append("G6 requires αγ-βδ=0")
        if family is FamilyId.G7 and a * g != 0:
            bad.append("G7 requires αγ=0")
    return bad


@dataclass(frozen=True)
class ParamAssignment:
    family: FamilyId
    values: Mapping[str, Fraction]

    def __post_init__(self):
        vals = {}
        for k, x in self.values.items():
            if k not in self.family.params:
                raise ValueError(f"{self.family} has no parameter {k!r}; "
                                 f"expected {', '.join(self.family.params)}")
            if isinstance(x, (float, bool)):
                raise TypeError(f"parameter {k} must be an exact rational")
            vals[k] = Fraction(x)
        missing = [k for k in self.family.params if k not in vals]
        if missing:
            raise ValueError(f"{self.family} is missing parameters: {', '.join(missing)}")
        object.__setattr__(self, "values", {k: vals[k] for k in self.family.params})

    def violations(self) -> list[str]:
        return _constraint_violations(self.family, self.values)

    def validate(self) -> "ParamAssignment":
        bad = self.violations()
        if bad:
            raise ConstraintError("; ".join(bad))
        return self

    def __getitem__(self, name: str) -> Fraction:
        return self.values[name]

    def key(self) -> tuple:
        return (self.family.value,) + tuple(self.values[k] for k in self.family.params)

    def describe(self) -> str:
        return ", ".join(f"{k}={format_rational(x)}" for k, x in self.values.items())

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, ParamAssignment) and self.key() == other.key()


def make_family(p: ParamAssignment) -> LieAlgebra3:
    p.validate()
    table = brackets(p.family, p.values)
    return LieAlgebra3.from_brackets(table, Fraction(0))


def symbolic_family(family: FamilyId) -> LieAlgebra3:
    ring = family_ring(family)
    gens = {n: ring.gen(n) for n in ring.names}
    return LieAlgebra3.from_brackets(brackets(family, gens), ring.zero)


def symbolic_system(family: FamilyId, eta: int | None = None) -> CollineationSystem:
    """The collineation system with the family parameters left symbolic.

    For G4 the sign ``eta`` must be given and is substituted after the
    pipeline has run over the full ring.
    """
    if (family is FamilyId.G4) != (eta is not None):
        raise ValueError("eta is required for G4 and only for G4")
    if eta is not None and eta not in (1, -1):
        raise ValueError("eta must be 1 or -1")
    system = build_system(symbolic_family(family), LORENTZIAN)
    if eta is not None:
        system = system.map(lambda x: x.subs({"eta": eta}))
    return system


def reductions(family: FamilyId) -> list[tuple[str, PolyRing, dict[str, object]]]:
    """Charts covering the family's constraint set, as polynomial substitutions.

    A polynomial vanishes on the constraint set exactly when it composes to
    zero under every chart.  The G5 and G6 constraints say a 2x2 determinant
    vanishes, so the rank-one parametrization covers them and its ideal is
    prime.  G7's ``αγ=0`` splits into two coordinate planes.  For G4 the
    charts are the two signs of ``η``.
    """
    ring = family_ring(family)
    if family is FamilyId.G4:
        return [("eta=1", ring, {"eta": 1}), ("eta=-1", ring, {"eta": -1})]
    if family in (FamilyId.G5, FamilyId.G6):
        chart = PolyRing(("u", "v", "s", "t"))
        u, v, s, t = chart.gens
        if family is FamilyId.G5:
            # det [[alpha, beta], [-delta, gamma]] = alpha*gamma + beta*delta
            sub = {"alpha": u * s, "beta": u * t, "gamma": v * t, "delta": -(v * s)}
        else:
            # det [[alpha, beta], [delta, gamma]] = alpha*gamma - beta*delta
            sub = {"alpha": u * s, "beta": u * t, "gamma": v * t, "delta": v * s}
        return [("rank-one", chart, sub)]
    if family is FamilyId.G7:
        return [("alpha=0", ring, {"alpha": 0}), ("gamma=0", ring, {"gamma": 0})]
    return [("", ring, {})]


def reduce_poly(poly: Polynomial, chart: tuple[str, PolyRing, dict[str, object]]) -> Polynomial:
    _, target, sub = chart
    if target == poly.ring:
        return poly.subs(sub)
    return poly.compose(sub, target)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

MAX_HEIGHT = 20


def max_sampler_attempts() -> int:
    raw = os.environ.get("LICOL_MAX_SAMPLER_ATTEMPTS", "10000")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"LICOL_MAX_SAMPLER_ATTEMPTS must be an integer, got {raw!r}") from None
    return max(n, 1)


class _Draw:
    """Small-height rational draws, occasionally reusing earlier values."""

    def __init__(self, rng: random.Random, bias: float = 0.0):
        self.rng = rng
        self.bias = bias
        self.seen: list[Fraction] = []

    def __call__(self, nonzero: bool = False) -> Fraction:
        rng = self.rng
        while True:
            r = rng.random()
            if self.bias and r < self.bias / 2:
                x = Fraction(0)
            elif self.bias and r < self.bias and self.seen:
                x = rng.choice(self.seen) * rng.choice((1, -1, 2, Fraction(1, 2)))
            elif rng.random() < 0.5:
                x = Fraction(rng.randint(-4, 4))
            else:
                x = Fraction(rng.randint(-MAX_HEIGHT, MAX_HEIGHT), rng.randint(1, MAX_HEIGHT))
            if nonzero and x == 0:
                continue
            self.seen.append(x)
            return x

    def sign(self) -> int:
        return self.rng.choice((1, -1))


def _grid() -> list[Fraction]:
    vals = {Fraction(p, q) for p in range(-MAX_HEIGHT, MAX_HEIGHT + 1)
            for q in range(1, MAX_HEIGHT + 1)}
    return sorted(vals)


def rational_roots(coeffs: Sequence[Fraction], height: int = MAX_HEIGHT) -> list[Fraction]:
    """Distinct rational roots ``p/q`` with ``|p|, q <= height`` of ``sum coeffs[k] x^k``.

    By the rational root test ``q`` divides the leading and ``p`` the lowest
    nonzero integer coefficient, which prunes nearly every candidate.
    """
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    roots = set()
    low = 0
    while coeffs[low] == 0:
        low += 1
    if low:
        roots.add(Fraction(0))
    den = 1
    for c in coeffs:
        den = math.lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs[low:]]
    deg = len(ints) - 1
    if deg == 0:
        return sorted(roots)
    lead, const = ints[-1], ints[0]
    for q in range(1, height + 1):
        if lead % q:
            continue
        for p in range(1, height + 1):
            if const % p or math.gcd(p, q) != 1:
                continue
            for sp in (p, -p):
                # q^deg * f(sp/q), all in integers
                if sum(c * sp ** k * q ** (deg - k) for k, c in enumerate(ints)) == 0:
                    roots.add(Fraction(sp, q))
    return sorted(roots)


def _univariate(poly: Polynomial, var: str) -> list[Fraction]:
    """Coefficients of a polynomial that depends on ``var`` only."""
    idx = poly.ring.index(var)
    deg = max((e[idx] for e in poly.terms), default=0)
    out = [Fraction(0)] * (deg + 1)
    for e, c in poly.terms.items():
        if any(k for i, k in enumerate(e) if i != idx):
            raise ValueError("polynomial is not univariate")
        out[e[idx]] += c
    return out


@lru_cache(maxsize=None)
def _curve_points(key: str, eta: int) -> tuple[tuple[Fraction, Fraction], ...]:
    """Rational points (alpha, beta) of height <= MAX_HEIGHT on a G4 case curve."""
    equation = _G4_CURVES[key](_RING5).subs({"eta": eta})
    grid = _grid()
    found = set()
    for b in grid:
        uni = equation.subs({"beta": b})
        if uni.is_zero():
            found.update((a, b) for a in grid)
            continue
        for a in rational_roots(_univariate(uni, "alpha")):
            found.add((a, b))
    return tuple(sorted(found))


def _g4_m(v):
    a, b, h = v["alpha"], v["beta"], v["eta"]
    return -a ** 2 / 2 + b ** 2 - 2 * b * h + 2


def _g4_n(v):
    a, b, h = v["alpha"], v["beta"], v["eta"]
    return (-a ** 3 / 2 - a ** 2 * b / 2 + a * b ** 2 - 2 * a * b * h + 2 * b ** 2 * h
            + a - 3 * b + 2 * h)


def _g4_det(v):
    a, b = v["alpha"], v["beta"]
    m, n = _g4_m(v), _g4_n(v)
    return m * (m - 2 * b) - n * (4 * b ** 2 - a ** 2 - 8 * b + 4 - n)


def _sym(ring):
    return {n: ring.gen(n) for n in ring.names}


_G4_CURVES: dict[str, Callable[[PolyRing], Polynomial]] = {
    "m": lambda r: _g4_m(_sym(r)),
    "det": lambda r: _g4_det(_sym(r)),
}


# ---------------------------------------------------------------------------
# classification cases
# ---------------------------------------------------------------------------

E1 = (Fraction(1), Fraction(0), Fraction(0))
E2 = (Fraction(0), Fraction(1), Fraction(0))
E3 = (Fraction(0), Fraction(0), Fraction(1))
FULL = (E1, E2, E3)

Values = Mapping[str, Fraction]


@dataclass(frozen=True)
class Case:
    id: str
    family: FamilyId
    condition: str
    predicate: Callable[[Values], bool]
    span: Callable[[Values], Sequence[Sequence[Fraction]]]
    sampler: Callable[[_Draw, int | None], dict | None] | None = field(repr=False)
    # Cases whose small-height rational points form a finite set list them
    # per eta instead of drawing at random.
    points: Callable[[int], Sequence[dict]] | None = field(default=None, repr=False)

    @property
    def finite(self) -> bool:
        return self.points is not None


@dataclass(frozen=True)
class PredictedCase:
    case_ids: list[str]
    span: list[list[Fraction]]
    lam: Fraction = Fraction(0)


def _vec(*xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


def _p(**kw) -> dict:
    return kw


CASES: dict[FamilyId, list[Case]] = {f: [] for f in FamilyId}


def _case(family, cid, condition, predicate, span, sampler, points=None):
    CASES[family].append(Case(cid, family, condition, predicate, span, sampler, points))


# -- G1 ---------------------------------------------------------------------
_case(FamilyId.G1, "G1.beta0", "β=0",
      lambda v: v["beta"] == 0,
      lambda v: FULL,
      lambda r, h: _p(alpha=r(nonzero=True), beta=Fraction(0)))

# -- G2 ---------------------------------------------------------------------


def _g2_case1(r, h):
    b = r(nonzero=True)
    return _p(alpha=2 * b, beta=b, gamma=r(nonzero=True))


def _g2_case2(r, h):
    b = r()
    return _p(alpha=-2 * b, beta=b, gamma=r(nonzero=True))


# γ≠0 is stated twice in case (1); it is one condition.
_case(FamilyId.G2, "G2.case1", "α=2β, γ≠0, β≠0",
      lambda v: v["alpha"] == 2 * v["beta"] and v["gamma"] != 0 and v["beta"] != 0,
      lambda v: (E1,), _g2_case1)
_case(FamilyId.G2, "G2.case2", "α=-2β, γ≠0",
      lambda v: v["alpha"] == -2 * v["beta"] and v["gamma"] != 0,
      lambda v: FULL, _g2_case2)

# -- G3 ---------------------------------------------------------------------


def _abc(v):
    return v["alpha"], v["beta"], v["gamma"]


def _g3(pred):
    return lambda v: pred(*_abc(v))


def _g3_sampler(make):
    def sample(r, h):
        a, b, g = make(r)
        return _p(alpha=a, beta=b, gamma=g)
    return sample


def _s3_1(r):
    a, b = r(), r()
    return a, b, -a - b


def _s3_equal(r):
    t = r(nonzero=True)
    return t, t, t


def _s3_3(r):
    t = r(nonzero=True)
    return Fraction(0), t, t


def _s3_4(r):
    t = r(nonzero=True)
    return t, Fraction(0), t


def _s3_5(r):
    t = r(nonzero=True)
    return t, t, Fraction(0)


def _s3_6(r):
    t = r()
    return r(nonzero=True), t, t


def _s3_7(r):
    t = r()
    return t, r(nonzero=True), t


def _s3_8(r):
    t = r()
    return t, t, r(nonzero=True)


def _s3_9(r):
    b, g = r(nonzero=True), r(nonzero=True)
    return b + g, b, g


def _s3_10(r):
    a, g = r(nonzero=True), r(nonzero=True)
    return a, a + g, g


def _s3_11(r):
    a, b = r(nonzero=True), r(nonzero=True)
    return a, b, a + b


_G3_CASES = [
    ("α+β+γ=0", lambda a, b, g: a + b + g == 0, FULL, _s3_1),
    ("α+β+γ≠0, α=β=γ≠0",
     lambda a, b, g: a + b + g != 0 and a == b == g != 0, FULL, _s3_equal),
    ("α=0, β=γ≠0", lambda a, b, g: a == 0 and b == g != 0, FULL, _s3_3),
    ("β=0, α=γ≠0", lambda a, b, g: b == 0 and a == g != 0, FULL, _s3_4),
    ("γ=0, α=β≠0", lambda a, b, g: g == 0 and a == b != 0, FULL, _s3_5),
    ("α+β+γ≠0, α≠0, β=γ, α≠γ",
     lambda a, b, g: a + b + g != 0 and a != 0 and b == g and a != g, (E1,), _s3_6),
    ("α+β+γ≠0, β≠0, α=γ, α≠β",
     lambda a, b, g: a + b + g != 0 and b != 0 and a == g and a != b, (E2,), _s3_7),
    ("α+β+γ≠0, γ≠0, α=β, β≠γ",
     lambda a, b, g: a + b + g != 0 and g != 0 and a == b and b != g, (E3,), _s3_8),
    ("α-β-γ=0, α≠0, β≠0, γ≠0, β≠γ",
     lambda a, b, g: a - b - g == 0 and a != 0 and b != 0 and g != 0 and b != g, (E1,), _s3_9),
    ("-α+β-γ=0, α≠0, β≠0, γ≠0, α≠γ",
     lambda a, b, g: -a + b - g == 0 and a != 0 and b != 0 and g != 0 and a != g, (E2,), _s3_10),
    ("γ-α-β=0, α≠0, β≠0, γ≠0, α≠β",
     lambda a, b, g: g - a - b == 0 and a != 0 and b != 0 and g != 0 and a != b, (E3,), _s3_11),
]

for _k, (_cond, _pred, _span, _make) in enumerate(_G3_CASES, start=1):
    _case(FamilyId.G3, f"G3.case{_k}", _cond, _g3(_pred),
          (lambda s: (lambda v: s))(_span), _g3_sampler(_make))

# -- G4 ---------------------------------------------------------------------


def _g4_eta(r, h):
    return h if h is not None else r.sign()


def _g4_case1_points(h):
    return [_p(alpha=Fraction(2 * h), beta=Fraction(0), eta=Fraction(h))]


def _g4_curve(key):
    def points(h):
        return [_p(alpha=a, beta=b, eta=Fraction(h)) for a, b in _curve_points(key, h)]
    return points


def _g4_span2(v):
    a, b, h = v["alpha"], v["beta"], v["eta"]
    return (_vec(0, 2 * b * h / (a ** 2 - 4), 1),)


def _g4_span4(v):
    return (_vec(0, -_g4_n(v) / _g4_m(v), 1),)


_case(FamilyId.G4, "G4.case1", "α=2η, β=0",
      lambda v: v["alpha"] == 2 * v["eta"] and v["beta"] == 0,
      lambda v: (E2, E3), None, _g4_case1_points)
_case(FamilyId.G4, "G4.case2", "m=0, n=0, α²-4≠0",
      lambda v: _g4_m(v) == 0 and _g4_n(v) == 0 and v["alpha"] ** 2 - 4 != 0,
      _g4_span2, None, _g4_curve("m"))
_case(FamilyId.G4, "G4.case3", "m=0, n≠0, α²-4-n=0",
      lambda v: _g4_m(v) == 0 and _g4_n(v) != 0 and v["alpha"] ** 2 - 4 - _g4_n(v) == 0,
      lambda v: (E2,), None, _g4_curve("m"))
_case(FamilyId.G4, "G4.case4", "m≠0, m(m-2β)-n(4β²-α²-8β+4-n)=0",
      lambda v: _g4_m(v) != 0 and _g4_det(v) == 0,
      _g4_span4, None, _g4_curve("det"))

# -- G5 ---------------------------------------------------------------------


def _abgd(v):
    return v["alpha"], v["beta"], v["gamma"], v["delta"]


def _g5_A(a, b, g, d):
    return a ** 2 + a * d + (b ** 2 - g ** 2) / 2


def _g5_D(a, b, g, d):
    return d ** 2 + a * d - (b ** 2 - g ** 2) / 2


def _g5_base(a, b, g, d):
    return a + d != 0 and a * g + b * d == 0


def _g5_case2(r, h):
    a, b = r(nonzero=True), r(nonzero=True)
    return _p(alpha=a, beta=b, gamma=-(2 * a ** 2 + b ** 2) / b, delta=a * (2 * a ** 2 + b ** 2) / b ** 2)


def _g5_case4(r, h):
    a, t = r(nonzero=True), r()
    d = t ** 2 * a / (2 + t ** 2)
    return _p(alpha=a, beta=t * a, gamma=-t * d, delta=d)


_case(FamilyId.G5, "G5.case1", "α²+αδ-γ²/2=0, β=0, α+δ≠0, αγ=0, δ≠0",
      lambda v: (lambda a, b, g, d: a ** 2 + a * d - g ** 2 / 2 == 0 and b == 0 and a + d != 0
                 and a * g == 0 and d != 0)(*_abgd(v)),
      lambda v: (E1,),
      lambda r, h: _p(alpha=Fraction(0), beta=Fraction(0), gamma=Fraction(0), delta=r(nonzero=True)))
_case(FamilyId.G5, "G5.case2", "α²+αδ+(β²-γ²)/2=0, β≠0, α+δ≠0, αγ+βδ=0",
      lambda v: (lambda a, b, g, d: _g5_A(a, b, g, d) == 0 and b != 0 and _g5_base(a, b, g, d))(*_abgd(v)),
      lambda v: (_vec(-v["delta"] / v["beta"], 1, 0),), _g5_case2)
_case(FamilyId.G5, "G5.case3", "α=0, β=0, δ≠0, γ≠0",
      lambda v: (lambda a, b, g, d: a == 0 and b == 0 and d != 0 and g != 0)(*_abgd(v)),
      lambda v: (E1,),
      lambda r, h: _p(alpha=Fraction(0), beta=Fraction(0), gamma=r(nonzero=True), delta=r(nonzero=True)))
_case(FamilyId.G5, "G5.case4", "δ²+αδ-(β²-γ²)/2=0, α≠0, α+δ≠0, αγ+βδ=0",
      lambda v: (lambda a, b, g, d: _g5_D(a, b, g, d) == 0 and a != 0 and _g5_base(a, b, g, d))(*_abgd(v)),
      lambda v: (_vec(-v["gamma"] / v["alpha"], 1, 0),), _g5_case4)
_case(FamilyId.G5, "G5.case5",
      "α²+αδ+(β²-γ²)/2≠0, δ²+αδ-(β²-γ²)/2≠0, α≠0, α+δ≠0, αγ+βδ=0, αδ-βγ=0",
      lambda v: (lambda a, b, g, d: _g5_A(a, b, g, d) != 0 and _g5_D(a, b, g, d) != 0 and a != 0
                 and _g5_base(a, b, g, d) and a * d - b * g == 0)(*_abgd(v)),
      lambda v: (_vec(-v["gamma"] / v["alpha"], 1, 0),),
      lambda r, h: _p(alpha=r(nonzero=True), beta=r(nonzero=True), gamma=Fraction(0), delta=Fraction(0)))

# -- G6 ---------------------------------------------------------------------


def _g6_A(a, b, g, d):
    return a ** 2 + a * d - (b ** 2 - g ** 2) / 2


def _g6_D(a, b, g, d):
    return d ** 2 + a * d + (b ** 2 - g ** 2) / 2


def _g6_base(a, b, g, d):
    return a + d != 0 and a * g - b * d == 0


def _g6_case2(r, h):
    a, b = r(nonzero=True), r(nonzero=True)
    return _p(alpha=a, beta=b, gamma=(b ** 2 - 2 * a ** 2) / b, delta=a * (b ** 2 - 2 * a ** 2) / b ** 2)


def _g6_case4(r, h):
    a, t = r(nonzero=True), r()
    d = t ** 2 * a / (t ** 2 - 2)
    return _p(alpha=a, beta=t * a, gamma=t * d, delta=d)


def _g6_case5(r, h):
    a, c = r(nonzero=True), r()
    branch = r.rng.randrange(3)
    if branch == 0:
        return _p(alpha=a, beta=a, gamma=c, delta=c)
    if branch == 1:
        return _p(alpha=a, beta=-a, gamma=c, delta=-c)
    return _p(alpha=a, beta=r(nonzero=True), gamma=Fraction(0), delta=Fraction(0))


_case(FamilyId.G6, "G6.case1", "α²+αδ+γ²/2=0, β=0, α+δ≠0, αγ=0, δ≠0",
      lambda v: (lambda a, b, g, d: a ** 2 + a * d + g ** 2 / 2 == 0 and b == 0 and a + d != 0
                 and a * g == 0 and d != 0)(*_abgd(v)),
      lambda v: (E2,),
      lambda r, h: _p(alpha=Fraction(0), beta=Fraction(0), gamma=Fraction(0), delta=r(nonzero=True)))
_case(FamilyId.G6, "G6.case2", "α²+αδ-(β²-γ²)/2=0, β≠0, α+δ≠0, αγ-βδ=0",
      lambda v: (lambda a, b, g, d: _g6_A(a, b, g, d) == 0 and b != 0 and _g6_base(a, b, g, d))(*_abgd(v)),
      lambda v: (_vec(0, -v["delta"] / v["beta"], 1),), _g6_case2)
_case(FamilyId.G6, "G6.case3", "α=0, β=0, δ≠0, γ≠0",
      lambda v: (lambda a, b, g, d: a == 0 and b == 0 and d != 0 and g != 0)(*_abgd(v)),
      lambda v: (E2,),
      lambda r, h: _p(alpha=Fraction(0), beta=Fraction(0), gamma=r(nonzero=True), delta=r(nonzero=True)))
_case(FamilyId.G6, "G6.case4", "δ²+αδ+(β²-γ²)/2=0, α≠0, α+δ≠0, αγ-βδ=0",
      lambda v: (lambda a, b, g, d: _g6_D(a, b, g, d) == 0 and a != 0 and _g6_base(a, b, g, d))(*_abgd(v)),
      lambda v: (_vec(0, -v["gamma"] / v["alpha"], 1),), _g6_case4)
_case(FamilyId.G6, "G6.case5",
      "α²+αδ-(β²-γ²)/2≠0, δ²+αδ+(β²-γ²)/2≠0, α≠0, α+δ≠0, αγ-βδ=0, αδ-βγ=0",
      lambda v: (lambda a, b, g, d: _g6_A(a, b, g, d) != 0 and _g6_D(a, b, g, d) != 0 and a != 0
                 and _g6_base(a, b, g, d) and a * d - b * g == 0)(*_abgd(v)),
      lambda v: (_vec(0, -v["gamma"] / v["alpha"], 1),), _g6_case5)

# -- G7 ---------------------------------------------------------------------
_case(FamilyId.G7, "G7.case1", "γ=0, α+δ≠0",
      lambda v: v["gamma"] == 0 and v["alpha"] + v["delta"] != 0,
      lambda v: FULL,
      lambda r, h: _p(alpha=r(), beta=r(), gamma=Fraction(0), delta=r()))
_case(FamilyId.G7, "G7.case2", "α=0, β=0, δ≠0, γ≠0",
      lambda v: v["alpha"] == 0 and v["beta"] == 0 and v["delta"] != 0 and v["gamma"] != 0,
      lambda v: (E1,),
      lambda r, h: _p(alpha=Fraction(0), beta=Fraction(0), gamma=r(nonzero=True), delta=r(nonzero=True)))


# -- generic draws (family constraints only) ----------------------------------


def _generic(family: FamilyId, r: _Draw, eta: int | None) -> dict:
    if family is FamilyId.G1:
        return _p(alpha=r(nonzero=True), beta=r())
    if family is FamilyId.G2:
        return _p(alpha=r(), beta=r(), gamma=r(nonzero=True))
    if family is FamilyId.G3:
        return _p(alpha=r(), beta=r(), gamma=r())
    if family is FamilyId.G4:
        return _p(alpha=r(), beta=r(), eta=Fraction(_g4_eta(r, eta)))
    if family in (FamilyId.G5, FamilyId.G6):
        u, v, s, t = r(), r(), r(), r()
        if family is FamilyId.G5:
            return _p(alpha=u * s, beta=u * t, gamma=v * t, delta=-v * s)
        return _p(alpha=u * s, beta=u * t, gamma=v * t, delta=v * s)
    if family is FamilyId.G7:
        if r.rng.random() < 0.5:
            return _p(alpha=Fraction(0), beta=r(), gamma=r(), delta=r())
        return _p(alpha=r(), beta=r(), gamma=Fraction(0), delta=r())
    raise ValueError(family)


def case_ids(family: FamilyId) -> list[str]:
    return [c.id for c in CASES[family]]


def get_case(case_id: str) -> Case:
    for cases in CASES.values():
        for c in cases:
            if c.id == case_id:
                return c
    raise KeyError(f"unknown case id {case_id!r}")


def matched_cases(p: ParamAssignment) -> list[Case]:
    return [c for c in CASES[p.family] if c.predicate(p.values)]


def sample_params(family: FamilyId, case_id: str, count: int, seed: int,
                  eta: int | None = None, max_attempts: int | None = None) -> list[ParamAssignment]:
    """Deterministic exact samples for one case.

    ``case_id`` is a case of the family, ``"<family>.generic"`` (constraints
    only) or ``"<family>.complement"`` (constraints hold, no case does).
    Samples are distinct.  Raises :class:`SamplerExhausted`, carrying the
    samples found so far, when ``count`` cannot be reached.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if eta is not None and (family is not FamilyId.G4 or eta not in (1, -1)):
        raise ValueError("eta applies to G4 only and must be 1 or -1")
    if max_attempts is None:
        max_attempts = max_sampler_attempts()
    kind = case_id.split(".", 1)[1] if case_id.startswith(f"{family}.") else None
    if kind in ("generic", "complement"):
        case = None
    else:
        case = get_case(case_id)
        if case.family is not family:
            raise KeyError(f"case {case_id!r} does not belong to {family}")
    rng = random.Random(f"{seed}:{case_id}:{eta}")
    draw = _Draw(rng, bias=0.3 if kind == "complement" else 0.0)
    out: list[ParamAssignment] = []
    seen = set()
    attempts = 0
    if case is not None and case.finite:
        candidates = [v for h in ((eta,) if eta is not None else (1, -1)) for v in case.points(h)]
        rng.shuffle(candidates)
        pool = iter(candidates[:max_attempts])
    else:
        pool = None
    while len(out) < count and attempts < max_attempts:
        if pool is not None:
            vals = next(pool, None)
            if vals is None:
                break
        else:
            vals = _generic(family, draw, eta) if case is None else case.sampler(draw, eta)
        attempts += 1
        if vals is None:
            continue
        try:
            p = ParamAssignment(family, vals)
        except (ValueError, ZeroDivisionError):
            continue
        if p.violations() or p in seen:
            continue
        if case is not None and not case.predicate(p.values):
            continue
        if kind == "complement" and matched_cases(p):
            continue
        seen.add(p)
        out.append(p)
    if len(out) < count:
        raise SamplerExhausted(
            f"sampler exhausted for {case_id}"
            + (f" (eta={eta})" if eta is not None else "")
            + f": {len(out)} of {count} samples after {attempts} attempts", out)
    return out


def predict_case(p: ParamAssignment) -> PredictedCase:
    p.validate()
    cases = matched_cases(p)
    vectors = [list(vec) for c in cases for vec in c.span(p.values)]
    return PredictedCase([c.id for c in cases], span_basis(vectors, 3))


def sym_params(family: FamilyId) -> dict[str, Polynomial]:
    ring = family_ring(family)
    return {n: ring.gen(n) for n in ring.names}


def values_from_strings(family: FamilyId, items: Iterable[tuple[str, str]]) -> ParamAssignment:
    return ParamAssignment(family, {k: parse_rational(v) for k, v in items})
