"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .exactnum import as_rational, format_rational

__all__ = ["PolyRing", "Polynomial", "IncompatibleRings"]


class IncompatibleRings(ValueError):
    pass


class PolyRing:
    """An ordered tuple of variable names.  Rings compare by their names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
                raise ValueError(f"bad variable name {n!r}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self!r}") from None

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    @property
    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(n) for n in self.names)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], object]):
        clean = {}
        for exp, c in terms.items():
            c = as_rational(c)
            if c:
                if len(exp) != ring.nvars or any(k < 0 for k in exp):
                    raise ValueError(f"bad exponent {exp} for {ring!r}")
                clean[tuple(exp)] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise IncompatibleRings("incompatible polynomial rings")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})

    def __truediv__(self, other):
        # Only division by a nonzero rational constant; there is no polynomial division.
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise IncompatibleRings("incompatible polynomial rings")
            c = other.constant_value()
            if c is None:
                raise TypeError("division by a non-constant polynomial is not supported")
            other = c
        other = as_rational(other)
        if other == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(1 / other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring, frozenset(self.terms.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Fraction | None:
        """The value if this is a constant polynomial, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if not any(e):
                return c
        return None

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self) -> list[str]:
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return [self.ring.names[i] for i in sorted(used)]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded-lex order (degree first, then lex)."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- evaluation -----------------------------------------------------
    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        values = {}
        for name in self.variables():
            if name not in assignment:
                raise KeyError(f"missing value for variable {name!r}")
            values[self.ring.index(name)] = as_rational(assignment[name])
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t *= values[i] ** k
            total += t
        return total

    def subs(self, assignment: Mapping[str, object]) -> "Polynomial":
        """Partial evaluation; the result stays in the same ring."""
        idx = {self.ring.index(n): as_rational(v) for n, v in assignment.items()}
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for i, v in idx.items():
                if e2[i]:
                    c = c * v ** e2[i]
                    e2[i] = 0
            key = tuple(e2)
            out[key] = out.get(key, 0) + c
        return Polynomial(self.ring, out)

    def compose(self, mapping: Mapping[str, "Polynomial"], target: PolyRing) -> "Polynomial":
        """Substitute a polynomial of ``target`` for every variable of this ring.

        Variables absent from ``mapping`` must also be variables of ``target``.
        """
        images = []
        for name in self.ring.names:
            if name in mapping:
                img = mapping[name]
                if isinstance(img, Polynomial):
                    if img.ring != target:
                        raise IncompatibleRings("incompatible polynomial rings")
                else:
                    img = target.constant(img)
            else:
                img = target.gen(name)
            images.append(img)
        out = target.zero
        for e, c in self.terms.items():
            t = target.constant(c)
            for img, k in zip(images, e):
                if k:
                    t = t * img ** k
            out = out + t
        return out

    # -- text -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}"
                for name, k in zip(self.ring.names, e) if k
            )
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    """Recursive descent for ``+ - * / ^`` and parentheses.

    ``/`` only accepts a constant divisor, which covers the ``3/2*x`` form
    produced by ``str``.
    """

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("name", name))
            else:
                self.tokens.append(("op", op))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _error(self, msg):
        return ValueError(f"cannot parse polynomial {self.text!r}: {msg}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise self._error("empty input")
        p = self._expr()
        if self.i != len(self.tokens):
            raise self._error(f"unexpected token {self._peek()[1]!r}")
        return p

    def _expr(self):
        p = self._unary()
        while self._peek() in (("op", "+"), ("op", "-")):
            _, op = self._take()
            q = self._unary()
            p = p + q if op == "+" else p - q
        return p

    def _unary(self):
        if self._peek() == ("op", "-"):
            self._take()
            return -self._term()
        if self._peek() == ("op", "+"):
            self._take()
        return self._term()

    def _term(self):
        p = self._power()
        while self._peek() in (("op", "*"), ("op", "/")):
            _, op = self._take()
            q = self._power()
            if op == "*":
                p = p * q
            else:
                c = q.constant_value()
                if c is None:
                    raise self._error("division by a non-constant")
                p = p / c
        return p

    def _power(self):
        base = self._atom()
        if self._peek() == ("op", "^"):
            self._take()
            kind, val = self._take()
            if kind != "num":
                raise self._error("exponent must be a nonnegative integer")
            base = base ** val
        return base

    def _atom(self):
        kind, val = self._take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "name":
            if val not in self.ring.names:
                raise self._error(f"unknown variable {val!r}")
            return self.ring.gen(val)
        if (kind, val) == ("op", "("):
            p = self._expr()
            if self._take() != ("op", ")"):
                raise self._error("missing ')'")
            return p
        raise self._error(f"unexpected token {val!r}")
