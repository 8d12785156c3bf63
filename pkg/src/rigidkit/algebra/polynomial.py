"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple  # tuple[int, ...], one exponent per ring variable


@dataclass(frozen=True)
class MonomialOrder:
    """A term order: ``degrevlex``, ``lex`` or ``weighted`` (weights, then degrevlex)."""

    kind: str = "degrevlex"
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "weighted"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "weighted":
            if not self.weights or any(w <= 0 for w in self.weights):
                raise ValueError("weighted order needs positive weights")

    def key(self, m: Monomial) -> tuple:
        """Sort key; a larger key is a larger monomial."""
        if self.kind == "lex":
            return m
        rev = tuple(-e for e in reversed(m))
        if self.kind == "degrevlex":
            return (sum(m), rev)
        return (sum(w * e for w, e in zip(self.weights, m)), sum(m), rev)

    def __str__(self):
        if self.kind == "weighted":
            return "weighted(" + ",".join(map(str, self.weights)) + ")"
        return self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def weighted(*weights: int) -> MonomialOrder:
    return MonomialOrder("weighted", tuple(weights))


@dataclass(frozen=True)
class Ring:
    """Polynomial ring Q[names] with a default monomial order."""

    names: tuple
    order: MonomialOrder = DEGREVLEX

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.names, order)

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.names.index(i)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: Fraction(c)})

    def monomial(self, exps: Sequence[int], coef=1) -> "Polynomial":
        if len(exps) != self.nvars:
            raise ValueError("exponent vector length does not match ring")
        return Polynomial(self, {tuple(exps): Fraction(coef)})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __call__(self, text: str) -> "Polynomial":
        return self.parse(text)


class Polynomial:
    """Immutable polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "_terms", "_sorted")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        n = ring.nvars
        clean = {}
        for m, c in terms.items():
            if len(m) != n:
                raise ValueError("exponent vector length does not match ring")
            c = Fraction(c)
            if c:
                clean[tuple(m)] = c
        self._terms = clean
        self._sorted = None

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def sorted_terms(self, order: MonomialOrder | None = None) -> list:
        """Terms in decreasing order (ring order unless ``order`` is given)."""
        if order is None or order == self.ring.order:
            if self._sorted is None:
                key = self.ring.order.key
                self._sorted = sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)
            return self._sorted
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.sorted_terms(order)[0][0]

    def leading_coefficient(self, order: MonomialOrder | None = None) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return self.sorted_terms(order)[0][1]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self._terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def degree(self, weights: Sequence[int] | None = None) -> int:
        if not self._terms:
            return -1
        return max(_wdeg(m, weights) for m in self._terms)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        return len({_wdeg(m, weights) for m in self._terms}) <= 1

    def diff(self, var) -> "Polynomial":
        i = self.ring.names.index(var) if isinstance(var, str) else var
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Polynomial(self.ring, out)

    def substitute(self, values: Sequence) -> Fraction:
        """Evaluate at a point with rational coordinates."""
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t *= Fraction(v) ** e
            total += t
        return total

    def to_ring(self, ring: Ring) -> "Polynomial":
        """Same terms, re-homed in a ring with the same variables (possibly another order)."""
        if ring.names != self.ring.names:
            raise ValueError("variable names differ")
        return Polynomial(ring, self._terms)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.names != self.ring.names:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Polynomial(self.ring, {m: v * c for m, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_term(self, mono: Monomial, coef) -> "Polynomial":
        coef = Fraction(coef)
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): c * coef for m, c in self._terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.names == other.ring.names and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring.names, frozenset(self._terms.items())))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _wdeg(m: Monomial, weights) -> int:
    if weights is None:
        return sum(m)
    return sum(w * e for w, e in zip(weights, m))


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form ``coef*x^a*y^b + ...`` in decreasing ring order."""
    if p.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = format_monomial(m, p.ring.names)
        if mono == "1":
            body = _format_coef(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coef(a)}*{mono}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if not mt or mt.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
            num, name, op = mt.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                if name not in ring.names:
                    raise ValueError(f"unknown variable {name!r}")
                self.tokens.append(("var", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = mt.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, v = self.take()
        if kind != "op" or v != value:
            raise ValueError(f"expected {value!r}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ValueError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ValueError("trailing input in polynomial text")
        return p

    def expr(self) -> Polynomial:
        kind, v = self.peek()
        if kind == "op" and v in "+-":
            self.take()
            p = self.term()
            p = -p if v == "-" else p
        else:
            p = self.term()
        while True:
            kind, v = self.peek()
            if kind == "op" and v in "+-":
                self.take()
                q = self.term()
                p = p + q if v == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.power()
        while True:
            kind, v = self.peek()
            if kind == "op" and v == "*":
                self.take()
                p = p * self.power()
            elif kind == "op" and v == "/":
                self.take()
                q = self.power()
                if len(q) > 1 or (q and q.leading_monomial() != (0,) * self.ring.nvars) or not q:
                    raise ValueError("division only by nonzero constants")
                p = p * (1 / q.leading_coefficient())
            else:
                return p

    def power(self) -> Polynomial:
        p = self.atom()
        kind, v = self.peek()
        if kind == "op" and v == "^":
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            p = p ** e
        return p

    def atom(self) -> Polynomial:
        kind, v = self.take()
        if kind == "num":
            return self.ring.const(v)
        if kind == "var":
            return self.ring.var(v)
        if kind == "op" and v == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "op" and v == "-":
            return -self.atom()
        raise ValueError("unexpected token in polynomial text")


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    return _Parser(text, ring).parse()


def polynomial_ring(names: str | Iterable[str], order: MonomialOrder = DEGREVLEX):
    """``R, (x, y) = polynomial_ring("x,y")``."""
    if isinstance(names, str):
        names = [n.strip() for n in names.replace(" ", ",").split(",") if n.strip()]
    ring = Ring(tuple(names), order)
    return ring, tuple(ring.gens())
