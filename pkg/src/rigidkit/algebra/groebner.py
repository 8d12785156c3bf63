"""Buchberger's algorithm, normal forms and standard-monomial counting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .polynomial import DEGREVLEX, Monomial, MonomialOrder, Polynomial, Ring

INFINITE = math.inf


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    generators: tuple
    order: MonomialOrder = DEGREVLEX
    reduced: bool = True

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.generators]

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.generators) + "}"


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


class _Poly:
    """Working representation inside the algorithm: terms dict plus cached leading data."""

    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms: dict, key):
        self.terms = terms
        if terms:
            self.lm = max(terms, key=key)
            self.lc = terms[self.lm]
        else:
            self.lm = None
            self.lc = Fraction(0)


def _reduce_terms(terms: dict, basis: Sequence[_Poly], key) -> dict:
    """Full reduction of ``terms`` by ``basis`` (every term, not just the leading one)."""
    p = dict(terms)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g in basis:
            if _divides(g.lm, m):
                shift = _sub(m, g.lm)
                f = c / g.lc
                for gm, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(gm, shift))
                    v = p.get(t, 0) - f * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _spoly(f: _Poly, g: _Poly) -> dict:
    lcm = _lcm(f.lm, g.lm)
    sf, sg = _sub(lcm, f.lm), _sub(lcm, g.lm)
    out: dict = {}
    for m, c in f.terms.items():
        t = tuple(a + b for a, b in zip(m, sf))
        out[t] = out.get(t, 0) + c / f.lc
    for m, c in g.terms.items():
        t = tuple(a + b for a, b in zip(m, sg))
        out[t] = out.get(t, 0) - c / g.lc
    return {m: c for m, c in out.items() if c}


def _update(G: list, P: set, f: _Poly, key) -> tuple:
    """Gebauer-Moeller criteria when ``f`` joins the basis ``G``."""
    lmf = f.lm
    lms = [g.lm for g in G]
    P = {
        (i, j)
        for (i, j) in P
        if not _divides(lmf, _lcm(lms[i], lms[j]))
        or _lcm(lms[i], lms[j]) == _lcm(lms[i], lmf)
        or _lcm(lms[i], lms[j]) == _lcm(lms[j], lmf)
    }
    by_lcm: dict = {}
    for i, m in enumerate(lms):
        by_lcm.setdefault(_lcm(m, lmf), []).append(i)
    kept = []
    for L in sorted(by_lcm, key=key):
        if all(not _divides(K, L) for K in kept):
            kept.append(L)
    new = set()
    for L in kept:
        idx = by_lcm[L]
        # product criterion: coprime leading monomials need no pair
        if not any(_lcm(lms[i], lmf) == tuple(a + b for a, b in zip(lms[i], lmf)) for i in idx):
            new.add((min(idx), len(G)))
    return G + [f], P | new


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    ring: Ring | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    if ring is None:
        if not gens:
            raise ValueError("empty generator list needs an explicit ring")
        ring = gens[0].ring
    if any(g.ring.names != ring.names for g in gens):
        raise ValueError("generators live in different rings")
    order = order or ring.order
    key = order.key

    G: list = []
    P: set = set()
    for g in gens:
        w = _Poly(g.terms, key)
        if w.lm is not None:
            G, P = _update(G, P, w, key)

    while P:
        pair = min(P, key=lambda p: (key(_lcm(G[p[0]].lm, G[p[1]].lm)), p))
        P.remove(pair)
        s = _spoly(G[pair[0]], G[pair[1]])
        r = _reduce_terms(s, G, key)
        if r:
            G, P = _update(G, P, _Poly(r, key), key)

    # minimalize, then inter-reduce to the unique reduced basis
    G = sorted(G, key=lambda g: key(g.lm))
    minimal: list = []
    for g in G:
        if all(not _divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = _reduce_terms(g.terms, others, key)
        lc = r[max(r, key=key)]
        reduced.append({m: c / lc for m, c in r.items()})
    out = tuple(Polynomial(ring, t) for t in reduced)
    out = tuple(sorted(out, key=lambda p: key(p.leading_monomial(order))))
    return GroebnerBasis(ring, out, order, True)


def _basis_polys(gb: GroebnerBasis) -> list:
    key = gb.order.key
    return [_Poly(g.terms, key) for g in gb.generators]


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if p.ring.names != gb.ring.names:
        raise ValueError("polynomial and basis live in different rings")
    key = gb.order.key
    return Polynomial(p.ring, _reduce_terms(p.terms, _basis_polys(gb), key))


class Reducer:
    """Normal forms against a fixed basis, caching the working representation."""

    def __init__(self, gb: GroebnerBasis):
        self.gb = gb
        self.key = gb.order.key
        self.basis = _basis_polys(gb)

    def __call__(self, p: Polynomial) -> Polynomial:
        return Polynomial(p.ring, _reduce_terms(p.terms, self.basis, self.key))

    def terms(self, terms: dict) -> dict:
        return _reduce_terms(terms, self.basis, self.key)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    key = (order or f.ring.order).key
    return Polynomial(f.ring, _spoly(_Poly(f.terms, key), _Poly(g.terms, key)))


def is_groebner(gb: GroebnerBasis) -> bool:
    """Check Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = _basis_polys(gb)
    key = gb.order.key
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if _reduce_terms(_spoly(basis[i], basis[j]), basis, key):
                return False
    return True


def is_standard(m: Monomial, leading: Sequence[Monomial]) -> bool:
    return not any(_divides(lm, m) for lm in leading)


def monomials_of_degree(nvars: int, degree: int, weights: Sequence[int] | None = None) -> Iterator[Monomial]:
    """All exponent vectors of (weighted) degree exactly ``degree``, in lex-descending order."""
    w = tuple(weights) if weights is not None else (1,) * nvars
    if any(x <= 0 for x in w):
        raise ValueError("weights must be positive")

    def rec(i, left):
        if i == nvars - 1:
            if left % w[i] == 0:
                yield (left // w[i],)
            return
        for e in range(left // w[i], -1, -1):
            for rest in rec(i + 1, left - e * w[i]):
                yield (e,) + rest

    if degree < 0:
        return iter(())
    if nvars == 0:
        return iter([()] if degree == 0 else [])
    return rec(0, degree)


def quotient_dimension(gb: GroebnerBasis):
    """dim_Q of ring/ideal by counting standard monomials; ``INFINITE`` if not zero-dimensional."""
    n = gb.ring.nvars
    leading = gb.leading_monomials()
    if any(all(e == 0 for e in m) for m in leading):
        return 0
    caps = [None] * n
    for m in leading:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            i = support[0]
            caps[i] = m[i] if caps[i] is None else min(caps[i], m[i])
    if any(c is None for c in caps):
        return INFINITE
    return sum(1 for m in _box(caps) if is_standard(m, leading))


def standard_monomials(gb: GroebnerBasis) -> list:
    """Standard monomials of a zero-dimensional ideal."""
    if quotient_dimension(gb) == INFINITE:
        raise ValueError("quotient is infinite-dimensional")
    leading = gb.leading_monomials()
    caps = [0] * gb.ring.nvars
    for m in leading:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            i = support[0]
            caps[i] = m[i] if caps[i] == 0 else min(caps[i], m[i])
    return [m for m in _box(caps) if is_standard(m, leading)] if leading else []


def _box(caps):
    if not caps:
        yield ()
        return
    for e in range(caps[0]):
        for rest in _box(caps[1:]):
            yield (e,) + rest


def check_homogeneous(gb: GroebnerBasis, weights: Sequence[int] | None) -> None:
    for g in gb.generators:
        if not g.is_homogeneous(weights):
            raise ValueError(f"generator {g} is not homogeneous for weights {weights}")


def graded_piece_basis(gb: GroebnerBasis, degree: int, weights: Sequence[int] | None = None) -> list:
    """Standard monomials of the given (weighted) degree: a basis of that graded piece."""
    check_homogeneous(gb, weights)
    leading = gb.leading_monomials()
    return [m for m in monomials_of_degree(gb.ring.nvars, degree, weights) if is_standard(m, leading)]
