"""Cyclic quotient surface singularities and stabilizers of diagonal torus actions."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .algebra import LEX, Polynomial, Ring, buchberger
from .algebra.linalg import smith_normal_form


@dataclass(frozen=True)
class CyclicActionSpec:
    """mu_n acting diagonally with the given residue weights."""

    order: int
    weights: tuple

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("group order must be positive")
        object.__setattr__(self, "weights", tuple(w % self.order for w in self.weights))


@dataclass(frozen=True, order=True)
class CyclicQuotientType:
    """Canonical 1/m(1, q) with q = min(q, q^-1 mod m); m = 1 is the smooth point."""

    order: int
    q: int = 0

    @property
    def smooth(self) -> bool:
        return self.order == 1

    @property
    def weights(self) -> tuple:
        return (1, self.q)

    def action(self) -> CyclicActionSpec:
        return CyclicActionSpec(self.order, (1, self.q))

    def __str__(self):
        return "smooth" if self.smooth else f"1/{self.order}(1,{self.q})"

    @classmethod
    def parse(cls, text: str) -> "CyclicQuotientType":
        text = text.strip()
        if text == "smooth":
            return SMOOTH
        mt = re.fullmatch(r"1/(\d+)\((-?\d+),(-?\d+)\)", text.replace(" ", ""))
        if not mt:
            raise ValueError(f"cannot parse quotient type {text!r}")
        n, a, b = map(int, mt.groups())
        return canonicalize(CyclicActionSpec(n, (a, b)))


SMOOTH = CyclicQuotientType(1, 0)


def _normalize(n: int, a: int, b: int) -> CyclicQuotientType:
    if n == 1:
        return SMOOTH
    q = (b * pow(a, -1, n)) % n
    return CyclicQuotientType(n, min(q, pow(q, -1, n)))


def canonicalize(spec: CyclicActionSpec) -> CyclicQuotientType:
    """Classify C^2/mu_n: drop the kernel, factor out pseudo-reflections, normalize."""
    if len(spec.weights) != 2:
        raise ValueError("canonicalize expects exactly two weights")
    n = spec.order
    a, b = spec.weights
    while True:
        g = gcd(n, gcd(a, b))
        if g > 1:
            n, a, b = n // g, (a // g) % (n // g), (b // g) % (n // g)
            continue
        # elements acting trivially on one coordinate are reflections; quotient by them
        # replaces the other coordinate by its power and leaves a smaller cyclic group
        g1 = gcd(n, a)
        if g1 > 1:
            n = n // g1
            a, b = (a // g1) % n, b % n
            continue
        g2 = gcd(n, b)
        if g2 > 1:
            n = n // g2
            a, b = a % n, (b // g2) % n
            continue
        break
    return _normalize(n, a, b)


def invariant_generators(spec: CyclicActionSpec) -> list:
    """Minimal generators of the monoid of invariant monomials (degree <= order suffices)."""
    n = spec.order
    k = len(spec.weights)
    invariant = []
    for d in range(1, n + 1):
        for e in _compositions(d, k):
            if sum(w * x for w, x in zip(spec.weights, e)) % n == 0:
                invariant.append(e)
    inv_set = set(invariant)
    gens = []
    for e in invariant:
        decomposable = any(
            f != e and any(f) and all(x <= y for x, y in zip(f, e)) and f in inv_set
            for f in _below(e)
        )
        if not decomposable:
            gens.append(e)
    return sorted(gens, reverse=True)


def invariant_relations(spec: CyclicActionSpec, prefix: str = "u") -> tuple:
    """Relations among the invariant monomials, by lex elimination of the plane coordinates.

    Returns ``(ring, relations, weights)``: the relations form the reduced
    degrevlex basis of the toric ideal in variables u0, u1, ... (one per
    invariant generator), homogeneous for the degrees of the invariants.
    """
    gens = invariant_generators(spec)
    k = len(spec.weights)
    plane = tuple(f"t{i}" for i in range(k))
    names = tuple(f"{prefix}{i}" for i in range(len(gens)))
    big = Ring(plane + names, LEX)
    eqs = []
    for i, e in enumerate(gens):
        mono = tuple(e) + (0,) * len(gens)
        eqs.append(big.var(k + i) - big.monomial(mono))
    gb = buchberger(eqs, LEX)
    ring = Ring(names)
    kept = [
        Polynomial(ring, {m[k:]: c for m, c in g.terms.items()})
        for g in gb
        if all(not any(m[:k]) for m in g.terms)
    ]
    relations = list(buchberger(kept, ring=ring).generators) if kept else []
    return ring, relations, tuple(sum(e) for e in gens)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _below(e):
    return itertools.product(*(range(x + 1) for x in e))


def coordinate_weight(exponents: Sequence[int], weights: Sequence[int], order: int) -> int:
    """Residue by which the group scales a (Laurent) monomial coordinate function."""
    return sum(e * w for e, w in zip(exponents, weights)) % order


def tangent_weight(exponents: Sequence[int], weights: Sequence[int], order: int) -> int:
    """Weight on the tangent line dual to a local coordinate: minus its function weight."""
    return (-coordinate_weight(exponents, weights, order)) % order


@dataclass(frozen=True)
class TorusActionSpec:
    """(K*)^r acting diagonally; column j of ``weights`` is the character of coordinate j."""

    names: tuple
    weights: tuple  # r rows, one entry per coordinate

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(tuple(r) for r in self.weights))
        if not self.names:
            raise ValueError("need at least one coordinate")
        if any(len(r) != len(self.names) for r in self.weights):
            raise ValueError("weight rows must have one entry per coordinate")

    @property
    def rank(self) -> int:
        return len(self.weights)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.weights)


@dataclass(frozen=True)
class StabilizerReport:
    support: tuple
    infinite: bool
    invariant_factors: tuple = ()
    transverse: dict = field(default_factory=dict)
    orbit_directions: int = 0
    quotient_type: CyclicQuotientType | None = None

    @property
    def order(self):
        if self.infinite:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def cyclic(self) -> bool:
        return not self.infinite and len(self.invariant_factors) <= 1

    def describe(self) -> str:
        if self.infinite:
            return "infinite"
        if self.order == 1:
            return "trivial"
        return " x ".join(f"mu_{d}" for d in self.invariant_factors)


def stabilizer(spec: TorusActionSpec, support: Sequence) -> StabilizerReport:
    """Stabilizer of a point whose nonzero coordinates are exactly ``support``."""
    idx = sorted(spec.names.index(s) if isinstance(s, str) else int(s) for s in support)
    support_names = tuple(spec.names[i] for i in idx)
    if not idx:
        return StabilizerReport(support_names, True)
    # characters on the support as rows; kernel of t -> (t^w_j)_j
    B = [list(spec.column(j)) for j in idx]
    snf = smith_normal_form(B)
    diag = list(snf.diagonal) + [0] * (spec.rank - len(snf.diagonal))
    rank = sum(1 for d in diag[: spec.rank] if d)
    if rank < spec.rank:
        return StabilizerReport(support_names, True)
    factors = tuple(d for d in diag[: spec.rank] if d > 1)
    rest = [j for j in range(len(spec.names)) if j not in idx]
    orbit_dirs = len(idx) - rank
    transverse = {}
    qtype = None
    if len(factors) <= 1:
        d = factors[0] if factors else 1
        # generator theta = V e_i0 / d, where d = S[i0][i0] is the one nontrivial factor
        i0 = next((i for i in range(spec.rank) if diag[i] == d), 0) if d > 1 else 0
        col = [snf.V[r][i0] for r in range(spec.rank)]
        for j in rest:
            transverse[spec.names[j]] = sum(w * c for w, c in zip(spec.column(j), col)) % d
        weights = list(transverse.values()) + [0] * orbit_dirs
        if len(weights) == 2:
            qtype = canonicalize(CyclicActionSpec(d, tuple(weights)))
    else:
        transverse = {spec.names[j]: None for j in rest}
    return StabilizerReport(support_names, False, factors, transverse, orbit_dirs, qtype)


# Chart data for the moduli of 2-pointed genus-one curves: the quotient of
# {zy^2 = x^3 + axz^2 + bz^3} by (xi, lam) acting with weights below.
M12_ACTION = TorusActionSpec(("x", "y", "z", "a", "b"), ((1, 1, 1, 0, 0), (2, 3, 0, 4, 6)))


@dataclass(frozen=True)
class Chart:
    name: str
    action: TorusActionSpec
    supports: tuple
    point: dict  # support -> representative point (x, y, z, a, b) on the surface equation


M12_CHARTS = (
    # z != 0: set xi = 1, eliminate b = y^2 - x^3 - a x
    Chart(
        "z!=0",
        TorusActionSpec(("x", "y", "a"), ((2, 3, 4),)),
        tuple(
            frozenset(s)
            for k in (1, 2, 3)
            for s in itertools.combinations(("x", "y", "a"), k)
        ),
        {frozenset({"a"}): (0, 0, 1, 1, 0), frozenset({"y"}): (0, 1, 1, 0, 1)},
    ),
    # y != 0 near x = z = 0: xi = lam^-3, local coordinates (x, a, b); only x = 0 is new
    Chart(
        "y!=0",
        TorusActionSpec(("x", "a", "b"), ((-1, 4, 6),)),
        (frozenset({"a"}), frozenset({"b"}), frozenset({"a", "b"})),
        {frozenset({"b"}): (0, 1, 0, 0, 1), frozenset({"a"}): (0, 1, 0, 1, 0)},
    ),
)

M12_LOCI = {
    ("z!=0", frozenset({"a"})): "E4 with marked points [0:1:0] and [0:0:1]",
    ("z!=0", frozenset({"y"})): "E6 with marked points [0:1:0] and [0:1:1]",
    ("y!=0", frozenset({"b"})): "boundary Delta_1: E6 elliptic tail glued to a rational curve",
    ("y!=0", frozenset({"a"})): "boundary Delta_1: E4 elliptic tail glued to a rational curve",
}


@dataclass(frozen=True)
class AtlasEntry:
    chart: str
    support: tuple
    report: StabilizerReport
    quotient_type: CyclicQuotientType
    locus: str
    point: tuple | None
    ambient_factors: tuple | None  # stabilizer of the point under the full 2-torus action

    def as_dict(self) -> dict:
        return {
            "chart": self.chart,
            "support": list(self.support),
            "stabilizer": self.report.describe(),
            "type": str(self.quotient_type),
            "locus": self.locus,
            "point": list(self.point) if self.point else None,
            "ambient_stabilizer": list(self.ambient_factors) if self.ambient_factors is not None else None,
        }


def atlas_m12(charts: Sequence[Chart] = M12_CHARTS, include_smooth: bool = False) -> list:
    """Classify every coordinate stratum of the chart presentation; keep the singular ones."""
    out = []
    for chart in charts:
        for support in chart.supports:
            rep = stabilizer(chart.action, sorted(support, key=chart.action.names.index))
            if rep.infinite:
                continue
            qtype = rep.quotient_type
            if qtype is None:
                continue
            if qtype.smooth and not include_smooth:
                continue
            point = chart.point.get(support)
            ambient = None
            if point is not None:
                full = stabilizer(M12_ACTION, [n for n, v in zip(M12_ACTION.names, point) if v])
                ambient = full.invariant_factors
            out.append(
                AtlasEntry(
                    chart.name,
                    rep.support,
                    rep,
                    qtype,
                    M12_LOCI.get((chart.name, support), ""),
                    point,
                    ambient,
                )
            )
    return out
