"""Complete fans in a rank-2 lattice, weighted projective planes and weighted blow-ups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Sequence

from ..quotient import SMOOTH, CyclicQuotientType


def det2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def primitive(v) -> tuple:
    g = gcd(v[0], v[1])
    if g == 0:
        raise ValueError("zero vector")
    return (v[0] // g, v[1] // g)


def _angle(v) -> float:
    a = math.atan2(v[1], v[0])
    return a if a >= 0 else a + 2 * math.pi


@dataclass(frozen=True)
class Fan2:
    """Rays in counterclockwise order; maximal cones are consecutive pairs (cyclically)."""

    rays: tuple
    name: str = ""

    def __post_init__(self):
        rays = tuple(tuple(int(c) for c in r) for r in self.rays)
        object.__setattr__(self, "rays", rays)
        if len(rays) < 3:
            raise ValueError("a complete fan in rank 2 needs at least three rays")
        for r in rays:
            if gcd(r[0], r[1]) != 1:
                raise ValueError(f"ray {r} is not primitive")
        angles = [_angle(r) for r in rays]
        start = angles.index(min(angles))
        if any(angles[(start + i) % len(rays)] >= angles[(start + i + 1) % len(rays)]
               for i in range(len(rays) - 1)):
            raise ValueError("rays are not in strictly counterclockwise order")
        for u, v in self.cones():
            if det2(u, v) <= 0:
                raise ValueError(f"cone ({u}, {v}) is not strictly convex; fan not complete")

    def __len__(self):
        return len(self.rays)

    def cones(self) -> list:
        n = len(self.rays)
        return [(self.rays[i], self.rays[(i + 1) % n]) for i in range(n)]

    def cone_indices(self) -> list:
        n = len(self.rays)
        return [(i, (i + 1) % n) for i in range(n)]

    def multiplicities(self) -> list:
        return [det2(u, v) for u, v in self.cones()]

    def cone_types(self) -> list:
        return [cone_quotient_type(u, v) for u, v in self.cones()]

    def is_smooth(self) -> bool:
        return all(m == 1 for m in self.multiplicities())

    def ray_matrix(self) -> list:
        """2 x r integer matrix whose columns are the rays."""
        return [[r[0] for r in self.rays], [r[1] for r in self.rays]]


def sorted_fan(rays: Sequence, name: str = "") -> Fan2:
    """Build a fan after sorting primitive rays counterclockwise from angle 0."""
    rays = [primitive(r) for r in rays]
    return Fan2(tuple(sorted(rays, key=_angle)), name)


def wps_fan(a1: int, a2: int) -> Fan2:
    """Fan of the weighted projective plane P(1, a1, a2)."""
    if a1 < 1 or a2 < 1:
        raise ValueError("weights must be positive")
    if gcd(a1, a2) != 1:
        raise ValueError(f"P(1,{a1},{a2}) is not well-formed")
    return Fan2(((1, 0), (0, 1), (-a1, -a2)), f"P(1,{a1},{a2})")


def weighted_blowup(fan: Fan2, cone: tuple, weights: tuple) -> Fan2:
    """Subdivide a maximal cone (u, v) by the ray a1*u + a2*v."""
    a1, a2 = weights
    if a1 < 1 or a2 < 1 or gcd(a1, a2) != 1:
        raise ValueError(f"blow-up weights {weights} must be positive and coprime")
    u, v = tuple(cone[0]), tuple(cone[1])
    cones = fan.cones()
    if (u, v) in cones:
        i = cones.index((u, v))
    elif (v, u) in cones:
        i = cones.index((v, u))
        u, v, a1, a2 = v, u, a2, a1
    else:
        raise ValueError(f"({u}, {v}) is not a maximal cone of the fan")
    new = primitive((a1 * u[0] + a2 * v[0], a1 * u[1] + a2 * v[1]))
    rays = list(fan.rays)
    rays.insert(i + 1, new)
    name = f"Bl_{weights}({fan.name})" if fan.name else ""
    return Fan2(tuple(rays), name)


def cone_quotient_type(u, v) -> CyclicQuotientType:
    """Type 1/m(1,q) of the affine toric surface of Cone(u, v)."""
    m = det2(u, v)
    if m == 0:
        raise ValueError("cone generators are parallel")
    if gcd(*u) != 1 or gcd(*v) != 1:
        raise ValueError("cone generators must be primitive")
    m = abs(m)
    if m == 1:
        return SMOOTH
    a, b = u
    # p*a + q*b = 1, so [[b, -a], [p, q]] is unimodular and sends u to (0, 1)
    g, p, q = _ext_gcd(a, b)
    x = b * v[0] - a * v[1]
    y = p * v[0] + q * v[1]
    if x < 0:
        x = -x
    # now v ~ (m, y); shearing fixes (0, 1) and moves y mod m, so v ~ (m, -k)
    assert x == m
    k = (-y) % m
    return CyclicQuotientType(m, min(k, pow(k, -1, m)))


def _ext_gcd(a: int, b: int) -> tuple:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


def m12_fan() -> Fan2:
    """Weighted (2,3) blow-up of P(1,2,3) at the smooth torus-fixed point."""
    base = wps_fan(2, 3)
    fan = weighted_blowup(base, ((1, 0), (0, 1)), (2, 3))
    return Fan2(fan.rays, "M12")


# ---- text format -------------------------------------------------------------
#
#   # comment
#   name P2
#   rays
#   1 0
#   0 1
#   -1 -1
#   divisor H
#   1 0 0


def parse_fan_text(text: str) -> tuple:
    """Parse a fan file into (Fan2, {divisor name: coefficient tuple})."""
    name = ""
    rays: list = []
    divisors: dict = {}
    section = None
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "name":
            name = " ".join(rest)
            continue
        if head == "rays":
            section = "rays"
            continue
        if head == "divisor":
            if len(rest) != 1:
                raise ValueError(f"line {lineno}: divisor needs exactly one name")
            section, current = "divisor", rest[0]
            divisors[current] = None
            continue
        try:
            nums = [int(t) for t in line.split()]
        except ValueError:
            raise ValueError(f"line {lineno}: expected integers, got {line!r}") from None
        if section == "rays":
            if len(nums) != 2:
                raise ValueError(f"line {lineno}: a ray has two coordinates")
            rays.append(tuple(nums))
        elif section == "divisor":
            if divisors[current] is not None:
                raise ValueError(f"line {lineno}: divisor {current} already has coefficients")
            divisors[current] = tuple(nums)
        else:
            raise ValueError(f"line {lineno}: data outside a section")
    fan = Fan2(tuple(rays), name)
    for k, v in divisors.items():
        if v is None or len(v) != len(fan):
            raise ValueError(f"divisor {k} must have {len(fan)} coefficients")
    return fan, divisors


def load_fan(path) -> tuple:
    return parse_fan_text(Path(path).read_text())


def format_fan_text(fan: Fan2, divisors: dict | None = None) -> str:
    lines = []
    if fan.name:
        lines.append(f"name {fan.name}")
    lines.append("rays")
    lines += [f"{u} {v}" for u, v in fan.rays]
    for k, coeffs in (divisors or {}).items():
        lines.append(f"divisor {k}")
        lines.append(" ".join(map(str, coeffs)))
    return "\n".join(lines) + "\n"
