"""Random inputs shared by the property suites and the acceptance run."""

import random
from math import gcd

from hypothesis import strategies as st

from rigidkit.algebra import Polynomial, Ring, monomials_of_degree
from rigidkit.toric import Fan2, sorted_fan


def random_fan(rng: random.Random, max_rays: int = 6, box: int = 3):
    """A complete fan with 3..max_rays primitive rays, or None after a failed draw."""
    for _ in range(100):
        k = rng.randint(3, max_rays)
        rays = set()
        while len(rays) < k:
            v = (rng.randint(-box, box), rng.randint(-box, box))
            if v != (0, 0) and gcd(*v) == 1:
                rays.add(v)
        try:
            return sorted_fan(list(rays))
        except ValueError:
            continue
    return None


@st.composite
def fans(draw, max_rays: int = 6, box: int = 3):
    seed = draw(st.integers(0, 2**32 - 1))
    fan = random_fan(random.Random(seed), max_rays, box)
    if fan is None:
        fan = Fan2(((1, 0), (0, 1), (-1, -1)))
    return fan


@st.composite
def fans_with_divisor(draw, max_rays: int = 5, box: int = 3, coeff: int = 3):
    fan = draw(fans(max_rays, box))
    D = draw(st.lists(st.integers(-coeff, coeff), min_size=len(fan), max_size=len(fan)))
    return fan, tuple(D)


def random_homogeneous_ideal(rng: random.Random, nvars: int, ngens: int, max_deg: int = 3):
    ring = Ring(tuple("xyz"[:nvars]))
    gens = []
    for _ in range(ngens):
        d = rng.randint(1, max_deg)
        terms = {}
        for m in monomials_of_degree(nvars, d):
            if rng.random() < 0.6:
                c = rng.randint(-3, 3)
                if c:
                    terms[m] = c
        if not terms:
            terms[(d,) + (0,) * (nvars - 1)] = 1
        gens.append(Polynomial(ring, terms))
    return ring, gens


def fraction_rank(rows) -> int:
    """Plain Gauss-Jordan over Fractions; the slow reference for every rank in the suite."""
    from fractions import Fraction

    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return 0
    rank, col, nrows, ncols = 0, 0, len(M), len(M[0])
    while rank < nrows and col < ncols:
        piv = next((r for r in range(rank, nrows) if M[r][col]), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(nrows):
            if r != rank and M[r][col]:
                f = M[r][col] / M[rank][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
        col += 1
    return rank


def brute_hilbert(ring, gens, d: int) -> int:
    """dim of the degree-d piece of S/I by spanning I_d with monomial multiples of generators."""
    n = ring.nvars
    cols = list(monomials_of_degree(n, d))
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for g in gens:
        e = g.degree()
        if e > d:
            continue
        for m in monomials_of_degree(n, d - e):
            row = [0] * len(cols)
            for t, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(t, m))]] += c
            rows.append(row)
    return len(cols) - fraction_rank(rows)


def cone_action(u, v):
    """mu_m weights read off a lattice point (a u + b v) / m of the half-open parallelogram."""
    from rigidkit.quotient import CyclicActionSpec

    d = u[0] * v[1] - u[1] * v[0]
    m, sign = abs(d), (1 if d > 0 else -1)
    xs = [0, u[0], v[0], u[0] + v[0]]
    ys = [0, u[1], v[1], u[1] + v[1]]
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            a = (x * v[1] - y * v[0]) * sign
            b = (u[0] * y - u[1] * x) * sign
            if 0 <= a < m and 0 <= b < m and gcd(a, m) == 1:
                return CyclicActionSpec(m, (a, b))
    return CyclicActionSpec(1, (0, 0))
