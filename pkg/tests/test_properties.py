import random
from math import gcd

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from helpers import brute_hilbert, cone_action, fans_with_divisor, random_homogeneous_ideal
from rigidkit.algebra import (
    INFINITE,
    buchberger,
    det,
    graded_piece_basis,
    mat_mul,
    quotient_dimension,
    smith_normal_form,
)
from rigidkit.deformations import PRESETS, preset, presentation_t1
from rigidkit.quotient import CyclicActionSpec, TorusActionSpec, canonicalize, stabilizer
from rigidkit.toric import (
    cone_quotient_type,
    divisor_cohomology,
    divisor_sections,
    is_cartier,
    riemann_roch,
    scan_box,
    search_bound,
)
from rigidkit.toric.kernels import HAS_NUMBA

SLOW = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_invariants(A):
    s = smith_normal_form(A)
    assert [list(r) for r in mat_mul(mat_mul(s.U, A), s.V)] == [list(r) for r in s.S]
    assert abs(det(s.U)) == 1 and abs(det(s.V)) == 1
    diag = s.diagonal
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz) and diag[: len(nz)] == tuple(nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    # d1 is the gcd of all entries
    g = 0
    for row in A:
        for x in row:
            g = gcd(g, x)
    assert (nz[0] if nz else 0) == g


@SLOW
@given(fans_with_divisor())
def test_serre_duality_and_sections(fd):
    fan, D = fd
    vec = divisor_cohomology(fan, D)  # raises unless h2 = h0(K - D) and the shell is empty
    K = [-1] * len(fan)
    assert vec.h2 == divisor_sections(fan, [k - a for k, a in zip(K, D)]).h0
    assert vec.h0 == divisor_sections(fan, D).h0
    assert min(vec) >= 0


def _lcm_multiplicity(fan):
    out = 1
    for m in fan.multiplicities():
        out = out * m // gcd(out, m)
    return out


@SLOW
@given(fans_with_divisor(max_rays=5, box=2, coeff=2))
def test_riemann_roch_on_cartier_divisors(fd):
    fan, D = fd
    if not is_cartier(fan, D):
        L = _lcm_multiplicity(fan)
        D = tuple(L * a for a in D)
    assert is_cartier(fan, D)
    assert divisor_cohomology(fan, D).euler == riemann_roch(fan, D)


primitive_vec = st.tuples(st.integers(-10, 10), st.integers(-10, 10)).filter(
    lambda v: v != (0, 0) and gcd(*v) == 1
)


@settings(max_examples=150, deadline=None)
@given(primitive_vec, primitive_vec)
def test_cone_type_matches_canonicalize(u, v):
    assume(u[0] * v[1] - u[1] * v[0] != 0)
    assert cone_quotient_type(u, v) == canonicalize(cone_action(u, v))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 40), st.integers(0, 80), st.integers(0, 80))
def test_canonicalize_idempotent(n, a, b):
    t = canonicalize(CyclicActionSpec(n, (a, b)))
    assert canonicalize(t.action()) == t
    assert canonicalize(CyclicActionSpec(n, (b, a))) == t


unimodular_ops = st.lists(st.tuples(st.integers(0, 1), st.integers(-3, 3)), min_size=1, max_size=6)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=2, max_size=2),
       unimodular_ops, st.sets(st.integers(0, 3), min_size=1))
def test_stabilizer_unimodular_invariance(W, ops, support):
    names = ("p", "q", "r", "s")
    W2 = [list(r) for r in W]
    for which, k in ops:
        W2[which] = [a + k * b for a, b in zip(W2[which], W2[1 - which])]
    a = stabilizer(TorusActionSpec(names, W), sorted(support))
    b = stabilizer(TorusActionSpec(names, W2), sorted(support))
    assert a.infinite == b.infinite
    assert a.invariant_factors == b.invariant_factors


@SLOW
@given(fans_with_divisor())
def test_scan_backends_agree(fd):
    fan, D = fd
    bound = search_bound(fan, D)
    ref = scan_box(fan.rays, D, bound, backend="numpy")
    if HAS_NUMBA:
        assert scan_box(fan.rays, D, bound, backend="numba") == ref
    assert ref[3] == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(1, 3))
def test_hilbert_function_oracle(seed, nvars, ngens):
    ring, gens = random_homogeneous_ideal(random.Random(seed), nvars, ngens)
    gb = buchberger(gens, ring=ring)
    for d in range(0, 7):
        assert len(graded_piece_basis(gb, d)) == brute_hilbert(ring, gens, d)


def test_degree_bound_doubling_all_presets():
    for name in PRESETS:
        pres = preset(name)
        for method in (None, "graded-subquotient"):
            if method and len(pres.generators) > 1:
                continue
            a = presentation_t1(pres, 12, method=method)
            b = presentation_t1(pres, 24, method=method)
            assert a.total == b.total and a.per_degree() == b.per_degree()


def test_quotient_dimension_is_infinite_for_positive_dimensional_ideals():
    ring, gens = random_homogeneous_ideal(random.Random(1), 3, 1)
    assert quotient_dimension(buchberger(gens, ring=ring)) == INFINITE
