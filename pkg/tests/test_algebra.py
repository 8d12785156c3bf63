import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from helpers import fraction_rank

from rigidkit.algebra import (
    INFINITE,
    LEX,
    bareiss,
    buchberger,
    det,
    graded_piece_basis,
    is_groebner,
    mat_mul,
    monomials_of_degree,
    normal_form,
    polynomial_ring,
    quotient_dimension,
    rat_kernel,
    rat_rank,
    s_polynomial,
    smith_normal_form,
    sparse_rank,
    standard_monomials,
    weighted,
)


@pytest.fixture
def xyz():
    return polynomial_ring("x y z")


def test_parse_and_format_roundtrip(xyz):
    R, (x, y, z) = xyz
    f = R("z^3 - x*y + 1/2*x^2")
    assert f == z**3 - x * y + Fraction(1, 2) * x**2
    assert R(str(f)) == f
    assert str(R("0")) == "0"


def test_arithmetic_and_derivative(xyz):
    R, (x, y, z) = xyz
    f = (x + y) ** 2
    assert f == x**2 + 2 * x * y + y**2
    assert f.diff("x") == 2 * x + 2 * y
    assert (f - f).is_zero()
    assert f.is_homogeneous() and f.degree() == 2


def test_buchberger_examples(xyz):
    R, (x, y, z) = xyz
    assert sorted(str(g) for g in buchberger([x, y])) == ["x", "y"]
    gb = buchberger([R("z^3 - x*y"), -y, -x, 3 * z**2])
    assert sorted(str(g) for g in gb) == ["x", "y", "z^2"]
    gb2 = buchberger([R("z^2 - x*y"), -y, -x, 2 * z])
    assert sorted(str(g) for g in gb2) == ["x", "y", "z"]


def test_normal_form_examples(xyz):
    R, (x, y, z) = xyz
    gb = buchberger([x, y, z**2])
    assert normal_form(R("z^3 - x*y"), gb).is_zero()
    assert normal_form(z, gb) == z
    S, (s0, s1, s2, s3) = polynomial_ring("s0 s1 s2 s3")
    gb3 = buchberger([S("s0*s2 - s1^2"), S("s1*s2 - s0*s3"), S("s1*s3 - s2^2")])
    assert normal_form(S("s2^2 - s1*s3"), gb3).is_zero()


def test_quotient_dimension_examples():
    R, (x, y, z) = polynomial_ring("x y z")
    assert quotient_dimension(buchberger([x, y, z**2])) == 2
    assert quotient_dimension(buchberger([x, y, z])) == 1
    R2, (a, b) = polynomial_ring("x y")
    assert quotient_dimension(buchberger([a])) == INFINITE


def test_graded_piece_basis_twisted_cubic():
    R, (x, y, z, w) = polynomial_ring("x y z w")
    gb = buchberger([R("x*w - y*z"), R("y^2 - x*z"), R("z^2 - y*w")])
    sizes = [len(graded_piece_basis(gb, d)) for d in range(1, 6)]
    assert sizes == [3 * d + 1 for d in range(1, 6)]


def test_graded_piece_basis_rejects_inhomogeneous():
    R, (x, y) = polynomial_ring("x y")
    with pytest.raises(ValueError):
        graded_piece_basis(buchberger([x**2 - y]), 2)


def test_groebner_matches_sympy():
    rng = random.Random(7)
    R, gens = polynomial_ring("x y z")
    for _ in range(15):
        polys = []
        for _ in range(rng.randint(1, 3)):
            f = R.zero()
            for _ in range(rng.randint(1, 3)):
                e = [rng.randint(0, 2) for _ in range(3)]
                f = f + R.monomial(e, rng.randint(-3, 3))
            if f:
                polys.append(f)
        if not polys:
            continue
        mine = buchberger(polys)
        assert is_groebner(mine)
        sx, sy, sz = sympy.symbols("x y z")
        ref = sympy.groebner([sympy.sympify(str(p).replace("^", "**")) for p in polys],
                             sx, sy, sz, order="grevlex")
        theirs = sorted(
            str(sympy.expand(g / sympy.Poly(g, sx, sy, sz).LC(order="grevlex"))) for g in ref.exprs
        )
        ours = sorted(str(sympy.expand(sympy.sympify(str(g).replace("^", "**")))) for g in mine)
        assert ours == theirs


def test_lex_and_weighted_orders_give_groebner_bases(xyz):
    R, (x, y, z) = xyz
    gens = [R("x^2 - y"), R("x*y - z")]
    for order in (LEX, weighted(1, 2, 3)):
        gb = buchberger(gens, order=order)
        assert is_groebner(gb)
        for g in gens:
            assert normal_form(g, gb).is_zero()


def test_s_polynomials_reduce_and_normal_form_idempotent(xyz):
    R, (x, y, z) = xyz
    gb = buchberger([R("x^2 - y*z"), R("y^2 - x*z"), R("z^2 - x*y")])
    for f in gb:
        for g in gb:
            assert normal_form(s_polynomial(f, g), gb).is_zero()
    p = R("x^3 + y^3 + z^3 + x*y*z")
    r = normal_form(p, gb)
    assert normal_form(r, gb) == r


def _brute_division_standard(gb, cap):
    lead = gb.leading_monomials()
    out = []
    for e in product(range(cap + 1), repeat=gb.ring.nvars):
        if not any(all(a <= b for a, b in zip(l, e)) for l in lead):
            out.append(e)
    return sorted(out)


def test_standard_monomials_against_exhaustive_search():
    R, (x, y, z) = polynomial_ring("x y z")
    gb = buchberger([R("x^2 - y*z"), R("y^2 - x*z"), R("z^2 - x*y"), R("x*y*z")])
    cap = max(max(m) for m in gb.leading_monomials()) * 3
    std = sorted(standard_monomials(gb))
    assert std == _brute_division_standard(gb, cap)
    assert quotient_dimension(gb) == len(std)


def test_monomials_of_degree_weighted():
    got = list(monomials_of_degree(2, 6, (2, 3)))
    assert sorted(got) == [(0, 2), (3, 0)]


# ---- linear algebra ----------------------------------------------------------

def test_snf_examples():
    s = smith_normal_form([[1, 0], [0, 1]])
    assert [list(r) for r in s.S] == [[1, 0], [0, 1]]
    assert [list(r) for r in s.U] == [[1, 0], [0, 1]]
    assert [list(r) for r in s.V] == [[1, 0], [0, 1]]
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == (1, 6)
    assert smith_normal_form([[4]]).diagonal == (4,)


def _check_snf(A):
    s = smith_normal_form(A)
    assert [list(r) for r in mat_mul(mat_mul(s.U, A), s.V)] == [list(r) for r in s.S]
    assert abs(det(s.U)) == 1 and abs(det(s.V)) == 1
    diag = s.diagonal
    assert all(d >= 0 for d in diag)
    for i in range(len(diag) - 1):
        if diag[i] == 0:
            assert diag[i + 1] == 0
        else:
            assert diag[i + 1] % diag[i] == 0
    for i, row in enumerate(s.S):
        for j, v in enumerate(row):
            if i != j:
                assert v == 0
    return s


def test_snf_matches_sympy_invariant_factors():
    from sympy.matrices.normalforms import smith_normal_form as sym_snf

    rng = random.Random(3)
    for _ in range(30):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        s = _check_snf(A)
        ref = sym_snf(sympy.Matrix(A), domain=sympy.ZZ)
        theirs = sorted(abs(int(ref[i, i])) for i in range(min(m, n)))
        assert sorted(s.diagonal) == theirs


def test_rat_kernel_examples():
    assert len(rat_kernel([[0, 0, 0]] * 3)) == 3
    ker = rat_kernel([[1, 2], [2, 4]])
    assert len(ker) == 1
    v = ker[0]
    assert v[0] == -2 * v[1]


def test_planted_rank():
    rng = random.Random(11)
    B = [[rng.randint(-5, 5) for _ in range(12)] for _ in range(20)]
    C = [[rng.randint(-5, 5) for _ in range(20)] for _ in range(12)]
    A = mat_mul(B, C)
    assert rat_rank(A) == 12
    ker = rat_kernel(A)
    assert len(ker) == 8
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in A)


def test_bareiss_and_sparse_rank_agree_with_fraction_gauss():
    rng = random.Random(5)
    for _ in range(60):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        A = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(m)]
        want = fraction_rank(A)
        assert rat_rank(A) == want
        ints = [[int(x * 6) for x in row] for row in A]
        assert sparse_rank([{j: v for j, v in enumerate(r) if v} for r in ints]) == fraction_rank(ints)
        assert len(bareiss(ints)[1]) == fraction_rank(ints)


def test_det_matches_sympy():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(1, 5)
        A = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert det(A) == sympy.Matrix(A).det()
