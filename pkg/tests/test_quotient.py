import pytest

from rigidkit.algebra import format_polynomial
from rigidkit.quotient import (
    M12_ACTION,
    SMOOTH,
    CyclicActionSpec,
    CyclicQuotientType,
    TorusActionSpec,
    atlas_m12,
    canonicalize,
    invariant_generators,
    invariant_relations,
    stabilizer,
    tangent_weight,
)


def q(n, a, b):
    return canonicalize(CyclicActionSpec(n, (a, b)))


def test_canonicalize_examples():
    assert str(q(4, 2, 3)) == "1/2(1,1)"
    assert str(q(6, 5, 4)) == "1/3(1,1)"
    assert q(2, 1, 0) == SMOOTH
    assert q(3, 1, 2) == q(3, 2, 1)
    assert q(3, 1, 1) != q(3, 1, 2)
    assert str(q(5, 1, 2)) == "1/5(1,2)" and q(5, 1, 3) == q(5, 1, 2)


def test_canonicalize_reflections():
    # mu_6 with weights (2, 3): reflections of orders 2 and 3 generate everything
    assert q(6, 2, 3) == SMOOTH
    assert q(4, 1, 0) == SMOOTH
    assert str(q(8, 2, 4)) == "1/2(1,1)"  # kernel mu_2, then 1/4(1,2) has reflection subgroup mu_2


def test_parse_roundtrip():
    for text in ("1/2(1,1)", "1/3(1,2)", "1/7(1,3)", "smooth"):
        t = CyclicQuotientType.parse(text)
        assert CyclicQuotientType.parse(str(t)) == t
    with pytest.raises(ValueError):
        CyclicQuotientType.parse("1/3")


def test_canonicalize_requires_two_weights():
    with pytest.raises(ValueError):
        canonicalize(CyclicActionSpec(3, (1, 1, 1)))


def test_invariant_generators():
    assert sorted(invariant_generators(CyclicActionSpec(3, (1, 2)))) == [(0, 3), (1, 1), (3, 0)]
    assert sorted(invariant_generators(CyclicActionSpec(3, (1, 1)))) == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert sorted(invariant_generators(CyclicActionSpec(2, (1, 1)))) == [(0, 2), (1, 1), (2, 0)]


def _brute_invariants(n, w, deg):
    return [(a, b) for a in range(deg + 1) for b in range(deg + 1 - a)
            if (a, b) != (0, 0) and (a * w[0] + b * w[1]) % n == 0]


@pytest.mark.parametrize("n,w", [(2, (1, 1)), (3, (1, 1)), (3, (1, 2)), (5, (1, 2)), (7, (1, 3)), (6, (1, 5))])
def test_invariant_generators_minimal_and_complete(n, w):
    gens = invariant_generators(CyclicActionSpec(n, w))
    gset = set(gens)
    for g in gens:
        for h in gset:
            rest = (g[0] - h[0], g[1] - h[1])
            if h != g and min(rest) >= 0 and rest in gset:
                pytest.fail(f"{g} is a product of generators")
    # every invariant monomial of degree <= n factors through the generators
    reachable = {(0, 0)}
    for m in sorted(_brute_invariants(n, w, n), key=sum):
        assert any((m[0] - g[0], m[1] - g[1]) in reachable for g in gens)
        reachable.add(m)


def test_invariant_relations():
    ring, rels, weights = invariant_relations(CyclicActionSpec(3, (1, 2)))
    assert [format_polynomial(r) for r in rels] == ["u1^3 - u0*u2"]
    assert weights == (3, 2, 3)
    _, rels, _ = invariant_relations(CyclicActionSpec(3, (1, 1)))
    assert len(rels) == 3 and all(r.degree() == 2 for r in rels)


def test_stabilizer_examples():
    chart = TorusActionSpec(("x", "y", "a"), ((2, 3, 4),))
    rep = stabilizer(chart, ["a"])
    assert rep.invariant_factors == (4,) and rep.transverse == {"x": 2, "y": 3}
    assert str(rep.quotient_type) == "1/2(1,1)"
    assert stabilizer(TorusActionSpec(("x", "y"), ((2, 3),)), ["x", "y"]).order == 1
    assert stabilizer(M12_ACTION, []).infinite
    assert stabilizer(M12_ACTION, ["z", "a"]).describe() == "mu_4"


def test_stabilizer_unimodular_invariance():
    W = ((1, 1, 1, 0, 0), (2, 3, 0, 4, 6))
    U = ((2, 1), (1, 1))  # det 1
    W2 = tuple(tuple(sum(U[i][k] * W[k][j] for k in range(2)) for j in range(5)) for i in range(2))
    a = TorusActionSpec(M12_ACTION.names, W)
    b = TorusActionSpec(M12_ACTION.names, W2)
    for support in (["z", "a"], ["y", "b"], ["y", "a"], ["z", "b"], ["x", "y", "z"]):
        assert stabilizer(a, support).invariant_factors == stabilizer(b, support).invariant_factors


def test_tangent_weight():
    # mu_4 weight on the local coordinate x/y is 2 - 3 = -1, so on the tangent line it is 1
    assert tangent_weight((1, -1), (2, 3), 4) == 1


def test_atlas():
    entries = atlas_m12()
    assert len(entries) == 4
    assert sorted(str(e.quotient_type) for e in entries) == ["1/2(1,1)", "1/2(1,1)", "1/3(1,1)", "1/3(1,2)"]
    by_type = {(e.chart, e.support): e for e in entries}
    assert str(by_type[("z!=0", ("a",))].quotient_type) == "1/2(1,1)"
    assert "E4" in by_type[("z!=0", ("a",))].locus
    assert str(by_type[("z!=0", ("y",))].quotient_type) == "1/3(1,2)"
    assert str(by_type[("y!=0", ("b",))].quotient_type) == "1/3(1,1)"
    for e in entries:
        assert e.ambient_factors == e.report.invariant_factors or e.ambient_factors is None
