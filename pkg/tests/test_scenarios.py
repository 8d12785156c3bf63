import json

import pytest

from rigidkit.scenarios import (
    MATCH,
    MISMATCH,
    SCENARIOS,
    boundary_partitions,
    local_model,
    run_scenario,
    scenario_m0n_rigidity,
    scenario_m12_atlas,
    scenario_m12_kuranishi,
    scenario_m12_toric,
    scenario_sym3_resolutions,
)
from rigidkit.quotient import CyclicQuotientType


def all_match(rep):
    return rep.verdict == MATCH and all(r.status == MATCH for r in rep.rows)


def test_m12_toric():
    rep = scenario_m12_toric()
    assert all_match(rep)
    claims = {r.claim: r.computed for r in rep.rows}
    assert claims["h^*(T)"] == [2, 0, 0]
    assert claims["cone types"] == ["1/3(1,1)", "1/2(1,1)", "1/2(1,1)", "1/3(1,2)"]


def test_m12_toric_numpy_backend():
    assert all_match(scenario_m12_toric(backend="numpy"))


def test_m12_toric_corrupted_ray():
    rep = scenario_m12_toric({"rays": [[1, 0], [1, 2], [0, 1], [-2, -3]]})
    assert rep.verdict == MISMATCH
    assert any(r.status == MISMATCH for r in rep.rows)


def test_m12_atlas():
    rep = scenario_m12_atlas()
    assert all_match(rep)
    assert rep.rows[0].computed == 4


def test_m12_kuranishi():
    rep = scenario_m12_kuranishi()
    assert all_match(rep)
    claims = {r.claim: r.computed for r in rep.rows}
    assert claims["local T^1 dimensions"] == [2, 1, 1, 2]
    assert claims["global Ext^1"] == "6 EXACT"
    assert claims["global Ext^2"] == "0 EXACT"
    assert "char" in json.dumps(rep.metadata)


def test_local_models():
    m = local_model(CyclicQuotientType.parse("1/3(1,1)"))
    assert m.matched_preset == "twisted-cubic-cone" and m.t1 == 2 and m.ext2 == 0
    assert local_model(CyclicQuotientType.parse("1/3(1,2)")).t1 == 2
    assert local_model(CyclicQuotientType.parse("1/2(1,1)")).t1 == 1
    # no preset carries syzygies for the 1/4(1,1) cone
    assert local_model(CyclicQuotientType.parse("1/4(1,1)")).t1 is None


def test_kuranishi_undetermined_without_local_data():
    rep = scenario_m12_kuranishi({"local_types": ["1/4(1,1)"]})
    assert rep.verdict == MISMATCH
    assert any(r.status == "UNDETERMINED" for r in rep.rows)


@pytest.mark.parametrize("n", range(3, 13))
def test_m0n(n):
    rep = scenario_m0n_rigidity(n)
    assert all_match(rep)
    assert rep.conclusion == "RIGID"
    if n >= 4:
        assert len(rep.metadata["partitions"]) == n // 2 - 1


def test_m0n_exception_row():
    rep = scenario_m0n_rigidity(4)
    row = next(r for r in rep.rows if r.claim.startswith("h^0(T) for n = 4"))
    assert row.computed == 3


def test_boundary_partitions():
    assert boundary_partitions(10) == [(2, 8), (3, 7), (4, 6), (5, 5)]
    assert boundary_partitions(4) == [(2, 2)]


def test_m0n_corrupted_twist():
    rep = scenario_m0n_rigidity(6, {"twist": 0})
    assert rep.verdict == MISMATCH and rep.conclusion != "RIGID"


def test_sym3():
    assert all_match(scenario_sym3_resolutions())


def test_sym3_sign_flip():
    rows = [["s2", "-s3", "0"], ["-2*s1", "s2", "s3"], ["s0", "s1", "-2*s2"], ["0", "s0", "s1"]]
    rep = scenario_sym3_resolutions({"matrices": {"beta": rows}})
    assert rep.verdict == MISMATCH
    assert any("residue" in line for line in rep.metadata["residues"])


def test_report_serialization():
    for name in SCENARIOS:
        rep = run_scenario(name, n=5)
        data = json.loads(rep.to_json())
        assert set(data) == {"scenario", "verdict", "conclusion", "rows", "metadata"}
        for row in data["rows"]:
            assert set(row) == {"claim", "computed", "expected", "status", "source"}
        assert rep.to_text().startswith(f"scenario: {name}")
    with pytest.raises(KeyError):
        run_scenario("m1n")
