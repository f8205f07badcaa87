import pytest

import torushh

# u^a t^b coefficient triples
T = [[0, 1, "1"]]
T_MINUS_1 = [[0, 1, "1"], [0, 0, "-1"]]
UT_MINUS_2 = [[1, 1, "1"], [0, 0, "-2"]]


def dims_by_degree(table):
    out = {}
    for e in table["entries"]:
        out[e["deg"]] = out.get(e["deg"], 0) + e["dim"]
    return out


def test_node_hh0_is_the_coordinate_ring():
    # HH^0 of Q[X,Y]/(XY) is the ring itself: weight w slice is X^|w| or Y^w, plus 1 at weight 0
    t = torushh.local_hh(degree_max=1, weight_band=2)
    hh0 = {e["wt"]: e["basis"] for e in t["entries"] if e["deg"] == 0}
    assert hh0 == {-2: ["X^2"], -1: ["X"], 0: ["1"], 1: ["Y"], 2: ["Y^2"]}


def test_mapping_torus_of_ground_field():
    # Q with the identity: cohomology of a circle tensored with the loop class, dims 1, 2, 1
    assert dims_by_degree(torushh.mapping_torus_hh(degree_max=2)) == {0: 1, 1: 2, 2: 1}


def test_growth_of_swap_is_two_periodic():
    # the swap on Q x Q has order 2, so odd twists have no fixed points and even ones act trivially
    rows = torushh.growth_table(k_max=3, degree_max=2)["rows"]
    assert [r["dims"] for r in rows] == [[1, 2, 1], [0, 0, 0], [1, 2, 1], [0, 0, 0]]


def test_torsion_module_and_shifted_module():
    torsion = {"generators": 1, "relations": [[T]]}
    assert torushh.armod.is_q_torsion(torsion)["torsion"]
    # R/(t - 1) cannot carry a connection: D_A(t - 1) = t is a unit mod t - 1
    shifted = {"generators": 1, "relations": [[T_MINUS_1]], "connection": [[[]]]}
    res = torushh.armod.check_connection(shifted)
    assert not res["ok"] and "normal form" in res["witness"]
    assert torushh.armod.solve_connection(shifted) is None


def test_restriction_to_t_equals_one():
    # at t = 1, ut - 2 becomes q - 2
    m = {"generators": 1, "relations": [[UT_MINUS_2]]}
    r = torushh.armod.restrict(m, "t=1")
    assert r["free_rank"] == 0 and r["torsion"] == ["-2 + q"]


def test_invariant_primes():
    assert torushh.armod.invariant_ideal_primes(["u", "t"])["minimal"] == ["(u,t)"]
    assert torushh.armod.invariant_ideal_primes(["u*t - 2"])["unit"]


def test_property_suite_small():
    s = torushh.armod.property_suite(instances=12, seed=3)
    assert s["passed"] and s["negative_rejected"] == s["negative_controls"]


def test_run_matches_cli_report_shape():
    r = torushh.run("graph", {"N": 3}, check="restrictions")
    assert r["command"] == "graph"
    assert all(a["pass"] for a in r["assertions"])


def test_errors():
    with pytest.raises(torushh.ConfigError):
        torushh.run("local-hh", {"colour": "blue"})
    with pytest.raises(torushh.ConfigError):
        torushh.run("nonsense")
    # t^10 needs exponent 10 > 8
    with pytest.raises(torushh.TorusHHError, match="BoundExhausted"):
        torushh.armod.is_q_torsion({"generators": 1, "relations": [[[[0, 10, "1"]]]]}, E=8)
    assert issubclass(torushh.ConfigError, torushh.TorusHHError)
