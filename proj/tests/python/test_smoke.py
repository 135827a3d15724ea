"""End-to-end checks of the python bindings against known-good values."""

import os
import sys

if "ECMIN_MODULE_DIR" in os.environ:
    sys.path.insert(0, os.environ["ECMIN_MODULE_DIR"])

import pytest

try:
    import ecmin
except ImportError:
    import _ecmin as ecmin


def data(name):
    path = os.path.join(os.environ["ECMIN_DATA_DIR"], name)
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


@pytest.fixture
def leak():
    # Optimum 2: x1=x2=1 fires only g1 and the output.
    return ecmin.parse_circuit(data("leak.mc"))


def test_parse_serialize_fixpoint(leak):
    text = ecmin.serialize_circuit(leak)
    again = ecmin.parse_circuit(text)
    assert ecmin.serialize_circuit(again) == text
    assert again.num_inputs == leak.num_inputs
    assert again.num_gates == leak.num_gates


def test_validate_reports_stats(leak):
    stats = ecmin.validate(leak)
    assert stats["inputs"] == 4
    assert stats["gates"] == 4
    assert stats["and_gates"] == 2 and stats["or_gates"] == 2
    assert stats["edges"] == 7


def test_evaluate_returns_active_gates(leak):
    satisfied, ec, active = ecmin.evaluate(leak, [True, True, False, False])
    assert satisfied
    assert ec == 2
    assert active == ["g1", "v_out"]
    assert ecmin.ec_worst(leak) == leak.num_gates


def test_solvers_agree(leak):
    brute = ecmin.min_ec_brute(leak)
    assert brute["min_ec"] == 2
    assert brute["capped"] is False
    dp = ecmin.dp_solve(leak, witness=True)
    assert dp["min_ec"] == 2
    sat, ec, _ = ecmin.evaluate(leak, dp["witness"])
    assert sat and ec == 2
    assert ecmin.solve_xp(leak, 2) is not None
    assert ecmin.solve_xp(leak, 1) is None
    assert ecmin.decide_dp(leak, 2) and not ecmin.decide_dp(leak, 1)
    assert ecmin.decide_brute(leak, 2) and not ecmin.decide_brute(leak, 1)
    assert ecmin.decide_xp(leak, 2) and not ecmin.decide_xp(leak, 1)


def test_explicit_decomposition(leak):
    for td in (ecmin.heuristic_decomposition(leak),
               ecmin.single_bag_decomposition(leak)):
        assert td.width >= 1
        assert ecmin.dp_solve(leak, td=td)["min_ec"] == 2


def test_kernelize(leak):
    out = ecmin.kernelize(leak, 2)
    assert out["verdict"] in ("yes", "no", "reduced")
    if out["verdict"] == "reduced":
        reduced = out["circuit"]
        ecmin.validate(reduced, strict=False)
        assert ecmin.decide_brute(reduced, 2) == ecmin.decide_brute(leak, 2)
        assert ecmin.check_distance_bound(reduced, 2)
    assert ecmin.kernelize(leak, leak.num_gates)["verdict"] == "yes"


def test_generators():
    vc = ecmin.gen_from_planar_vc(data("triangle.pg"), 2)
    assert vc["k"] == 16
    assert vc["parameter"] == 2
    assert len(vc["source_digest"]) == 16
    assert ecmin.decide_dp(vc["circuit"], vc["k"])
    assert not ecmin.decide_dp(vc["circuit"], vc["k"] - 1)

    mcq = ecmin.gen_from_mcq(data("two.col"))
    assert mcq["k"] == 13
    assert mcq["circuit"].num_gates == 13
    assert ecmin.min_ec_brute(mcq["circuit"])["min_ec"] == 13


def test_export_dot(leak):
    plain = ecmin.export_dot(leak)
    assert plain.startswith("digraph")
    lit = ecmin.export_dot(leak, [True, True, False, False])
    assert "filled" in lit


def test_errors_map_to_python():
    with pytest.raises(ecmin.EcminError):
        ecmin.parse_circuit("g broken AND missing\no broken\n")
    with pytest.raises(ecmin.EcminError):
        ecmin.gen_from_mcq("p col 2 1\ne 1 2\nn 1 1\nn 2 1\n")
