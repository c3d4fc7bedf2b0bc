"""Smoke tests for the python bindings and the CLI."""

import json
import math
import os
import subprocess

import pytest

import wardrop


def test_import_surface():
    assert "pigou_affine" in wardrop.scenario_names()


def test_pigou_poa():
    sc = wardrop.scenario("pigou_affine")
    poa = wardrop.price_of_anarchy(sc.net, [1.0])
    assert abs(poa - 4.0 / 3.0) < 1e-6


def test_solve_result_shape():
    sc = wardrop.scenario("pigou_monomial", d1=1, d2=2)
    res = wardrop.solve(sc.net, [1.0], objective="we")
    assert res["converged"]
    x2 = res["loads"][1]
    assert abs(x2 - (math.sqrt(5.0) - 1.0) / 2.0) < 1e-6
    oracle = wardrop.brute_force(sc.net, [1.0], objective="we", resolution=300)
    assert abs(res["objective"] - oracle["objective"]) < 1e-3


def test_classify_wheatstone_heavy():
    sc = wardrop.scenario("wheatstone")
    rep = wardrop.classify(sc.net, "heavy", "x")
    labels = [e["class"] for e in rep["edges"]]
    assert labels == ["tight", "slow", "fast", "fast", "slow"]
    assert [p["class"] for p in rep["pairs"]] == ["tight", "fast"]
    assert rep["tight"]


def test_sweep_and_fit():
    sc = wardrop.scenario("pigou_monomial", d1=1, d2=2)
    sw = wardrop.sweep(sc.net, sc.rates, 1e4, 1e8, points=25)
    assert len(sw["rows"]) == 25
    fit = wardrop.fit_power_law(sc.net, sc.rates, 1e4, 1e8, 25, "heavy")
    assert abs(fit["exponent"] - 0.5) < 0.025
    assert abs(fit["constant"] - 0.088662) < 0.002


def test_rate_machinery():
    sc = wardrop.scenario("pigou_monomial", d1=1, d2=2)
    est = wardrop.rate_exponent(sc.net, "heavy")
    assert est["exponent"] == pytest.approx(0.5)
    bound = wardrop.rate_bound_constants(sc.net, [1.0], "heavy")
    assert bound["K1"] == 0.0
    assert bound["Ka"] == pytest.approx(4.0)
    lv = wardrop.limit_value(sc.net, [1.0], "heavy", "x")
    assert lv["value"] == pytest.approx(1.0)


def test_predict_and_salience():
    sc = wardrop.scenario("oscillating_three_link", d=2)
    verdict = wardrop.predict_poa_limit(sc.net, [1.0], "heavy")
    assert not verdict["converges_to_one"]

    rules = [
        {"kind": "power", "coeff": 1.0, "power": 0.5},
        {"kind": "power", "coeff": 1.0, "power": 1.0},
    ]
    rep = wardrop.salience_check(rules, [0, 1], 1000)
    assert rep["salient"]


def test_json_round_trip():
    sc = wardrop.scenario("wheatstone")
    doc = sc.net.to_json()
    net, _ = wardrop.network_from_json(doc)
    assert net.num_edges == 5
    assert net.to_json() == doc


def test_tntp_parse():
    net_text = (
        "<NUMBER OF NODES> 2\n<NUMBER OF LINKS> 1\n<FIRST THRU NODE> 1\n"
        "<END OF METADATA>\n1 2 100.0 1 2.5 0.15 4 0 0 1 ;\n"
    )
    trips_text = "<TOTAL OD FLOW> 5\n<END OF METADATA>\nOrigin 1\n2 : 5.0;\n"
    net, inflows, od = wardrop.parse_tntp(net_text, trips_text, k=1)
    assert net.num_pairs == 1
    assert inflows == [5.0]
    assert od == [(1, 2)]


def test_cli_poa():
    cli = os.environ.get("WARDROP_CLI")
    if not cli:
        pytest.skip("WARDROP_CLI not set")
    out = subprocess.run(
        [cli, "poa", "--scenario", "pigou_affine", "--inflow", "1"],
        capture_output=True, text=True, check=True,
    )
    assert abs(float(out.stdout.strip()) - 4.0 / 3.0) < 1e-6


def test_cli_classify_exit_codes():
    cli = os.environ.get("WARDROP_CLI")
    if not cli:
        pytest.skip("WARDROP_CLI not set")
    ok = subprocess.run(
        [cli, "classify", "--scenario", "wheatstone", "--limit", "heavy"],
        capture_output=True, text=True,
    )
    assert ok.returncode == 0
    rep = json.loads(ok.stdout)
    assert rep["tight"]

    # oscillating ratios admit no benchmark: hypothesis violation, exit 4
    bad = subprocess.run(
        [cli, "classify", "--scenario", "oscillating_three_link", "--limit", "heavy"],
        capture_output=True, text=True,
    )
    assert bad.returncode == 4

    # unknown scenario: input error, exit 2
    nope = subprocess.run([cli, "poa", "--scenario", "nope"], capture_output=True, text=True)
    assert nope.returncode == 2
