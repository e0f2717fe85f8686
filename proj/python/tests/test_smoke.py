import json
import math
import pathlib

import pytest

import maass_certify as mc

CONFIGS = pathlib.Path(__file__).resolve().parents[2] / "configs"


def load(name):
    return json.loads((CONFIGS / name).read_text())


def test_symbol_and_eigenvalue():
    assert abs(mc.natural_symbol(2, [9j, -9j], [-9j, 9j])) < 1e-14
    assert abs(mc.natural_symbol(2, [1j, 0, -1j], [1j, 0, -1j])) < 1e-14
    assert mc.laplace_eigenvalue([9j, -9j]) == pytest.approx(81.25)
    assert mc.natural_norm_bound(2, 2) == pytest.approx((2 ** -0.3 + 2 ** 0.3) ** 4)
    assert mc.max_delta([1j, -1j]) == pytest.approx(math.log(2 / math.sqrt(5) + 1))


def test_annihilation():
    r = mc.verify_annihilation(3, 2, 20, 5)
    assert r["passed"]


def test_bound_matches_cli_schema():
    cfg = load("smoke.json")
    cfg["budgets"] = {"volume_samples": 20000, "sup_samples": 300, "refine_steps": 20}
    r = mc.bound(cfg)
    assert r["kind"] == "main"
    assert r["config_hash"] == mc.config_hash(cfg)
    assert math.isfinite(r["outputs"]["epsilon"]["ln"])
    assert mc.bound(cfg) == r
    w = mc.laplacian_bound(cfg)
    assert w["outputs"]["lambda_n"][0] == pytest.approx(81.25)


def test_distance_and_errors():
    cfg = load("distance.json")
    assert mc.distance(cfg) > 0
    cfg["other_places"] = cfg["places"]
    assert mc.distance(cfg) == 0.0
    with pytest.raises(mc.HypothesisViolation):
        mc.bound(load("zero_symbol.json"))
    with pytest.raises(mc.InvalidInput):
        mc.bound({"n": 2, "places": {"inf": [[0, 9], [0, -9]]}, "S": [2]})
    assert isinstance(mc.MaassError("x"), RuntimeError)
