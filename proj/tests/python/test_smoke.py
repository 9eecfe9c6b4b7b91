import json
import pathlib

import pytest

import vlat

EXAMPLES = pathlib.Path(__file__).resolve().parents[2] / "examples"


def test_ope_matches_known_coefficients():
    y = vlat.ope([[2]], "e[1]", "e[-1]", -2, 1)
    assert y[-2] == "1"
    assert y[-1] == "a1(-1)"
    assert y[0] == "1/2*a1(-2) + 1/2*a1(-1)^2"


def test_deformed_ope_picks_up_exponential_factor():
    cfg = (EXAMPLES / "a1.json").read_text()
    y = vlat.deformed_ope(cfg, "alpha-x", "e[1]", "e[1]", 2, 3)
    assert y == {2: "e[2]", 3: "2*e[2] + a1(-1) e[2]"}


def test_normalize_state():
    assert vlat.normalize_state("a1(-1) a1(-2) + 1/2", 1) == vlat.normalize_state("1/2 + a1(-2) a1(-1)", 1)


def test_verify_small_config():
    cfg = {
        "lattice": {"gram": [[2]]},
        "deformations": {"ax": [[1, 1, "x"]]},
        "truncation": {"maxWeight": 2},
        "suites": ["heisenberg", "cocycle", "bleps-recovery"],
    }
    passed, report = vlat.verify(cfg)
    assert passed
    assert report["version"] == 1
    assert {c["suite"] for c in report["checks"]} == {"heisenberg", "cocycle", "bleps-recovery"}
    assert all(c["status"] == "pass" for c in report["checks"])


def test_verify_is_deterministic():
    cfg = json.loads((EXAMPLES / "a1.json").read_text())
    a = vlat.verify(cfg, ["s-operator"])
    b = vlat.verify(cfg, ["s-operator"])
    assert a == b and a[0]


def test_config_errors_raise():
    with pytest.raises(vlat.ConfigInvalid, match="odd diagonal"):
        vlat.verify({"lattice": {"gram": [[1]]}})
    with pytest.raises(ValueError):
        vlat.ope([[1]], "1", "1", 0, 1)


def test_phi_checks():
    passed, report = vlat.phi_check("x")
    assert passed
    assert any("closed form" in c["instance"] for c in json.loads(report)["checks"])
    assert "phi-calc" in vlat.suite_names()
