import json
import os
import subprocess
from fractions import Fraction

import pytest

import mdl_lab


def test_registry():
    names = mdl_lab.experiments()
    assert len(names) == 12
    assert "example1" in names
    assert "Example 5" in mdl_lab.describe("example5_martingale")
    with pytest.raises(mdl_lab.ConfigError):
        mdl_lab.describe("nosuch")


def test_example1_run(tmp_path):
    report = mdl_lab.run("example1", params={"N": 5}, out=tmp_path)
    assert report["passed"]
    assert report["summary"]["rho_norm_square"] == "2"
    assert (tmp_path / "bounds.csv").read_text().count("rho_norm,square,10,2,8,pass") == 1


def test_predictions():
    assert mdl_lab.predict(["0", "1/2"], "static", "0", weights=["1/2", "1/2"]) == [Fraction(1), Fraction(0)]
    assert mdl_lab.predict([Fraction(1, 3)], "rho_norm", "01", weights=["1"]) == [Fraction(2, 3), Fraction(1, 3)]
    assert mdl_lab.map_index(["1/4", "1/2", "3/4"], "1100") == 1


def test_cumulative_matches_oracle():
    value = mdl_lab.cumulative(["1/4", "1/2", "3/4"], 1, 4, "xi")
    assert value == Fraction(187447, 3175200)


def test_coding_roundtrip():
    bits = mdl_lab.encode(["1/4", "1/2", "3/4"], 1, "1100")
    assert bits == "100001011100"
    assert mdl_lab.decode(["1/4", "1/2", "3/4"], bits) == (1, "1100")
    with pytest.raises(mdl_lab.MalformedCode):
        mdl_lab.decode(["1/4", "1/2", "3/4"], "1")


def test_config_errors():
    with pytest.raises(mdl_lab.ConfigError):
        mdl_lab.run("example1", config={"experiment": "example1", "colour": 1})
    with pytest.raises(mdl_lab.ConfigError):
        mdl_lab.run("example1", params={"bogus": 1})


def test_thread_count_does_not_change_report():
    a = mdl_lab.run("example3_hybrid", horizon=30, threads=1)
    b = mdl_lab.run("example3_hybrid", horizon=30, threads=3)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


@pytest.mark.skipif("MDL_LAB_BIN" not in os.environ, reason="CLI binary not provided")
def test_cli_exit_codes(tmp_path):
    binary = os.environ["MDL_LAB_BIN"]
    assert subprocess.run([binary, "describe", "nosuch"], capture_output=True).returncode == 2
    listed = subprocess.run([binary, "list"], capture_output=True, text=True, check=True)
    assert len(listed.stdout.strip().splitlines()) == 12
