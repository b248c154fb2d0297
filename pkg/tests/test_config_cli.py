import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from gnflow import ConfigError
from gnflow.cli import main, manufactured_elliptic_error
from gnflow.config import ScenarioConfig, initial_data, parse_config

SOLITARY = """
[scenario]
name = solitary_wave
a = 0.2
[grid]
length = 80
n = {n}
[integrator]
T = {T}
[output]
stride = 5
directory = {out}
"""


def write(tmp_path, text, name="case.ini"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def summary(out):
    with open(out / "summary.json") as fh:
        return json.load(fh)


def test_parse_defaults_and_case_of_T():
    cfg = parse_config("[integrator]\nT = 3\ndt = auto\n[grid]\nn = 64\n")
    assert cfg.T == 3.0 and cfg.dt is None and cfg.n == 64


@pytest.mark.parametrize("text", [
    "[grid]\nnn = 64\n",
    "[grids]\nn = 64\n",
    "[grid]\nn = 63\n",
    "[grid]\nn = sixty\n",
    "[scenario]\nname = tsunami\n",
    "[scenario]\na = 2.5\n",
    "[scenario]\nname = rough_data\nsigma = 0\n",
    "[compare]\ntolerance = -1\n",
    "[output]\nformats = csv, xml\n",
    "not an ini file",
])
def test_strict_parsing(text):
    with pytest.raises(ConfigError):
        parse_config(text)


@pytest.mark.parametrize("name", ["equilibrium", "solitary_wave", "gaussian_hump", "rough_data"])
def test_initial_data_shapes(name):
    cfg = ScenarioConfig(scenario=name, n=128)
    h0, u0 = initial_data(cfg)
    assert h0.shape == u0.shape == (128,)
    assert h0.min() > 0 and np.all(np.isfinite(u0))


def test_negated_velocity():
    h0, u0 = initial_data(ScenarioConfig(n=64))
    _, w0 = initial_data(ScenarioConfig(n=64, negate_velocity=True))
    np.testing.assert_array_equal(w0, -u0)


def test_run_writes_all_outputs(tmp_path):
    out = tmp_path / "run"
    code = main(["run", write(tmp_path, SOLITARY.format(n=256, T=1, out=out))])
    assert code == 0
    s = summary(out)
    assert s["termination"] == "completed" and s["final_time"] == 1.0
    assert s["error_metrics"]["h_linf_relative_error"] < 1e-2
    with open(out / "diagnostics.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["t", "mass", "momentum", "energy", "min_phix", "sobolev_h", "sobolev_u"]
    with open(out / "fields.csv") as fh:
        assert fh.readline().strip() == "t,x,h,u"


def test_equilibrium_compare_is_identically_zero(tmp_path):
    out = tmp_path / "cmp"
    text = f"[scenario]\nname = equilibrium\n[grid]\nn = 64\n[integrator]\nT = 0.5\n[output]\ndirectory = {out}\n"
    assert main(["compare", write(tmp_path, text)]) == 0
    m = summary(out)["error_metrics"]
    assert m["max_sup_dh"] == 0.0 and m["max_sup_du"] == 0.0 and m["passed"]


def test_compare_tolerance_failure_exit_code(tmp_path):
    out = tmp_path / "cmp"
    text = SOLITARY.format(n=128, T=0.5, out=out) + "[compare]\ntolerance = 1e-12\n"
    assert main(["compare", write(tmp_path, text)]) == 1
    assert summary(out)["error_metrics"]["passed"] is False


def test_bad_config_exit_code_and_summary(tmp_path):
    out = tmp_path / "bad"
    path = write(tmp_path, "[grid]\nn = 7\n")
    assert main(["run", path, "--output-dir", str(out)]) == 2
    s = summary(out)
    assert s["exit_code"] == 2 and s["termination"] == "error" and "n must" in s["message"]


def test_missing_config_file(tmp_path):
    out = tmp_path / "missing"
    assert main(["run", str(tmp_path / "nope.ini"), "--output-dir", str(out)]) == 2
    assert (out / "summary.json").exists()


def test_converge_single_level_is_rejected(tmp_path):
    out = tmp_path / "conv"
    text = f"[converge]\nkind = elliptic\nlevels = 256\n[output]\ndirectory = {out}\n"
    assert main(["converge", write(tmp_path, text)]) == 2


def test_elliptic_converge(tmp_path):
    out = tmp_path / "conv"
    text = f"[converge]\nkind = elliptic\nlevels = 256 512 1024\n[output]\ndirectory = {out}\n"
    assert main(["converge", write(tmp_path, text)]) == 0
    assert summary(out)["error_metrics"]["observed_order"] == pytest.approx(2.0, abs=0.2)


def test_manufactured_error_shrinks():
    assert manufactured_elliptic_error(512) < manufactured_elliptic_error(256) / 3.5


def test_seed_override_changes_rough_data(tmp_path):
    text = "[scenario]\nname = rough_data\n[grid]\nn = 128\n[integrator]\nT = 0.1\n[output]\ndirectory = {}\n"
    a, b = tmp_path / "a", tmp_path / "b"
    main(["run", write(tmp_path, text.format(a), "a.ini")])
    main(["run", write(tmp_path, text.format(b), "b.ini"), "--seed", "99"])
    assert summary(a)["config"]["seed"] == 7 and summary(b)["config"]["seed"] == 99
    assert summary(a)["diagnostics_final"]["energy"] != summary(b)["diagnostics_final"]["energy"]


def test_console_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "gnflow.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "gnflow" in res.stdout
