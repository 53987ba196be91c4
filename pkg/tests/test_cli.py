import json
import math
import os

import numpy as np
import pytest

from dunkl_lab.cli import (main, RunConfig, ConfigError, CATALOG, _fmt,
                           EXIT_OK, EXIT_FAIL, EXIT_CONFIG)


def run(args):
    return main(list(args))


def test_config_validation_direct():
    cfg = RunConfig(alpha=-0.6)
    with pytest.raises(ConfigError):
        cfg.validate()
    for bad in (dict(k=0), dict(p=0.5), dict(q=0.2), dict(beta=1.2),
                dict(x_min=-1.0), dict(fmt="xml"), dict(function="nope"),
                dict(suites=["nope"]), dict(points_per_decade=0)):
        with pytest.raises(ConfigError):
            RunConfig(**bad).validate()
    RunConfig().validate()


def test_bad_alpha_exits_2(capsys):
    assert run(["kernel", "--alpha", "-0.6"]) == EXIT_CONFIG
    assert "alpha" in capsys.readouterr().err


def test_unknown_function_exits_2():
    assert run(["translate", "--function", "nonexistent"]) == EXIT_CONFIG


def test_bad_config_file_field(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"no_such_field": 1}))
    assert run(["verify", "--config", str(cfg)]) == EXIT_CONFIG
    cfg.write_text("{not json")
    assert run(["verify", "--config", str(cfg)]) == EXIT_CONFIG
    assert run(["verify", "--config", str(tmp_path / "missing.json")]) \
        == EXIT_CONFIG


def test_config_file_q_inf_and_flag_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"q": "inf", "alpha": 1.5, "k": 3}))
    # flags win over the file; the merged config must still validate
    from dunkl_lab.cli import _load_config, build_parser
    args = build_parser().parse_args(
        ["taylor", "--config", str(cfg), "--alpha", "0.5"])
    merged = _load_config(args)
    assert merged.alpha == 0.5
    assert merged.k == 3
    assert math.isinf(merged.q)


def test_kernel_command_writes_csv(tmp_path, capsys):
    assert run(["kernel", "--alpha", "0.5", "--t", "1.0",
                "--x-max", "4.0", "--out-dir", str(tmp_path)]) == EXIT_OK
    path = tmp_path / "kernel.csv"
    assert path.exists()
    rows = path.read_text().strip().split("\n")
    assert rows[0] == "x,re,im,modulus"
    vals = np.array([[float(v) for v in r.split(",")] for r in rows[1:]])
    assert vals.shape == (201, 4)
    assert np.max(vals[:, 3]) <= 1.0 + 1e-12


def test_translate_command(tmp_path):
    assert run(["translate", "--alpha", "0.5", "--function", "gaussian",
                "--x", "0.9", "--x-max", "3.0",
                "--out-dir", str(tmp_path)]) == EXIT_OK
    assert (tmp_path / "translate.csv").exists()


def test_taylor_command_stdout(capsys):
    assert run(["taylor", "--alpha", "0.5", "--k", "2",
                "--function", "gaussian", "--x", "0.9", "--a", "0.3"]) \
        == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["identity_residual"] < 1e-9
    assert doc["remainder_integral"] == pytest.approx(
        doc["remainder_recurrence"], rel=1e-8, abs=1e-12)
    assert doc["theta_mass"] <= doc["theta_mass_bound"] + 1e-12


def test_sweep_csv_and_json_agree(tmp_path):
    common = ["sweep", "--alpha", "0.5", "--k", "2", "--p", "2",
              "--function", "gaussian", "--x-min", "0.01", "--x-max", "100",
              "--points-per-decade", "1"]
    d1, d2 = tmp_path / "csv", tmp_path / "json"
    assert run(common + ["--out-dir", str(d1), "--format", "csv"]) == EXIT_OK
    assert run(common + ["--out-dir", str(d2), "--format", "json"]) == EXIT_OK
    rows = (d1 / "smoothness.csv").read_text().strip().split("\n")
    header = rows[0].split(",")
    assert header == ["x", "omega", "omega_tilde", "k_upper"]
    doc = json.loads((d2 / "smoothness.json").read_text())
    assert len(doc) == len(rows) - 1
    for line, rec in zip(rows[1:], doc):
        for name, txt in zip(header, line.split(",")):
            # 17-significant-digit CSV floats round-trip exactly
            assert float(txt) == rec[name]
    assert (d1 / "convolution.csv").exists()


def test_fmt_roundtrip():
    for v in (1.0 / 3.0, 1e-17, math.pi, -2.5e16):
        assert float(_fmt(v)) == v


def test_verify_single_suite(tmp_path, capsys):
    assert run(["verify", "--suite", "kernel",
                "--out-dir", str(tmp_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS" in out and "failed" in out
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["summary"]["FAIL"] == 0
    assert report["config"]["suites"] == ["kernel"]
    assert all(c["status"] == "PASS" for c in report["checks"])


def test_verify_unknown_suite_exits_2():
    assert run(["verify", "--suite", "nonsense"]) == EXIT_CONFIG


def test_catalog_functions_are_normable():
    for name, f in CATALOG.items():
        assert f.is_normable, name
