import json

import pytest

from cmperiods.cli import main, parse_config, run
from cmperiods.errors import ConfigError

LEG = {"alpha": ["0", "0"], "beta": ["1/2", "1/2"], "q": "1/3", "p0": ["1"], "m": [1, 2]}


def write(tmp_path, data, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def report(capsys):
    return json.loads(capsys.readouterr().out)


def test_period_legendre(tmp_path, capsys):
    assert main(["period", "--config", write(tmp_path, LEG)]) == 0
    r = report(capsys)
    assert r["results"]["hodge_type"] == 0
    assert r["results"]["duality"]["sine_factor_exact"] == "1/3"
    assert r["results"]["duality"]["residual_abs"] < 1e-20
    assert r["precision_bits"] == 256 and len(r["config_sha256"]) == 64


def test_reports_are_byte_identical(tmp_path):
    cfg = write(tmp_path, dict(LEG, quadrature=False))
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        assert main(["period", "--config", cfg, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_precision_changes_hash(tmp_path, capsys):
    cfg = write(tmp_path, dict(LEG, quadrature=False))
    main(["period", "--config", cfg])
    a = report(capsys)
    main(["period", "--config", cfg, "--precision", "128"])
    b = report(capsys)
    assert a["config_sha256"] != b["config_sha256"] and b["precision_bits"] == 128


def test_validate_resonant(tmp_path, capsys):
    cfg = write(tmp_path, {"alpha": ["0", "1/2"], "beta": ["1/2", "0"], "q": "1/3"})
    assert main(["validate", "--config", cfg]) == 1
    r = report(capsys)
    assert {v["label"] for v in r["results"]["validation"]["violations"]} == {"alpha1+beta2", "alpha2+beta1"}


@pytest.mark.parametrize(
    "bad",
    [
        {"alpha": ["0", "0"], "beta": ["1/2", "1/2"], "q": "1/3", "bogus": 1},
        {"alpha": [0.5, 0], "beta": ["1/2", "0"], "q": "1/3"},
        {"alpha": ["0", "0"], "beta": ["1/2", "1/2"], "q": "4/3"},
        {"alpha": ["0", "0"], "beta": ["1/2", "1/2"], "q": "1/3", "precision": 32},
        {"alpha": ["0", "0"], "beta": ["1/2", "1/2"], "q": "1/3", "tolerances": {"duality": -1}},
        {"alpha": ["0", "0"], "beta": ["1/2", "1/2"], "q": "1/3", "p1": ["1"]},
    ],
)
def test_config_errors(tmp_path, bad, capsys):
    assert main(["period", "--config", write(tmp_path, bad)]) == 2
    assert "config error" in capsys.readouterr().err


def test_missing_config(capsys):
    assert main(["period"]) == 2
    assert main(["period", "--config", "/nonexistent.json"]) == 2


def test_verify_builtin(tmp_path, capsys):
    out = tmp_path / "v.csv"
    assert main(["verify", "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("config_sha256,precision_bits,suite,case,residual")
    suites = {ln.split(",")[2] for ln in lines[1:]}
    assert {"q-step", "bailey", "three-term-x/a-shift", "duality", "kn_reduce"} <= suites


def test_regulator_and_orbit_and_monodromy(tmp_path, capsys):
    cfg = write(tmp_path, {"alpha": ["0", "1/3"], "beta": ["1/3", "1/3"], "q": "1/5", "p0": ["1", "1"], "p1": ["-1", "1"], "m": 1})
    assert main(["regulator", "--config", cfg]) == 0
    r = report(capsys)
    row = r["results"]["decompositions"][0]
    assert row["certificate"]["coeff_3f2_nonzero"] is True
    assert main(["orbit", "--config", cfg]) == 0
    assert report(capsys)["results"]["size"] == 8
    assert main(["monodromy", "--config", cfg, "--format", "csv"]) == 0
    assert "product_identity" in capsys.readouterr().out


def test_tight_tolerance_fails(tmp_path, capsys):
    cfg = write(tmp_path, dict(LEG, tolerances={"duality": 1e-300}, quadrature=False))
    assert main(["period", "--config", cfg]) == 1


def test_module_error_is_reported(tmp_path, capsys):
    # q + alpha hits an integer after validation passes only for validate
    cfg = parse_config({"alpha": ["0", "1/3"], "beta": ["1/3", "1/3"], "q": "2/3"}, "period")
    status, rep = run(cfg)
    assert status == 1 and not rep.as_dict()["results"]["validation"]["integrality_ok"]


def test_parse_config_direct():
    cfg = parse_config({"command": "period", **LEG})
    assert cfg.m_range == (1, 2) and cfg.precision == 256
    with pytest.raises(ConfigError):
        parse_config({"alpha": ["0", "0"]})
