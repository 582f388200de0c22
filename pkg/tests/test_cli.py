import json
import math

import pytest

from sae_radial import cli
from sae_radial.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_two_branch(capsys):
    code, out, _ = run_cli(capsys, "classify", "--m", "0.5", "--l", "0", "--v0", "0.21")
    assert code == 0
    report = json.loads(out)
    assert report["analysis"]["regime"] == "TWO_BRANCH"
    assert report["analysis"]["p"] == pytest.approx(0.2)


def test_classify_deterministic_output(capsys):
    argv = ("classify", "--m", "0.5", "--l", "0", "--v0", "0.21")
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2


def test_spectrum_standard_levels(capsys):
    code, out, _ = run_cli(
        capsys,
        "spectrum", "--m", "1", "--l", "0", "--v0", "0.09375",
        "--coulomb", "-1", "--theta", "0", "--count", "3",
    )
    assert code == 0
    report = json.loads(out)
    energies = [s["energy"] for s in report["spectrum"]["states"]]
    assert energies[0] == pytest.approx(-1.0 / (2 * 0.75**2), rel=1e-12)
    assert all(s["branch"] == "standard" for s in report["spectrum"]["states"])


def test_spectrum_inverse_square_tau_literal(capsys):
    code, out, _ = run_cli(
        capsys, "spectrum", "--m", "1", "--l", "0", "--v0", "0.09375", "--tau", "-1",
    )
    report = json.loads(out)
    assert report["spectrum"]["states"][0]["energy"] == pytest.approx(
        -0.59865849368657614, rel=1e-12
    )
    code, out, _ = run_cli(
        capsys, "spectrum", "--m", "1", "--l", "0", "--v0", "0.09375", "--tau", "inf",
    )
    assert json.loads(out)["spectrum"]["states"] == []


def test_spectrum_fall_regime(capsys):
    code, out, _ = run_cli(
        capsys,
        "spectrum", "--m", "0.5", "--l", "0", "--v0", "1.25",
        "--fall-c", "0", "--n-min", "0", "--n-max", "2",
    )
    assert code == 0
    report = json.loads(out)
    assert report["analysis"]["regime"] == "FALL_TO_CENTER"
    assert report["spectrum"]["states"][0]["energy"] == pytest.approx(
        -math.exp(-math.pi), rel=1e-12
    )
    assert report["spectrum"]["states"][0]["tower_n"] == 0


def test_oracle_verify_passes(capsys):
    code, out, _ = run_cli(
        capsys,
        "oracle-verify", "--m", "1", "--l", "0", "--v0", "0.09375",
        "--coulomb", "-1", "--theta", "0", "--count", "2",
        "--points-per-decade", "1000",
    )
    assert code == 0
    report = json.loads(out)
    assert all(v["rel_deviation"] < 1e-6 for v in report["verification"])


def test_oracle_verify_tolerance_failure_exit_code(capsys):
    code, out, _ = run_cli(
        capsys,
        "oracle-verify", "--m", "1", "--l", "0", "--v0", "0.09375",
        "--coulomb", "-1", "--theta", "0", "--count", "1",
        "--tol", "1e-18", "--points-per-decade", "1000",
    )
    assert code == 3


def test_verification_roundtrip(capsys):
    # the emitted report re-checks to the same verdicts
    code, out, _ = run_cli(
        capsys,
        "oracle-verify", "--m", "1", "--l", "0", "--v0", "0.09375",
        "--coulomb", "-1", "--theta", "0", "--count", "2",
        "--points-per-decade", "1000",
    )
    report = json.loads(out)
    tol = report["config"]["tolerance"]
    verdicts = [v["rel_deviation"] <= tol for v in report["verification"]]
    assert (code == 0) == all(verdicts)


def test_sweep_csv(capsys):
    code, out, _ = run_cli(
        capsys,
        "sweep", "--m", "1", "--l", "0", "--v0", "0.09375",
        "--sweep-param", "tau", "--sweep-min", "-4", "--sweep-max", "-0.25",
        "--sweep-count", "5", "--sweep-scale", "geometric",
        "--format", "csv", "--count", "1",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "param,value,n_levels,e0"
    assert len(lines) == 6
    from sae_radial import RadialProblem, SAEParameter, inverse_square_level

    problem = RadialProblem(m=1.0, l=0, v0=0.09375)
    for row in lines[1:]:
        _, value, n_levels, e0 = row.split(",")
        expected = inverse_square_level(problem, SAEParameter.from_tau(float(value)))
        assert int(n_levels) == 1
        assert float(e0) == pytest.approx(expected.energy, rel=1e-15)


def test_sweep_geometric_requires_same_sign(capsys):
    code, _, err = run_cli(
        capsys,
        "sweep", "--m", "1", "--l", "0", "--v0", "0.09375",
        "--sweep-param", "tau", "--sweep-min", "-1", "--sweep-max", "1",
        "--sweep-count", "4", "--sweep-scale", "geometric",
    )
    assert code == 1
    assert "usage error" in err


def test_sweep_unknown_parameter(capsys):
    code, _, err = run_cli(
        capsys,
        "sweep", "--m", "1", "--l", "0", "--v0", "0.09375",
        "--sweep-param", "bogus", "--sweep-min", "0", "--sweep-max", "1",
        "--sweep-count", "3",
    )
    assert code == 1


def test_specfun_eval(capsys):
    code, out, _ = run_cli(capsys, "specfun-eval", "--fn", "gamma", "0.5")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(math.sqrt(math.pi), rel=1e-13)


def test_specfun_eval_unknown_function(capsys):
    code, _, err = run_cli(capsys, "specfun-eval", "--fn", "zeta", "2.0")
    assert code == 1


def test_config_file_defaults_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("m = 0.5\nl = 0\nv0 = 0.21\n# comment line\n")
    code, out, _ = run_cli(capsys, "classify", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["analysis"]["p"] == pytest.approx(0.2)
    # explicit flag wins over the config value
    code, out, _ = run_cli(capsys, "classify", "--config", str(cfg), "--v0", "0.0")
    assert json.loads(out)["analysis"]["regime"] == "STANDARD_ONLY"


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("velocity = 3\n")
    code, _, err = run_cli(capsys, "classify", "--config", str(cfg))
    assert code == 1


def test_regime_error_exit_code(capsys):
    # additional branch requested outside its window
    code, _, err = run_cli(
        capsys,
        "spectrum", "--m", "1", "--l", "0", "--v0", "-0.5",
        "--coulomb", "-1", "--tau", "inf",
    )
    assert code == 2


def test_output_file_respects_env_dir(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.OUTDIR_ENV, str(tmp_path))
    code, out, _ = run_cli(
        capsys, "classify", "--m", "1", "--l", "0", "--v0", "0.1", "--out", "report.json",
    )
    assert code == 0
    assert out == ""
    written = (tmp_path / "report.json").read_text()
    assert json.loads(written)["analysis"]["regime"] == "TWO_BRANCH"


def test_run_config_entry_point(capsys):
    from sae_radial.cli import RunConfig, run

    code = run(RunConfig(command="classify", m=0.5, l=0, v0=0.21))
    assert code == 0
    assert json.loads(capsys.readouterr().out)["analysis"]["regime"] == "TWO_BRANCH"


def test_run_config_validation():
    from sae_radial.cli import RunConfig, _UsageError

    with pytest.raises(_UsageError):
        RunConfig(command="explode")
    with pytest.raises(_UsageError):
        RunConfig(command="spectrum", tau="-1", theta=0.2)
    with pytest.raises(_UsageError):
        RunConfig(command="sweep", sweep_param="tau", sweep_count=1)


def test_json_floats_have_full_precision(capsys):
    _, out, _ = run_cli(
        capsys, "spectrum", "--m", "1", "--l", "0", "--v0", "0.09375", "--tau", "-1",
    )
    # 17 significant digits survive the round trip exactly
    value = json.loads(out)["spectrum"]["states"][0]["energy"]
    assert "0.59865849368657" in out
    assert value == json.loads(cli.dump_json({"x": value}))["x"]