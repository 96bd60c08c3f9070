import csv
import io
import json
import os
from fractions import Fraction

import pytest

from umbra import cli, verify
from umbra.cli import RunConfig, UsageError, build_parser, main, parse_range, resolve_config

F = Fraction


def run_cli(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


# --- configuration --------------------------------------------------------

def test_run_config_round_trip():
    cfg = RunConfig(command="toda", a=0.25, n="-3:3", strict_domain=True, format="json", output="x.json")
    assert RunConfig.from_json(cfg.to_json()) == cfg
    assert RunConfig.from_dict(RunConfig().to_dict()) == RunConfig()


def test_run_config_rejects_unknown_keys_and_values():
    with pytest.raises(UsageError):
        RunConfig.from_dict({"bogus": 1})
    with pytest.raises(UsageError):
        RunConfig(command="plot").validate()
    with pytest.raises(UsageError):
        RunConfig(format="xml").validate()
    with pytest.raises(UsageError):
        RunConfig(tol_profile="sloppy").validate()


def test_config_values_accept_fractions():
    assert RunConfig.from_dict({"a": "1/4"}).a == 0.25


def test_precedence(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"a": 0.25, "kappa": 3, "tol_profile": "loose"}))
    args = build_parser().parse_args(["eval", "--config", str(path), "--a", "0.5"])
    cfg = resolve_config(args, environ={"UMBRA_TOL_PROFILE": "strict"})
    assert cfg.a == 0.5          # flag beats file
    assert cfg.kappa == 3.0      # file beats default
    assert cfg.tol_profile == "loose"  # file beats environment
    assert cfg.mu == 0.5         # default


def test_environment_profile(monkeypatch):
    monkeypatch.setenv("UMBRA_TOL_PROFILE", "strict")
    assert resolve_config(build_parser().parse_args(["verify"])).tol_profile == "strict"
    cfg = resolve_config(build_parser().parse_args(["verify", "--tol-profile", "loose"]))
    assert cfg.tol_profile == "loose"


def test_parse_range():
    assert parse_range("0:2", F(1, 2)) == [0, F(1, 2), 1, F(3, 2), 2]
    assert parse_range("0:1:5") == [0, F(1, 4), F(1, 2), F(3, 4), 1]
    assert parse_range("-1:1") == [-1, 0, 1]
    assert parse_range("3/2") == [F(3, 2)]
    assert parse_range("0:0.3", 0.1) == [0, F(1, 10), F(2, 10), F(3, 10)]
    assert len(parse_range("0:1", 0.1)) == 11
    for bad in ("0:x", "1:2:0", "1:2:3:4"):
        with pytest.raises(UsageError):
            parse_range(bad)


# --- exit codes and error records -----------------------------------------

def test_eval_um_airy_both_columns(capsys):
    status, out, _ = run_cli(capsys, "eval", "--family", "um-airy", "--a", "0.5", "--x", "0:6", "--method", "both")
    assert status == 0
    assert out.splitlines()[0] == "x,quadrature,series,abs_diff"
    rows = read_csv(out)
    assert len(rows) == 13
    assert max(float(r["abs_diff"]) for r in rows) < 1e-6


def test_csv_cells_carry_17_digits(capsys):
    status, out, _ = run_cli(capsys, "eval", "--family", "umbral-exp", "--a", "1/3", "--x", "0:1", "--lam", "0.7")
    assert status == 0
    rows = read_csv(out)
    cell = rows[1]["value"]
    mantissa = cell.split("e")[0].replace("-", "").replace(".", "").lstrip("0")
    assert len(mantissa) == 17
    assert float(cell) == (1 + 0.7 / 3) ** 1.0


def test_numerical_failure_exit_one(capsys):
    status, out, err = run_cli(capsys, "eval", "--family", "um-airy", "--a", "0.5", "--x", "0.3", "--method", "series")
    assert status == 1 and out == ""
    rec = json.loads(err)
    assert rec["schema"] == "umbra/1" and rec["error"] == "numerical" and rec["type"] == "DomainError"
    assert rec["command"] == "eval"


def test_usage_error_exit_two(capsys):
    status, _, err = run_cli(capsys, "eval", "--x", "0:q")
    assert status == 2
    assert json.loads(err)["error"] == "usage"
    with pytest.raises(SystemExit) as info:
        main(["eval", "--no-such-flag"])
    assert info.value.code == 2
    capsys.readouterr()


def test_bad_config_file_is_usage_error(capsys, tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text("[1, 2]")
    status, _, err = run_cli(capsys, "eval", "--config", str(path))
    assert status == 2 and json.loads(err)["error"] == "usage"
    status, _, _ = run_cli(capsys, "eval", "--config", str(tmp_path / "missing.json"))
    assert status == 2


def test_verify_passes(capsys):
    status, out, _ = run_cli(capsys, "verify", "--suite", "all", "--format", "json")
    assert status == 0
    doc = json.loads(out)
    assert doc["schema"] == "umbra/1" and doc["failed"] == []
    assert [r["suite"] for r in doc["rows"]] == list(verify.SUITES)


def test_verify_failure_exit_one(capsys, monkeypatch):
    monkeypatch.setitem(verify.TOLERANCE_PROFILES["default"], "whittaker_half", 0.0)
    status, _, err = run_cli(capsys, "verify", "--suite", "whittaker_half")
    assert status == 1
    rec = json.loads(err.strip().splitlines()[-1])
    assert rec["suite"] == "whittaker_half" and rec["passed"] is False


# --- commands -------------------------------------------------------------

def test_toda_negative_range_and_domain(capsys):
    status, out, _ = run_cli(capsys, "toda", "--n", "-2:2", "--m", "0:1", "--format", "json")
    assert status == 0
    doc = json.loads(out)
    assert [(r["n"], r["m"]) for r in doc["rows"]][:5] == [(-2, 0), (-1, 0), (0, 0), (1, 0), (2, 0)]
    assert [r["continued"] for r in doc["rows"][:5]] == [True, True, True, False, False]
    assert doc["gamma"] == pytest.approx(1.0421906109874948)
    status, _, err = run_cli(capsys, "toda", "--n", "-2:2", "--strict-domain")
    assert status == 1 and json.loads(err)["type"] == "DomainError"


def test_toda_soliton_values(capsys):
    status, out, _ = run_cli(capsys, "toda", "--n", "1:2", "--m", "0:4", "--format", "json")
    assert status == 0
    rows = {(r["n"], r["m"]): r for r in json.loads(out)["rows"]}
    assert rows[(1, 4)]["Q"] == pytest.approx(1.369454494300022478, rel=1e-13)
    assert rows[(2, 0)]["Q"] == rows[(2, 0)]["q"]


def test_toda_interpolated_curve(capsys):
    status, out, _ = run_cli(capsys, "toda", "--n", "0:2", "--m", "0", "--interp", "4", "--format", "json")
    assert status == 0
    curve = json.loads(out)["interpolated"]
    assert len(curve) == 9 and curve[1]["x"] == 0.25


def test_output_is_atomic_and_deterministic(capsys, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        status, out, _ = run_cli(capsys, "toda", "--m", "0:4", "--n", "-5:5", "--a", "1",
                                 "--format", "json", "--output", str(path))
        assert status == 0 and out == ""
    assert first.read_bytes() == second.read_bytes()
    assert sorted(os.listdir(tmp_path)) == ["a.json", "b.json"]
    doc = json.loads(first.read_text())
    assert "output" not in doc["config"] and doc["meta"] == {"version": cli.__version__}


def test_map_command_exact(capsys):
    status, out, _ = run_cli(capsys, "map", "--numer", "1/3", "--denom", "5/2", "--a", "1/4",
                             "--x", "0:1", "--exact", "--format", "json")
    assert status == 0
    rows = json.loads(out)["rows"]
    assert rows[0]["value"] == 1.0
    assert rows[1]["mapped"].startswith("2F1(1/3, -1")
    assert rows[1]["class"] == "terminating(N=1)"


def test_oscillator_command(capsys):
    status, out, _ = run_cli(capsys, "oscillator", "--a", "1", "--x0", "1", "--p0", "0", "--steps", "8", "--exact")
    assert status == 0
    rows = read_csv(out)
    assert (rows[-1]["X"], rows[-1]["P"]) == ("16", "0")
    assert len({r["energy"] for r in rows}) == 1


def test_wave_command(capsys):
    status, out, _ = run_cli(capsys, "wave", "--omega", "0.5", "--k", "0.5", "--a", "0.5", "--b", "0.5",
                             "--x", "0:1", "--t", "0:1", "--format", "json")
    assert status == 0
    doc = json.loads(out)
    assert doc["phase_velocity"]["arcsin"] == pytest.approx(1.0)
    assert doc["columns"] == ["x", "t", "F_re", "F_im"]
    assert len(doc["rows"]) == 9
    status, out, _ = run_cli(capsys, "wave", "--a", "2", "--b", "0.5", "--x", "0", "--t", "0", "--format", "json")
    assert status == 0
    assert "arcsin" in json.loads(out)["phase_velocity"]["arcsin"]


@pytest.mark.parametrize("family", cli.FAMILIES)
def test_every_family_evaluates(capsys, family):
    argv = ["eval", "--family", family, "--a", "0.5", "--x", "1:2", "--kappa", "0.3"]
    if family == "um-whittaker-m":
        argv += ["--mu", "0.7"]
    status, out, err = run_cli(capsys, *argv)
    assert status == 0, err
    assert len(read_csv(out)) == 3


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert capsys.readouterr().out.startswith("umbra ")
