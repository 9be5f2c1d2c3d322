import json
import subprocess
import sys

import pytest

from dynlab.cli import EXIT_CONFIG, run

FIG3 = ["--alpha", "0.1", "--beta", "0.95", "--gamma", "1.4", "--sigma", "1.1", "--tau", "0.5"]
FIG1 = ["--alpha", "0.1", "--beta", "0.6", "--gamma", "0.4", "--sigma", "1.1", "--tau", "0.2"]


def call(args, capsys):
    code = run(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_fig1(capsys):
    code, out, _ = call(["analyze", *FIG1], capsys)
    d = json.loads(out)
    assert code == 0 and d["n_fixed_points"] == 1 and d["stability"] == ["attracting"]


def test_analyze_fig3(capsys):
    code, out, _ = call(["analyze", *FIG3], capsys)
    d = json.loads(out)
    assert d["n_fixed_points"] == 3 and d["stability"][1] == "unstable"


def test_degenerate_exit_code(capsys):
    code, _, err = call(["analyze", "--alpha", "1", "--beta", "0", "--gamma", "1", "--sigma", "1",
                         "--tau", "0.5"], capsys)
    assert code == EXIT_CONFIG and json.loads(err)["error"] == "config"


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"alpha": 0.1, "beta": 0.95, "gamma": 1.4, "sigma": 1.1, "tau": 0.2}))
    _, out, _ = call(["analyze", "--config", str(cfg), "--tau", "0.5"], capsys)
    assert json.loads(out)["n_fixed_points"] == 3
    cfg.write_text(json.dumps({"alpha": 0.1, "bogus": 1}))
    code, _, err = call(["analyze", "--config", str(cfg)], capsys)
    assert code == EXIT_CONFIG and "bogus" in err


def test_simulate_writes_csv(tmp_path, capsys):
    out = tmp_path / "traj.csv"
    cob = tmp_path / "cob.csv"
    code, _, err = call(["simulate", *FIG3, "--x0", "0.5", "--out", str(out), "--cobweb", str(cob)], capsys)
    assert code == 0 and json.loads(err)["terminal"] == "converged"
    lines = out.read_text().splitlines()
    assert lines[0] == "step,x"
    assert cob.read_text().splitlines()[0] == "segment_index,x0,y0,x1,y1"
    assert b"\r" not in out.read_bytes()


def test_simulate_discrete_cycle(capsys):
    _, out, _ = call(["simulate", "--model", "discrete", "--p", "0.5", "--beta-thr", "0.5", "--case", "1",
                      "--lambda0", "0.3", "--format", "json"], capsys)
    assert json.loads(out)["terminal"] == "cycle"


def test_discrete_command(capsys):
    _, out, _ = call(["discrete", "--p", "0.5", "--beta-thr", "0.5", "--case", "2", "--lambda0", "0.6"], capsys)
    d = json.loads(out)
    assert d["lambda_star"] == 0.5 and abs(d["limit"] - 1.0) < 1e-8


def test_intervene_subsidy_one_shot(capsys):
    _, out, _ = call(["analyze", *FIG3], capsys)
    z1, z2 = json.loads(out)["points"][:2]
    mu0 = z1 + 0.01
    _, out, _ = call(["intervene", "subsidy", *FIG3, "--cost", repr(z2 - mu0), "--lam", "0.4",
                      "--rho", "0.5", "--mu0", repr(mu0)], capsys)
    d = json.loads(out)
    assert d["horizon_T"] == 1 and d["loss"] == pytest.approx(0.4 * (z2 - mu0))


def test_intervene_tau_same(capsys):
    _, out, _ = call(["intervene", "tau", *FIG3, "--tau-prime", "0.5"], capsys)
    assert json.loads(out)["differences"] == [0.0, 0.0, 0.0]
    _, out, _ = call(["intervene", "tau", *FIG1, "--tau-prime", "0.1"], capsys)
    assert json.loads(out)["comparable"] is False


def test_intervene_dp_and_others(capsys):
    code, out, _ = call(["intervene", "dp", *FIG3, "--lam", "0.7", "--rho", "0.3", "--mu0", "0.1",
                         "--wealth-grid", "5", "--cost-grid", "5", "--max-horizon", "5"], capsys)
    assert code == 0 and json.loads(out)["schedule"]
    code, out, _ = call(["intervene", "equivalence", *FIG3, "--cost", "0.1", "--x0", "0.5"], capsys)
    assert json.loads(out)["held"]
    code, out, _ = call(["intervene", "one-shot", *FIG3, "--lam", "0.5", "--rho", "0.9", "--mu0", "0.1"], capsys)
    assert json.loads(out)["consistent"]


def test_sweep_deterministic_and_contraction_filter(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    call(["sweep", "--grid", "4", "--out", str(a)], capsys)
    _, _, err = call(["sweep", "--grid", "4", "--out", str(b), "--workers", "2"], capsys)
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == "alpha,beta,gamma,sigma,tau,n_fixed_points,K,contraction"
    assert "fraction_three_fp" in err
    _, _, err = call(["sweep", "--grid", "4", "--filter", "contraction", "--out", str(a)], capsys)
    assert json.loads(err)["fraction_three_fp"] == 0.0


def test_oracle(capsys):
    _, out, _ = call(["oracle", *FIG1, "--mu", "0.2", "--n", "200000", "--seed", "4"], capsys)
    d = json.loads(out)
    assert d["within_3se"] and d["seed"] == 4


def test_bad_value_and_missing(capsys):
    code, _, _ = call(["analyze", "--alpha", "abc"], capsys)
    assert code == EXIT_CONFIG
    code, _, err = call(["analyze", "--alpha", "0.1"], capsys)
    assert code == EXIT_CONFIG and "beta" in err


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "dynlab.cli", "analyze", *FIG1], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["n_fixed_points"] == 1
