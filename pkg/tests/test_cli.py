import json

import numpy as np
import pytest

from jacobi_moments import cli
from jacobi_moments.ensemble import read_samples_csv


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sample_sp(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sample", "--group", "sp", "--n", "5", "--reps", "3", "--seed", "1", "--out", str(out))
    assert code == 0
    rows = read_samples_csv(out)
    assert rows.shape == (3, 5)
    assert np.all(np.diff(rows, axis=1) > 0)


def test_sample_is_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        run(capsys, "sample", "--a", "1.5", "--b", "0.5", "--n", "4", "--reps", "10", "--seed", "9", "--out", str(p))
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert "a=1.5 b=0.5" in paths[0].read_text().splitlines()[0]


def test_sample_errors(tmp_path, capsys):
    code, _, err = run(capsys, "sample", "--n", "4", "--out", str(tmp_path / "x.csv"))
    assert code == 2 and "missing" in err
    code, _, _ = run(capsys, "sample", "--group", "sp", "--a", "1", "--n", "4", "--out", str(tmp_path / "x.csv"))
    assert code == 2
    code, _, err = run(capsys, "sample", "--group", "sp", "--n", "4", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 1 and "I/O" in err
    code, _, _ = run(capsys, "sample", "--bogus")
    assert code == 2


def test_config_file_and_override(tmp_path, capsys):
    cfg = cli.ExperimentConfig("euler", {"s": 2.0, "prime_limit": 1000})
    path = tmp_path / "cfg.json"
    path.write_text(cfg.to_json())
    assert cli.ExperimentConfig.load(path) == cfg
    code, out, _ = run(capsys, "euler", "--config", str(path))
    assert code == 0 and json.loads(out)["s"] == 2.0
    code, out, _ = run(capsys, "euler", "--config", str(path), "--s", "1")
    assert json.loads(out) == {**json.loads(out), "s": 1.0, "prime_limit": 1000}
    path.write_text(json.dumps({"command": "sample", "params": {}}))
    assert run(capsys, "euler", "--config", str(path))[0] == 2
    path.write_text(json.dumps({"command": "euler", "params": {"zeta": 1}}))
    assert run(capsys, "euler", "--config", str(path))[0] == 2


def test_report_l0(tmp_path, capsys):
    out = tmp_path / "r.csv"
    code, stdout, _ = run(capsys, "report", "--claim", "L0_SP", "--grid", "100,2000", "--set", "s=1", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "claim,N,value,normalized,target,gap"
    assert float(lines[1].split(",")[4]) == pytest.approx(2**-0.5)
    assert stdout.startswith("FAIL L0_SP") or stdout.startswith("PASS L0_SP")


def test_report_sn_target(tmp_path, capsys):
    out = tmp_path / "r.json"
    run(capsys, "report", "--claim", "SN_OVER_NLOGN", "--grid", "50,100", "--format", "json", "--out", str(out))
    payload = json.loads(out.read_text())
    assert all(r["target"] == pytest.approx(2 / np.pi) for r in payload["rows"])


def test_report_euler(capsys):
    code, out, err = run(capsys, "report", "--claim", "EULER_AS", "--grid", "10000,100000", "--set", "s=1")
    assert code == 0
    assert out.splitlines()[0] == "claim,prime_limit,log_a_s,a_s,tail_bound"
    assert err.startswith("PASS EULER_AS")


def test_report_bad_setting(capsys):
    assert run(capsys, "report", "--claim", "Z_MOMENTS", "--grid", "20", "--set", "method=guess")[0] == 2


def test_moments_command(capsys):
    code, out, _ = run(capsys, "moments", "--a", "1.5", "--b", "0.5", "--n", "10", "--h", "1")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx((10 + 2) / (1.5 * 10))
    code, out, _ = run(capsys, "moments", "--a", "1.5", "--b", "0.5", "--n", "10", "--method", "mc", "--reps", "200", "--seed", "3")
    assert json.loads(out)["method"] == "MonteCarlo"
    code, _, err = run(capsys, "moments", "--a", "0.5", "--b", "0.5", "--n", "10", "--h", "2")
    assert code == 2 and "integrable" in err


def test_painleve_usage_error(capsys):
    assert run(capsys, "painleve", "--a", "1.5", "--t-max", "0")[0] == 2


def test_painleve_numeric_failure_exit_code(capsys, monkeypatch):
    from jacobi_moments import painleve

    def boom(*args, **kwargs):
        raise painleve.BranchFailure("discriminant negative")

    monkeypatch.setattr(painleve, "solve_sigma_p3", boom)
    code, _, err = run(capsys, "painleve", "--a", "1.5", "--init-mode", "SeriesFit", "--reps", "200")
    assert code == 3 and "numeric failure" in err
