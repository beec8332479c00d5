import math
import subprocess
import sys

import pytest

from xxzteleport.channel import InputState
from xxzteleport.cli import main
from xxzteleport.metrics import output_concurrence_closed
from xxzteleport.spin_model import ModelParams


def run(*args):
    return subprocess.run([sys.executable, "-m", "xxzteleport", *args],
                          capture_output=True, text=True)


def parse_kv(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


def test_point_reference(capsys):
    assert main(["point", "--J", "1", "--lambda", "1", "--B", "0", "--b", "0", "--T", "1",
                 "--theta", "0.785398"]) == 0
    kv = parse_kv(capsys.readouterr().out)
    assert float(kv["C_out"]) == pytest.approx(0.0673, abs=1e-4)
    assert float(kv["F"]) == pytest.approx(0.5336, abs=1e-4)
    assert float(kv["B_c"]) == 2.0
    assert kv["b_c"] == "NA"
    assert float(kv["T_max"]) == pytest.approx(1.0717, abs=1e-4)
    assert {"E1", "E2", "E3", "E4", "Z", "a1", "a2", "a3", "a4", "C_in", "margin"} <= kv.keys()


def test_point_ferromagnetic(capsys):
    assert main(["point", "--J", "-1", "--lambda", "1", "--B", "0", "--b", "0", "--T", "0.5",
                 "--theta", "0.785398"]) == 0
    kv = parse_kv(capsys.readouterr().out)
    assert float(kv["C_out"]) == 0.0
    assert kv["T_max"] == "NA" and kv["B_c"] == "NA"


def test_point_rejects_zero_coupling():
    res = run("point", "--J", "0", "--T", "1")
    assert res.returncode == 2
    assert "J = 0" in res.stderr


def test_bad_flag_is_usage_error():
    res = run("point", "--nope", "1")
    assert res.returncode == 2


def test_bad_theta_is_parameter_error(capsys):
    assert main(["point", "--theta", "2.0"]) == 2


def test_sweep_layout(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--x", "B:0:4:5", "--y", "T:0.1:1:3", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,y,C_in,C_out,F,Z,feasible"
    assert len(lines) == 1 + 15
    xs = [float(l.split(",")[0]) for l in lines[1:]]
    ys = [float(l.split(",")[1]) for l in lines[1:]]
    assert xs[:3] == [0.0, 0.0, 0.0] and ys[:3] == [0.1, 0.55, 1.0]
    assert lines[1].split(",")[0] == "0.000000000000e+00"
    assert out.read_bytes().endswith(b"\n") and b"\r" not in out.read_bytes()


def test_sweep_all_infeasible_rows_emitted(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--J", "-1", "--lambda", "1", "--b", "0",
                 "--x", "B:0:1:2", "--y", "T:0.1:1:2", "--out", str(out)]) == 0
    rows = [l.split(",") for l in out.read_text().splitlines()[1:]]
    assert len(rows) == 4
    assert all(float(r[3]) == 0.0 and r[6] == "0" for r in rows)


def test_sweep_invalid_grid():
    assert main(["sweep", "--x", "T:0:1:3", "--y", "B:0:1:2"]) == 2
    assert main(["sweep", "--x", "B:0:1:1", "--y", "T:0.1:1:2"]) == 2
    assert main(["sweep", "--x", "B:0:1:3", "--y", "B:0:1:2"]) == 2
    assert main(["sweep", "--x", "Q:0:1:3", "--y", "B:0:1:2"]) == 2


def test_sweep_unwritable_path(tmp_path):
    res = run("sweep", "--x", "B:0:1:2", "--y", "T:0.1:1:2", "--out", str(tmp_path / "no" / "x.csv"))
    assert res.returncode == 3


def test_sweep_csv_round_trip(tmp_path):
    out = tmp_path / "s.csv"
    fixed = dict(J=0.8, lam=1.3, b=0.4, theta=0.6)
    assert main(["sweep", "--J", "0.8", "--lambda", "1.3", "--b", "0.4", "--theta", "0.6",
                 "--x", "B:-2:3:7", "--y", "T:0.05:3:6", "--out", str(out)]) == 0
    for line in out.read_text().splitlines()[1:]:
        x, y, c_in, c_out = (float(v) for v in line.split(",")[:4])
        p = ModelParams(fixed["J"], fixed["lam"], x, fixed["b"], y)
        assert c_out == pytest.approx(output_concurrence_closed(p, InputState(fixed["theta"])), abs=1e-12)


def test_sweep_theta_axis(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--x", "theta:0:1.5707963267948966:3", "--y", "b:0:2:2",
                 "--out", str(out)]) == 0
    rows = [l.split(",") for l in out.read_text().splitlines()[1:]]
    assert float(rows[2][2]) == pytest.approx(1.0)


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sample\nJ = -1\nlambda=1\nT=0.5\ntheta=0.785398\n")
    assert main(["point", "--config", str(cfg)]) == 0
    assert float(parse_kv(capsys.readouterr().out)["C_out"]) == 0.0
    assert main(["point", "--config", str(cfg), "--J", "1", "--T", "1"]) == 0
    assert float(parse_kv(capsys.readouterr().out)["C_out"]) == pytest.approx(0.0673, abs=1e-4)
    bad = tmp_path / "bad.cfg"
    bad.write_text("J 1\n")
    assert main(["point", "--config", str(bad)]) == 2
    assert main(["point", "--config", str(tmp_path / "missing.cfg")]) == 3


def test_critical_b_grid(capsys):
    assert main(["critical", "--J", "1", "--lambda", "1", "--b-grid", "0,1,2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "param,B_c,b_c,T_max"
    b_c = [float(l.split(",")[1]) for l in lines[1:]]
    assert b_c == pytest.approx([2, 1 + math.sqrt(2), 1 + math.sqrt(5)], abs=1e-11)
    assert float(lines[1].split(",")[3]) == pytest.approx(1.0717, abs=1e-4)


def test_critical_infeasible(capsys):
    assert main(["critical", "--J", "-1", "--lambda", "1", "--b", "0"]) == 0
    row = capsys.readouterr().out.splitlines()[1].split(",")
    assert row[1] == "NA" and row[3] == "NA"


def test_critical_B_grid(capsys):
    assert main(["critical", "--J", "-1", "--lambda", "2", "--B-grid", "0,1"]) == 0
    rows = [l.split(",") for l in capsys.readouterr().out.splitlines()[1:]]
    assert float(rows[0][2]) == pytest.approx(math.sqrt(3))
    assert main(["critical", "--B-grid", "0", "--b-grid", "0"]) == 2


def test_verify_default_passes():
    res = run("verify")
    assert res.returncode == 0, res.stdout
    assert res.stdout.count("PASS") == 5


def test_verify_other_seed(capsys):
    assert main(["verify", "--points", "50", "--seed", "7"]) == 0


def test_verify_detects_corruption(capsys):
    assert main(["verify", "--points", "10", "--corrupt", "1e-6"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "worst point" in out
