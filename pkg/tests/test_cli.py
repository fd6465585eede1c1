import json

from click.testing import CliRunner

from thetatorus.cli import main

runner = CliRunner()


def test_theta_value():
    res = runner.invoke(main, ["theta", "--z", "0", "--tau", "i"])
    assert res.exit_code == 0
    assert "1.08643481121" in res.output


def test_theta_characteristics():
    res = runner.invoke(main, ["theta", "--a", "0", "--b", "0.5",
                               "--z", "0", "--tau", "i"])
    assert res.exit_code == 0
    assert "0.913579138156" in res.output


def test_theta_zero_within_tail():
    res = runner.invoke(main, ["theta", "--z", "0.5+0.5i", "--tau", "i",
                               "--format", "json"])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    val = complex(rep["value"]["re"], rep["value"]["im"])
    assert abs(val) <= rep["tail_bound"] + 1e-15


def test_theta_usage_errors():
    assert runner.invoke(main, ["theta", "--z", "x", "--tau", "i"]).exit_code == 2
    assert runner.invoke(main, ["theta", "--z", "0", "--tau", "-i"]).exit_code == 2
    assert runner.invoke(main, ["theta", "--z", "0", "--tau", "i",
                                "--a", "0.5"]).exit_code == 2


def test_verify_suites_pass():
    assert runner.invoke(main, ["verify", "classical"]).exit_code == 0
    assert runner.invoke(main, ["verify", "bracket", "--range", "2"]).exit_code == 0
    assert runner.invoke(main, ["verify", "theta3", "--q", "2",
                                "--samples", "5"]).exit_code == 0
    assert runner.invoke(main, ["verify", "partition"]).exit_code == 0


def test_verify_failure_exit_code():
    res = runner.invoke(main, ["verify", "classical", "--tol", "1e-30"])
    assert res.exit_code == 1
    assert "FAILURES" in res.output
    # failing identities are listed by name
    assert "modularity" in res.output or "transformation" in res.output


def test_verify_usage_errors():
    assert runner.invoke(main, ["verify", "nonsense"]).exit_code == 2
    assert runner.invoke(main, ["verify", "theta3", "--q", "3"]).exit_code == 2


def test_norm_table_csv():
    res = runner.invoke(main, ["norm-table", "--q", "2", "--q", "7",
                               "--format", "csv"])
    assert res.exit_code == 0
    lines = res.output.strip().split("\n")
    assert lines[0] == "q,norm,phi0-or-phi1,gap"
    row2 = lines[1].split(",")
    assert row2[0] == "2" and row2[1].startswith("2.82842")
    row7 = lines[2].split(",")
    assert row7[1].startswith("3.20330") and row7[2].startswith("3.19690")
    assert all(float(line.split(",")[3]) >= 0 for line in lines[1:])


def test_norm_table_deterministic():
    args = ["norm-table", "--q", "2", "--q", "3", "--format", "csv"]
    out1 = runner.invoke(main, args).output
    out2 = runner.invoke(main, args).output
    assert out1 == out2


def test_phi_curve_window_and_continuity():
    res = runner.invoke(main, ["phi-curve", "--points", "500", "--format", "csv"])
    assert res.exit_code == 0
    rows = [line.split(",") for line in res.output.strip().split("\n")[1:]]
    ys = [float(r[1]) for r in rows]
    assert all(2.7 <= y <= 4.0 for y in ys)
    assert max(abs(a - b) for a, b in zip(ys, ys[1:])) < 0.1
    # anchor phi0(0.5)
    assert abs(ys[-1] - 2.82842712475) < 1e-9


def test_phi_curve_odd_parity():
    res = runner.invoke(main, ["phi-curve", "--parity", "odd", "--points", "5",
                               "--format", "csv"])
    assert res.exit_code == 0
    assert runner.invoke(main, ["phi-curve", "--x-min", "0.7"]).exit_code == 2


def test_projection_report():
    res = runner.invoke(main, ["projection", "--q", "2"])
    assert res.exit_code == 0
    res = runner.invoke(main, ["projection", "--q", "5", "--format", "json"])
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert max(rep["worst"].values()) < 1e-9
    assert runner.invoke(main, ["projection", "--q", "1"]).exit_code == 2


def test_witness_command():
    from thetatorus import nctorus as nc
    from thetatorus.exprparse import parse_expr
    res = runner.invoke(main, ["witness", "--n", "3", "--m", "0"])
    assert res.exit_code == 0
    assert parse_expr(res.output.strip()) == nc.curly(3, 0)
    assert runner.invoke(main, ["witness", "--n", "-1", "--m", "0"]).exit_code == 2


def test_criterion_command():
    res = runner.invoke(main, ["criterion", "--p", "1", "--q", "2",
                               "--alpha", "0.6"])
    assert res.exit_code == 0
    assert "invertible-criterion-met" in res.output
    assert "0.2" in res.output
    res = runner.invoke(main, ["criterion", "--p", "2", "--q", "3",
                               "--alpha", "0.7", "--format", "json"])
    assert res.exit_code == 0
    assert json.loads(res.output)["verdict"] == "not-applicable"
    assert runner.invoke(main, ["criterion", "--p", "1", "--q", "1",
                                "--alpha", "0.6"]).exit_code == 2


def test_out_file(tmp_path):
    path = tmp_path / "table.csv"
    res = runner.invoke(main, ["norm-table", "--q", "2", "--format", "csv",
                               "--out", str(path)])
    assert res.exit_code == 0
    assert path.read_text().startswith("q,norm")
