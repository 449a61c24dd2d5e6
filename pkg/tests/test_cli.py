import numpy as np
import pytest

from dikinwalk import cli, polytope


def run_cli(*argv):
    return cli.main(list(argv))


def test_gen_interval_text(capsys):
    assert run_cli("gen", "--spec", "cube:1") == 0
    out = capsys.readouterr().out
    assert out == "2 1\n1.0 0.0\n-1.0 -1.0\n"


def test_gen_round_trip(tmp_path):
    first = tmp_path / "p.txt"
    second = tmp_path / "q.txt"
    assert run_cli("gen", "--spec", "random:8,2,7", "--out", str(first)) == 0
    body = polytope.parse(first.read_text())
    second.write_text(polytope.to_text(body))
    assert first.read_text() == second.read_text()


def test_gen_bad_spec(capsys):
    assert run_cli("gen", "--spec", "cube:0") == 2
    assert run_cli("gen", "--spec", "pyramid:3") == 2


def test_center_cube(capsys):
    assert run_cli("center", "--gen", "cube:2") == 0
    values = [float(line) for line in capsys.readouterr().out.split()]
    assert np.allclose(values, 0.5, atol=1e-6)


def test_center_simplex(capsys):
    assert run_cli("center", "--gen", "simplex:2") == 0
    values = [float(line) for line in capsys.readouterr().out.split()]
    assert np.allclose(values, 1.0 / 3.0, atol=1e-6)


def test_center_boundary_start(capsys):
    assert run_cli("center", "--gen", "cube:2", "--start", "0,0.5") == 2


def test_center_from_file(tmp_path, capsys):
    path = tmp_path / "p.txt"
    assert run_cli("gen", "--spec", "random:8,2,7", "--out", str(path)) == 0
    capsys.readouterr()
    assert run_cli("center", "--polytope", str(path), "--start", "0,0") == 0


def test_sample_row_count_and_determinism(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    flags = ["sample", "--gen", "cube:2", "--steps", "3000", "--burnin", "500",
             "--thin", "10", "--radius", "0.3", "--seed", "1"]
    assert run_cli(*flags, "--out", str(out1)) == 0
    assert run_cli(*flags, "--out", str(out2)) == 0
    lines = out1.read_text().splitlines()
    assert lines[0] == "x1,x2"
    assert len(lines) == 1 + (3000 - 500) // 10
    assert out1.read_bytes() == out2.read_bytes()


def test_sample_csv_precision(tmp_path):
    out = tmp_path / "s.csv"
    assert run_cli("sample", "--gen", "cube:2", "--steps", "200",
                   "--radius", "0.3", "--seed", "3", "--out", str(out)) == 0
    row = out.read_text().splitlines()[1].split(",")
    # 15 significant digits survive the round trip
    for token in row:
        assert float(token) == float(format(float(token), ".15g"))


def test_sample_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n1 2\n0 1 0\n")
    assert run_cli("sample", "--polytope", str(bad), "--out",
                   str(tmp_path / "s.csv")) == 2
    assert "line 2" in capsys.readouterr().err


def test_sample_missing_file(tmp_path, capsys):
    assert run_cli("sample", "--polytope", str(tmp_path / "nope.txt")) == 2


def test_sample_epsilon_routes_through_formula(tmp_path):
    out = tmp_path / "s.csv"
    stats = tmp_path / "stats.txt"
    assert run_cli("sample", "--gen", "cube:2", "--steps", "500",
                   "--epsilon", "0.5", "--seed", "1",
                   "--out", str(out), "--stats", str(stats)) == 0
    fields = dict(line.split(": ", 1) for line in stats.read_text().splitlines())
    assert float(fields["radius"]) == pytest.approx(8.523e-5, rel=1e-3)
    assert float(fields["epsilon"]) == 0.5
    assert int(fields["steps"]) == 500


def test_sample_epsilon_and_radius_conflict(capsys):
    assert run_cli("sample", "--gen", "cube:2", "--radius", "0.3",
                   "--epsilon", "0.5") == 2


def test_sample_epsilon_out_of_range(tmp_path):
    assert run_cli("sample", "--gen", "cube:2", "--epsilon", "0.9",
                   "--out", str(tmp_path / "s.csv")) == 2


def test_sample_stats_counters_consistent(tmp_path):
    stats = tmp_path / "stats.txt"
    assert run_cli("sample", "--gen", "cube:2", "--steps", "2000",
                   "--radius", "0.3", "--seed", "5",
                   "--out", str(tmp_path / "s.csv"), "--stats", str(stats)) == 0
    fields = dict(line.split(": ", 1) for line in stats.read_text().splitlines())
    assert int(fields["steps"]) == 2000
    assert int(fields["steps"]) == int(fields["lazy_stays"]) + int(fields["proposals"])
    assert int(fields["proposals"]) == (int(fields["accepted"])
                                        + int(fields["rejected_outside"])
                                        + int(fields["rejected_metropolis"]))


def test_sample_multiple_chains(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    flags = ["sample", "--gen", "cube:2", "--steps", "1000", "--thin", "10",
             "--radius", "0.3", "--seed", "2", "--chains", "3"]
    assert run_cli(*flags, "--out", str(out1)) == 0
    assert run_cli(*flags, "--out", str(out2)) == 0
    lines = out1.read_text().splitlines()
    assert len(lines) == 1 + 3 * (1000 // 10)
    assert out1.read_bytes() == out2.read_bytes()


def test_sample_env_seed_fallback(tmp_path, monkeypatch):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    monkeypatch.setenv("DIKIN_SEED", "99")
    assert run_cli("sample", "--gen", "cube:2", "--steps", "500",
                   "--radius", "0.3", "--out", str(out1)) == 0
    monkeypatch.delenv("DIKIN_SEED")
    assert run_cli("sample", "--gen", "cube:2", "--steps", "500",
                   "--radius", "0.3", "--seed", "99", "--out", str(out2)) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_single_check(capsys):
    assert run_cli("verify", "--checks", "isserlis", "--seed", "1") == 0
    lines = [line for line in capsys.readouterr().out.splitlines() if line]
    assert len(lines) == 1
    assert lines[0].startswith("isserlis")
    assert lines[0].endswith("PASS")


def test_verify_unknown_check(capsys):
    assert run_cli("verify", "--checks", "nonsense", "--seed", "1") == 2


def test_verify_epsilon_out_of_range(capsys):
    assert run_cli("verify", "--epsilon", "0.9") == 2


def test_verify_deterministic_output(capsys):
    flags = ["verify", "--seed", "1", "--samples", "5000",
             "--checks", "rejection,logdet_change,radius_conditions,isserlis"]
    assert run_cli(*flags) == 0
    first = capsys.readouterr().out
    assert run_cli(*flags) == 0
    second = capsys.readouterr().out
    assert first == second
    assert len(first.splitlines()) == 4


def test_usage_errors_exit_2():
    assert run_cli("sample") == 2          # missing polytope source
    assert run_cli("bogus") == 2           # unknown subcommand
    assert run_cli("sample", "--gen", "cube:2", "--steps", "10",
                   "--burnin", "50") == 2  # steps < burnin
