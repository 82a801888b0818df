import numpy as np
import pytest

from invariant_burgers.cli import main


def test_run_writes_trajectory_and_summary(tmp_path, capsys):
    out = tmp_path / "traj.csv"
    code = main(["run", "--scheme", "lagrangian", "--n", "16",
                 "--t-final", "0.05", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "t,x,u"
    assert len(lines) == 1 + 2 * 16
    summary = capsys.readouterr().out
    assert "scheme=lagrangian" in summary and "linf=" in summary


def test_run_errors_out_report(tmp_path):
    out = tmp_path / "traj.csv"
    errors = tmp_path / "errors.csv"
    code = main(["run", "--n", "16", "--t-final", "0.05",
                 "--out", str(out), "--errors-out", str(errors)])
    assert code == 0
    assert errors.read_text().splitlines()[0] == "scheme,N,h,linf,rms"


def test_exact_subcommand(tmp_path):
    out = tmp_path / "exact.csv"
    code = main(["exact", "--n", "32", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "t,x,u"
    assert len(lines) == 33
    u = np.array([float(l.split(",")[2]) for l in lines[1:]])
    assert np.max(np.abs(u)) < 1.0  # decayed below the initial amplitude


def test_spacing_subcommand(tmp_path):
    out = tmp_path / "spacing.csv"
    code = main(["spacing", "--scheme", "eulerian-adaptive", "--n", "32",
                 "--t-final", "0.1", "--out", str(out)])
    assert code == 0
    assert out.read_text().splitlines()[0] == "x,dx"


def test_frames_subcommand(tmp_path, capsys):
    out = tmp_path / "frames.csv"
    code = main(["frames", "--scheme", "lagrangian", "--n", "16",
                 "--t-final", "0.05", "--eps3", "1.0", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "scheme,N,eps3,discrepancy"
    assert float(lines[1].split(",")[3]) <= 1e-10


def test_convergence_subcommand(tmp_path, capsys):
    out = tmp_path / "conv.csv"
    code = main(["convergence", "--scheme", "ftcs", "--n-min", "8",
                 "--n-max", "32", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "scheme,N,h,linf,order,rms"
    assert len(lines) == 4  # N = 8, 16, 32


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("scheme = lagrangian\nn = 16\nt-final = 0.05  # short\n")
    out = tmp_path / "t.csv"
    code = main(["run", "--config", str(cfg), "--n", "8", "--out", str(out)])
    assert code == 0
    summary = capsys.readouterr().out
    assert "scheme=lagrangian" in summary  # from the file
    assert "N=8" in summary  # flag wins over the file


def test_nonzero_exit_with_machine_readable_error(tmp_path, capsys):
    code = main(["run", "--scheme", "lagrangian", "--n", "16",
                 "--t-final", "4.0", "--dt-factor", "200.0",
                 "--out", str(tmp_path / "t.csv")])
    assert code == 1
    err = capsys.readouterr().err
    assert err.startswith("error kind=NodeCrossingError step=0")


def test_output_directory_env_override(tmp_path, capsys, monkeypatch):
    from invariant_burgers.cli import OUTDIR_ENV

    monkeypatch.setenv(OUTDIR_ENV, str(tmp_path))
    code = main(["run", "--n", "16", "--t-final", "0.05",
                 "--out", "nested.csv"])
    assert code == 0
    assert (tmp_path / "nested.csv").exists()
