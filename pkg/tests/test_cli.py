import json
import math

import numpy as np
import pytest

from lmgbrain.cli import main, read_csv_columns

FAST_CONFIG = {
    "N": 4,
    "gamma": 0.8,
    "g0": 1.0,
    "tau_r": 1.0,
    "t_max": 20.0,
    "initial": {"count": 1},
}


def write_config(tmp_path, data, name="config.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return p


def run_simulate(tmp_path, data, out_name="traj.csv"):
    cfg = write_config(tmp_path, data)
    out = tmp_path / out_name
    rc = main(["simulate", str(cfg), "--out", str(out)])
    return rc, out


def test_simulate_schema_and_manifest(tmp_path):
    rc, out = run_simulate(tmp_path, FAST_CONFIG)
    assert rc == 0
    header = out.read_text().splitlines()[0]
    assert header == "t,E,r,U,fidelity,S_block,S_linear,energy,norm"
    manifest = json.loads((tmp_path / "traj.csv.manifest.json").read_text())
    assert set(manifest) == {
        "artifact_version", "config_hash", "started", "finished", "outputs"}
    assert manifest["outputs"] == [str(out)]


def test_simulate_roundtrip_floats(tmp_path):
    # 17 significant digits: parsing the CSV reproduces the exact doubles
    rc, out = run_simulate(tmp_path, FAST_CONFIG)
    cols = read_csv_columns(out)
    text = out.read_text().splitlines()[1].split(",")
    assert float(text[1]) == cols["E"][0]
    assert cols["E"][0] == 0.25  # Dicke n=1 of N=4


def test_simulate_preset(tmp_path):
    out = tmp_path / "p.csv"
    rc = main(["simulate", "--preset", "fig6-N2-tauf1", "--out", str(out)])
    assert rc == 0
    assert out.exists()


def test_determinism_byte_identical(tmp_path):
    _, out1 = run_simulate(tmp_path, FAST_CONFIG, "a.csv")
    _, out2 = run_simulate(tmp_path, FAST_CONFIG, "b.csv")
    assert out1.read_bytes() == out2.read_bytes()


def test_config_error_exit_1(tmp_path, capsys):
    bad = dict(FAST_CONFIG, t_max=-5.0)
    rc, _ = run_simulate(tmp_path, bad)
    assert rc == 1
    assert "t_max" in capsys.readouterr().err


def test_unknown_key_exit_1(tmp_path, capsys):
    bad = dict(FAST_CONFIG, speling=1)
    rc, _ = run_simulate(tmp_path, bad)
    assert rc == 1
    assert "speling" in capsys.readouterr().err


def test_numerical_failure_exit_2(tmp_path, capsys):
    bad = dict(FAST_CONFIG, N=10, g0=5.0, dt=1.0, t_max=50.0)
    rc, _ = run_simulate(tmp_path, bad)
    assert rc == 2
    err = capsys.readouterr().err
    assert "at t=" in err


def test_missing_config_exit_1(tmp_path):
    rc = main(["simulate", str(tmp_path / "absent.json"), "--out",
               str(tmp_path / "x.csv")])
    assert rc == 1


def test_spectrum_synthetic(tmp_path, capsys):
    t = np.arange(2000) * 0.5
    y = np.sin(2 * np.pi * 0.02 * t)
    src = tmp_path / "wave.csv"
    with open(src, "w") as fh:
        fh.write("t,y\n")
        for ti, yi in zip(t, y):
            fh.write(f"{float(ti)!r},{float(yi)!r}\n")
    out = tmp_path / "spec.csv"
    rc = main(["spectrum", "--in", str(src), "--column", "y", "--out", str(out)])
    assert rc == 0
    assert "dominant frequency: 0.02" in capsys.readouterr().out
    cols = read_csv_columns(out)
    assert set(cols) == {"frequency", "power"}


def test_spectrum_column_typo(tmp_path, capsys):
    _, traj = run_simulate(tmp_path, FAST_CONFIG)
    rc = main(["spectrum", "--in", str(traj), "--column", "S_bloc",
               "--out", str(tmp_path / "s.csv")])
    assert rc == 1
    assert "S_block" in capsys.readouterr().err  # lists what is available


def test_spectrum_nonuniform_time(tmp_path, capsys):
    src = tmp_path / "jitter.csv"
    with open(src, "w") as fh:
        fh.write("t,y\n")
        for i in range(20):
            fh.write(f"{i + (0.2 if i == 7 else 0)},{math.sin(i)}\n")
    rc = main(["spectrum", "--in", str(src), "--column", "y",
               "--out", str(tmp_path / "s.csv")])
    assert rc == 1
    assert "uniform" in capsys.readouterr().err


def test_hist_constant_column(tmp_path):
    src = tmp_path / "c.csv"
    src.write_text("t,y\n" + "".join(f"{i},4.0\n" for i in range(30)))
    out = tmp_path / "h.csv"
    rc = main(["hist", "--in", str(src), "--column", "y", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "bin_left,bin_right,density"
    assert len(lines) == 2  # single bin


def test_plot_svg(tmp_path):
    _, traj = run_simulate(tmp_path, FAST_CONFIG)
    out = tmp_path / "plot.svg"
    rc = main(["plot", "--in", str(traj), "--columns", "E,r", "--out", str(out)])
    assert rc == 0
    svg = out.read_text()
    assert svg.startswith("<svg")
    assert svg.count("<polyline") == 2
    assert "E</text>" in svg and "r</text>" in svg


def test_plot_missing_column(tmp_path):
    _, traj = run_simulate(tmp_path, FAST_CONFIG)
    rc = main(["plot", "--in", str(traj), "--columns", "bogus",
               "--out", str(tmp_path / "p.svg")])
    assert rc == 1


def test_sweep_serial_vs_parallel(tmp_path):
    cfg = write_config(tmp_path, FAST_CONFIG)
    d1, d2 = tmp_path / "serial", tmp_path / "par"
    rc = main(["sweep", "--config", str(cfg), "--vary", "tau_r=0.5,1,2",
               "--out", str(d1)])
    assert rc == 0
    rc = main(["sweep", "--config", str(cfg), "--vary", "tau_r=0.5,1,2",
               "--out", str(d2), "--parallel", "4"])
    assert rc == 0
    names = sorted(p.name for p in d1.iterdir())
    assert names == ["summary.csv", "tau_r=0.5.csv", "tau_r=1.csv", "tau_r=2.csv"]
    for name in names:
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes(), name
    summary = (d1 / "summary.csv").read_text().splitlines()
    assert summary[0] == "tau_r,mean_E,dominant_freq_S_block,max_U"
    assert len(summary) == 4


def test_sweep_unknown_key(tmp_path, capsys):
    cfg = write_config(tmp_path, FAST_CONFIG)
    rc = main(["sweep", "--config", str(cfg), "--vary", "flux=1,2",
               "--out", str(tmp_path / "d")])
    assert rc == 1
    assert "flux" in capsys.readouterr().err


def test_presets_listing(capsys):
    rc = main(["presets"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "fig2-N80-half" in out and "fig6-N20-tauf1000" in out


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
