"""Command-line front end: run simulations and presets, write trajectory CSVs,
compute spectra and histograms, emit SVG plots, and drive parameter sweeps.

Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import datetime
import hashlib
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import dominant_frequency, histogram, pearson_correlation, periodogram
from .configio import ConfigError, config_from_dict, config_to_dict, load_config
from .dynamics import IntegrationError, Trajectory, simulate
from .presets import preset, preset_names

_JITTER_TOL = 1e-9
_SWEEPABLE = (
    "N", "gamma", "g0", "h", "tau_r", "tau_f", "U_base", "r0", "U0",
    "t_max", "record_stride", "block_size",
)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def write_trajectory_csv(traj: Trajectory, path) -> None:
    path = Path(path)
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(Trajectory.COLUMNS) + "\n")
        cols = [traj.column(c) for c in Trajectory.COLUMNS]
        for row in zip(*cols):
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_csv_columns(path) -> dict[str, np.ndarray]:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"input file not found: {path}")
    with open(path) as fh:
        header = fh.readline().strip()
    if not header:
        raise ConfigError(f"input file {path} is empty")
    names = header.split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.size == 0:
        return {n: np.empty(0) for n in names}
    if data.shape[1] != len(names):
        raise ConfigError(f"{path}: {data.shape[1]} columns but {len(names)} header fields")
    return {n: data[:, i] for i, n in enumerate(names)}


def _get_column(cols: dict, name: str, path) -> np.ndarray:
    if name not in cols:
        raise ConfigError(
            f"column {name!r} not in {path}; available: {', '.join(cols)}")
    return cols[name]


def write_manifest(config, outputs, started: float, finished: float, path) -> None:
    """Atomic manifest write (tmp + rename) alongside the outputs."""
    canonical = json.dumps(config_to_dict(config), sort_keys=True)
    doc = {
        "artifact_version": __version__,
        "config_hash": hashlib.sha256(canonical.encode()).hexdigest(),
        "started": datetime.datetime.fromtimestamp(started, datetime.timezone.utc).isoformat(),
        "finished": datetime.datetime.fromtimestamp(finished, datetime.timezone.utc).isoformat(),
        "outputs": [str(p) for p in outputs],
    }
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(doc, indent=2) + "\n")
    os.replace(tmp, path)


# ---------------------------------------------------------------- plotting

_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_MAX_PLOT_POINTS = 4000


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** np.floor(np.log10(raw))
    step = min(s * mag for s in (1, 2, 5, 10) if s * mag >= raw)
    start = np.ceil(lo / step) * step
    return [float(v) for v in np.arange(start, hi + step / 2, step)]


def write_line_svg(t, series: dict[str, np.ndarray], path) -> None:
    """Self-contained SVG line chart: one polyline per column, legend, axes."""
    W, H, ML, MR, MT, MB = 900, 500, 70, 20, 20, 45
    t = np.asarray(t)
    stride = max(1, t.shape[0] // _MAX_PLOT_POINTS)
    lo_y = min(float(np.min(v)) for v in series.values())
    hi_y = max(float(np.max(v)) for v in series.values())
    if hi_y == lo_y:
        lo_y, hi_y = lo_y - 0.5, hi_y + 0.5
    lo_x, hi_x = float(t[0]), float(t[-1])
    if hi_x == lo_x:
        lo_x, hi_x = lo_x - 0.5, hi_x + 0.5

    def sx(x):
        return ML + (x - lo_x) / (hi_x - lo_x) * (W - ML - MR)

    def sy(y):
        return H - MB - (y - lo_y) / (hi_y - lo_y) * (H - MT - MB)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
        f'<line x1="{ML}" y1="{H - MB}" x2="{W - MR}" y2="{H - MB}" stroke="black"/>',
        f'<line x1="{ML}" y1="{MT}" x2="{ML}" y2="{H - MB}" stroke="black"/>',
    ]
    for xv in _ticks(lo_x, hi_x):
        px = sx(xv)
        parts.append(f'<line x1="{px:.2f}" y1="{H - MB}" x2="{px:.2f}" y2="{H - MB + 5}" stroke="black"/>')
        parts.append(
            f'<text x="{px:.2f}" y="{H - MB + 18}" font-size="11" text-anchor="middle">{xv:g}</text>')
    for yv in _ticks(lo_y, hi_y):
        py = sy(yv)
        parts.append(f'<line x1="{ML - 5}" y1="{py:.2f}" x2="{ML}" y2="{py:.2f}" stroke="black"/>')
        parts.append(
            f'<text x="{ML - 8}" y="{py + 4:.2f}" font-size="11" text-anchor="end">{yv:g}</text>')
    for i, (name, values) in enumerate(series.items()):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(
            f"{sx(x):.2f},{sy(y):.2f}"
            for x, y in zip(t[::stride], np.asarray(values)[::stride]))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1"/>')
        ly = MT + 16 + 16 * i
        parts.append(
            f'<line x1="{W - MR - 90}" y1="{ly - 4}" x2="{W - MR - 60}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{W - MR - 54}" y="{ly}" font-size="12">{name}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")


# ---------------------------------------------------------------- commands

def cmd_simulate(args) -> int:
    if args.preset:
        try:
            config = preset(args.preset)
        except KeyError as exc:
            raise ConfigError(str(exc.args[0]))
    elif args.config:
        config = load_config(args.config)
    else:
        raise ConfigError("need a config path or --preset name")
    started = time.time()
    traj = simulate(config)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_trajectory_csv(traj, out)
    write_manifest(config, [out], started, time.time(),
                   out.with_name(out.name + ".manifest.json"))
    print(f"wrote {out} ({len(traj)} records, dt={traj.dt:.6g})")
    return 0


def _uniform_interval(t: np.ndarray) -> float:
    if t.shape[0] < 2:
        raise ConfigError("need at least 2 samples to infer the sampling interval")
    diffs = np.diff(t)
    mean = float(diffs.mean())
    if mean <= 0 or np.max(np.abs(diffs - mean)) > _JITTER_TOL * max(abs(mean), 1.0):
        raise ConfigError("time column is not uniformly sampled")
    return mean


def cmd_spectrum(args) -> int:
    cols = read_csv_columns(args.infile)
    t = _get_column(cols, "t", args.infile)
    y = _get_column(cols, args.column, args.infile)
    mask = np.ones(t.shape[0], dtype=bool)
    if args.tmin is not None:
        mask &= t >= args.tmin
    if args.tmax is not None:
        mask &= t <= args.tmax
    t, y = t[mask], y[mask]
    dt = _uniform_interval(t)
    try:
        spec = periodogram(y, dt, window=args.window)
    except ValueError as exc:
        raise ConfigError(str(exc))
    with open(args.out, "w", newline="\n") as fh:
        fh.write("frequency,power\n")
        for f, p in zip(spec.frequencies, spec.power):
            fh.write(f"{_fmt(f)},{_fmt(p)}\n")
    freq, power = dominant_frequency(spec)
    print(f"dominant frequency: {freq:.10g} (power {power:.10g})")
    return 0


def cmd_hist(args) -> int:
    cols = read_csv_columns(args.infile)
    y = _get_column(cols, args.column, args.infile)
    try:
        edges, dens = histogram(y, args.bins)
    except ValueError as exc:
        raise ConfigError(str(exc))
    with open(args.out, "w", newline="\n") as fh:
        fh.write("bin_left,bin_right,density\n")
        for left, right, d in zip(edges[:-1], edges[1:], dens):
            fh.write(f"{_fmt(left)},{_fmt(right)},{_fmt(d)}\n")
    return 0


def cmd_plot(args) -> int:
    cols = read_csv_columns(args.infile)
    t = _get_column(cols, "t", args.infile)
    if t.shape[0] == 0:
        raise ConfigError(f"{args.infile} holds no records")
    names = [c.strip() for c in args.columns.split(",") if c.strip()]
    if not names:
        raise ConfigError("no columns requested")
    series = {name: _get_column(cols, name, args.infile) for name in names}
    write_line_svg(t, series, args.out)
    print(f"wrote {args.out}")
    return 0


def _sweep_value(key: str, raw: str):
    return int(raw) if key in ("N", "record_stride", "block_size") else float(raw)


def _sweep_run(payload):
    """Worker: one sweep point -> trajectory CSV + summary tuple."""
    base, key, raw, out_dir = payload
    data = dict(base)
    data[key] = _sweep_value(key, raw)
    config = config_from_dict(data)
    traj = simulate(config)
    out = Path(out_dir) / f"{key}={raw}.csv"
    write_trajectory_csv(traj, out)
    if len(traj) >= 8:
        dt_rec = float(traj.t[1] - traj.t[0])
        freq, _ = dominant_frequency(periodogram(traj.S_block, dt_rec))
    else:
        freq = float("nan")
    return raw, float(np.mean(traj.E)), freq, float(np.max(traj.U))


def cmd_sweep(args) -> int:
    base = config_to_dict(load_config(args.config))
    if "=" not in args.vary:
        raise ConfigError("--vary must look like key=v1,v2,...")
    key, _, values = args.vary.partition("=")
    if key not in _SWEEPABLE:
        raise ConfigError(f"cannot sweep key {key!r}; choose from {', '.join(_SWEEPABLE)}")
    raws = [v for v in values.split(",") if v]
    if not raws:
        raise ConfigError(f"no values given for swept key {key!r}")
    for raw in raws:
        _sweep_value(key, raw)  # fail fast on malformed numbers

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    payloads = [(base, key, raw, str(out_dir)) for raw in raws]
    if args.parallel > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.parallel) as pool:
            results = list(pool.map(_sweep_run, payloads))
    else:
        results = [_sweep_run(p) for p in payloads]

    with open(out_dir / "summary.csv", "w", newline="\n") as fh:
        fh.write(f"{key},mean_E,dominant_freq_S_block,max_U\n")
        for raw, mean_e, freq, max_u in results:
            fh.write(f"{raw},{_fmt(mean_e)},{_fmt(freq)},{_fmt(max_u)}\n")
    print(f"wrote {len(results)} runs + summary to {out_dir}")
    return 0


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmgbrain",
        description="Collective-spin quantum brain simulator with synaptic feedback",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one simulation to a trajectory CSV")
    p.add_argument("config", nargs="?", help="JSON config path")
    p.add_argument("--preset", help="named preset (see --list-presets)")
    p.add_argument("--out", required=True, help="output trajectory CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spectrum", help="periodogram of a trajectory column")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--column", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--window", default="rectangular", choices=["rectangular", "hann"])
    p.add_argument("--tmin", type=float, default=None)
    p.add_argument("--tmax", type=float, default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("hist", help="stationary histogram of a trajectory column")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--column", required=True)
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("plot", help="static SVG line chart of trajectory columns")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--columns", default="E,r,U")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("sweep", help="run a base config across values of one key")
    p.add_argument("--config", required=True, help="base JSON config")
    p.add_argument("--vary", required=True, help="key=v1,v2,...")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--parallel", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("presets", help="list the preset catalog")
    p.set_defaults(func=lambda args: (print("\n".join(preset_names())) or 0))

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except IntegrationError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
