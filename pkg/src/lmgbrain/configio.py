"""JSON configuration files: the on-disk format the CLI and presets share.

Keys are exactly: N, gamma, g0, h, tau_r, tau_f, U_base, r0, U0,
initial {count | fraction}, t_max, dt ("auto" | number), record_stride,
block_size, renormalize.  Unknown keys are rejected (fail fast on typos).
"""

from __future__ import annotations

import json
from pathlib import Path

from .dynamics import AUTO, ConfigError, SimulationConfig

_SCALAR_KEYS = {
    "N": int,
    "gamma": float,
    "g0": float,
    "h": float,
    "tau_r": float,
    "tau_f": float,
    "U_base": float,
    "r0": float,
    "t_max": float,
}
_REQUIRED = ("N", "gamma", "g0", "t_max", "initial")
_ALL_KEYS = set(_SCALAR_KEYS) | {
    "U0", "initial", "dt", "record_stride", "block_size", "renormalize"}


def config_from_dict(data: dict) -> SimulationConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config must be a JSON object, got {type(data).__name__}")
    unknown = set(data) - _ALL_KEYS
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    missing = [k for k in _REQUIRED if k not in data]
    if missing:
        raise ConfigError(f"missing required config key(s): {', '.join(missing)}")

    kw = {}
    for key, typ in _SCALAR_KEYS.items():
        if key in data:
            try:
                kw[key] = typ(data[key])
            except (TypeError, ValueError):
                raise ConfigError(f"config key {key!r} must be a number, got {data[key]!r}")

    initial = data["initial"]
    if (
        not isinstance(initial, dict)
        or len(initial) != 1
        or next(iter(initial)) not in ("count", "fraction")
    ):
        raise ConfigError(
            'config key "initial" must be {"count": n} or {"fraction": f}')
    if "count" in initial:
        kw["initial_count"] = int(initial["count"])
    else:
        kw["initial_fraction"] = float(initial["fraction"])

    if "U0" in data and data["U0"] is not None:
        kw["U0"] = float(data["U0"])
    if "dt" in data:
        dt = data["dt"]
        if dt != AUTO:
            try:
                dt = float(dt)
            except (TypeError, ValueError):
                raise ConfigError(f'config key "dt" must be a number or "auto", got {dt!r}')
        kw["dt"] = dt
    if "record_stride" in data and data["record_stride"] is not None:
        kw["record_stride"] = int(data["record_stride"])
    if "block_size" in data and data["block_size"] is not None:
        kw["block_size"] = int(data["block_size"])
    if "renormalize" in data:
        if not isinstance(data["renormalize"], bool):
            raise ConfigError('config key "renormalize" must be true or false')
        kw["renormalize"] = data["renormalize"]

    config = SimulationConfig(**kw)
    config.validate()
    return config


def config_to_dict(config: SimulationConfig) -> dict:
    if config.initial_count is not None:
        initial = {"count": int(config.initial_count)}
    else:
        initial = {"fraction": float(config.initial_fraction)}
    return {
        "N": int(config.N),
        "gamma": config.gamma,
        "g0": config.g0,
        "h": config.h,
        "tau_r": config.tau_r,
        "tau_f": config.tau_f,
        "U_base": config.U_base,
        "r0": config.r0,
        "U0": config.U0,
        "initial": initial,
        "t_max": config.t_max,
        "dt": config.dt,
        "record_stride": config.record_stride,
        "block_size": config.block_size,
        "renormalize": config.renormalize,
    }


def load_config(path) -> SimulationConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}")
    return config_from_dict(data)


def dump_config(config: SimulationConfig, path) -> None:
    Path(path).write_text(json.dumps(config_to_dict(config), indent=2) + "\n")
