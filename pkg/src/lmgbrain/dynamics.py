"""Coupled integration of (psi, r, U): Schrodinger evolution under the
modulated collective Hamiltonian plus the classical plasticity ODEs, with
fixed-step classical RK4 and trajectory recording.

All paper-scale initial states are pure and the evolution is unitary plus
classical feedback on expectation values, so the state is kept as a vector
rather than a density matrix (cost O(N) per step instead of O(N^2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .hamiltonian import HamiltonianParts, LMGParams, apply_raw, build_parts
from .observables import entropies_from_amp_records
from .plasticity import PlasticityParams, SynapseState, _E_SLACK
from .spins import DickeVector, SpinSector, dicke_state, dicke_state_fraction, m_values

AUTO = "auto"
MAX_RECORDS = 1_000_000
_DT_FLOOR = 1e-6
_DT_SCALE = 0.05
_ENERGY_TOL = 1e-8
_SAFETY = 0.125  # target drift at this fraction of the tolerance


class ConfigError(ValueError):
    """Invalid simulation configuration."""


class IntegrationError(RuntimeError):
    """Numerical failure during integration; carries the time of failure."""

    def __init__(self, message: str, t: float):
        super().__init__(f"{message} (at t={t:.6g})")
        self.t = t


@dataclass
class SimulationConfig:
    N: int
    gamma: float
    g0: float
    t_max: float
    h: float = 0.0
    tau_r: float = 0.0
    tau_f: float = 0.0
    U_base: float = 0.5
    r0: float = 1.0
    U0: float | None = None
    initial_count: int | None = None
    initial_fraction: float | None = None
    dt: float | str = AUTO
    record_stride: int | None = None
    block_size: int | None = None
    renormalize: bool = False
    norm_tolerance: float = 1e-6

    def validate(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise ConfigError(f"N must be a positive integer, got {self.N!r}")
        if not self.t_max > 0:
            raise ConfigError(f"t_max must be > 0, got {self.t_max!r}")
        if self.dt != AUTO:
            try:
                dt = float(self.dt)
            except (TypeError, ValueError):
                raise ConfigError(f"dt must be a number or 'auto', got {self.dt!r}")
            if not dt > 0:
                raise ConfigError(f"dt must be > 0, got {self.dt!r}")
        if (self.initial_count is None) == (self.initial_fraction is None):
            raise ConfigError("initial state needs exactly one of count or fraction")
        if self.record_stride is not None and self.record_stride < 1:
            raise ConfigError(f"record_stride must be >= 1, got {self.record_stride!r}")
        L = self.resolved_block_size
        if self.N >= 2 and not 1 <= L <= self.N - 1:
            raise ConfigError(f"block_size={L} outside [1, {self.N - 1}]")
        try:
            self.plasticity_params()
            self.lmg_params()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def resolved_block_size(self) -> int:
        return self.block_size if self.block_size is not None else self.N // 2

    def sector(self) -> SpinSector:
        return SpinSector(int(self.N))

    def lmg_params(self) -> LMGParams:
        return LMGParams(g0=self.g0, gamma=self.gamma, h=self.h)

    def plasticity_params(self) -> PlasticityParams:
        return PlasticityParams(
            tau_r=self.tau_r, tau_f=self.tau_f, U_base=self.U_base,
            r0=self.r0, U0=self.U0,
        )

    def initial_state(self) -> DickeVector:
        sector = self.sector()
        if self.initial_count is not None:
            return dicke_state(sector, int(self.initial_count))
        return dicke_state_fraction(sector, float(self.initial_fraction))


@dataclass
class CoupledState:
    psi: DickeVector
    synapse: SynapseState
    t: float = 0.0


@dataclass
class Trajectory:
    """Time-ordered records of the coupled run; columns match the CSV schema."""

    config: SimulationConfig
    dt: float
    record_stride: int
    t: np.ndarray = field(repr=False)
    E: np.ndarray = field(repr=False)
    r: np.ndarray = field(repr=False)
    U: np.ndarray = field(repr=False)
    fidelity: np.ndarray = field(repr=False)
    S_block: np.ndarray = field(repr=False)
    S_linear: np.ndarray = field(repr=False)
    energy: np.ndarray = field(repr=False)
    norm: np.ndarray = field(repr=False)

    COLUMNS = ("t", "E", "r", "U", "fidelity", "S_block", "S_linear", "energy", "norm")

    def column(self, name: str) -> np.ndarray:
        if name not in self.COLUMNS:
            raise KeyError(f"unknown column {name!r}; have {self.COLUMNS}")
        return getattr(self, name)

    def __len__(self) -> int:
        return self.t.shape[0]


def resolve_dt(config: SimulationConfig) -> float:
    """Step-size heuristic bounding dt*|H| and dt/tau; explicit dt passes through.

    auto: dt = 0.05 / (|g0|(N+2)/4 + |h| N/2 + 1/max(tau_r, 1e-6)
                       + 1/max(tau_f, 1e-6)), pinned channels contributing 0
    and the divisor floored at 1.
    """
    if config.dt != AUTO:
        return float(config.dt)
    div = abs(config.g0) * (config.N + 2) / 4.0 + abs(config.h) * config.N / 2.0
    if config.tau_r > 0:
        div += 1.0 / max(config.tau_r, _DT_FLOOR)
    if config.tau_f > 0:
        div += 1.0 / max(config.tau_f, _DT_FLOOR)
    return _DT_SCALE / max(div, 1.0)


def coupled_derivative(
    state: CoupledState,
    parts: HamiltonianParts,
    lmg: LMGParams,
    plas: PlasticityParams,
) -> tuple[DickeVector, float, float]:
    """(dpsi/dt, dr/dt, dU/dt) with the feedback E evaluated on this state."""
    amps = state.psi.amplitudes
    hpsi = apply_raw(parts, lmg.g0 * state.synapse.r, lmg.h, amps)
    dpsi = DickeVector(state.psi.sector, -1j * hpsi)
    N = parts.sector.N
    E = 0.5 + float(np.dot(m_values(parts.sector), np.abs(amps) ** 2)) / N
    dr, dU = _kernels._plasticity_derivs.py_func(
        state.synapse.r, state.synapse.U, E,
        plas.tau_r, plas.tau_f, plas.U_base,
        plas.depression_enabled, plas.facilitation_enabled,
    )
    return dpsi, dr, dU


def rk4_step(
    state: CoupledState,
    dt: float,
    parts: HamiltonianParts,
    lmg: LMGParams,
    plas: PlasticityParams,
    renormalize: bool = False,
    norm_tolerance: float = 1e-6,
) -> CoupledState:
    """One classical RK4 step of the full (psi, r, U) tuple."""

    def deriv(amps, r, U):
        st = CoupledState(DickeVector(parts.sector, amps), SynapseState(r, U))
        dpsi, dr, dU = coupled_derivative(st, parts, lmg, plas)
        return dpsi.amplitudes, dr, dU

    y, r, U = state.psi.amplitudes, state.synapse.r, state.synapse.U
    k1p, k1r, k1u = deriv(y, r, U)
    k2p, k2r, k2u = deriv(y + 0.5 * dt * k1p, r + 0.5 * dt * k1r, U + 0.5 * dt * k1u)
    k3p, k3r, k3u = deriv(y + 0.5 * dt * k2p, r + 0.5 * dt * k2r, U + 0.5 * dt * k2u)
    k4p, k4r, k4u = deriv(y + dt * k3p, r + dt * k3r, U + dt * k3u)
    new_psi = y + (dt / 6.0) * (k1p + 2 * k2p + 2 * k3p + k4p)
    new_r = r + (dt / 6.0) * (k1r + 2 * k2r + 2 * k3r + k4r)
    new_U = U + (dt / 6.0) * (k1u + 2 * k2u + 2 * k3u + k4u)

    t_new = state.t + dt
    nrm = float(np.linalg.norm(new_psi))
    if renormalize:
        new_psi = new_psi / nrm
    elif abs(nrm - 1.0) > norm_tolerance:
        raise IntegrationError(f"norm drift |{nrm} - 1| exceeds {norm_tolerance}", t_new)
    for name, v in (("r", new_r), ("U", new_U)):
        if not -_kernels.BOUND_SLACK <= v <= 1.0 + _kernels.BOUND_SLACK:
            raise IntegrationError(f"{name}={v} left [0, 1] beyond slack; reduce dt", t_new)
    return CoupledState(DickeVector(parts.sector, new_psi), SynapseState(new_r, new_U), t_new)


def _accuracy_dt(apply_h, psi0, t_max: float, norm_tol: float, frozen: bool) -> float:
    """A-priori dt bound keeping the predicted RK4 norm (and, for frozen
    plasticity, energy) drift below a fraction of its tolerance.

    For an eigencomponent at lambda, one RK4 step multiplies the squared norm
    by 1 - (dt*lambda)^6/72, so the accumulated squared-norm drift over
    t_max/dt steps is ~ t_max dt^5 <lambda^6>/72.  The moments are taken in
    the initial state with the coupling at its ceiling g0 (r <= 1), which is
    exact for h = 0 because only the scalar g(t) is time dependent.
    """
    p1 = apply_h(psi0)
    p2 = apply_h(p1)
    p3 = apply_h(p2)
    a1 = float(np.vdot(psi0, p1).real)
    a6 = float(np.vdot(p3, p3).real)
    dt = math.inf
    if a6 > 0.0:
        dt = (_SAFETY * norm_tol * 72.0 / (t_max * a6)) ** 0.2
    if frozen:
        p4 = apply_h(p3)
        a7 = float(np.vdot(p3, p4).real)
        cov = abs(a7 - a1 * a6)
        if cov > 0.0:
            target = _SAFETY * _ENERGY_TOL * max(1.0, abs(a1))
            dt = min(dt, (target * 72.0 / (t_max * cov)) ** 0.2)
    return dt


def _plan_steps(config: SimulationConfig, dt_req: float) -> tuple[float, int, int]:
    """Final (dt, n_steps, stride): dt shrunk so an integer number of steps
    lands exactly on t_max, stride capped so at most MAX_RECORDS are stored."""
    n_steps = max(1, int(math.ceil(config.t_max / dt_req - 1e-12)))
    dt = config.t_max / n_steps
    if config.record_stride is not None:
        stride = int(config.record_stride)
    else:
        stride = max(1, int(math.ceil((n_steps + 1) / MAX_RECORDS)))
    return dt, n_steps, stride


def _record_count(n_steps: int, stride: int) -> int:
    n = 1 + n_steps // stride
    if n_steps % stride:
        n += 1
    return n


def _run_recorded(config, kernel, kernel_args, psi_raw, n_amps, dt, n_steps, stride):
    """Allocate record arrays, run a kernel, post-process entropies."""
    nrec = _record_count(n_steps, stride)
    out = {name: np.empty(nrec) for name in ("t", "E", "r", "U", "fid", "energy", "norm")}
    out_amps = np.empty((nrec, n_amps), dtype=np.complex128)
    plas = config.plasticity_params()
    status, fail_step = kernel(
        psi_raw, plas.r0, plas.initial_U,
        *kernel_args,
        config.g0, config.h, plas.tau_r, plas.tau_f, plas.U_base,
        plas.depression_enabled, plas.facilitation_enabled,
        dt, n_steps, stride, config.renormalize, config.norm_tolerance,
        out["t"], out["E"], out["r"], out["U"], out["fid"], out["energy"], out["norm"],
        out_amps,
    )
    if status == 1:
        raise IntegrationError(
            f"norm drift exceeded {config.norm_tolerance}; reduce dt", fail_step * dt)
    if status == 2:
        raise IntegrationError("r or U left [0, 1] beyond slack; reduce dt", fail_step * dt)
    if status == 3:
        raise IntegrationError("state left the symmetric sector", fail_step * dt)
    s_block, s_linear = entropies_from_amp_records(
        out_amps, config.N, config.resolved_block_size)
    return Trajectory(
        config=replace(config), dt=dt, record_stride=stride,
        t=out["t"], E=out["E"], r=out["r"], U=out["U"], fidelity=out["fid"],
        S_block=s_block, S_linear=s_linear, energy=out["energy"], norm=out["norm"],
    )


def simulate(config: SimulationConfig) -> Trajectory:
    """Integrate the coupled system in the symmetric sector and record it.

    With dt='auto' the heuristic from resolve_dt is further refined by the
    a-priori drift bound so the recorded norm (and, for frozen plasticity,
    energy) stay within tolerance over the whole window.  An explicit dt is
    only adjusted downward so that an integer number of steps reaches t_max.
    """
    config.validate()
    sector = config.sector()
    parts = build_parts(sector, config.lmg_params())
    psi0 = config.initial_state()
    plas = config.plasticity_params()

    dt_req = resolve_dt(config)
    if config.dt == AUTO:
        frozen = not (plas.depression_enabled or plas.facilitation_enabled)
        dt_req = min(
            dt_req,
            _accuracy_dt(
                lambda v: apply_raw(parts, config.g0, config.h, v),
                psi0.amplitudes, config.t_max, config.norm_tolerance, frozen,
            ),
        )
    dt, n_steps, stride = _plan_steps(config, dt_req)

    kernel_args = (parts.k_diag, parts.k_off, parts.m_diag, m_values(sector))
    return _run_recorded(
        config, _kernels.integrate_banded, kernel_args,
        psi0.amplitudes.copy(), sector.dim, dt, n_steps, stride,
    )
