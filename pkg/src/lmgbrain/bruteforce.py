"""Brute-force oracle: the same coupled dynamics in the full 2^N qubit space.

The dense Hamiltonian is assembled from tensor products of single-qubit Pauli
operators, the feedback uses <Jz> = (1/2) sum_i <sigma_i^z>, and the block
entropy is read off the projection onto the symmetric sector.  Cost is
exponential in N, which is the point: it independently validates the banded
O(N) sector path for small systems.

The additive zero-point constant that separates the pairwise form from the
collective one (g/2 per unit coupling) is dropped here as well, so both
integrations follow literally the same differential equation and agree to
round-off, not merely up to a time-dependent global phase.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .dynamics import (
    ConfigError,
    SimulationConfig,
    Trajectory,
    _accuracy_dt,
    _plan_steps,
    _run_recorded,
    resolve_dt,
)
from .spins import DickeVector

MAX_FULL_N = 12

# single-qubit basis ordered (ground, excited): bit value 1 means excited,
# matching the popcount convention of jz_diagonal and dicke_projector
_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
_SY = np.array([[0.0, 1.0j], [-1.0j, 0.0]])
_SZ = np.array([[-1.0, 0.0], [0.0, 1.0]])
_ID = np.eye(2)


def site_operator(N: int, i: int, op: np.ndarray) -> np.ndarray:
    """op acting on qubit i (bit i of the basis index), identity elsewhere."""
    mats = [op if k == i else _ID for k in reversed(range(N))]
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def collective_operators(N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Jx, Jy, Jz as dense 2^N matrices (J_a = (1/2) sum_i sigma_i^a)."""
    dim = 2**N
    Jx = np.zeros((dim, dim), dtype=np.complex128)
    Jy = np.zeros((dim, dim), dtype=np.complex128)
    Jz = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(N):
        Jx += 0.5 * site_operator(N, i, _SX)
        Jy += 0.5 * site_operator(N, i, _SY)
        Jz += 0.5 * site_operator(N, i, _SZ)
    return Jx, Jy, Jz


def full_k_matrix(N: int, gamma: float) -> np.ndarray:
    """K = -(1/N) [(1+gamma) Jx^2 + (1-gamma) Jy^2] in the full space (real)."""
    Jx, Jy, _ = collective_operators(N)
    K = -((1.0 + gamma) * (Jx @ Jx) + (1.0 - gamma) * (Jy @ Jy)) / N
    assert np.max(np.abs(K.imag)) < 1e-14
    return np.ascontiguousarray(K.real)


def intensive_hamiltonian(N: int, g: float, gamma: float, h: float) -> np.ndarray:
    """Pairwise all-to-all XY Hamiltonian with the couplings inverted from the
    collective parameters: eps = -h N/2, gx = -g (N-1)(1+gamma)/2,
    gy = -g (N-1)(1-gamma)/2.  Equals g*(K + 1/2) + h*M up to round-off."""
    eps = -h * N / 2.0
    gx = -g * (N - 1) * (1.0 + gamma) / 2.0
    gy = -g * (N - 1) * (1.0 - gamma) / 2.0
    dim = 2**N
    H = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(N):
        H += (eps / N) * site_operator(N, i, _SZ)
        for jj in range(i + 1, N):
            H += (gx / (N * (N - 1))) * (
                site_operator(N, i, _SX) @ site_operator(N, jj, _SX))
            H += (gy / (N * (N - 1))) * (
                site_operator(N, i, _SY) @ site_operator(N, jj, _SY))
    return H


def jz_diagonal(N: int) -> np.ndarray:
    """Jz eigenvalue popcount(b) - N/2 per computational basis state b."""
    return np.array([bin(b).count("1") - N / 2.0 for b in range(2**N)])


def dicke_projector(N: int) -> np.ndarray:
    """Rows are the normalized Dicke states: P[n, b] = 1/sqrt(C(N,n)) when
    popcount(b) = n, else 0.  P @ psi_full gives the sector amplitudes."""
    dim = 2**N
    P = np.zeros((N + 1, dim))
    for b in range(dim):
        n = bin(b).count("1")
        P[n, b] = 1.0 / math.sqrt(math.comb(N, n))
    return P


def embed_sector_state(psi: DickeVector) -> np.ndarray:
    """Symmetrized full-space state with the given Dicke amplitudes."""
    P = dicke_projector(psi.sector.N)
    return P.T @ psi.amplitudes


def project_symmetric(psi_full: np.ndarray, N: int) -> tuple[np.ndarray, float]:
    """(sector amplitudes, squared-norm leak outside the symmetric sector)."""
    c = dicke_projector(N) @ psi_full
    leak = float(np.vdot(psi_full, psi_full).real - np.vdot(c, c).real)
    return c, leak


def full_space_simulate(
    config: SimulationConfig, initial_state: np.ndarray | None = None
) -> Trajectory:
    """Brute-force trajectory in the 2^N space with the same feedback,
    integrator and record columns as the sector path.

    initial_state overrides the symmetrized Dicke initial condition with a raw
    2^N vector (useful for probing the sector-leak guard)."""
    config.validate()
    if config.N > MAX_FULL_N:
        raise ConfigError(
            f"N={config.N} too large for the 2^N brute-force path (max {MAX_FULL_N})")

    N = int(config.N)
    K = full_k_matrix(N, config.gamma).astype(np.complex128)
    jzd = jz_diagonal(N)
    proj = dicke_projector(N)
    if initial_state is None:
        psi0 = embed_sector_state(config.initial_state())
    else:
        psi0 = np.asarray(initial_state, dtype=np.complex128)
        if psi0.shape != (2**N,):
            raise ConfigError(f"initial_state must have shape ({2**N},)")

    plas = config.plasticity_params()
    dt_req = resolve_dt(config)
    if config.dt == "auto":
        frozen = not (plas.depression_enabled or plas.facilitation_enabled)
        dt_req = min(
            dt_req,
            _accuracy_dt(
                lambda v: config.g0 * (K @ v) - config.h * jzd * v,
                psi0, config.t_max, config.norm_tolerance, frozen,
            ),
        )
    dt, n_steps, stride = _plan_steps(config, dt_req)

    kernel_args = (K, jzd, proj, N)
    return _run_recorded(
        config, _kernels.integrate_dense, kernel_args,
        psi0.astype(np.complex128).copy(), N + 1, dt, n_steps, stride,
    )
