"""Collective anisotropic-XY Hamiltonian in banded Dicke-basis form.

H(t) = g0 * r(t) * K + h * M, with

    K = -(1/N) [ (J^2 - Jz^2) + (gamma/2)(J+^2 + J-^2) ]
      = -(1/N) [ (1+gamma) Jx^2 + (1-gamma) Jy^2 ],
    M = -Jz.

K is real pentadiagonal in the excitation-number basis (bands at offsets
0 and +-2), so applying H costs O(N) and needs no complex matrix storage.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spins import DickeVector, SpinSector, ladder_plus_coeff, m_values


@dataclass(frozen=True)
class LMGParams:
    """Coupling strength g0, anisotropy gamma, external field h (default 0)."""

    g0: float
    gamma: float
    h: float = 0.0

    def __post_init__(self):
        for name in ("g0", "gamma", "h"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class HamiltonianParts:
    """Cached bands of K and the diagonal of M for one (sector, gamma)."""

    sector: SpinSector
    gamma: float
    k_diag: np.ndarray = field(repr=False)   # K[n, n],   length N+1
    k_off: np.ndarray = field(repr=False)    # K[n, n+2], length N-1 (empty for N=1)
    m_diag: np.ndarray = field(repr=False)   # M[n, n] = -(n - N/2)


def build_parts(sector: SpinSector, params: LMGParams) -> HamiltonianParts:
    """Assemble the banded K and diagonal M for this sector and anisotropy."""
    N, j = sector.N, sector.j
    m = m_values(sector)
    k_diag = -(j * (j + 1) - m**2) / N
    # two successive raising steps: <n+2| J+^2 |n> = c+(m) c+(m+1)
    k_off = np.zeros(max(sector.dim - 2, 0))
    for n in range(sector.dim - 2):
        mm = n - j
        k_off[n] = -(params.gamma / (2 * N)) * ladder_plus_coeff(j, mm) * ladder_plus_coeff(j, mm + 1)
    return HamiltonianParts(sector, params.gamma, k_diag, k_off, -m)


def apply_hamiltonian(
    parts: HamiltonianParts, g0: float, h: float, r: float, psi: DickeVector
) -> DickeVector:
    """(g0*r*K + h*M) |psi>, via the three bands."""
    if psi.sector != parts.sector:
        raise ValueError(
            f"dimension mismatch: state N={psi.sector.N}, parts N={parts.sector.N}"
        )
    out = apply_raw(parts, g0 * r, h, psi.amplitudes)
    return DickeVector(psi.sector, out)


def apply_raw(parts: HamiltonianParts, g: float, h: float, amps: np.ndarray) -> np.ndarray:
    """Banded matvec on a bare amplitude array; g is the full coupling g0*r."""
    out = (g * parts.k_diag + h * parts.m_diag) * amps
    if parts.k_off.size:
        out[:-2] += g * parts.k_off * amps[2:]
        out[2:] += g * parts.k_off * amps[:-2]
    return out


def energy_expectation(
    parts: HamiltonianParts, g0: float, h: float, r: float, psi: DickeVector
) -> float:
    """Real part of <psi| H(t) |psi> (H is hermitian, so this is exact)."""
    hpsi = apply_raw(parts, g0 * r, h, psi.amplitudes)
    return float(np.vdot(psi.amplitudes, hpsi).real)
