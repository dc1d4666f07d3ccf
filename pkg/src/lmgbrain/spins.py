"""Dicke-basis representation of the symmetric (j = N/2) collective-spin subspace.

States are indexed by the excitation number n = 0..N (number of excited
qubits); the magnetic quantum number is m = n - j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SpinSector:
    """Symmetric subspace of N qubits: total spin j = N/2, dimension N + 1."""

    N: int

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")

    @property
    def j(self) -> float:
        # exact: N/2 is representable in binary floating point
        return self.N / 2

    @property
    def dim(self) -> int:
        return self.N + 1


@dataclass
class DickeVector:
    """Complex amplitudes c_n over excitation numbers n = 0..N."""

    sector: SpinSector
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.sector.dim,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, "
                f"expected ({self.sector.dim},) for N={self.sector.N}"
            )
        self.amplitudes = amps

    def copy(self) -> "DickeVector":
        return DickeVector(self.sector, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def dicke_state(sector: SpinSector, n_excited: int) -> DickeVector:
    """Basis state with exactly n_excited excited qubits."""
    if not 0 <= n_excited <= sector.N:
        raise ValueError(
            f"n_excited={n_excited} out of range [0, {sector.N}] for N={sector.N}"
        )
    amps = np.zeros(sector.dim, dtype=np.complex128)
    amps[n_excited] = 1.0
    return DickeVector(sector, amps)


def dicke_state_fraction(sector: SpinSector, fraction: float) -> DickeVector:
    """Basis state with round(fraction * N) excited qubits (half-up rounding)."""
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction={fraction} outside [0, 1]")
    n = int(math.floor(fraction * sector.N + 0.5))
    return dicke_state(sector, n)


def m_values(sector: SpinSector) -> np.ndarray:
    """Magnetic quantum numbers m = n - j in index order n = 0..N."""
    return np.arange(sector.dim, dtype=np.float64) - sector.j


def ladder_plus_coeff(j: float, m: float) -> float:
    """Raising coefficient sqrt(j(j+1) - m(m+1)); zero at the top of the ladder."""
    if not -j <= m <= j:
        raise ValueError(f"m={m} outside [-j, j] for j={j}")
    return math.sqrt(j * (j + 1) - m * (m + 1))


def ladder_minus_coeff(j: float, m: float) -> float:
    """Lowering coefficient sqrt(j(j+1) - m(m-1))."""
    if not -j <= m <= j:
        raise ValueError(f"m={m} outside [-j, j] for j={j}")
    return math.sqrt(j * (j + 1) - m * (m - 1))


def inner_product(a: DickeVector, b: DickeVector) -> complex:
    """<a|b> = sum_n conj(a_n) b_n."""
    if a.sector != b.sector:
        raise ValueError(
            f"sector mismatch: N={a.sector.N} vs N={b.sector.N}"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def expectation_jz(psi: DickeVector) -> float:
    """<J_z> = sum_n m(n) |c_n|^2 for a (near-)normalized state."""
    return float(np.dot(m_values(psi.sector), np.abs(psi.amplitudes) ** 2))
