"""Scalar diagnostics: excitation fraction, fidelity, block entropies, purity.

A symmetric state splits across an L-qubit block A and its complement B as

    |psi> = sum_k |k>_A sum_b c_{k+b} A(k+b, k) |b>_B,
    A(n, k) = sqrt( C(L,k) C(N-L, n-k) / C(N,n) ),

so the bipartition is captured by the small (L+1) x (N-L+1) matrix
Psi[k, b] = c_{k+b} A(k+b, k): the block reduced density matrix is
rho_A = Psi Psi^dagger and its eigenvalues p_k are the squared singular
values of Psi. No 2^N-dimensional object is ever formed. For a single
Dicke state |n> the p_k reduce to the hypergeometric weights
C(L,k) C(N-L, n-k) / C(N,n). Entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .spins import DickeVector, expectation_jz, inner_product


@dataclass
class BlockDistribution:
    """Block size L and probabilities p_k, k = 0..L (descending order)."""

    L: int
    probabilities: np.ndarray = field(repr=False)


def excitation_fraction(psi: DickeVector) -> float:
    """E = 1/2 + <Jz>/N, the fraction of excited qubits."""
    return 0.5 + expectation_jz(psi) / psi.sector.N


def fidelity(psi0: DickeVector, psi_t: DickeVector) -> float:
    """|<psi0|psi_t>|^2 (survival probability of the initial state)."""
    return abs(inner_product(psi0, psi_t)) ** 2


@lru_cache(maxsize=64)
def _log_binomials(N: int) -> tuple:
    lg = [math.lgamma(a + 1) for a in range(N + 1)]
    return tuple(lg)


@lru_cache(maxsize=64)
def block_weight_matrix(N: int, L: int) -> np.ndarray:
    """W[k, n] = C(L,k) C(N-L, n-k) / C(N,n), shape (L+1, N+1).

    The hypergeometric weights: diagonal of the block reduced matrix in the
    Dicke basis, and the exact block spectrum when psi is a single Dicke
    state. Computed with log-binomials; entries below 1e-300 flush to zero.
    """
    if not 1 <= L <= N - 1:
        raise ValueError(f"block size L={L} outside [1, {N - 1}] for N={N}")
    lb = _log_binomials(N)

    def logc(a, b):
        return lb[a] - lb[b] - lb[a - b]

    W = np.zeros((L + 1, N + 1))
    for k in range(L + 1):
        for n in range(N + 1):
            if 0 <= n - k <= N - L:
                lw = logc(L, k) + logc(N - L, n - k) - logc(N, n)
                if lw > -690.0:  # exp underflows to < 1e-300 below this
                    W[k, n] = math.exp(lw)
    return W


@lru_cache(maxsize=64)
def schmidt_weight_matrix(N: int, L: int) -> np.ndarray:
    """A2[k, b] = sqrt(C(L,k) C(N-L,b) / C(N,k+b)), shape (L+1, N-L+1).

    Elementwise weights of the bipartition matrix Psi[k, b] = c_{k+b} A2[k, b].
    """
    if not 1 <= L <= N - 1:
        raise ValueError(f"block size L={L} outside [1, {N - 1}] for N={N}")
    lb = _log_binomials(N)

    def logc(a, b):
        return lb[a] - lb[b] - lb[a - b]

    A2 = np.zeros((L + 1, N - L + 1))
    for k in range(L + 1):
        for b in range(N - L + 1):
            lw = logc(L, k) + logc(N - L, b) - logc(N, k + b)
            if lw > -1380.0:  # sqrt underflows below this
                A2[k, b] = math.exp(0.5 * lw)
    return A2


def _bipartition_matrix(amplitudes: np.ndarray, N: int, L: int) -> np.ndarray:
    A2 = schmidt_weight_matrix(N, L)
    k = np.arange(L + 1)[:, None]
    b = np.arange(N - L + 1)[None, :]
    return amplitudes[k + b] * A2


def block_probabilities(psi: DickeVector, L: int) -> BlockDistribution:
    """Spectrum of the L-qubit block reduced density matrix, descending."""
    Psi = _bipartition_matrix(np.asarray(psi.amplitudes), psi.sector.N, L)
    s = np.linalg.svd(Psi, compute_uv=False)
    p = np.zeros(L + 1)
    p[: s.shape[0]] = s**2
    np.clip(p, 0.0, None, out=p)
    return BlockDistribution(L, p)


def block_entropy(dist: BlockDistribution) -> float:
    """Von Neumann entropy of the block in bits, with 0 log 0 := 0."""
    p = dist.probabilities
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def block_linear_entropy(dist: BlockDistribution) -> float:
    """Linear entropy 1 - sum_k p_k^2 = 1 - Tr rho_A^2 of the block."""
    return float(1.0 - np.sum(dist.probabilities**2))


def purity(psi: DickeVector) -> float:
    """(sum |c_n|^2)^2; equals 1 up to twice the norm tolerance."""
    return float(np.sum(np.abs(psi.amplitudes) ** 2) ** 2)


def entropies_from_amp_records(
    amps: np.ndarray, N: int, L: int, chunk: int = 2048
) -> tuple[np.ndarray, np.ndarray]:
    """S_block and S_linear for stacked amplitude records (rows), via batched SVD."""
    A2 = schmidt_weight_matrix(N, L)
    k = np.arange(L + 1)[:, None]
    b = np.arange(N - L + 1)[None, :]
    idx = k + b
    R = amps.shape[0]
    s_block = np.empty(R)
    s_linear = np.empty(R)
    for lo in range(0, R, chunk):
        hi = min(lo + chunk, R)
        Psi = amps[lo:hi][:, idx] * A2[None, :, :]
        s = np.linalg.svd(Psi, compute_uv=False)
        p = s**2
        np.clip(p, 0.0, None, out=p)
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = np.where(p > 0.0, np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
        s_block[lo:hi] = -np.sum(p * logs, axis=1)
        s_linear[lo:hi] = 1.0 - np.sum(p**2, axis=1)
    return s_block, s_linear
