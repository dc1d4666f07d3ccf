import numpy as np
import pytest

from lmgbrain import (
    LMGParams,
    SpinSector,
    apply_hamiltonian,
    build_parts,
    dicke_state,
    energy_expectation,
    m_values,
)
from lmgbrain.hamiltonian import apply_raw
from lmgbrain.spins import ladder_minus_coeff, ladder_plus_coeff
from conftest import random_state


def dense_matrix(parts, g, h):
    """Naive dense H from the stored bands."""
    dim = parts.sector.dim
    H = np.diag(g * parts.k_diag + h * parts.m_diag)
    for n in range(dim - 2):
        H[n, n + 2] = H[n + 2, n] = g * parts.k_off[n]
    return H


def ladder_dense(N):
    """Jx, Jy, Jz as dense (N+1)x(N+1) matrices from ladder coefficients."""
    j = N / 2
    dim = N + 1
    Jp = np.zeros((dim, dim))
    for n in range(dim - 1):
        Jp[n + 1, n] = ladder_plus_coeff(j, n - j)
    Jm = Jp.T
    Jx = (Jp + Jm) / 2
    Jy = (Jp - Jm) / (2j)
    Jz = np.diag(np.arange(dim) - j)
    return Jx, Jy, Jz


def test_k_matrix_N2_gamma1():
    parts = build_parts(SpinSector(2), LMGParams(g0=1.0, gamma=1.0))
    K = dense_matrix(parts, 1.0, 0.0)
    expected = np.array([[-0.5, 0, -0.5], [0, -1, 0], [-0.5, 0, -0.5]])
    assert np.allclose(K, expected, atol=1e-14)


def test_k_offband_zero_gamma0():
    parts = build_parts(SpinSector(6), LMGParams(g0=1.0, gamma=0.0))
    assert np.all(parts.k_off == 0.0)


def test_m_diag():
    for N in (2, 5, 9):
        parts = build_parts(SpinSector(N), LMGParams(g0=1.0, gamma=0.5))
        assert parts.m_diag[N] == -N / 2
        assert np.allclose(parts.m_diag, -(np.arange(N + 1) - N / 2))


def test_apply_examples():
    sector = SpinSector(2)
    parts = build_parts(sector, LMGParams(g0=1.0, gamma=1.0))
    out = apply_hamiltonian(parts, 1.0, 0.0, 0.0, dicke_state(sector, 1))
    assert np.allclose(out.amplitudes, 0.0)  # r = 0 kills H when h = 0
    out = apply_hamiltonian(parts, 1.0, 0.0, 1.0, dicke_state(sector, 1))
    assert np.allclose(out.amplitudes, [0, -1, 0])
    out = apply_hamiltonian(parts, 1.0, 0.0, 1.0, dicke_state(sector, 0))
    assert np.allclose(out.amplitudes, [-0.5, 0, -0.5])


def test_apply_dimension_mismatch(rng):
    parts = build_parts(SpinSector(4), LMGParams(g0=1.0, gamma=1.0))
    with pytest.raises(ValueError, match="mismatch"):
        apply_hamiltonian(parts, 1.0, 0.0, 1.0, random_state(rng, 5))


def test_energy_examples(rng):
    sector = SpinSector(2)
    parts = build_parts(sector, LMGParams(g0=1.0, gamma=1.0))
    assert energy_expectation(parts, 1.0, 0.0, 1.0, dicke_state(sector, 1)) == pytest.approx(-1.0)
    # linearity in r at h=0
    psi = random_state(rng, 2)
    e1 = energy_expectation(parts, 1.0, 0.0, 1.0, psi)
    assert energy_expectation(parts, 1.0, 0.0, 0.3, psi) == pytest.approx(0.3 * e1)


def test_energy_eigenvector():
    parts = build_parts(SpinSector(8), LMGParams(g0=1.3, gamma=0.7))
    H = dense_matrix(parts, 1.3, 0.0)
    w, v = np.linalg.eigh(H)
    from lmgbrain import DickeVector
    psi = DickeVector(SpinSector(8), v[:, 0].astype(complex))
    assert energy_expectation(parts, 1.3, 0.0, 1.0, psi) == pytest.approx(w[0])


def test_hermiticity(rng):
    parts = build_parts(SpinSector(12), LMGParams(g0=0.7, gamma=0.9, h=0.2))
    for _ in range(5):
        a = random_state(rng, 12)
        b = random_state(rng, 12)
        hb = apply_raw(parts, 0.7, 0.2, b.amplitudes)
        ha = apply_raw(parts, 0.7, 0.2, a.amplitudes)
        lhs = np.vdot(a.amplitudes, hb)
        rhs = np.conj(np.vdot(b.amplitudes, ha))
        assert abs(lhs - rhs) < 1e-12


def test_parity_symmetry(rng):
    # H commutes with the m -> -m flip (n -> N-n) when h = 0
    N = 11
    parts = build_parts(SpinSector(N), LMGParams(g0=1.1, gamma=0.8))
    for _ in range(5):
        psi = random_state(rng, N).amplitudes
        hp = apply_raw(parts, 1.1, 0.0, psi)
        ph = apply_raw(parts, 1.1, 0.0, psi[::-1].copy())[::-1]
        assert np.max(np.abs(hp - ph)) < 1e-12


@pytest.mark.parametrize("N", [2, 5, 10, 20])
@pytest.mark.parametrize("gamma", [0.0, 0.8, 1.0])
def test_banded_matches_ladder_construction(N, gamma, rng):
    """Bands built via the (J^2 - Jz^2) identity equal the direct
    -(1/N)[(1+gamma)Jx^2 + (1-gamma)Jy^2] construction."""
    parts = build_parts(SpinSector(N), LMGParams(g0=1.0, gamma=gamma))
    Jx, Jy, Jz = ladder_dense(N)
    K_direct = -((1 + gamma) * Jx @ Jx + (1 - gamma) * Jy @ Jy) / N
    assert np.max(np.abs(K_direct.imag)) < 1e-12
    K_banded = dense_matrix(parts, 1.0, 0.0)
    assert np.max(np.abs(K_banded - K_direct.real)) < 1e-12
    psi = random_state(rng, N)
    out = apply_raw(parts, 0.9, 0.15, psi.amplitudes)
    M = np.diag(-(np.arange(N + 1) - N / 2))
    ref = (0.9 * K_direct.real + 0.15 * M) @ psi.amplitudes
    assert np.max(np.abs(out - ref)) < 1e-12


def test_eigen_spectrum_identity():
    for N in (4, 7, 10):
        parts = build_parts(SpinSector(N), LMGParams(g0=1.0, gamma=1.0))
        Jx, _, _ = ladder_dense(N)
        ref = np.linalg.eigvalsh(-2.0 * (Jx @ Jx).real / N)
        got = np.linalg.eigvalsh(dense_matrix(parts, 1.0, 0.0))
        assert np.max(np.abs(ref - got)) < 1e-10


def test_params_reject_nonfinite():
    with pytest.raises(ValueError):
        LMGParams(g0=np.nan, gamma=1.0)
    with pytest.raises(ValueError):
        LMGParams(g0=1.0, gamma=np.inf)
