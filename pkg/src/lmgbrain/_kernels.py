"""Numba integration kernels for the coupled (psi, r, U) system.

Both kernels advance the fully coupled state with classical fixed-step RK4;
the quantum and classical derivatives are evaluated on the same stage values
(no operator splitting). The banded kernel works in the (N+1)-dimensional
Dicke sector; the dense kernel is the 2^N brute-force path.

Status codes: 0 ok, 1 norm drift beyond tolerance, 2 r/U left [-1e-6, 1+1e-6],
3 state left the symmetric sector (dense kernel only).
"""

import numpy as np
from numba import njit

BOUND_SLACK = 1e-6
LEAK_TOL = 1e-8


@njit(cache=True)
def _hpsi_banded(out, psi, kdiag, koff, mdiag, g, h):
    dim = psi.shape[0]
    for i in range(dim):
        out[i] = (g * kdiag[i] + h * mdiag[i]) * psi[i]
    for i in range(dim - 2):
        c = g * koff[i]
        out[i] += c * psi[i + 2]
        out[i + 2] += c * psi[i]


@njit(cache=True)
def _excitation(psi, mvals, N):
    jz = 0.0
    for i in range(psi.shape[0]):
        jz += mvals[i] * (psi[i].real * psi[i].real + psi[i].imag * psi[i].imag)
    return 0.5 + jz / N


@njit(cache=True)
def _plasticity_derivs(r, U, E, tau_r, tau_f, U_base, dep_on, fac_on):
    dr = 0.0
    dU = 0.0
    if dep_on:
        dr = (1.0 - r) / tau_r - U * r * E
    if fac_on:
        dU = (U_base - U) / tau_f + U_base * (1.0 - U) * E
    return dr, dU


@njit(cache=True)
def integrate_banded(
    psi, r, U,
    kdiag, koff, mdiag, mvals,
    g0, h, tau_r, tau_f, U_base, dep_on, fac_on,
    dt, n_steps, stride, renorm, norm_tol,
    out_t, out_E, out_r, out_U, out_fid, out_energy, out_norm, out_amps,
):
    dim = psi.shape[0]
    N = dim - 1
    psi0 = psi.copy()
    hp = np.empty(dim, dtype=np.complex128)
    ys = np.empty(dim, dtype=np.complex128)
    k1 = np.empty(dim, dtype=np.complex128)
    k2 = np.empty(dim, dtype=np.complex128)
    k3 = np.empty(dim, dtype=np.complex128)
    k4 = np.empty(dim, dtype=np.complex128)

    rec = 0

    # initial record
    out_t[rec] = 0.0
    out_E[rec] = _excitation(psi, mvals, N)
    out_r[rec] = r
    out_U[rec] = U
    fid_re = 0.0
    fid_im = 0.0
    for i in range(dim):
        fid_re += psi0[i].real * psi[i].real + psi0[i].imag * psi[i].imag
        fid_im += psi0[i].real * psi[i].imag - psi0[i].imag * psi[i].real
    out_fid[rec] = fid_re * fid_re + fid_im * fid_im
    _hpsi_banded(hp, psi, kdiag, koff, mdiag, g0 * r, h)
    en = 0.0
    nrm2 = 0.0
    for i in range(dim):
        en += psi[i].real * hp[i].real + psi[i].imag * hp[i].imag
        nrm2 += psi[i].real * psi[i].real + psi[i].imag * psi[i].imag
        out_amps[rec, i] = psi[i]
    out_energy[rec] = en
    out_norm[rec] = np.sqrt(nrm2)
    rec += 1

    for step in range(1, n_steps + 1):
        # stage 1
        E = _excitation(psi, mvals, N)
        _hpsi_banded(hp, psi, kdiag, koff, mdiag, g0 * r, h)
        for i in range(dim):
            k1[i] = -1j * hp[i]
        dr1, dU1 = _plasticity_derivs(r, U, E, tau_r, tau_f, U_base, dep_on, fac_on)

        # stage 2
        for i in range(dim):
            ys[i] = psi[i] + 0.5 * dt * k1[i]
        r2 = r + 0.5 * dt * dr1
        U2 = U + 0.5 * dt * dU1
        E = _excitation(ys, mvals, N)
        _hpsi_banded(hp, ys, kdiag, koff, mdiag, g0 * r2, h)
        for i in range(dim):
            k2[i] = -1j * hp[i]
        dr2, dU2 = _plasticity_derivs(r2, U2, E, tau_r, tau_f, U_base, dep_on, fac_on)

        # stage 3
        for i in range(dim):
            ys[i] = psi[i] + 0.5 * dt * k2[i]
        r3 = r + 0.5 * dt * dr2
        U3 = U + 0.5 * dt * dU2
        E = _excitation(ys, mvals, N)
        _hpsi_banded(hp, ys, kdiag, koff, mdiag, g0 * r3, h)
        for i in range(dim):
            k3[i] = -1j * hp[i]
        dr3, dU3 = _plasticity_derivs(r3, U3, E, tau_r, tau_f, U_base, dep_on, fac_on)

        # stage 4
        for i in range(dim):
            ys[i] = psi[i] + dt * k3[i]
        r4 = r + dt * dr3
        U4 = U + dt * dU3
        E = _excitation(ys, mvals, N)
        _hpsi_banded(hp, ys, kdiag, koff, mdiag, g0 * r4, h)
        for i in range(dim):
            k4[i] = -1j * hp[i]
        dr4, dU4 = _plasticity_derivs(r4, U4, E, tau_r, tau_f, U_base, dep_on, fac_on)

        sixth = dt / 6.0
        for i in range(dim):
            psi[i] = psi[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        r = r + sixth * (dr1 + 2.0 * dr2 + 2.0 * dr3 + dr4)
        U = U + sixth * (dU1 + 2.0 * dU2 + 2.0 * dU3 + dU4)

        nrm2 = 0.0
        for i in range(dim):
            nrm2 += psi[i].real * psi[i].real + psi[i].imag * psi[i].imag
        nrm = np.sqrt(nrm2)
        if renorm:
            inv = 1.0 / nrm
            for i in range(dim):
                psi[i] *= inv
            nrm = 1.0
        elif abs(nrm - 1.0) > norm_tol:
            return 1, step
        if r < -BOUND_SLACK or r > 1.0 + BOUND_SLACK or U < -BOUND_SLACK or U > 1.0 + BOUND_SLACK:
            return 2, step

        if step % stride == 0 or step == n_steps:
            out_t[rec] = step * dt
            out_E[rec] = _excitation(psi, mvals, N)
            out_r[rec] = r
            out_U[rec] = U
            fid_re = 0.0
            fid_im = 0.0
            for i in range(dim):
                fid_re += psi0[i].real * psi[i].real + psi0[i].imag * psi[i].imag
                fid_im += psi0[i].real * psi[i].imag - psi0[i].imag * psi[i].real
            out_fid[rec] = fid_re * fid_re + fid_im * fid_im
            _hpsi_banded(hp, psi, kdiag, koff, mdiag, g0 * r, h)
            en = 0.0
            for i in range(dim):
                en += psi[i].real * hp[i].real + psi[i].imag * hp[i].imag
                out_amps[rec, i] = psi[i]
            out_energy[rec] = en
            out_norm[rec] = nrm
            rec += 1

    return 0, n_steps


@njit(cache=True)
def _hpsi_dense(out, psi, K, jzdiag, g, h):
    dim = psi.shape[0]
    for i in range(dim):
        acc = 0.0 + 0.0j
        row = K[i]
        for jj in range(dim):
            acc += row[jj] * psi[jj]
        out[i] = g * acc - h * jzdiag[i] * psi[i]  # M = -Jz


@njit(cache=True)
def _excitation_full(psi, jzdiag, N):
    jz = 0.0
    for i in range(psi.shape[0]):
        jz += jzdiag[i] * (psi[i].real * psi[i].real + psi[i].imag * psi[i].imag)
    return 0.5 + jz / N


@njit(cache=True)
def integrate_dense(
    psi, r, U,
    K, jzdiag, proj, N,
    g0, h, tau_r, tau_f, U_base, dep_on, fac_on,
    dt, n_steps, stride, renorm, norm_tol,
    out_t, out_E, out_r, out_U, out_fid, out_energy, out_norm, out_amps,
):
    dim = psi.shape[0]
    nsec = N + 1
    psi0 = psi.copy()
    hp = np.empty(dim, dtype=np.complex128)
    ys = np.empty(dim, dtype=np.complex128)
    k1 = np.empty(dim, dtype=np.complex128)
    k2 = np.empty(dim, dtype=np.complex128)
    k3 = np.empty(dim, dtype=np.complex128)
    k4 = np.empty(dim, dtype=np.complex128)
    c = np.empty(nsec, dtype=np.complex128)

    rec = 0
    step = 0
    while True:
        if step == 0 or step % stride == 0 or step == n_steps:
            nrm2 = 0.0
            for i in range(dim):
                nrm2 += psi[i].real * psi[i].real + psi[i].imag * psi[i].imag
            # project onto the symmetric sector
            csum = 0.0
            for n in range(nsec):
                acc = 0.0 + 0.0j
                for b in range(dim):
                    acc += proj[n, b] * psi[b]
                c[n] = acc
                out_amps[rec, n] = acc
                csum += acc.real * acc.real + acc.imag * acc.imag
            if nrm2 - csum > LEAK_TOL:
                return 3, step
            out_t[rec] = step * dt
            out_E[rec] = _excitation_full(psi, jzdiag, N)
            out_r[rec] = r
            out_U[rec] = U
            fid_re = 0.0
            fid_im = 0.0
            for i in range(dim):
                fid_re += psi0[i].real * psi[i].real + psi0[i].imag * psi[i].imag
                fid_im += psi0[i].real * psi[i].imag - psi0[i].imag * psi[i].real
            out_fid[rec] = fid_re * fid_re + fid_im * fid_im
            _hpsi_dense(hp, psi, K, jzdiag, g0 * r, h)
            en = 0.0
            for i in range(dim):
                en += psi[i].real * hp[i].real + psi[i].imag * hp[i].imag
            out_energy[rec] = en
            out_norm[rec] = np.sqrt(nrm2)
            rec += 1
        if step == n_steps:
            break
        step += 1

        E = _excitation_full(psi, jzdiag, N)
        _hpsi_dense(hp, psi, K, jzdiag, g0 * r, h)
        for i in range(dim):
            k1[i] = -1j * hp[i]
        dr1, dU1 = _plasticity_derivs(r, U, E, tau_r, tau_f, U_base, dep_on, fac_on)

        for i in range(dim):
            ys[i] = psi[i] + 0.5 * dt * k1[i]
        r2 = r + 0.5 * dt * dr1
        U2 = U + 0.5 * dt * dU1
        E = _excitation_full(ys, jzdiag, N)
        _hpsi_dense(hp, ys, K, jzdiag, g0 * r2, h)
        for i in range(dim):
            k2[i] = -1j * hp[i]
        dr2, dU2 = _plasticity_derivs(r2, U2, E, tau_r, tau_f, U_base, dep_on, fac_on)

        for i in range(dim):
            ys[i] = psi[i] + 0.5 * dt * k2[i]
        r3 = r + 0.5 * dt * dr2
        U3 = U + 0.5 * dt * dU2
        E = _excitation_full(ys, jzdiag, N)
        _hpsi_dense(hp, ys, K, jzdiag, g0 * r3, h)
        for i in range(dim):
            k3[i] = -1j * hp[i]
        dr3, dU3 = _plasticity_derivs(r3, U3, E, tau_r, tau_f, U_base, dep_on, fac_on)

        for i in range(dim):
            ys[i] = psi[i] + dt * k3[i]
        r4 = r + dt * dr3
        U4 = U + dt * dU3
        E = _excitation_full(ys, jzdiag, N)
        _hpsi_dense(hp, ys, K, jzdiag, g0 * r4, h)
        for i in range(dim):
            k4[i] = -1j * hp[i]
        dr4, dU4 = _plasticity_derivs(r4, U4, E, tau_r, tau_f, U_base, dep_on, fac_on)

        sixth = dt / 6.0
        for i in range(dim):
            psi[i] = psi[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        r = r + sixth * (dr1 + 2.0 * dr2 + 2.0 * dr3 + dr4)
        U = U + sixth * (dU1 + 2.0 * dU2 + 2.0 * dU3 + dU4)

        nrm2 = 0.0
        for i in range(dim):
            nrm2 += psi[i].real * psi[i].real + psi[i].imag * psi[i].imag
        nrm = np.sqrt(nrm2)
        if renorm:
            inv = 1.0 / nrm
            for i in range(dim):
                psi[i] *= inv
        elif abs(nrm - 1.0) > norm_tol:
            return 1, step
        if r < -BOUND_SLACK or r > 1.0 + BOUND_SLACK or U < -BOUND_SLACK or U > 1.0 + BOUND_SLACK:
            return 2, step

    return 0, n_steps
