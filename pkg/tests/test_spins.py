import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lmgbrain import (
    DickeVector,
    SpinSector,
    dicke_state,
    dicke_state_fraction,
    expectation_jz,
    inner_product,
    ladder_minus_coeff,
    ladder_plus_coeff,
    m_values,
)
from conftest import random_state


def test_sector_basics():
    s = SpinSector(5)
    assert s.dim == 6
    assert s.j == 2.5
    # j = N/2 must be exact, not rounded
    assert SpinSector(7).j * 2 == 7


@pytest.mark.parametrize("bad", [0, -1, 2.5, "3"])
def test_sector_rejects_bad_N(bad):
    with pytest.raises(ValueError):
        SpinSector(bad)


def test_dicke_state_basis():
    psi = dicke_state(SpinSector(2), 0)
    assert np.array_equal(psi.amplitudes, [1, 0, 0])
    psi = dicke_state(SpinSector(80), 39)
    assert psi.amplitudes[39] == 1.0
    assert np.count_nonzero(psi.amplitudes) == 1


def test_dicke_state_out_of_range():
    with pytest.raises(ValueError, match="range"):
        dicke_state(SpinSector(4), 5)
    with pytest.raises(ValueError):
        dicke_state(SpinSector(4), -1)


def test_dicke_fraction_half_up():
    s = SpinSector(40)
    assert np.argmax(np.abs(dicke_state_fraction(s, 1.0).amplitudes)) == 40
    # 0.53 * 40 = 21.2 -> 21 under half-up rounding
    assert np.argmax(np.abs(dicke_state_fraction(s, 0.53).amplitudes)) == 21
    assert np.argmax(np.abs(dicke_state_fraction(s, 0.0).amplitudes)) == 0


def test_dicke_fraction_range():
    with pytest.raises(ValueError):
        dicke_state_fraction(SpinSector(4), 1.5)
    with pytest.raises(ValueError):
        dicke_state_fraction(SpinSector(4), -0.1)


@given(N=st.integers(1, 60), frac=st.floats(0.0, 1.0))
def test_dicke_fraction_rule(N, frac):
    n = int(np.argmax(np.abs(dicke_state_fraction(SpinSector(N), frac).amplitudes)))
    assert n == int(math.floor(frac * N + 0.5))


def test_m_values():
    assert np.array_equal(m_values(SpinSector(4)), [-2, -1, 0, 1, 2])
    m = m_values(SpinSector(3))
    assert np.allclose(m, [-1.5, -0.5, 0.5, 1.5])


def test_ladder_coeffs():
    # top of the ladder annihilates
    assert ladder_plus_coeff(2.0, 2.0) == 0.0
    assert ladder_minus_coeff(2.0, -2.0) == 0.0
    # j=1, m=-1: sqrt(1*2 - (-1)*0) = sqrt(2)
    assert ladder_plus_coeff(1.0, -1.0) == pytest.approx(math.sqrt(2))
    with pytest.raises(ValueError):
        ladder_plus_coeff(1.0, 1.5)


def test_vector_shape_check():
    with pytest.raises(ValueError, match="shape"):
        DickeVector(SpinSector(3), np.zeros(3))


def test_inner_product_and_mismatch(rng):
    a = random_state(rng, 6)
    b = random_state(rng, 6)
    ip = inner_product(a, b)
    assert ip == pytest.approx(np.vdot(a.amplitudes, b.amplitudes))
    assert inner_product(a, a).real == pytest.approx(1.0)
    with pytest.raises(ValueError, match="mismatch"):
        inner_product(a, random_state(rng, 5))


def test_expectation_jz_dicke():
    for N in (2, 5, 8):
        for n in range(N + 1):
            psi = dicke_state(SpinSector(N), n)
            assert expectation_jz(psi) == pytest.approx(n - N / 2)


@given(N=st.integers(1, 30), seed=st.integers(0, 10**6))
def test_expectation_jz_bounds(N, seed):
    psi = random_state(np.random.default_rng(seed), N)
    jz = expectation_jz(psi)
    assert -N / 2 - 1e-9 <= jz <= N / 2 + 1e-9
