import numpy as np
import pytest

from lmgbrain import DickeVector, SpinSector


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_state(rng, N):
    """Normalized random complex Dicke vector."""
    c = rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1)
    c /= np.linalg.norm(c)
    return DickeVector(SpinSector(N), c)
