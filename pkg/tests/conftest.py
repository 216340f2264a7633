import numpy as np
import pytest

from srsc.params import SrscParams


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def small_params():
    """Asymmetric w=2 chain small enough for exhaustive-ish checks."""
    return SrscParams(m1=12, m2=12, q1=2, q2=3, w=2, nu1=5, nu2=5, t1=2, t2=2)


@pytest.fixture
def small_params_w3():
    return SrscParams(m1=12, m2=12, q1=2, q2=2, w=3, nu1=5, nu2=5, t1=2, t2=2)
