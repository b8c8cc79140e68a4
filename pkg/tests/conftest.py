import numpy as np
import pytest
from scipy.linalg import expm

from husimi_cwt.fock import mode_operator


def operator_series_state(A, B, lam, cutoff):
    """``exp(A a1^+ + B a2^+ + lam a1^+ a2^+)|00>`` by dense expm.

    The exponent only raises occupations, so its truncated matrix gives the
    exact amplitudes up to ``cutoff``.
    """
    gen = A * mode_operator("a1+", cutoff) + B * mode_operator("a2+", cutoff)
    gen = gen + lam * mode_operator("a1+", cutoff) @ mode_operator("a2+", cutoff)
    return expm(gen)[:, 0].reshape(cutoff + 1, cutoff + 1)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
