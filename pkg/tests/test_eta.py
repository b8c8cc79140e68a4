import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from husimi_cwt.eta import (
    admissibility_integral,
    conj_wavefunction_continued,
    eta_overlap_fock,
    eta_overlap_table,
    eta_wavefunction,
)
from husimi_cwt.fock import TwoModeState, make_coherent, make_fock, make_tmsv, mode_operator, normalize
from husimi_cwt.quad import gauss_hermite

from conftest import operator_series_state

ETA = 0.6 - 0.45j


def eta_ket_oracle(eta, cutoff):
    """``<m,n|eta>`` from ``exp(-|eta|^2/2 + eta a1^+ - eta* a2^+ + a1^+ a2^+)|00>``.

    The exponent only raises occupations, so truncating it is exact.
    """
    return operator_series_state(eta, -np.conj(eta), 1.0, cutoff) * np.exp(-abs(eta) ** 2 / 2)


def test_overlap_low_orders():
    g = math.exp(-abs(ETA) ** 2 / 2)
    assert abs(eta_overlap_fock(0, 0, ETA) - g) < 1e-15
    assert abs(eta_overlap_fock(1, 0, ETA) - np.conj(ETA) * g) < 1e-15
    assert abs(eta_overlap_fock(0, 1, ETA) + ETA * g) < 1e-15
    assert abs(eta_overlap_fock(1, 1, ETA) - (1 - abs(ETA) ** 2) * g) < 1e-15


def test_overlap_table_matches_operator_series():
    for eta in (ETA, 1.2 + 0.3j, -0.2j):
        ref = eta_ket_oracle(eta, 8).conj()
        np.testing.assert_allclose(eta_overlap_table(8, eta), ref, atol=1e-12)


def test_wavefunction_examples():
    vac = make_fock(0, 0, 3)
    assert abs(eta_wavefunction(vac, ETA) - math.exp(-abs(ETA) ** 2 / 2)) < 1e-15
    assert eta_wavefunction(make_fock(1, 0, 3), 0) == 0
    psi = make_tmsv(0.5, 20)
    ref = np.vdot(eta_ket_oracle(1.0, 20), psi.coeffs)
    assert abs(eta_wavefunction(psi, 1.0) - ref) < 1e-9


def test_wavefunction_vectorized():
    psi = make_coherent(0.3, -0.2j, 15)
    etas = np.array([[0.1, -0.5j], [1.0 + 1j, 0.0]])
    out = eta_wavefunction(psi, etas)
    assert out.shape == (2, 2)
    assert abs(out[1, 0] - eta_wavefunction(psi, 1 + 1j)) < 1e-15


def test_eigenvector_weak_form():
    # <eta|(Q1 - Q2)|phi> = sqrt(2) eta_1 <eta|phi> for a smooth test state, to truncation accuracy
    N = 30
    phi = make_coherent(0.4 - 0.1j, 0.2j, N)
    v = eta_overlap_table(N, ETA).reshape(-1)
    for which, val in (("Q1-Q2", math.sqrt(2) * ETA.real), ("P1+P2", math.sqrt(2) * ETA.imag)):
        lhs = v @ mode_operator(which, N) @ phi.vector
        rhs = val * (v @ phi.vector)
        assert abs(lhs - rhs) < 1e-12


def test_eigenvector_residual_is_boundary_tail():
    # the strong residual is exactly what the dropped occupation N+1 would have contributed
    for N in (10, 15, 20):
        v = eta_overlap_table(N, ETA)
        r = (v.reshape(-1) @ mode_operator("Q1-Q2", N) - math.sqrt(2) * ETA.real * v.reshape(-1)).reshape(N + 1, N + 1)
        assert np.max(np.abs(r[:N, :N])) < 1e-12
        outer = eta_overlap_table(N + 1, ETA)
        tail = np.zeros_like(r)
        k = math.sqrt((N + 1) / 2)
        tail[N, :] -= k * outer[N + 1, : N + 1]
        tail[:, N] += k * outer[: N + 1, N + 1]
        np.testing.assert_allclose(r, tail, atol=1e-12)


def test_resolution_of_identity():
    rule = gauss_hermite(40)
    t = rule.nodes
    eta = (t[:, None] + 1j * t[None, :]).reshape(-1)
    w = np.outer(rule.weights, rule.weights).reshape(-1) * np.exp(np.abs(eta) ** 2)
    vals = eta_overlap_table(5, eta).reshape(36, -1)
    gram = (vals.conj() * w) @ vals.T / np.pi
    assert np.max(np.abs(gram - np.eye(36))) < 1e-8


def test_continuation_examples():
    vac = make_fock(0, 0, 2)
    assert conj_wavefunction_continued(vac, 2.0, 0.0) == 1
    xi, xi_t = 1 + 1j, 2.0
    got = conj_wavefunction_continued(make_fock(1, 0, 2), xi, xi_t)
    assert abs(got - np.exp(-(1 + 1j)) * (1 + 1j)) < 1e-15


def test_continuation_cross_term():
    # |1,1>: H_{1,1}(xi, -xi~) = 1 - xi xi~
    xi, xi_t = 0.3 + 0.2j, -0.7 + 0.1j
    got = conj_wavefunction_continued(make_fock(1, 1, 3), xi, xi_t)
    assert abs(got - (1 - xi * xi_t) * np.exp(-xi * xi_t / 2)) < 1e-15


coord = st.floats(-2, 2, allow_nan=False)


@given(st.lists(st.complex_numbers(max_magnitude=1, allow_nan=False, allow_infinity=False),
                min_size=16, max_size=16).filter(lambda c: sum(abs(x) ** 2 for x in c) > 1e-3),
       coord, coord)
@settings(max_examples=100, deadline=None)
def test_continuation_reduces_to_conjugate(coeffs, x, y):
    psi = normalize(TwoModeState(np.array(coeffs).reshape(4, 4)))
    eta = complex(x, y)
    lhs = conj_wavefunction_continued(psi, eta, np.conj(eta))
    assert abs(lhs - np.conj(eta_wavefunction(psi, eta))) < 1e-12


def test_admissibility():
    assert abs(admissibility_integral(make_fock(0, 0, 4)) - 1) < 1e-12
    assert abs(admissibility_integral(make_fock(1, 0, 4))) < 1e-12
    assert abs(admissibility_integral(make_fock(1, 1, 4)) + 1) < 1e-12


def test_overlap_rejects_negative():
    with pytest.raises(ValueError):
        eta_overlap_fock(-1, 0, 0.1)
