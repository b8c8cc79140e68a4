import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_laguerre

from husimi_cwt.fock import NumericGuardError, TwoModeState, make_coherent, make_fock, make_tmsv, normalize
from husimi_cwt.husimi import (
    PhasePoint,
    WignerFunction,
    husimi_coherent_closed_form,
    husimi_overlap_values,
    husimi_route_cwt,
    husimi_route_overlap,
    husimi_route_smoothing,
    map_phase_point,
    normalization_check,
    squeezed_coherent_fock,
    squeezed_coherent_params,
    wigner_value,
)
from husimi_cwt.quad import gauss_hermite, integrate_c2
from husimi_cwt.verify import phase_grid, vacuum_husimi

from conftest import operator_series_state

RULE = gauss_hermite(64)
RULE32 = gauss_hermite(32)


def raw_map(p):
    """Translation components written out as in the original parametrization."""
    k = p.kappa
    lam = 0.5 * math.log(k)
    s, g = p.sigma, p.gamma
    z1 = math.cosh(lam) / (1 + k) * (np.conj(g) - g - k * (np.conj(s) + s))
    z2 = 1j * math.cosh(lam) / (1 + k) * (g + np.conj(g) + k * (s - np.conj(s)))
    return z1 + 1j * z2, z1 - 1j * z2


def wigner_single(n, x):
    return 2 / np.pi * (-1) ** n * eval_laguerre(n, 4 * abs(x) ** 2) * np.exp(-2 * abs(x) ** 2)


def test_phase_point_validation():
    with pytest.raises(ValueError):
        PhasePoint(0, 0, 0)
    with pytest.raises(ValueError):
        PhasePoint(0, 0, -1.0)


def test_params():
    prm = squeezed_coherent_params(PhasePoint(0.4 - 1j, 0.3j, 1.0))
    assert prm.Lam == 0
    assert abs(prm.A - (0.4 - 1j + 0.3j) / 2) < 1e-16
    assert abs(prm.B - (np.conj(0.3j) - np.conj(0.4 - 1j)) / 2) < 1e-16
    for k in (1e-3, 0.5, 2, 1e3):
        assert abs(squeezed_coherent_params(PhasePoint(0, 0, k)).Lam) < 1


def test_map_examples():
    q = map_phase_point(PhasePoint(0, 0, 3.0))
    assert q.z == 0 and q.z_tilde == 0 and abs(q.mu - math.sqrt(3)) < 1e-16
    q = map_phase_point(PhasePoint(1, 0, 1))
    assert q.z == -1 and q.z_tilde == -1
    q = map_phase_point(PhasePoint(0, 1j, 1))
    assert q.z == -1j and q.z_tilde == -1j
    assert not q.is_ordinary


@pytest.mark.parametrize("p", phase_grid()[::4])
def test_map_matches_raw_components(p):
    q = map_phase_point(p)
    z, zt = raw_map(p)
    assert abs(q.z - z) < 1e-14 and abs(q.z_tilde - zt) < 1e-14


def test_squeezed_coherent_vacuum_and_coherent():
    np.testing.assert_allclose(squeezed_coherent_fock(PhasePoint(0, 0, 1), 5).coeffs, make_fock(0, 0, 5).coeffs)
    s, g = 0.5 - 0.3j, -0.2 + 0.6j
    ref = make_coherent((s + g) / 2, (np.conj(g) - np.conj(s)) / 2, 20)
    np.testing.assert_allclose(squeezed_coherent_fock(PhasePoint(s, g, 1), 20).coeffs, ref.coeffs, atol=1e-10)


def test_squeezed_coherent_operator_oracle():
    p = PhasePoint(0.3, 0.1j, 4.0)
    prm = squeezed_coherent_params(p)
    ref = prm.C * operator_series_state(prm.A, prm.B, prm.Lam, 25)
    np.testing.assert_allclose(squeezed_coherent_fock(p, 25).coeffs, ref, atol=1e-9)


def test_squeezed_coherent_norm():
    for p in phase_grid():
        assert abs(squeezed_coherent_fock(p, 25).captured_norm - 1) < 1e-6


def test_eq22_phase_is_pure_phase():
    for p in phase_grid():
        x = p.sigma * np.conj(p.gamma) - p.gamma * np.conj(p.sigma)
        assert abs(x.real) < 1e-15
        assert abs(abs(np.exp(-x / (2 * (p.kappa + 1)))) - 1) < 1e-15


def test_route_overlap_examples():
    vac = make_fock(0, 0, 25)
    for p in phase_grid():
        assert abs(husimi_route_overlap(vac, p) - vacuum_husimi(p)) < 1e-14
    assert abs(husimi_route_overlap(vac, PhasePoint(0, 0, 1)) - 1) < 1e-15
    for k in (0.5, 1, 3):
        assert husimi_route_overlap(make_fock(1, 0, 25), PhasePoint(0, 0, k)) == 0


def test_route_overlap_kappa_one_is_q_function():
    s, g = 0.7 + 0.2j, -0.1 - 0.9j
    a, b = (s + g) / 2, (np.conj(g) - np.conj(s)) / 2
    for m, n in ((0, 0), (1, 0), (2, 1), (3, 3)):
        q = math.exp(-abs(a) ** 2 - abs(b) ** 2) * abs(a) ** (2 * m) * abs(b) ** (2 * n) / (
            math.factorial(m) * math.factorial(n))
        assert abs(husimi_route_overlap(make_fock(m, n, 25), PhasePoint(s, g, 1)) - q) < 1e-10


def test_overlap_values_vectorized():
    psi = make_tmsv(0.4, 15)
    s = np.array([0.1, -0.5j, 1.0])
    g = np.array([0.0, 0.3, 0.2 - 0.2j])
    vals = husimi_overlap_values(psi, s, g, 1.7)
    for k in range(3):
        assert abs(vals[k] - husimi_route_overlap(psi, PhasePoint(s[k], g[k], 1.7))) < 1e-15


def test_route_cwt_examples():
    vac = make_fock(0, 0, 25)
    assert abs(husimi_route_cwt(vac, PhasePoint(0, 0, 1), RULE) - 1) < 1e-14
    expected = 8 / 9 * math.exp(-2 / 3)
    assert abs(husimi_route_cwt(vac, PhasePoint(1, 0, 2), RULE) - expected) < 1e-12
    assert abs(expected - 0.456370772473415) < 1e-15
    psi = make_fock(1, 1, 25)
    p = PhasePoint(0.5, 0.5j, 1)
    assert abs(husimi_route_cwt(psi, p, RULE) - husimi_route_overlap(psi, p)) < 1e-7


unit = st.floats(-1, 1, allow_nan=False)


@given(st.lists(st.complex_numbers(max_magnitude=1, allow_nan=False, allow_infinity=False), min_size=9,
                max_size=9).filter(lambda c: sum(abs(x) ** 2 for x in c) > 1e-2),
       unit, unit, unit, unit, st.sampled_from([0.5, 1.0, 2.0]))
@settings(max_examples=40, deadline=None)
def test_routes_a_and_b_agree(coeffs, sr, si, gr, gi, kappa):
    psi = normalize(TwoModeState(np.array(coeffs).reshape(3, 3)))
    p = PhasePoint(complex(sr, si), complex(gr, gi), kappa)
    a = husimi_route_cwt(psi, p, RULE)
    b = husimi_route_overlap(psi, p)
    assert a >= 0 and b >= 0
    assert abs(a - b) <= 1e-6 * (1 + b)
    assert b <= 1 + 1e-9


def test_wigner_vacuum_and_coherent():
    s, g = np.array([0.0, 0.4 - 0.3j]), np.array([0.0, -1.1j])
    w = wigner_value(make_fock(0, 0, 3), s, g)
    np.testing.assert_allclose(w, np.exp(-np.abs(s) ** 2 - np.abs(g) ** 2) / np.pi**2, rtol=1e-14)
    alpha, beta = 0.3 - 0.2j, 0.25j
    psi = make_coherent(alpha, beta, 8)
    ref = np.exp(-np.abs(alpha - np.conj(beta) - s) ** 2 - np.abs(alpha + np.conj(beta) - g) ** 2) / np.pi**2
    # the coherent state is truncated at cutoff 8
    np.testing.assert_allclose(wigner_value(psi, s, g), ref * psi.captured_norm, rtol=1e-6)


@pytest.mark.parametrize("m,n", [(1, 0), (1, 1), (2, 1), (0, 3)])
def test_wigner_fock_product_oracle(m, n, rng):
    s = rng.normal(size=4) * 0.7 + 1j * rng.normal(size=4) * 0.7
    g = rng.normal(size=4) * 0.7 + 1j * rng.normal(size=4) * 0.7
    a0, b0 = (s + g) / 2, np.conj(g - s) / 2
    ref = wigner_single(m, a0) * wigner_single(n, b0) / 4
    np.testing.assert_allclose(wigner_value(make_fock(m, n, 5), s, g), ref, atol=1e-14)


def test_wigner_unit_trace():
    w = WignerFunction(make_fock(1, 0, 4))
    # the integrator owns a unit-width Gaussian; divide it back out of the integrand
    total = integrate_c2(lambda s, g: w(s, g) * np.exp(np.abs(s) ** 2 + np.abs(g) ** 2), (0, 0), 1.0, RULE32)
    assert abs(total - 1) < 1e-3


def test_wigner_guard():
    with pytest.raises(NumericGuardError):
        WignerFunction(make_coherent(0.3, 0.1, 12))
    # trimming keeps low-support states inside the cap whatever their storage cutoff
    assert WignerFunction(make_fock(1, 1, 40)).cutoff == 1


def test_route_smoothing_examples():
    vac = make_fock(0, 0, 4)
    assert abs(husimi_route_smoothing(vac, PhasePoint(0, 0, 1), RULE32) - 1) < 1e-12
    p = PhasePoint(0.6 - 0.2j, -0.4j, 0.7)
    assert abs(husimi_route_smoothing(vac, p, RULE32) - vacuum_husimi(p)) < 1e-4
    psi = make_fock(1, 1, 4)
    p = PhasePoint(0.4, -0.2j, 2.0)
    assert abs(husimi_route_smoothing(psi, p, RULE32) - husimi_route_overlap(psi, p)) < 1e-3


def test_route_smoothing_noise_floor():
    psi = make_fock(2, 1, 4)
    for p in (PhasePoint(0, 0, 1), PhasePoint(1.5, -1.5j, 0.5)):
        assert husimi_route_smoothing(psi, p, 24) >= -1e-6


def test_coherent_closed_form():
    for k in (0.5, 1.0, 2.0):
        assert abs(husimi_coherent_closed_form(0, 0, PhasePoint(0, 0, k)) - 4 * k / (1 + k) ** 2) < 1e-15
    rng = np.random.default_rng(9)
    for _ in range(5):
        alpha, beta = 0.8 * rng.uniform(size=2) * np.exp(2j * np.pi * rng.uniform(size=2))
        psi = make_coherent(alpha, beta, 25)
        for p in phase_grid():
            assert abs(husimi_coherent_closed_form(alpha, beta, p) - husimi_route_overlap(psi, p)) < 1e-7


@pytest.mark.parametrize("m,kappa", [(0, 1.0), (0, 2.0), (1, 1.0), (1, 2.0)])
def test_normalization(m, kappa):
    assert abs(normalization_check(make_fock(m, 0, 10), kappa, 16) - 1) < 1e-3


def test_normalization_tmsv_higher_order():
    psi = make_tmsv(0.3, 10)
    assert abs(normalization_check(psi, 1.5, 24) - psi.captured_norm) < 1e-3
