"""Entangled Husimi distribution ``F_h(sigma, gamma, kappa) = <psi|Delta_h|psi>``.

Four independent evaluations are provided:

overlap (production)
    ``|<psi|sigma,gamma>_kappa|^2`` with the two-mode squeezed coherent state
    built from its Fock recurrence. No quadrature.
cwt
    Modulus square of the wavelet transform of the Gaussian
    ``exp(-|eta|^2/2)`` with ``psi`` as mother wavelet, times
    ``exp(-|gamma|^2/kappa)``; 2-D quadrature.
smoothing
    Gaussian smoothing of the two-mode Wigner function, by 4-D quadrature.
coherent-closed
    Exact normally ordered expectation in a product coherent state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cwt import CwtQuery
from .eta import conj_polynomial_continued
from .fock import NumericGuardError, TwoModeState, pair_exponential_coeffs
from .quad import integrate_c2, integrate_gaussian_c2, integrate_plane
from .series import SeriesPoly, poly_exp

__all__ = [
    "PhasePoint",
    "SqueezedCoherentParams",
    "squeezed_coherent_params",
    "map_phase_point",
    "squeezed_coherent_fock",
    "overlap_amplitude",
    "husimi_overlap_values",
    "husimi_route_overlap",
    "husimi_route_cwt",
    "WignerFunction",
    "wigner_value",
    "husimi_route_smoothing",
    "husimi_coherent_closed_form",
    "normalization_check",
    "WIGNER_MAX_CUTOFF",
]

WIGNER_MAX_CUTOFF = 8


@dataclass(frozen=True)
class PhasePoint:
    sigma: complex
    gamma: complex
    kappa: float

    def __post_init__(self):
        kappa = float(self.kappa)
        if not kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "sigma", complex(self.sigma))
        object.__setattr__(self, "gamma", complex(self.gamma))


@dataclass(frozen=True)
class SqueezedCoherentParams:
    """``|sigma,gamma>_kappa = C exp(A a1^+ + B a2^+ + Lam a1^+ a2^+)|00>``."""

    A: complex
    B: complex
    Lam: float
    C: float


def _params(sigma, gamma, kappa):
    k1 = 1.0 + kappa
    A = (kappa * sigma + gamma) / k1
    B = (np.conj(gamma) - kappa * np.conj(sigma)) / k1
    lam = (kappa - 1.0) / k1
    log_c = math.log(2.0 * math.sqrt(kappa) / k1) - (np.abs(gamma) ** 2 + kappa * np.abs(sigma) ** 2) / (2 * k1)
    return A, B, lam, log_c


def squeezed_coherent_params(p: PhasePoint) -> SqueezedCoherentParams:
    A, B, lam, log_c = _params(p.sigma, p.gamma, p.kappa)
    return SqueezedCoherentParams(complex(A), complex(B), lam, float(np.exp(log_c)))


def map_phase_point(p: PhasePoint) -> CwtQuery:
    """Wavelet parameters whose transform of ``exp(-|eta|^2/2)`` gives ``F_h`` at ``p``.

    ``mu = sqrt(kappa)``, ``z = -(kappa sigma + gamma)/sqrt(kappa)`` and
    ``z~ = (gamma* - kappa sigma*)/sqrt(kappa)``. In general ``z~ != conj(z)``.
    """
    rk = math.sqrt(p.kappa)
    z = -(p.kappa * p.sigma + p.gamma) / rk
    zt = (np.conj(p.gamma) - p.kappa * np.conj(p.sigma)) / rk
    return CwtQuery(rk, z, zt)


def squeezed_coherent_fock(p: PhasePoint, cutoff: int, check: bool = True) -> TwoModeState:
    """Fock amplitudes of ``|sigma,gamma>_kappa`` up to ``cutoff``.

    With ``check`` the row and column recurrences are both run and must agree.
    """
    prm = squeezed_coherent_params(p)
    u = pair_exponential_coeffs(prm.A, prm.B, prm.Lam, cutoff, check=check)
    return TwoModeState(prm.C * u)


def overlap_amplitude(psi: TwoModeState, sigma, gamma, kappa: float):
    """``<psi|sigma,gamma>_kappa`` without the Gaussian part of ``C``.

    Returns ``(poly, log_gauss)`` where the overlap equals
    ``poly * exp(log_gauss)``. Vectorized over ``sigma`` and ``gamma``.
    """
    psi = psi.trimmed()
    sigma = np.asarray(sigma, dtype=complex)
    gamma = np.asarray(gamma, dtype=complex)
    A, B, lam, log_c = _params(sigma, gamma, kappa)
    u = pair_exponential_coeffs(A, B, lam, psi.cutoff)
    poly = np.tensordot(psi.coeffs.conj(), u, axes=([0, 1], [0, 1]))
    return poly, log_c


def husimi_overlap_values(psi: TwoModeState, sigma, gamma, kappa: float) -> np.ndarray:
    """Route B on arrays of phase points sharing one ``kappa``."""
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    poly, log_c = overlap_amplitude(psi, sigma, gamma, kappa)
    return np.abs(poly) ** 2 * np.exp(2 * log_c)


def husimi_route_overlap(psi: TwoModeState, p: PhasePoint) -> float:
    """``F_h = |<psi|sigma,gamma>_kappa|^2``."""
    return float(husimi_overlap_values(psi, p.sigma, p.gamma, p.kappa))


def husimi_route_cwt(psi: TwoModeState, p: PhasePoint, rule=None) -> float:
    """``F_h`` as ``exp(-|gamma|^2/kappa) |I|^2`` with

        I = int d^2eta / (sqrt(kappa) pi) exp(-|eta|^2/2) psi*((eta - z)/sqrt(kappa))

    and ``(z, z~)`` from :func:`map_phase_point`; ``psi*`` is continued to
    ``z~ != conj(z)``. The integrator owns ``exp(-c|eta|^2)``,
    ``c = (1 + 1/kappa)/2``; the linear exponent remainder is kept in the
    integrand.
    """
    q = map_phase_point(p)
    kappa, z, zt = p.kappa, q.z, q.z_tilde
    rk = q.mu
    c = 0.5 * (1.0 + 1.0 / kappa)

    def integrand(eta):
        shift = np.exp((zt * eta + z * eta.conj() - z * zt) / (2 * kappa))
        return shift * conj_polynomial_continued(psi, (eta - z) / rk, (eta.conj() - zt) / rk)

    integral = integrate_plane(integrand, c, rule) / rk
    return float(np.exp(-abs(p.gamma) ** 2 / kappa) * abs(integral) ** 2)


class WignerFunction:
    """Two-mode Wigner function ``<psi|Delta_w(sigma', gamma')|psi>`` of a pure state.

    The normally ordered Wigner operator is

        (1/pi^2) :exp{-(X - s)(X~ - s*) - (Y - g)(Y~ - g*)}:

    with ``X = a1 - a2^+``, ``X~ = a1^+ - a2``, ``Y = a1 + a2^+``,
    ``Y~ = a1^+ + a2``. The operator-only quadratic part is exponentiated once
    as a truncated series in the commuting symbols ``(a1^+, a2^+, a1, a2)``;
    it is contracted against the normally ordered moments of ``psi`` and
    against the point-dependent linear part, leaving a small polynomial in the
    linear coefficients that is evaluated on arrays of points.
    """

    def __init__(self, psi: TwoModeState, max_cutoff: int = WIGNER_MAX_CUTOFF):
        psi = psi.trimmed()
        N = psi.cutoff
        if N > max_cutoff:
            raise NumericGuardError(
                f"Wigner series needs degree {4 * N} (support cutoff {N}); cap is cutoff {max_cutoff}"
            )
        self.cutoff = N
        deg = 4 * N
        # symbol order: a1^+, a2^+, a1, a2
        X = SeriesPoly.linear([0, -1, 1, 0], deg)
        Xt = SeriesPoly.linear([1, 0, 0, -1], deg)
        Y = SeriesPoly.linear([0, 1, 1, 0], deg)
        Yt = SeriesPoly.linear([1, 0, 0, 1], deg)
        quad = -(X * Xt) - (Y * Yt)
        # linear coefficients per symbol, multiplying (s*, s, g*, g)
        self._lin = np.array(
            [[X.coeff(e), Xt.coeff(e), Y.coeff(e), Yt.coeff(e)] for e in np.eye(4, dtype=int)]
        )
        E = np.zeros((N + 1,) * 4, dtype=complex)
        for e, c in poly_exp(quad).terms.items():
            if max(e) <= N:
                E[e] = c
        M = _normal_moments(psi)
        T = np.zeros_like(E)
        for ep in np.ndindex(*T.shape):
            hi = tuple(slice(k, N + 1) for k in ep)
            lo = tuple(slice(0, N + 1 - k) for k in ep)
            T[ep] = np.sum(M[hi] * E[lo])
        fact = np.array([math.factorial(k) for k in range(N + 1)], dtype=float)
        T = T / (fact[:, None, None, None] * fact[None, :, None, None] * fact[None, None, :, None] * fact[None, None, None, :])
        self._terms = [(ep, T[ep]) for ep in zip(*np.nonzero(T))]

    def __call__(self, sigma, gamma):
        sigma = np.asarray(sigma, dtype=complex)
        gamma = np.asarray(gamma, dtype=complex)
        sigma, gamma = np.broadcast_arrays(sigma, gamma)
        shifts = np.stack([sigma.conj(), sigma, gamma.conj(), gamma])
        lin = np.tensordot(self._lin, shifts, axes=(1, 0))
        N = self.cutoff
        pows = np.ones((4, N + 1) + sigma.shape, dtype=complex)
        for k in range(1, N + 1):
            pows[:, k] = pows[:, k - 1] * lin
        total = np.zeros(sigma.shape, dtype=complex)
        for (p, q, r, s), t in self._terms:
            total += t * pows[0, p] * pows[1, q] * pows[2, r] * pows[3, s]
        gauss = np.exp(-np.abs(sigma) ** 2 - np.abs(gamma) ** 2) / np.pi**2
        out = gauss * total.real
        return float(out) if out.ndim == 0 else out


def _normal_moments(psi: TwoModeState) -> np.ndarray:
    """``M[p,q,r,s] = <psi| a1^+^p a2^+^q a1^r a2^s |psi>`` for indices ``<= N``."""
    N = psi.cutoff
    sq = np.sqrt(np.arange(1, N + 1, dtype=float))
    phi = np.zeros((N + 1, N + 1, N + 1, N + 1), dtype=complex)
    row = psi.coeffs.copy()
    for r in range(N + 1):
        col = row.copy()
        for s in range(N + 1):
            phi[r, s] = col
            shifted = np.zeros_like(col)
            shifted[:, :-1] = col[:, 1:] * sq
            col = shifted
        shifted = np.zeros_like(row)
        shifted[:-1, :] = row[1:, :] * sq[:, None]
        row = shifted
    flat = phi.reshape(N + 1, N + 1, -1)
    return np.einsum("pqk,rsk->pqrs", flat.conj(), flat)


def wigner_value(psi: TwoModeState, sigma_p, gamma_p):
    """Two-mode Wigner function at ``(sigma', gamma')``; vectorized."""
    return WignerFunction(psi)(sigma_p, gamma_p)


def husimi_route_smoothing(psi: TwoModeState, p: PhasePoint, rule=None) -> float:
    """``F_h = 4 int d^2s' d^2g' F_w(s', g') exp(-kappa|s'-s|^2 - |g'-g|^2/kappa)``.

    The integrator owns the smoothing kernel; the Wigner Gaussian stays in the
    integrand.
    """
    wig = WignerFunction(psi)
    return float(4 * integrate_c2(wig, (p.sigma, p.gamma), p.kappa, rule).real)


def husimi_coherent_closed_form(alpha: complex, beta: complex, p: PhasePoint) -> float:
    """``F_h`` of the product coherent state ``|alpha, beta>``, exactly."""
    k = p.kappa
    u = alpha + np.conj(beta) - p.gamma
    v = alpha - np.conj(beta) - p.sigma
    return float(4 * k / (1 + k) ** 2 * np.exp(-(abs(u) ** 2 + k * abs(v) ** 2) / (1 + k)))


def normalization_check(psi: TwoModeState, kappa: float, rule=None) -> float:
    """``int d^2sigma d^2gamma F_h / (4 pi^2)`` by Route B; should be 1.

    The grid is adapted to the Gaussian ``exp(-(kappa|sigma|^2 + |gamma|^2)/(1+kappa))``
    carried by every ``F_h``; the integrand left over is a polynomial.
    """
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    a = kappa / (1 + kappa)
    b = 1 / (1 + kappa)
    pref = 4 * kappa / (1 + kappa) ** 2

    def integrand(sigma, gamma):
        poly, _ = overlap_amplitude(psi, sigma, gamma, kappa)
        return pref * np.abs(poly) ** 2

    return float(integrate_gaussian_c2(integrand, (0, 0), a, b, rule).real / (4 * np.pi**2))
