"""Wavefunctions in the entangled representation ``<eta|``.

``|eta> = exp(-|eta|^2/2 + eta a1^+ - eta* a2^+ + a1^+ a2^+)|00>`` is the
common eigenvector of ``Q1 - Q2`` and ``P1 + P2``, so that

    <eta|m,n> = exp(-|eta|^2/2) H_{m,n}(eta*, -eta) / sqrt(m! n!)

with the plus-sign Hermite convention of :mod:`husimi_cwt.series`.

Analytic continuation
---------------------
A complex-plane wavelet transform evaluated at the translations produced by
the Husimi phase-point map needs ``psi*((eta - z)/mu)`` with a "conjugate"
translation ``z~`` that is not ``conj(z)``. ``psi*`` depends on its argument
``xi`` through ``xi`` and ``xi*``; the continuation promotes the ``xi*`` slot to
an independent variable ``xi~`` (and ``|xi|^2`` to ``xi * xi~``).
"""

from __future__ import annotations

import numpy as np

from .fock import TwoModeState
from .quad import integrate_plane
from .series import hermite2_normalized_table

__all__ = [
    "eta_overlap_fock",
    "eta_overlap_table",
    "eta_wavefunction",
    "conj_wavefunction_continued",
    "conj_polynomial_continued",
    "wavefunction_polynomial",
    "admissibility_integral",
]


def eta_overlap_table(cutoff: int, eta) -> np.ndarray:
    """``<eta|m,n>`` for all ``m, n <= cutoff``; shape ``(N+1, N+1) + shape(eta)``."""
    eta = np.asarray(eta, dtype=complex)
    h = hermite2_normalized_table(cutoff, eta.conj(), -eta)
    return h * np.exp(-np.abs(eta) ** 2 / 2)


def eta_overlap_fock(m: int, n: int, eta: complex) -> complex:
    """``<eta|m,n>``."""
    if m < 0 or n < 0:
        raise ValueError("occupations must be non-negative")
    return complex(eta_overlap_table(max(m, n), eta)[m, n])


def _contract(coeffs: np.ndarray, table: np.ndarray) -> np.ndarray:
    return np.tensordot(coeffs, table, axes=([0, 1], [0, 1]))


def wavefunction_polynomial(psi: TwoModeState, eta) -> np.ndarray:
    """``<eta|psi>`` without its ``exp(-|eta|^2/2)`` factor."""
    psi = psi.trimmed()
    eta = np.asarray(eta, dtype=complex)
    h = hermite2_normalized_table(psi.cutoff, eta.conj(), -eta)
    return _contract(psi.coeffs, h)


def eta_wavefunction(psi: TwoModeState, eta) -> np.ndarray | complex:
    """``psi(eta) = <eta|psi>``; vectorized over ``eta``."""
    eta = np.asarray(eta, dtype=complex)
    out = wavefunction_polynomial(psi, eta) * np.exp(-np.abs(eta) ** 2 / 2)
    return complex(out) if out.ndim == 0 else out


def conj_polynomial_continued(psi: TwoModeState, xi, xi_t) -> np.ndarray:
    """``sum conj(c[m,n]) H_{m,n}(xi, -xi_t) / sqrt(m! n!)``.

    The continued ``conj(psi)`` without its ``exp(-xi xi_t / 2)`` factor.
    """
    psi = psi.trimmed()
    h = hermite2_normalized_table(psi.cutoff, xi, -np.asarray(xi_t, dtype=complex))
    return _contract(psi.coeffs.conj(), h)


def conj_wavefunction_continued(psi: TwoModeState, xi, xi_t) -> np.ndarray | complex:
    """Analytically continued ``conj(psi(xi))`` with ``xi*`` replaced by ``xi_t``.

    For ``xi_t == conj(xi)`` this is the ordinary ``conj(<xi|psi>)``.
    """
    xi = np.asarray(xi, dtype=complex)
    xi_t = np.asarray(xi_t, dtype=complex)
    out = conj_polynomial_continued(psi, xi, xi_t) * np.exp(-xi * xi_t / 2)
    return complex(out) if out.ndim == 0 else out


def admissibility_integral(psi: TwoModeState, rule=None) -> complex:
    """``int d^2eta / (2 pi) psi(eta)``, the mother-wavelet admissibility integral.

    Zero for an admissible wavelet. Reported as a diagnostic; quantum-state
    wavelets such as the vacuum are used even when it is non-zero.
    """
    # integrate_plane owns exp(-|eta|^2/2); the 1/2 turns d^2eta/pi into d^2eta/(2 pi)
    return integrate_plane(lambda eta: wavefunction_polynomial(psi, eta), 0.5, rule) / 2
