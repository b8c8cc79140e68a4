"""Complex wavelet transform over the entangled representation.

    W_psi g(mu, z) = (1/mu) int (d^2eta / pi) g(eta) psi*((eta - z) / mu)

The integral route evaluates this by Gauss-Hermite quadrature. The operator
route evaluates the same number as ``<psi| S2(mu) D(z) |g>`` with dense
truncated matrices; it only exists for real-conjugate translations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .eta import conj_polynomial_continued, wavefunction_polynomial
from .fock import TwoModeState, inner_product, pair_exponential_coeffs
from .quad import integrate_plane

__all__ = [
    "CwtQuery",
    "cwt_point",
    "squeeze_op_fock",
    "displace_op_fock",
    "cwt_operator_route",
    "u2_vacuum",
]


@dataclass(frozen=True)
class CwtQuery:
    """Dilation ``mu = exp(lam)`` and translation ``(z, z_tilde)``.

    ``z_tilde`` defaults to ``conj(z)``, the ordinary transform. Any other value
    is the analytically continued transform.
    """

    mu: float
    z: complex = 0j
    z_tilde: complex | None = field(default=None)

    def __post_init__(self):
        mu = float(self.mu)
        if not (mu > 0 and np.isfinite(np.log(mu))):
            raise ValueError(f"dilation mu must be positive and finite, got {self.mu}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "z", complex(self.z))
        zt = np.conj(self.z) if self.z_tilde is None else self.z_tilde
        object.__setattr__(self, "z_tilde", complex(zt))

    @property
    def lam(self) -> float:
        return float(np.log(self.mu))

    @property
    def z1(self) -> complex:
        return (self.z + self.z_tilde) / 2

    @property
    def z2(self) -> complex:
        return (self.z - self.z_tilde) / 2j

    @property
    def is_ordinary(self) -> bool:
        return self.z_tilde == np.conj(self.z)


def cwt_point(g: TwoModeState, psi: TwoModeState, q: CwtQuery, rule=None) -> complex:
    """Integral-route CWT of ``g(eta) = <eta|g>`` by the mother wavelet ``psi``.

    The two Gaussians ``exp(-|eta|^2/2)`` and ``exp(-(eta-z)(eta*-z~)/(2 mu^2))``
    are merged; the integrator owns ``exp(-c|eta|^2)`` with
    ``c = (1 + 1/mu^2)/2`` and the linear remainder stays in the integrand.
    """
    mu, z, zt = q.mu, q.z, q.z_tilde
    mu2 = mu * mu
    c = 0.5 * (1.0 + 1.0 / mu2)

    def integrand(eta):
        shift = np.exp((zt * eta + z * eta.conj() - z * zt) / (2 * mu2))
        sig = wavefunction_polynomial(g, eta)
        wav = conj_polynomial_continued(psi, (eta - z) / mu, (eta.conj() - zt) / mu)
        return shift * sig * wav

    return integrate_plane(integrand, c, rule) / mu


# Extra levels kept while exponentiating, so that the returned matrix holds the
# true matrix elements <m,n|U|m',n'> rather than exp of the truncated generator.
EXP_PAD = 40


def squeeze_op_fock(mu: float, cutoff: int, pad: int = EXP_PAD) -> np.ndarray:
    """Truncated matrix of ``S2(mu) = exp[(a1^+ a2^+ - a1 a2) ln mu]``.

    The generator preserves ``m - n``, so each chain ``|k+p, k+q>`` with
    ``p - q = d`` is exponentiated on ``pad`` extra levels and then cut back
    to the truncated space.
    """
    if not mu > 0:
        raise ValueError("mu must be positive")
    N = int(cutoff)
    lam = np.log(mu)
    out = np.zeros(((N + 1) ** 2, (N + 1) ** 2), dtype=complex)
    for d in range(-N, N + 1):
        p, q = max(d, 0), max(-d, 0)
        keep = N + 1 - abs(d)
        size = keep + pad
        k = np.arange(size - 1)
        hop = np.sqrt((k + p + 1.0) * (k + q + 1.0))
        gen = np.diag(hop, -1) - np.diag(hop, 1)
        block = expm(gen * lam)[:keep, :keep]
        idx = (np.arange(keep) + p) * (N + 1) + np.arange(keep) + q
        out[np.ix_(idx, idx)] = block
    return out


def _single_displacement(alpha: complex, cutoff: int, pad: int) -> np.ndarray:
    size = cutoff + 1 + pad
    a = np.diag(np.sqrt(np.arange(1, size, dtype=float)), 1).astype(complex)
    return expm(alpha * a.conj().T - np.conj(alpha) * a)[: cutoff + 1, : cutoff + 1]


def displace_op_fock(z: complex, cutoff: int, pad: int = EXP_PAD) -> np.ndarray:
    """Truncated matrix of ``D(z) = D1(-z/2) D2(z*/2)``, ``D(a) = exp(a b^+ - a* b)``.

    Each single-mode factor is exponentiated separately (on ``pad`` extra
    levels) and the two are combined as a Kronecker product.
    """
    z = complex(z)
    d1 = _single_displacement(-z / 2, cutoff, pad)
    d2 = _single_displacement(np.conj(z) / 2, cutoff, pad)
    return np.kron(d1, d2)


def cwt_operator_route(psi: TwoModeState, g: TwoModeState, mu: float, z: complex) -> complex:
    """``<psi| S2(mu) D(z) |g>`` on the truncated space."""
    if psi.cutoff != g.cutoff:
        raise ValueError(f"cutoff mismatch: {psi.cutoff} != {g.cutoff}")
    N = g.cutoff
    out = squeeze_op_fock(mu, N) @ (displace_op_fock(z, N) @ g.vector)
    return inner_product(psi, TwoModeState.from_vector(out))


def u2_vacuum(mu: float, z: complex, z_tilde: complex, cutoff: int) -> TwoModeState:
    """Closed form of ``U2(mu, z)|00> = S2(mu) D(z)|00>``.

        sech(lam) exp(-z z~ / (2(1+mu^2)))
            exp(a1^+ a2^+ tanh(lam) + (z~ a2^+ - z a1^+) sech(lam) / 2)|00>

    ``z_tilde`` plays the role of ``z*``; any complex value is accepted.
    """
    if not mu > 0:
        raise ValueError("mu must be positive")
    mu2 = mu * mu
    sech = 2 * mu / (1 + mu2)
    tanh = (mu2 - 1) / (mu2 + 1)
    pref = sech * np.exp(-z * z_tilde / (2 * (1 + mu2)))
    u = pair_exponential_coeffs(-z * sech / 2, z_tilde * sech / 2, tanh, cutoff)
    return TwoModeState(pref * u)
