"""Truncated two-mode Fock space.

States are stored as an ``(N+1, N+1)`` complex matrix ``c[m, n]`` holding the
amplitude of ``|m, n>``. Operators act on the flattened vector with the
row-major index ``m*(N+1) + n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "MAX_CUTOFF",
    "NumericGuardError",
    "TruncationError",
    "TwoModeState",
    "flat_index",
    "make_fock",
    "make_coherent",
    "make_tmsv",
    "pair_exponential_coeffs",
    "inner_product",
    "normalize",
    "mode_operator",
    "MODE_OPERATORS",
]

MAX_CUTOFF = 170
COHERENT_MIN_NORM = 0.999


class NumericGuardError(ArithmeticError):
    """A numeric safety limit was hit (truncation loss, degree cap, ...)."""


class TruncationError(NumericGuardError, ValueError):
    """A truncated expansion lost too much norm to be trusted."""


@lru_cache(maxsize=None)
def _sqrt_factorials(cutoff: int) -> np.ndarray:
    out = np.ones(cutoff + 1)
    for k in range(1, cutoff + 1):
        out[k] = out[k - 1] * np.sqrt(k)
    out.setflags(write=False)
    return out


def _check_cutoff(cutoff: int) -> int:
    cutoff = int(cutoff)
    if not 0 <= cutoff <= MAX_CUTOFF:
        raise ValueError(f"cutoff must lie in [0, {MAX_CUTOFF}], got {cutoff}")
    return cutoff


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Pure two-mode state on the basis ``|m, n>``, ``0 <= m, n <= cutoff``.

    Builders may hand back sub-normalized truncations; the lost weight is
    visible through :attr:`captured_norm` rather than hidden by rescaling.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] == 0:
            raise ValueError(f"coefficients must be a square (N+1)x(N+1) matrix, got shape {c.shape}")
        _check_cutoff(c.shape[0] - 1)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def cutoff(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.coeffs.size

    @property
    def captured_norm(self) -> float:
        """Squared norm ``sum |c|^2`` of the stored amplitudes."""
        return float(np.sum(np.abs(self.coeffs) ** 2))

    @property
    def vector(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    @classmethod
    def from_vector(cls, vec) -> TwoModeState:
        vec = np.asarray(vec, dtype=complex)
        side = int(round(np.sqrt(vec.size)))
        if side * side != vec.size:
            raise ValueError(f"vector length {vec.size} is not a perfect square")
        return cls(vec.reshape(side, side))

    def support_cutoff(self) -> int:
        """Smallest cutoff that still holds every non-zero amplitude."""
        rows, cols = np.nonzero(self.coeffs)
        if rows.size == 0:
            return 0
        return int(max(rows.max(), cols.max()))

    def with_cutoff(self, cutoff: int) -> TwoModeState:
        """Zero-pad or truncate to a new cutoff."""
        cutoff = _check_cutoff(cutoff)
        out = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        k = min(cutoff, self.cutoff) + 1
        out[:k, :k] = self.coeffs[:k, :k]
        return TwoModeState(out)

    def trimmed(self) -> TwoModeState:
        """Drop trailing all-zero rows and columns."""
        return self.with_cutoff(self.support_cutoff())

    def __repr__(self):
        return f"TwoModeState(cutoff={self.cutoff}, captured_norm={self.captured_norm:.12g})"


def flat_index(m: int, n: int, cutoff: int) -> int:
    return m * (cutoff + 1) + n


def make_fock(m: int, n: int, cutoff: int) -> TwoModeState:
    """Basis ket ``|m, n>``."""
    cutoff = _check_cutoff(cutoff)
    if not (0 <= m <= cutoff and 0 <= n <= cutoff):
        raise ValueError(f"occupation (m={m}, n={n}) outside [0, {cutoff}]")
    c = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    c[m, n] = 1.0
    return TwoModeState(c)


def make_coherent(alpha: complex, beta: complex, cutoff: int) -> TwoModeState:
    """Product coherent state ``|alpha, beta>`` truncated at ``cutoff``.

    Raises
    ------
    TruncationError
        If less than 0.999 of the norm survives the truncation.
    """
    cutoff = _check_cutoff(cutoff)
    sf = _sqrt_factorials(cutoff)
    k = np.arange(cutoff + 1)
    # 0**0 == 1 in numpy, so the vacuum needs no special case
    col_a = np.power(complex(alpha), k) / sf
    col_b = np.power(complex(beta), k) / sf
    pref = np.exp(-(abs(alpha) ** 2 + abs(beta) ** 2) / 2)
    state = TwoModeState(pref * np.outer(col_a, col_b))
    if not state.captured_norm >= COHERENT_MIN_NORM:
        raise TruncationError(
            f"coherent state (|alpha|={abs(alpha):.3g}, |beta|={abs(beta):.3g}) keeps only "
            f"{state.captured_norm:.6g} of its norm at cutoff {cutoff}"
        )
    return state


def make_tmsv(r: float, cutoff: int) -> TwoModeState:
    """Two-mode squeezed vacuum with amplitudes ``sech(r) tanh(r)**n`` on ``|n, n>``."""
    cutoff = _check_cutoff(cutoff)
    c = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    k = np.arange(cutoff + 1)
    c[k, k] = np.power(np.tanh(r), k) / np.cosh(r)
    return TwoModeState(c)


def pair_exponential_coeffs(A, B, lam, cutoff: int, check: bool = False) -> np.ndarray:
    """Fock amplitudes ``u[m, n]`` of ``exp(A a1^+ + B a2^+ + lam a1^+ a2^+)|00>``.

    ``A`` and ``B`` may be arrays of a common shape; the result then has shape
    ``(N+1, N+1) + shape``. Filled by the row recurrence

        sqrt(m+1) u[m+1, n] = A u[m, n] + lam sqrt(n) u[m, n-1]

    seeded by the column recurrence on ``m = 0``. With ``check=True`` the
    column recurrence is also run over the whole table and compared.
    """
    A, B = np.broadcast_arrays(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))
    lam = complex(lam) if np.iscomplexobj(lam) else float(lam)
    N = int(cutoff)
    sq = np.sqrt(np.arange(N + 2))
    u = np.zeros((N + 1, N + 1) + A.shape, dtype=complex)
    u[0, 0] = 1.0
    for n in range(N):
        u[0, n + 1] = B * u[0, n] / sq[n + 1]
    for m in range(N):
        u[m + 1, 0] = A * u[m, 0] / sq[m + 1]
        u[m + 1, 1:] = (A * u[m, 1:] + lam * sq[1:N + 1].reshape((-1,) + (1,) * A.ndim) * u[m, :-1]) / sq[m + 1]
    if check:
        v = np.zeros_like(u)
        v[0, 0] = 1.0
        for m in range(N):
            v[m + 1, 0] = A * v[m, 0] / sq[m + 1]
        for n in range(N):
            v[0, n + 1] = B * v[0, n] / sq[n + 1]
            v[1:, n + 1] = (B * v[1:, n] + lam * sq[1:N + 1].reshape((-1,) + (1,) * A.ndim) * v[:-1, n]) / sq[n + 1]
        scale = 1.0 + np.abs(u)
        if not np.all(np.abs(u - v) <= 1e-12 * scale):
            raise NumericGuardError("row and column recurrences disagree")
    return u


def inner_product(s1: TwoModeState, s2: TwoModeState) -> complex:
    """``<s1|s2>``, antilinear in the first argument."""
    if s1.cutoff != s2.cutoff:
        raise ValueError(f"cutoff mismatch: {s1.cutoff} != {s2.cutoff}")
    return complex(np.vdot(s1.coeffs, s2.coeffs))


def normalize(state: TwoModeState) -> TwoModeState:
    norm = np.sqrt(state.captured_norm)
    if norm == 0:
        raise ValueError("cannot normalize the zero vector")
    return TwoModeState(state.coeffs / norm)


def _single_mode_lowering(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), k=1).astype(complex)


@lru_cache(maxsize=64)
def _ladders(cutoff: int):
    a = _single_mode_lowering(cutoff)
    eye = np.eye(cutoff + 1, dtype=complex)
    a1 = np.kron(a, eye)
    a2 = np.kron(eye, a)
    return a1, a2


def _mode_operator(which: str, cutoff: int) -> np.ndarray:
    a1, a2 = _ladders(cutoff)
    s2 = np.sqrt(2.0)
    if which == "a1":
        return a1.copy()
    if which == "a2":
        return a2.copy()
    if which == "a1+":
        return a1.conj().T.copy()
    if which == "a2+":
        return a2.conj().T.copy()
    q1 = (a1 + a1.conj().T) / s2
    q2 = (a2 + a2.conj().T) / s2
    p1 = (a1 - a1.conj().T) / (s2 * 1j)
    p2 = (a2 - a2.conj().T) / (s2 * 1j)
    return {"Q1": q1, "Q2": q2, "P1": p1, "P2": p2, "Q1-Q2": q1 - q2, "P1+P2": p1 + p2}[which]


MODE_OPERATORS = ("a1", "a2", "a1+", "a2+", "Q1", "Q2", "P1", "P2", "Q1-Q2", "P1+P2")


def mode_operator(which: str, cutoff: int) -> np.ndarray:
    """Dense matrix of a mode operator on the flattened two-mode basis.

    ``which`` is one of ``MODE_OPERATORS``; ``+`` marks the adjoint, so
    ``"a1+"`` is the creation operator of mode 1.
    """
    cutoff = _check_cutoff(cutoff)
    if cutoff < 1:
        raise ValueError("mode operators need cutoff >= 1")
    if which not in MODE_OPERATORS:
        raise ValueError(f"unknown mode operator {which!r}; expected one of {MODE_OPERATORS}")
    return _mode_operator(which, cutoff)
