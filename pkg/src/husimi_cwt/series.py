"""Truncated multivariate power series and two-variable Hermite polynomials.

Hermite convention
------------------
``H_{m,n}(x, y)`` is generated by ``exp(s x + t y + s t)``::

    exp(s x + t y + s t) = sum_{m,n} s**m t**n H_{m,n}(x, y) / (m! n!)

Note the **plus** sign on the cross term. The textbook two-variable Hermite
polynomials use ``exp(s x + t y - s t)``; with the plus sign the overlap of
the entangled basis with Fock kets reads
``<eta|m,n> = exp(-|eta|^2/2) H_{m,n}(eta*, -eta) / sqrt(m! n!)`` without
extra signs.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "SeriesPoly",
    "poly_exp",
    "hermite2",
    "hermite2_table",
    "hermite2_normalized_table",
    "hermite2_series",
    "hermite2_from_series",
]


class SeriesPoly:
    """Power series in ``nvars`` commuting symbols, truncated at a total degree.

    Coefficients live in a dict keyed by exponent tuples. Products drop every
    term above ``max_degree``.
    """

    __slots__ = ("nvars", "max_degree", "terms")

    def __init__(self, nvars: int, max_degree: int, terms=None):
        if not 1 <= nvars <= 4:
            raise ValueError(f"nvars must be in [1, 4], got {nvars}")
        if max_degree < 0:
            raise ValueError("max_degree must be non-negative")
        self.nvars = nvars
        self.max_degree = max_degree
        self.terms: dict[tuple[int, ...], complex] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or min(exps) < 0:
                raise ValueError(f"bad exponent tuple {exps} for {nvars} variables")
            if sum(exps) <= max_degree and coef != 0:
                self.terms[exps] = self.terms.get(exps, 0) + complex(coef)

    @classmethod
    def constant(cls, value, nvars: int, max_degree: int) -> SeriesPoly:
        return cls(nvars, max_degree, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index: int, nvars: int, max_degree: int) -> SeriesPoly:
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, max_degree, {tuple(exps): 1.0})

    @classmethod
    def linear(cls, coefs, max_degree: int) -> SeriesPoly:
        """``sum_k coefs[k] * x_k``."""
        nvars = len(coefs)
        terms = {}
        for k, c in enumerate(coefs):
            exps = [0] * nvars
            exps[k] = 1
            terms[tuple(exps)] = c
        return cls(nvars, max_degree, terms)

    def _compatible(self, other: SeriesPoly):
        if self.nvars != other.nvars:
            raise ValueError("series over different numbers of variables")
        return min(self.max_degree, other.max_degree)

    def _coerce(self, other):
        if isinstance(other, SeriesPoly):
            return other
        if np.isscalar(other):
            return SeriesPoly.constant(other, self.nvars, self.max_degree)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        deg = self._compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SeriesPoly(self.nvars, deg, out)

    __radd__ = __add__

    def __neg__(self):
        return SeriesPoly(self.nvars, self.max_degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if np.isscalar(other):
            return SeriesPoly(self.nvars, self.max_degree, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, SeriesPoly):
            return NotImplemented
        deg = self._compatible(other)
        out: dict[tuple[int, ...], complex] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > deg:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SeriesPoly(self.nvars, deg, out)

    __rmul__ = __mul__

    def coeff(self, exps) -> complex:
        return self.terms.get(tuple(exps), 0j)

    def constant_term(self) -> complex:
        return self.coeff((0,) * self.nvars)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def evaluate(self, *values) -> complex:
        total = 0j
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                term *= v ** k
            total += term
        return total

    def __repr__(self):
        return f"SeriesPoly(nvars={self.nvars}, max_degree={self.max_degree}, nterms={len(self.terms)})"


def poly_exp(p: SeriesPoly) -> SeriesPoly:
    """``exp(p)`` truncated at ``p.max_degree``.

    ``p`` must have a zero constant term (factor ``exp(const)`` out first);
    then ``p**k`` starts at degree ``k`` and the Taylor sum terminates.
    """
    if p.constant_term() != 0:
        raise ValueError("poly_exp needs a series with zero constant term")
    result = SeriesPoly.constant(1.0, p.nvars, p.max_degree)
    power = SeriesPoly.constant(1.0, p.nvars, p.max_degree)
    for k in range(1, p.max_degree + 1):
        power = power * p * (1.0 / k)
        if not power.terms:
            break
        result = result + power
    return result


def hermite2_series(x: complex, y: complex, max_degree: int) -> SeriesPoly:
    """Generating series ``exp(s x + t y + s t)`` in the symbols ``(s, t)``."""
    s = SeriesPoly.variable(0, 2, max_degree)
    t = SeriesPoly.variable(1, 2, max_degree)
    return poly_exp(s * x + t * y + s * t)


def hermite2(m: int, n: int, x: complex, y: complex) -> complex:
    """Two-variable Hermite polynomial ``H_{m,n}(x, y)`` (plus-sign convention).

    Uses the row recurrence ``H_{m+1,n} = x H_{m,n} + n H_{m,n-1}`` seeded with
    ``H_{0,n} = y**n``.
    """
    if m < 0 or n < 0:
        raise ValueError("Hermite indices must be non-negative")
    return complex(hermite2_table(max(m, n), x, y)[m, n])


def hermite2_table(N: int, x, y) -> np.ndarray:
    """Table ``H[m, n] = H_{m,n}(x, y)`` for ``0 <= m, n <= N``.

    ``x`` and ``y`` may be arrays; the table then has shape ``(N+1, N+1) + shape``.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=complex), np.asarray(y, dtype=complex))
    H = np.zeros((N + 1, N + 1) + x.shape, dtype=complex)
    H[0, 0] = 1.0
    for n in range(N):
        H[0, n + 1] = y * H[0, n]
    nn = np.arange(1, N + 1).reshape((-1,) + (1,) * x.ndim)
    for m in range(N):
        H[m + 1, 0] = x * H[m, 0]
        H[m + 1, 1:] = x * H[m, 1:] + nn * H[m, :-1]
    return H


def hermite2_normalized_table(N: int, x, y) -> np.ndarray:
    """``H_{m,n}(x, y) / sqrt(m! n!)`` by the rescaled recurrence.

    Same layout as :func:`hermite2_table`; the rescaling keeps entries
    representable for cutoffs where the raw polynomials would overflow.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=complex), np.asarray(y, dtype=complex))
    sq = np.sqrt(np.arange(N + 1, dtype=float))
    h = np.zeros((N + 1, N + 1) + x.shape, dtype=complex)
    h[0, 0] = 1.0
    for n in range(N):
        h[0, n + 1] = y * h[0, n] / sq[n + 1]
    sqn = sq[1:].reshape((-1,) + (1,) * x.ndim)
    for m in range(N):
        h[m + 1, 0] = x * h[m, 0] / sq[m + 1]
        h[m + 1, 1:] = (x * h[m, 1:] + sqn * h[m, :-1]) / sq[m + 1]
    return h


def hermite2_from_series(m: int, n: int, x: complex, y: complex) -> complex:
    """Oracle: ``m! n!`` times the ``s**m t**n`` coefficient of the generating series."""
    series = hermite2_series(x, y, m + n)
    return series.coeff((m, n)) * math.factorial(m) * math.factorial(n)
