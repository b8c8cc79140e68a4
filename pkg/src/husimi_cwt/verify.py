"""Cross-route verification battery.

Each check returns a :class:`CheckResult`; :func:`run_verify` runs them all
and assembles a JSON-ready report. Random cases use fixed seeds so reports are
reproducible byte for byte.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import series
from .cwt import CwtQuery, cwt_operator_route, cwt_point
from .eta import eta_overlap_table
from .fock import make_coherent, make_fock, make_tmsv, mode_operator
from .husimi import (
    PhasePoint,
    husimi_coherent_closed_form,
    husimi_route_cwt,
    husimi_route_overlap,
    husimi_route_smoothing,
    normalization_check,
)
from .parallel import parallel_map
from .quad import gauss_hermite, integrate_plane

BATTERY_CUTOFF = 25
SIGMAS = (0j, 0.9 - 0.6j, -1.5j)
GAMMAS = (0j, -0.7 + 1.1j, 1.5 + 0j)
KAPPAS = (0.5, 1.0, 2.0)


def phase_grid():
    """The fixed 3x3x3 grid of ``(sigma, gamma, kappa)`` points."""
    return [PhasePoint(s, g, k) for s, g, k in product(SIGMAS, GAMMAS, KAPPAS)]


def state_battery(cutoff: int = BATTERY_CUTOFF):
    return {
        "|0,0>": make_fock(0, 0, cutoff),
        "|1,0>": make_fock(1, 0, cutoff),
        "|0,1>": make_fock(0, 1, cutoff),
        "|1,1>": make_fock(1, 1, cutoff),
        "|2,1>": make_fock(2, 1, cutoff),
        "coherent(0.5,-0.3i)": make_coherent(0.5, -0.3j, cutoff),
        "tmsv(0.5)": make_tmsv(0.5, cutoff),
    }


@dataclass
class CheckResult:
    name: str
    max_residual: float
    tolerance: float
    passed: bool
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "max_residual": float(self.max_residual),
            "tolerance": float(self.tolerance),
            "passed": bool(self.passed),
        }
        if self.detail:
            out["detail"] = self.detail
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name}: max residual {self.max_residual:.3e} (tolerance {self.tolerance:.1e})"


def check_theorem(threads=None, order: int = 64) -> CheckResult:
    """Wavelet-transform route against the overlap route, relative to ``1 + F_h``."""
    rule = gauss_hermite(order)
    states = state_battery()
    cases = [(psi, p) for psi in states.values() for p in phase_grid()]

    def residual(case):
        psi, p = case
        b = husimi_route_overlap(psi, p)
        a = husimi_route_cwt(psi, p, rule)
        return abs(a - b) / (1 + b)

    worst = max(parallel_map(residual, cases, threads))
    tol = 1e-6
    return CheckResult("theorem_cwt_vs_overlap", worst, tol, worst <= tol, detail={"cases": len(cases)})


SMOOTHING_POINTS = (
    PhasePoint(0, 0, 1.0),
    PhasePoint(0.4, -0.2j, 2.0),
    PhasePoint(-0.5 + 0.3j, 0.7, 0.5),
    PhasePoint(0.3j, 0.5 - 0.4j, 1.0),
    PhasePoint(0.8, -0.3 + 0.2j, 2.0),
)


def check_smoothing(threads=None, order: int = 32, cutoff: int = 6) -> CheckResult:
    """Gaussian-smoothed Wigner route against the overlap route."""
    rule = gauss_hermite(order)
    states = [make_fock(0, 0, cutoff), make_fock(1, 0, cutoff), make_fock(1, 1, cutoff)]
    cases = [(psi, p) for psi in states for p in SMOOTHING_POINTS]

    def residual(case):
        psi, p = case
        b = husimi_route_overlap(psi, p)
        c = husimi_route_smoothing(psi, p, rule)
        return abs(c - b) / (1 + b)

    worst = max(parallel_map(residual, cases, threads))
    tol = 1e-3
    return CheckResult("smoothing_vs_overlap", worst, tol, worst <= tol, detail={"cases": len(cases)})


def check_coherent_closed(threads=None, seed: int = 3) -> CheckResult:
    """Closed form for coherent states against the overlap route."""
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(10):
        r = rng.uniform(0, 0.8, 2)
        th = rng.uniform(0, 2 * np.pi, 2)
        alpha, beta = r * np.exp(1j * th)
        for p in phase_grid():
            cases.append((complex(alpha), complex(beta), p))

    def residual(case):
        alpha, beta, p = case
        psi = make_coherent(alpha, beta, BATTERY_CUTOFF)
        return abs(husimi_coherent_closed_form(alpha, beta, p) - husimi_route_overlap(psi, p))

    worst = max(parallel_map(residual, cases, threads))
    tol = 1e-7
    return CheckResult("coherent_closed_vs_overlap", worst, tol, worst <= tol, detail={"cases": len(cases)})


def random_cwt_cases(n: int = 30, seed: int = 7, cutoff: int = BATTERY_CUTOFF):
    """Random ``(psi, g, mu, z)`` with Fock (occupations <= 2) or coherent (|alpha| <= 0.5) states."""
    rng = np.random.default_rng(seed)

    def pick():
        if rng.random() < 0.5:
            m, k = rng.integers(0, 3, 2)
            return make_fock(int(m), int(k), cutoff)
        r = rng.uniform(0, 0.5, 2)
        th = rng.uniform(0, 2 * np.pi, 2)
        a, b = r * np.exp(1j * th)
        return make_coherent(complex(a), complex(b), cutoff)

    cases = []
    for _ in range(n):
        psi, g = pick(), pick()
        mu = float(rng.uniform(0.5, 2.0))
        z = complex(rng.uniform(0, 1.0) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        cases.append((psi, g, mu, z))
    return cases


def check_operator_cwt(threads=None, order: int = 64) -> CheckResult:
    """Quadrature CWT against the squeeze-displacement matrix element."""
    rule = gauss_hermite(order)

    def residual(case):
        psi, g, mu, z = case
        return abs(cwt_point(g, psi, CwtQuery(mu, z), rule) - cwt_operator_route(psi, g, mu, z))

    cases = random_cwt_cases()
    worst = max(parallel_map(residual, cases, threads))
    tol = 1e-7
    return CheckResult("operator_cwt_vs_integral", worst, tol, worst <= tol, detail={"cases": len(cases)})


def vacuum_husimi(p: PhasePoint) -> float:
    k = p.kappa
    return 4 * k / (1 + k) ** 2 * math.exp(-(abs(p.gamma) ** 2 + k * abs(p.sigma) ** 2) / (k + 1))


def check_vacuum(threads=None, order: int = 64) -> CheckResult:
    rule = gauss_hermite(order)
    vac = make_fock(0, 0, BATTERY_CUTOFF)

    def residual(p):
        ref = vacuum_husimi(p)
        return max(abs(husimi_route_cwt(vac, p, rule) - ref), abs(husimi_route_overlap(vac, p) - ref))

    worst = max(parallel_map(residual, phase_grid(), threads))
    tol = 1e-8
    return CheckResult("vacuum_closed_form", worst, tol, worst <= tol)


def check_normalization(threads=None, order: int = 16) -> CheckResult:
    rule = gauss_hermite(order)
    cases = [(make_fock(0, 0, BATTERY_CUTOFF), 1.0), (make_fock(0, 0, BATTERY_CUTOFF), 2.0),
             (make_fock(1, 0, BATTERY_CUTOFF), 1.0), (make_fock(1, 0, BATTERY_CUTOFF), 2.0)]
    worst = max(parallel_map(lambda c: abs(normalization_check(c[0], c[1], rule) - 1), cases, threads))
    tol = 1e-3
    return CheckResult("normalization", worst, tol, worst <= tol)


EIGEN_ETA = 0.8 - 0.5j
EIGEN_CUTOFFS = (10, 15, 20, 25)


def eigen_residuals(eta: complex = EIGEN_ETA, cutoffs=EIGEN_CUTOFFS):
    """``||v M - sqrt(2) eta_1 v||`` for ``v[m,n] = <eta|m,n>`` and ``M`` the matrix of ``Q1 - Q2``."""
    out = []
    for N in cutoffs:
        v = eta_overlap_table(N, eta).reshape(-1)
        M = mode_operator("Q1-Q2", N)
        out.append(float(np.linalg.norm(v @ M - np.sqrt(2) * eta.real * v)))
    return out


def resolution_of_identity_error(cutoff: int = 5, order: int = 40) -> float:
    """``max | sum_quad <m,n|eta><eta|m',n'> d^2eta/pi - delta |`` over indices ``<= cutoff``."""
    rule = gauss_hermite(order)
    k = cutoff + 1

    t = rule.nodes
    eta = (t[:, None] + 1j * t[None, :]).reshape(-1)
    # the Gauss-Hermite weights carry exp(-|eta|^2); strip it from both overlaps
    vals = (eta_overlap_table(cutoff, eta) * np.exp(np.abs(eta) ** 2 / 2)).reshape(k * k, -1)
    w = np.outer(rule.weights, rule.weights).reshape(-1)
    gram = (vals.conj() * w) @ vals.T / np.pi
    return float(np.max(np.abs(gram - np.eye(k * k))))


def check_representation(threads=None) -> CheckResult:
    res = eigen_residuals()
    monotone = all(b < a for a, b in zip(res, res[1:]))
    roi = resolution_of_identity_error()
    tol = 1e-8
    detail = {"eigen_residuals": res, "eigen_monotone_decreasing": monotone, "resolution_of_identity": roi}
    return CheckResult("representation", roi, tol, monotone and roi <= tol, detail=detail)


def check_hermite(threads=None, seed: int = 11, hermite_table=None) -> CheckResult:
    """Recurrence table against ``m! n!`` times the generating-series coefficients."""
    table_fn = hermite_table or series.hermite2_table
    rng = np.random.default_rng(seed)
    N = 10
    worst = 0.0
    for _ in range(20):
        x, y = (r * np.exp(1j * th) for r, th in zip(rng.uniform(0, 2, 2), rng.uniform(0, 2 * np.pi, 2)))
        H = table_fn(N, x, y)
        gen = series.hermite2_series(x, y, 2 * N)
        for m in range(N + 1):
            for n in range(N + 1):
                ref = gen.coeff((m, n)) * math.factorial(m) * math.factorial(n)
                worst = max(worst, abs(H[m, n] - ref) / (1 + abs(ref)))
    tol = 1e-10
    return CheckResult("hermite_recurrence_vs_series", worst, tol, worst <= tol)


def check_gaussian_integral(threads=None, seed: int = 5, order: int = 48) -> CheckResult:
    """``int d^2z/pi exp(zeta|z|^2 + xi z + eta z*) = -exp(-xi eta / zeta) / zeta`` by quadrature."""
    rng = np.random.default_rng(seed)
    rule = gauss_hermite(order)
    worst = 0.0
    for _ in range(20):
        c = rng.uniform(0.5, 2.0)
        xi, eta = (r * np.exp(1j * th) for r, th in zip(rng.uniform(0, 1, 2), rng.uniform(0, 2 * np.pi, 2)))
        num = integrate_plane(lambda z: np.exp(xi * z + eta * z.conj()), c, rule)
        ref = np.exp(xi * eta / c) / c
        worst = max(worst, abs(num - ref))
    tol = 1e-10
    return CheckResult("gaussian_integral_formula", worst, tol, worst <= tol)


DETERMINISM_CONFIG = {
    "state": {"kind": "tmsv", "r": 0.5, "cutoff": 12},
    "grid": {"sweep": "sigma-plane", "fixed": {"re": 0.2, "im": -0.1}, "kappa": 2.0, "extent": [-1, 1], "samples": 4},
    "options": {"route": "cwt", "quad_order": 32},
}


def check_determinism(threads=None) -> CheckResult:
    """Two grid sweeps from one config must render to identical bytes."""
    from .cli import parse_config, render_records, run_husimi_grid

    text = json.dumps(DETERMINISM_CONFIG).encode()
    outputs = []
    for _ in range(2):
        state, grid, opts = parse_config(text)
        outputs.append(render_records(run_husimi_grid(state, grid, opts, threads=threads), "csv"))
    same = outputs[0] == outputs[1]
    return CheckResult("determinism", 0.0 if same else 1.0, 0.0, same)


CHECKS = (
    ("theorem_cwt_vs_overlap", check_theorem),
    ("smoothing_vs_overlap", check_smoothing),
    ("coherent_closed_vs_overlap", check_coherent_closed),
    ("operator_cwt_vs_integral", check_operator_cwt),
    ("vacuum_closed_form", check_vacuum),
    ("normalization", check_normalization),
    ("representation", check_representation),
    ("hermite_recurrence_vs_series", check_hermite),
    ("gaussian_integral_formula", check_gaussian_integral),
    ("determinism", check_determinism),
)


def run_checks(threads=None, only=None, log=None) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        res = fn(threads=threads)
        res.seconds = time.perf_counter() - t0
        if log is not None:
            log(res.line())
        results.append(res)
    return results


def run_verify(threads=None, only=None, timings: bool = False, log=None) -> dict:
    """Run the battery; the report's ``passed`` is true iff every check passed."""
    results = run_checks(threads, only, log)
    return {
        "checks": [r.as_dict(timings) for r in results],
        "passed": all(r.passed for r in results),
    }
