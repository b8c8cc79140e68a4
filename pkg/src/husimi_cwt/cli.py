"""Command-line front end.

Subcommands ``husimi``, ``cwt``, ``wigner``, ``admissibility`` and ``verify``.
Run configs are JSON documents read from ``--config PATH`` or standard input.

Exit codes: 0 success, 1 usage or config error, 2 verification failure,
3 numeric guard tripped.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import sys
from dataclasses import dataclass, replace

import numpy as np

from .cwt import CwtQuery, cwt_operator_route, cwt_point
from .eta import admissibility_integral
from .fock import NumericGuardError, TwoModeState, make_coherent, make_fock, make_tmsv, normalize
from .husimi import (
    PhasePoint,
    WignerFunction,
    husimi_coherent_closed_form,
    husimi_overlap_values,
    husimi_route_cwt,
    husimi_route_smoothing,
)
from .parallel import parallel_map, resolve_threads
from .quad import DEFAULT_ORDER, gauss_hermite

log = logging.getLogger("husimi_cwt")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_NUMERIC = 0, 1, 2, 3

DEFAULT_CUTOFF = 25
HUSIMI_ROUTES = ("overlap", "cwt", "smoothing", "coherent-closed")
CWT_ROUTES = ("integral", "operator")
SWEEPS = ("sigma-plane", "gamma-plane", "z-plane")
HUSIMI_HEADER = ("sigma_re", "sigma_im", "gamma_re", "gamma_im", "kappa", "value", "route", "cutoff", "quad_order")
CWT_HEADER = ("mu", "z_re", "z_im", "value_re", "value_im", "route", "cutoff", "quad_order")
WIGNER_HEADER = ("sigma_re", "sigma_im", "gamma_re", "gamma_im", "value", "cutoff")


class ConfigError(ValueError):
    """Invalid run config; the message starts with the offending field path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class StateSpec:
    kind: str
    params: dict
    cutoff: int


@dataclass(frozen=True)
class GridSpec:
    sweep: str
    fixed: complex
    kappa: float
    extent_re: tuple[float, float]
    extent_im: tuple[float, float]
    samples: int
    mu: float = 1.0


@dataclass(frozen=True)
class RunOptions:
    route: str = "overlap"
    quad_order: int = DEFAULT_ORDER
    cutoff: int | None = None
    signal: StateSpec | None = None


# -- config parsing ---------------------------------------------------------

def _complex(value, path):
    if isinstance(value, bool):
        raise ConfigError(path, "expected a number or {re, im} pair")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, dict) and set(value) <= {"re", "im"}:
        return complex(_real(value.get("re", 0.0), f"{path}.re"), _real(value.get("im", 0.0), f"{path}.im"))
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(_real(value[0], f"{path}[0]"), _real(value[1], f"{path}[1]"))
    raise ConfigError(path, "expected a number or {re, im} pair")


def _real(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    if not np.isfinite(value):
        raise ConfigError(path, "must be finite")
    return float(value)


def _int(value, path, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(path, f"must be >= {minimum}")
    return value


def _require(obj, key, path):
    if key not in obj:
        raise ConfigError(f"{path}.{key}", "missing")
    return obj[key]


def _parse_state(obj, path) -> StateSpec:
    if not isinstance(obj, dict):
        raise ConfigError(path, "expected an object")
    kind = _require(obj, "kind", path)
    cutoff = _int(obj.get("cutoff", DEFAULT_CUTOFF), f"{path}.cutoff", 0)
    if kind == "fock":
        m = _int(_require(obj, "m", path), f"{path}.m", 0)
        n = _int(_require(obj, "n", path), f"{path}.n", 0)
        if m > cutoff:
            raise ConfigError(f"{path}.m", f"m exceeds cutoff ({m} > {cutoff})")
        if n > cutoff:
            raise ConfigError(f"{path}.n", f"n exceeds cutoff ({n} > {cutoff})")
        params = {"m": m, "n": n}
    elif kind == "coherent":
        params = {
            "alpha": _complex(obj.get("alpha", 0.0), f"{path}.alpha"),
            "beta": _complex(obj.get("beta", 0.0), f"{path}.beta"),
        }
    elif kind == "tmsv":
        params = {"r": _real(_require(obj, "r", path), f"{path}.r")}
    elif kind == "custom":
        coeffs = _require(obj, "coeffs", path)
        if not isinstance(coeffs, list) or len(coeffs) != (cutoff + 1) ** 2:
            raise ConfigError(f"{path}.coeffs", f"expected a list of (cutoff+1)^2 = {(cutoff + 1) ** 2} entries")
        params = {"coeffs": tuple(_complex(c, f"{path}.coeffs[{i}]") for i, c in enumerate(coeffs))}
        norm = sum(abs(c) ** 2 for c in params["coeffs"])
        if norm == 0:
            raise ConfigError(f"{path}.coeffs", "all coefficients are zero")
        if abs(norm - 1) > 1e-6:
            log.warning("%s.coeffs: norm %.9g deviates from 1; renormalizing", path, norm)
    else:
        raise ConfigError(f"{path}.kind", f"unknown kind {kind!r}; expected fock, coherent, tmsv or custom")
    return StateSpec(kind, params, cutoff)


def _parse_range(value, path):
    if not (isinstance(value, list) and len(value) == 2):
        raise ConfigError(path, "expected [min, max]")
    lo, hi = _real(value[0], f"{path}[0]"), _real(value[1], f"{path}[1]")
    if not lo <= hi:
        raise ConfigError(path, "min must not exceed max")
    return lo, hi


def _parse_extent(value, path):
    """``[min, max]`` for both axes, or ``{"re": [min, max], "im": [min, max]}``."""
    if isinstance(value, dict):
        return (_parse_range(_require(value, "re", path), f"{path}.re"),
                _parse_range(_require(value, "im", path), f"{path}.im"))
    rng = _parse_range(value, path)
    return rng, rng


def _parse_grid(obj, path) -> GridSpec:
    if not isinstance(obj, dict):
        raise ConfigError(path, "expected an object")
    sweep = obj.get("sweep", "sigma-plane")
    if sweep not in SWEEPS:
        raise ConfigError(f"{path}.sweep", f"unknown sweep {sweep!r}; expected one of {SWEEPS}")
    kappa = _real(obj.get("kappa", 1.0), f"{path}.kappa")
    if not kappa > 0:
        raise ConfigError(f"{path}.kappa", "must be positive")
    mu = _real(obj.get("mu", 1.0), f"{path}.mu")
    if not mu > 0:
        raise ConfigError(f"{path}.mu", "must be positive")
    ext_re, ext_im = _parse_extent(obj.get("extent", [-1.0, 1.0]), f"{path}.extent")
    samples = _int(obj.get("samples", 11), f"{path}.samples", 2)
    fixed = _complex(obj.get("fixed", 0.0), f"{path}.fixed")
    return GridSpec(sweep, fixed, kappa, ext_re, ext_im, samples, mu)


def parse_config(text) -> tuple[StateSpec, GridSpec, RunOptions]:
    """Validate a JSON run config and apply defaults.

    Raises
    ------
    ConfigError
        With the dotted path of the first offending field.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"malformed JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ConfigError("$", "expected a JSON object")
    state = _parse_state(_require(doc, "state", "$"), "$.state")
    grid = _parse_grid(doc.get("grid", {}), "$.grid")
    raw = doc.get("options", {})
    if not isinstance(raw, dict):
        raise ConfigError("$.options", "expected an object")
    route = raw.get("route", "overlap")
    order = _int(raw.get("quad_order", DEFAULT_ORDER), "$.options.quad_order", 1)
    if order > 256:
        raise ConfigError("$.options.quad_order", "must be <= 256")
    signal = _parse_state(doc["signal"], "$.signal") if "signal" in doc else None
    return state, grid, RunOptions(route=route, quad_order=order, signal=signal)


def build_state(spec: StateSpec, cutoff: int | None = None) -> TwoModeState:
    N = spec.cutoff if cutoff is None else cutoff
    p = spec.params
    if spec.kind == "fock":
        if max(p["m"], p["n"]) > N:
            raise ConfigError("$.state", f"occupation ({p['m']}, {p['n']}) exceeds cutoff {N}")
        return make_fock(p["m"], p["n"], N)
    if spec.kind == "coherent":
        return make_coherent(p["alpha"], p["beta"], N)
    if spec.kind == "tmsv":
        return make_tmsv(p["r"], N)
    coeffs = np.array(p["coeffs"], dtype=complex).reshape(spec.cutoff + 1, spec.cutoff + 1)
    return normalize(TwoModeState(coeffs)).with_cutoff(N)


# -- grid sweeps ------------------------------------------------------------

def grid_nodes(grid: GridSpec) -> list[complex]:
    """Sweep-plane nodes, row-major: imaginary part outer, real part inner."""
    re = np.linspace(*grid.extent_re, grid.samples)
    im = np.linspace(*grid.extent_im, grid.samples)
    return [complex(x, y) for y in im for x in re]


def _phase_points(grid: GridSpec):
    for w in grid_nodes(grid):
        if grid.sweep == "gamma-plane":
            yield PhasePoint(grid.fixed, w, grid.kappa)
        else:
            yield PhasePoint(w, grid.fixed, grid.kappa)


def run_husimi_grid(state: StateSpec, grid: GridSpec, opts: RunOptions, threads=None):
    """One record per grid node, in deterministic row-major order."""
    if opts.route not in HUSIMI_ROUTES:
        raise ConfigError("$.options.route", f"unknown route {opts.route!r}; expected one of {HUSIMI_ROUTES}")
    if grid.sweep == "z-plane":
        raise ConfigError("$.grid.sweep", "husimi sweeps the sigma-plane or gamma-plane")
    cutoff = opts.cutoff if opts.cutoff is not None else state.cutoff
    psi = build_state(state, cutoff)
    points = list(_phase_points(grid))
    rule = gauss_hermite(opts.quad_order)
    if opts.route == "overlap":
        sig = np.array([p.sigma for p in points])
        gam = np.array([p.gamma for p in points])
        values = [float(v) for v in husimi_overlap_values(psi, sig, gam, grid.kappa)]
    elif opts.route == "cwt":
        values = parallel_map(lambda p: husimi_route_cwt(psi, p, rule), points, threads)
    elif opts.route == "smoothing":
        values = parallel_map(lambda p: husimi_route_smoothing(psi, p, rule), points, threads)
    else:
        if state.kind != "coherent":
            raise ConfigError("$.options.route", "coherent-closed needs a coherent state")
        a, b = state.params["alpha"], state.params["beta"]
        values = [husimi_coherent_closed_form(a, b, p) for p in points]
    for p, v in zip(points, values):
        rec = {
            "sigma_re": p.sigma.real, "sigma_im": p.sigma.imag,
            "gamma_re": p.gamma.real, "gamma_im": p.gamma.imag,
            "kappa": p.kappa, "value": v, "route": opts.route,
            "cutoff": cutoff, "quad_order": opts.quad_order,
        }
        if opts.route == "smoothing":
            rec["quadrature"] = True
        yield rec


def run_cwt_grid(state: StateSpec, grid: GridSpec, opts: RunOptions, threads=None):
    """Transform of the ``signal`` state by the mother wavelet ``state`` over the z-plane."""
    route = opts.route if opts.route in CWT_ROUTES else "integral"
    cutoff = opts.cutoff if opts.cutoff is not None else state.cutoff
    psi = build_state(state, cutoff)
    g = build_state(opts.signal, cutoff) if opts.signal else make_fock(0, 0, cutoff)
    rule = gauss_hermite(opts.quad_order)
    nodes = grid_nodes(grid)
    if route == "operator":
        values = parallel_map(lambda z: cwt_operator_route(psi, g, grid.mu, z), nodes, threads)
    else:
        values = parallel_map(lambda z: cwt_point(g, psi, CwtQuery(grid.mu, z), rule), nodes, threads)
    for z, v in zip(nodes, values):
        yield {
            "mu": grid.mu, "z_re": z.real, "z_im": z.imag,
            "value_re": v.real, "value_im": v.imag, "route": route,
            "cutoff": cutoff, "quad_order": opts.quad_order,
        }


def run_wigner_grid(state: StateSpec, grid: GridSpec, opts: RunOptions, threads=None):
    cutoff = opts.cutoff if opts.cutoff is not None else state.cutoff
    wig = WignerFunction(build_state(state, cutoff))
    points = list(_phase_points(grid))
    values = wig(np.array([p.sigma for p in points]), np.array([p.gamma for p in points]))
    for p, v in zip(points, values):
        yield {
            "sigma_re": p.sigma.real, "sigma_im": p.sigma.imag,
            "gamma_re": p.gamma.real, "gamma_im": p.gamma.imag,
            "value": float(v), "cutoff": cutoff,
        }


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.12e}"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render_records(records, fmt: str = "csv", header=HUSIMI_HEADER) -> str:
    """CSV with a fixed header and ``%.12e`` numbers, or JSON lines."""
    buf = io.StringIO()
    if fmt == "jsonl":
        for rec in records:
            buf.write(json.dumps(rec, sort_keys=True) + "\n")
        return buf.getvalue()
    buf.write(",".join(header) + "\n")
    for rec in records:
        row = []
        for key in header:
            val = rec[key]
            # route C rows are quadrature-limited: mark them in the route column
            if key == "route" and rec.get("quadrature"):
                val = f"{val}:quadrature"
            row.append(_fmt(val))
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


# -- entry point ------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run config (default: standard input)")
    common.add_argument("--cutoff", type=int, help="override the state cutoff")
    common.add_argument("--quad-order", type=int, help="Gauss-Hermite order per axis")
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    common.add_argument("--threads", type=int, help="worker threads (default: $HUSIMI_CWT_THREADS or 1)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="husimi-cwt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("husimi", parents=[common], help="entangled Husimi distribution on a grid")
    p.add_argument("--route", choices=HUSIMI_ROUTES)
    p = sub.add_parser("cwt", parents=[common], help="complex wavelet transform over the z-plane")
    p.add_argument("--route", choices=CWT_ROUTES)
    sub.add_parser("wigner", parents=[common], help="two-mode Wigner function on a grid")
    sub.add_parser("admissibility", parents=[common], help="mother-wavelet admissibility integral")
    p = sub.add_parser("verify", parents=[common], help="run the cross-route verification battery")
    p.add_argument("--check", action="append", help="run only the named check (repeatable)")
    p.add_argument("--timings", action="store_true", help="include per-check runtimes in the report")
    return parser


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args):
    if args.config:
        with open(args.config, "rb") as fh:
            text = fh.read()
    else:
        text = sys.stdin.buffer.read()
    state, grid, opts = parse_config(text)
    if getattr(args, "route", None):
        opts = replace(opts, route=args.route)
    if args.cutoff is not None:
        opts = replace(opts, cutoff=args.cutoff)
    if args.quad_order is not None:
        opts = replace(opts, quad_order=args.quad_order)
    return state, grid, opts


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        threads = resolve_threads(args.threads)
        if args.command == "verify":
            from .verify import run_verify

            report = run_verify(threads, only=args.check, timings=args.timings, log=lambda s: print(s, file=sys.stderr))
            _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
            return EXIT_OK if report["passed"] else EXIT_VERIFY
        state, grid, opts = _load(args)
        if args.command == "husimi":
            text = render_records(run_husimi_grid(state, grid, opts, threads), args.format, HUSIMI_HEADER)
        elif args.command == "cwt":
            if opts.route not in CWT_ROUTES:
                opts = replace(opts, route="integral")
            text = render_records(run_cwt_grid(state, grid, opts, threads), args.format, CWT_HEADER)
        elif args.command == "wigner":
            text = render_records(run_wigner_grid(state, grid, opts, threads), args.format, WIGNER_HEADER)
        else:
            cutoff = opts.cutoff if opts.cutoff is not None else state.cutoff
            val = admissibility_integral(build_state(state, cutoff), gauss_hermite(opts.quad_order))
            text = json.dumps({"re": val.real, "im": val.imag, "quad_order": opts.quad_order}, sort_keys=True) + "\n"
        _emit(text, args.out)
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericGuardError as exc:
        print(f"numeric guard: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
