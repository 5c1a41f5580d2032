"""Command-line experiment harness.

Subcommands: ``table21``, ``ellipse``, ``scan``, ``moments``, ``qcheck`` and
``solve``. Reports go to ``--out`` (or stdout) as CSV, JSON or, for
``table21``, a plain-text table. Exit codes: 0 success, 2 bad configuration,
3 numerical contract violation, 4 failed identity check.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Optional

import numpy as np

from . import __version__
from .diagnostics import ContractError, bound_report, estimate_rate, hull_distance
from .exact import ExactComplex
from .moments import (
    IdentityViolation,
    TruncationExhausted,
    evolve,
    finite_sequence,
    haar_exact_sequence,
    haar_sequence,
)
from .orthomin import StoppingRule, solve
from .qseries import (
    coefficient_sums,
    finite_jacobi_check,
    jacobi_triple_product_check,
    macmahon_check,
    phi_ratio_identity_check,
    q_binomial,
    triple_product_tail,
)
from .spectra import SpectrumError, SpectrumSpec, arc_angles, roots_of_unity

EXIT_OK, EXIT_CONFIG, EXIT_CONTRACT, EXIT_IDENTITY = 0, 2, 3, 4

TABLE21_KS = (1, 2, 3, 4, 5, 7, 9, 11)
# the published table shows these columns from iterate 5 on only
TABLE21_LATE = (5, 7, 9, 11)

#: ``q_n`` may exceed an a priori bound by this much before it counts as a violation
BOUND_SLACK = 1e-12


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass
class ExperimentConfig:
    spectrum: SpectrumSpec
    k_list: list = field(default_factory=lambda: [1])
    iters: int = 200
    r0: str = "ones"
    seed: int = 0
    window: int = 10
    output: Optional[str] = None
    format: str = "json"

    def __post_init__(self):
        if self.iters < 1:
            raise ConfigError("iters must be >= 1")
        if not self.k_list or any(k < 1 for k in self.k_list):
            raise ConfigError("k_list must be nonempty with every k >= 1")
        if self.r0 not in ("ones", "seeded_random"):
            raise ConfigError(f"r0 must be 'ones' or 'seeded_random', got {self.r0!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.window < 1:
            raise ConfigError("window must be >= 1")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["spectrum"] = self.spectrum.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = dict(data)
        try:
            spectrum = SpectrumSpec.from_dict(data.pop("spectrum"))
            return cls(spectrum=spectrum, **data)
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"bad experiment config: {exc}") from exc


def initial_residual(d: int, kind: str = "ones", seed: int = 0) -> np.ndarray:
    """``ones`` or a seeded standard complex Gaussian vector (unit variance per entry)."""
    if kind == "ones":
        return np.ones(d, dtype=complex)
    rng = np.random.default_rng(seed)
    return (rng.standard_normal(d) + 1j * rng.standard_normal(d)) / math.sqrt(2)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    return x


def _report(config: dict, results: list, bounds=None, rates=None, started: float = 0.0) -> dict:
    return {
        "config": _jsonable(config),
        "results": _jsonable(results),
        "bounds": _jsonable(bounds or {}),
        "rates": _jsonable(rates or {}),
        "version": __version__,
        "wall_time": time.perf_counter() - started,
    }


def _csv(header: list, rows: list, digits: int) -> str:
    def cell(x):
        if isinstance(x, (float, np.floating)):
            return f"{x:.{digits}g}"
        return "" if x is None else str(x)

    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    lines = [f"# orthominlab {__version__} {stamp}", ",".join(header)]
    lines += [",".join(cell(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _trace_rows(k: int, trace) -> list:
    return [[k, rec.n, float(rec.residual_norm), None if rec.q is None else float(rec.q)] for rec in trace.records]


def _bound_violations(trace, bound: Optional[float]) -> list:
    if bound is None:
        return []
    return [int(i) for i in np.flatnonzero(trace.q_values > bound + BOUND_SLACK)]


def run_experiment(cfg: ExperimentConfig):
    """Solve once per ``k``; returns ``(report, tidy_rows, violations)``."""
    started = time.perf_counter()
    A = cfg.spectrum.build()
    zeta = cfg.spectrum.unit_circle_part()
    b = initial_residual(A.d, cfg.r0, cfg.seed)
    br = bound_report(A.entries, rho=cfg.spectrum.rho, z0=cfg.spectrum.z0)
    results, rows, rates, violations = [], [], {}, []
    for k in cfg.k_list:
        _, trace = solve(A, b, k=k, stop=StoppingRule(max_iters=cfg.iters), zeta=zeta, bounds=br.to_dict())
        rate = estimate_rate(trace, min(cfg.window, max(1, len(trace.q_values))))
        rates[str(k)] = rate.to_dict()
        bad = _bound_violations(trace, br.eisenstat_bound)
        violations += [(k, n) for n in bad]
        entry = {"k": k, "status": trace.status, "iterations": len(trace) - 1,
                 "final_residual": float(trace.residual_norms[-1]), "rate": rate.limit,
                 "bound_violations": bad}
        if zeta is not None:
            entry["final_omega"] = complex(trace.omegas[-1])
        results.append(entry)
        rows += _trace_rows(k, trace)
    report = _report(cfg.to_dict(), results, br.to_dict(), rates, started)
    return report, rows, violations


# --- table21 -----------------------------------------------------------------

def table21_traces(rho: float = 0.8, d: int = 13, iters: int = 14, ks=TABLE21_KS) -> dict:
    spec = SpectrumSpec(kind="unit_circle_roots", d=d, rho=rho)
    A = spec.build()
    b = np.ones(d, dtype=complex)
    return {k: solve(A, b, k=k, stop=StoppingRule(max_iters=iters))[1] for k in ks}


def format_table21(traces: dict, first_row: int = 1) -> str:
    """Plain-text layout: row ``it`` shows ``||r_(it-1)||`` and ``q_(it-1)`` per column."""
    ks = list(traces)
    head = "  it" + "".join(f"  {'Orthomin(' + str(k) + ')':>17}" for k in ks)
    sub = "    " + "".join(f"  {'||r||':>8} {'q':>8}" for _ in ks)
    lines = [head, sub]
    n_rows = max(len(t.q_values) for t in traces.values())
    for it in range(first_row, n_rows + 1):
        line = f"{it:4d}"
        for k, tr in traces.items():
            n = it - 1
            if (k in TABLE21_LATE and it < 5) or n >= len(tr.q_values):
                line += " " * 19
            else:
                line += f"  {tr.residual_norms[n]:8.4f} {tr.q_values[n]:8.4f}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def cmd_table21(args) -> int:
    started = time.perf_counter()
    traces = table21_traces(args.rho, args.d, args.iters)
    if args.format == "table":
        _emit(format_table21(traces), args.out)
        return EXIT_OK
    rows = []
    for k, tr in traces.items():
        rows += [[k, n + 1, n, float(tr.residual_norms[n]), float(tr.q_values[n])] for n in range(len(tr.q_values))]
    if args.format == "csv":
        _emit(_csv(["k", "it", "n", "residual_norm", "q"], rows, args.digits), args.out)
    else:
        config = {"rho": args.rho, "d": args.d, "iters": args.iters, "k_list": list(TABLE21_KS)}
        results = [{"k": k, "residual_norms": tr.residual_norms, "q": tr.q_values} for k, tr in traces.items()]
        _emit(json.dumps(_report(config, results, started=started), indent=2) + "\n", args.out)
    return EXIT_OK


# --- ellipse / solve -----------------------------------------------------------

def _emit_experiment(cfg: ExperimentConfig, digits: int) -> int:
    report, rows, violations = run_experiment(cfg)
    if cfg.format == "csv":
        _emit(_csv(["k", "n", "residual_norm", "q"], rows, digits), cfg.output)
    else:
        _emit(json.dumps(report, indent=2) + "\n", cfg.output)
    if violations:
        k, n = violations[0]
        print(f"bound violated: q_{n} exceeds the field-of-values bound for k={k} "
              f"({len(violations)} violations)", file=sys.stderr)
        return EXIT_CONTRACT
    return EXIT_OK


def cmd_ellipse(args) -> int:
    spec = SpectrumSpec(kind="ellipse", d=args.d, alpha=args.alpha, beta=args.beta, theta=args.theta,
                        u=complex(args.u_re, args.u_im))
    cfg = ExperimentConfig(spectrum=spec, k_list=args.k, iters=args.iters, r0=args.r0, seed=args.seed,
                           window=args.window, output=args.out, format=args.format)
    return _emit_experiment(cfg, args.digits)


def cmd_solve(args) -> int:
    data = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    if args.spectrum:
        text = args.spectrum
        if not text.lstrip().startswith("{"):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        data["spectrum"] = json.loads(text)
    if "spectrum" not in data:
        raise ConfigError("solve needs --spectrum or a --config with a spectrum entry")
    for key in ("k", "iters", "r0", "seed", "window", "out", "format"):
        value = getattr(args, key)
        if value is not None:
            data[{"k": "k_list", "out": "output"}.get(key, key)] = value
    return _emit_experiment(ExperimentConfig.from_dict(data), args.digits)


# --- scan ----------------------------------------------------------------------

def _circle_point(point):
    d, rho, k, iters, window, tol = point
    A = SpectrumSpec(kind="unit_circle_roots", d=d, rho=rho).build()
    _, trace = solve(A, np.ones(d, dtype=complex), k=k, stop=StoppingRule(max_iters=iters))
    q = trace.q_values
    rate = estimate_rate(q, min(window, len(q)))
    if d == 2 and len(q) > 2 and np.ptp(q[1:]) < 1e-10:
        verdict = "constant q_n"
    else:
        verdict = "support" if abs(rate.limit - rho) < tol else "refute"
    return {"d": d, "rho": rho, "k": k, "limit": rate.limit, "gap": abs(rate.limit - rho),
            "hull_distance": hull_distance(roots_of_unity(d), -rho), "status": trace.status, "verdict": verdict}


def _hull_point(point):
    d, rho, half_angle, k, iters, window, tol = point
    A = SpectrumSpec(kind="arc", d=d, rho=rho, half_angle=half_angle).build()
    zeta = np.exp(1j * arc_angles(d, half_angle))
    _, trace = solve(A, np.ones(d, dtype=complex), k=k, stop=StoppingRule(max_iters=iters), zeta=zeta)
    q = trace.q_values
    rate = estimate_rate(q, min(window, len(q)))
    dist = hull_distance(zeta, -rho)
    if abs(rate.limit - rho) < tol:
        verdict = "rate -> rho"
    elif rate.limit < rho:
        verdict = "rate < rho"
    else:
        verdict = "inconclusive"
    return {"d": d, "rho": rho, "half_angle": half_angle, "k": k, "limit": rate.limit,
            "gap": abs(rate.limit - rho), "hull_distance": dist,
            "final_omega_gap": abs(trace.omegas[-1] + rho), "status": trace.status, "verdict": verdict}


def _int_list(text: str) -> list:
    out = []
    for part in text.split(","):
        if ":" in part:
            lo, hi = part.split(":")
            out += list(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("empty integer list")
    return out


def _float_list(text: str) -> list:
    return [float(x) for x in text.split(",") if x]


def scan_points(args) -> tuple:
    if args.kind == "circle":
        pts = [(d, rho, k, args.iters, args.window, args.tol) for d in args.d for rho in args.rho for k in args.k]
        return _circle_point, pts
    angles = args.half_angle
    if not angles:
        rho = args.rho[0]
        top = math.pi - math.acos(rho)
        angles = [top - 0.01, 0.75 * top, 0.5 * top]
    pts = [(d, rho, h, k, args.iters, args.window, args.tol)
           for d in args.d for rho in args.rho for h in angles for k in args.k]
    return _hull_point, pts


def cmd_scan(args) -> int:
    started = time.perf_counter()
    fn, pts = scan_points(args)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(fn, pts))  # map preserves grid order
    else:
        results = [fn(p) for p in pts]
    counts = {}
    for r in results:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    if args.format == "csv":
        header = list(results[0])
        _emit(_csv(header, [[r[h] for h in header] for r in results], args.digits), args.out)
    else:
        config = {key: getattr(args, key) for key in ("kind", "d", "rho", "k", "iters", "window", "tol", "half_angle")}
        report = _report(config, results, started=started)
        report["summary"] = counts
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    print("verdicts: " + ", ".join(f"{v}={n}" for v, n in sorted(counts.items())), file=sys.stderr)
    return EXIT_OK


# --- moments -------------------------------------------------------------------

def _exact_rho(text: str) -> Fraction:
    try:
        rho = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"exact mode needs a rational rho such as 2/5, got {text!r}") from exc
    if not 0 < rho < 1:
        raise ConfigError("need 0 < rho < 1")
    return rho


def cmd_moments(args) -> int:
    if args.mode == "haar_exact":
        rho = _exact_rho(args.rho)
        omegas, Ts = haar_exact_sequence(rho, args.steps)
        failed = 0
        lines = []
        for n in range(1, args.steps + 1):
            ok = Ts[n] == rho ** (2 * n + 1)
            failed += not ok
            lines.append(f"n={n} T_n={Ts[n]} rho^{2 * n + 1}={rho ** (2 * n + 1)} {'PASS' if ok else 'FAIL'}")
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_IDENTITY if failed else EXIT_OK
    try:
        rho = float(Fraction(args.rho))
    except ValueError as exc:
        raise ConfigError(f"bad rho {args.rho!r}") from exc
    if not 0 < rho < 1:
        raise ConfigError("need 0 < rho < 1")
    try:
        if args.mode == "finite":
            r0 = initial_residual(args.d, args.r0, args.seed)
            seq = evolve(finite_sequence(args.d, rho, r0), args.steps)
            J = args.J if args.J is not None else args.d
        else:
            J = args.J if args.J is not None else 4
            seq = evolve(haar_sequence(rho, J + args.steps + 1), args.steps)
    except TruncationExhausted as exc:
        print(f"truncation exhausted: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    _emit(f"# orthominlab {__version__} {stamp}\n" + seq.to_csv(J, args.digits), args.out)
    return EXIT_OK


# --- qcheck --------------------------------------------------------------------

QCHECK_TOL = 1e-12


def _hand_cases() -> dict:
    q = 0.37
    worst = {}
    lhs, rhs = phi_ratio_identity_check(1, q)
    worst["phi_ratio"] = abs(lhs - rhs)
    worst["finite_jacobi"] = finite_jacobi_check(1, q)
    lhs, rhs = macmahon_check(1, 0, q, 0.6 + 0.8j)
    worst["macmahon"] = abs(lhs - rhs)
    s2, sa = coefficient_sums(1, q)
    worst["coefficient_sums"] = max(abs(s2 - (1 + q * q)), abs(sa + q))
    lhs, rhs = jacobi_triple_product_check(0.5, 1.0, 30)
    worst["triple_product"] = abs(lhs - rhs)
    return worst


def qcheck_float(max_n: int, trials: int, seed: int) -> dict:
    worst = _hand_cases()
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(1, max_n + 1))
        q = float(rng.uniform(-0.95, 0.95))
        lhs, rhs = phi_ratio_identity_check(n, q)
        worst["phi_ratio"] = max(worst["phi_ratio"], abs(lhs - rhs))
        s2, sa = coefficient_sums(n, q)
        # errors are relative to the largest coefficient, which grows quickly as |q| -> 1
        scale = max(1.0, abs(q_binomial(2 * n, n, q * q)))
        gap = max(abs(s2 - q_binomial(2 * n, n, q * q)), abs(sa + q * q_binomial(2 * n, n + 1, q * q)))
        worst["coefficient_sums"] = max(worst["coefficient_sums"], gap / scale)
        qc = complex(cmath.rect(rng.uniform(0, 0.9), rng.uniform(-math.pi, math.pi)))
        qj = qc if rng.random() < 0.5 else qc.real
        scale = max(1.0, abs(q_binomial(2 * n, n, qj * qj)))
        worst["finite_jacobi"] = max(worst["finite_jacobi"], finite_jacobi_check(n, qj) / scale)
        m, nn = int(rng.integers(0, min(6, max_n) + 1)), int(rng.integers(0, min(6, max_n) + 1))
        z = cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        lhs, rhs = macmahon_check(m, nn, qc, z)
        worst["macmahon"] = max(worst["macmahon"], abs(lhs - rhs))
        lhs, rhs = jacobi_triple_product_check(float(rng.uniform(0.0, 0.5)), z, 30)
        worst["triple_product"] = max(worst["triple_product"], abs(lhs - rhs))
    return worst


def qcheck_exact(max_n: int) -> dict:
    """Identity discrepancies in rational arithmetic; all should be exactly zero."""
    worst = {"finite_jacobi": Fraction(0), "macmahon": Fraction(0), "coefficient_sums": Fraction(0),
             "phi_ratio": Fraction(0)}
    z = ExactComplex.on_unit_circle(2, 1)
    for n in range(1, min(max_n, 8) + 1):
        for q in (Fraction(1, 3), Fraction(-2, 5), Fraction(7, 9)):
            worst["finite_jacobi"] = max(worst["finite_jacobi"], finite_jacobi_check(n, q))
            s2, sa = coefficient_sums(n, q)
            gap = max(abs(s2 - q_binomial(2 * n, n, q * q)), abs(sa + q * q_binomial(2 * n, n + 1, q * q)))
            worst["coefficient_sums"] = max(worst["coefficient_sums"], gap)
            lhs, rhs = phi_ratio_identity_check(n, q)
            worst["phi_ratio"] = max(worst["phi_ratio"], abs(lhs - rhs))
            for m in range(0, min(n, 6) + 1):
                lhs, rhs = macmahon_check(m, min(n, 6), q, z)
                diff = lhs - rhs
                worst["macmahon"] = max(worst["macmahon"], abs(diff.re), abs(diff.im))
    return worst


def cmd_qcheck(args) -> int:
    if args.max_n < 1:
        raise ConfigError("max-n must be >= 1")
    worst = qcheck_exact(args.max_n) if args.exact else qcheck_float(args.max_n, args.trials, args.seed)
    failed = False
    lines = []
    for name, err in worst.items():
        ok = err == 0 if args.exact else err < QCHECK_TOL
        failed |= not ok
        lines.append(f"{name:18s} max_error={float(err):.3e} {'PASS' if ok else 'FAIL'}")
    if not args.exact:
        lines.append(f"{'':18s} triple-product tail scale rho^(2K) <= {triple_product_tail(0.5, 30):.3e}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_IDENTITY if failed else EXIT_OK


# --- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orthominlab", description="Orthomin(k) convergence experiments.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("csv", "json"), default_fmt="json"):
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
        sp.add_argument("--format", choices=fmt, default=default_fmt)
        sp.add_argument("--digits", type=int, default=10, help="significant digits in CSV output")

    t = sub.add_parser("table21", help="residual norms and ratios for I + rho*U, d-th roots of unity")
    t.add_argument("--rho", type=float, default=0.8)
    t.add_argument("--d", type=int, default=13)
    t.add_argument("--iters", type=int, default=14)
    common(t, ("table", "csv", "json"), "table")
    t.set_defaults(func=cmd_table21)

    e = sub.add_parser("ellipse", help="Orthomin(k) on eigenvalues along an ellipse")
    e.add_argument("--alpha", type=float, default=2.0)
    e.add_argument("--beta", type=float, default=1.0)
    e.add_argument("--theta", type=float, default=math.pi / 3,
                   help="rotation of the alpha axis from the real axis (radians)")
    e.add_argument("--u-re", type=float, default=2.0)
    e.add_argument("--u-im", type=float, default=1.0)
    e.add_argument("--d", type=int, default=128)
    e.add_argument("--k", type=_int_list, default=[1, 2, 3, 4, 5, 10])
    e.add_argument("--iters", type=int, default=400)
    e.add_argument("--window", type=int, default=10)
    e.add_argument("--r0", choices=("ones", "seeded_random"), default="ones")
    e.add_argument("--seed", type=int, default=0)
    common(e)
    e.set_defaults(func=cmd_ellipse)

    s = sub.add_parser("scan", help="conjecture scans over circle or arc spectra")
    s.add_argument("--kind", choices=("circle", "hull"), default="circle")
    s.add_argument("--d", type=_int_list, default=None, help="e.g. 8:32 or 8,13,21")
    s.add_argument("--rho", type=_float_list, default=None)
    s.add_argument("--k", type=_int_list, default=None)
    s.add_argument("--half-angle", type=_float_list, default=None, help="arc half-angles (hull scans)")
    s.add_argument("--iters", type=int, default=500)
    s.add_argument("--window", type=int, default=10)
    s.add_argument("--tol", type=float, default=1e-3)
    s.add_argument("--jobs", type=int, default=1)
    common(s)
    s.set_defaults(func=cmd_scan)

    m = sub.add_parser("moments", help="moment tables of the Orthomin(1) measure dynamics")
    m.add_argument("--mode", choices=("finite", "haar", "haar_exact"), default="finite")
    m.add_argument("--rho", default="0.8", help="decimal or fraction; haar_exact needs a fraction like 2/5")
    m.add_argument("--d", type=int, default=13)
    m.add_argument("--J", type=int, default=None, help="highest moment index written")
    m.add_argument("--steps", type=int, default=50)
    m.add_argument("--r0", choices=("ones", "seeded_random"), default="ones")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out", default=None)
    m.add_argument("--digits", type=int, default=10)
    m.set_defaults(func=cmd_moments)

    q = sub.add_parser("qcheck", help="numeric checks of the q-series identities")
    q.add_argument("--max-n", type=int, default=12)
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--exact", action="store_true", help="rational arithmetic, n <= 8")
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_qcheck)

    v = sub.add_parser("solve", help="run an ExperimentConfig (JSON) on any spectrum")
    v.add_argument("--config", default=None, help="JSON file with ExperimentConfig fields")
    v.add_argument("--spectrum", default=None, help="SpectrumSpec JSON, inline or a file path")
    v.add_argument("--k", type=_int_list, default=None)
    v.add_argument("--iters", type=int, default=None)
    v.add_argument("--r0", choices=("ones", "seeded_random"), default=None)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--window", type=int, default=None)
    v.add_argument("--out", default=None)
    v.add_argument("--format", choices=("csv", "json"), default=None)
    v.add_argument("--digits", type=int, default=10)
    v.set_defaults(func=cmd_solve)
    return p


def _scan_defaults(args) -> None:
    if args.kind == "circle":
        args.d = args.d or list(range(8, 33))
        args.rho = args.rho or [0.3, 0.5, 0.8]
        args.k = args.k or [1, 2, 3, 4, 5]
    else:
        args.d = args.d or [15]
        args.rho = args.rho or [0.9]
        args.k = args.k or [1]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "scan":
        _scan_defaults(args)
    try:
        return args.func(args)
    except (ConfigError, SpectrumError, json.JSONDecodeError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ContractError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except IdentityViolation as exc:
        print(f"identity check failed: {exc}", file=sys.stderr)
        return EXIT_IDENTITY


if __name__ == "__main__":
    sys.exit(main())
