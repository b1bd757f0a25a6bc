"""Command-line surface.

One process per command; deterministic output given (config, seed).  Reports
are line-delimited records or an aligned table; when a report is written with
--out, a PNG figure of the same columns is rendered alongside unless
--no-figure is given.  Exit codes: 0 ok, 1 verification failure, 2 capacity,
64 usage, 65 data format, 66 missing input.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import __version__
from .coefficients import generate_delta, verify_deligne, verify_hecke_relations
from .errors import (
    CapacityError,
    DataFormatError,
    IncompleteZerosError,
    LfunlabError,
    MissingPrimeError,
    NoSignChangeError,
    PreconditionError,
    QuadratureError,
    WindowError,
)
from .io import (
    atomic_write_text,
    coefficient_file_text,
    parse_config,
    read_coefficients,
    read_satake_file,
)
from .primeside import (
    LogSquaredWindow,
    RepresentationProfile,
    classical_psi_step,
    gl2_psi_step,
    grh_scaled_sup,
    load_zero_table,
    mean_square,
    omega_statistic,
    perron_truncated,
    sample_psi,
    truncated_explicit_formula,
    weighted_dirichlet_sum,
    windowed_variance,
    zero_count_envelope,
)
from .primeside.psi import geometric_grid
from .reports import FAIL, INCONCLUSIVE, INFO, PASS, Record, render, status_of
from .satake import SatakeLocalData, brumley_check, lambda_sum_lower_bound, power_sum_unit_index
from .signs import linnik_bound_check, sign_density
from .sweeps import (
    brumley_sweep,
    lambda_sum_sweep,
    newton_sweep,
    rs_sweep,
    unit_index_sweep,
)

EX_OK = 0
EX_VERIFY = 1
EX_CAPACITY = 2
EX_USAGE = 64
EX_DATA = 65
EX_NOINPUT = 66

SWEEP_MS = (2, 3, 4)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


class _Resolver:
    """Merge CLI args over config-file values; flags take precedence."""

    def __init__(self, args: argparse.Namespace, config: dict[str, str]):
        self.args = vars(args)
        self.config = config

    def get(self, name: str, cast: Callable, default=None, required: bool = False):
        v = self.args.get(name)
        if v is None and name in self.config:
            v = self.config[name]
        if v is None:
            if required:
                raise _Usage(f"missing required parameter --{name.replace('_', '-')}")
            return default
        return cast(v) if isinstance(v, str) else v


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in str(text).split(",") if tok.strip()]


def _positive(name: str, value, strict: bool = True):
    if value is None:
        return value
    if (strict and value <= 0) or (not strict and value < 0):
        raise PreconditionError(f"{name} must be positive, got {value}")
    return value


def _emit(records: list[Record], fmt: str, out: Optional[str], figure_fn=None, no_figure=False) -> None:
    text = render(records, fmt)
    if out:
        atomic_write_text(out, text)
        if figure_fn is not None and not no_figure:
            figure_fn(Path(out).with_suffix(".png"))
    else:
        sys.stdout.write(text)


def _load_series(res: _Resolver):
    path = res.get("coeffs", str, required=True)
    return read_coefficients(path)


def _profile_for(source: str, series) -> RepresentationProfile:
    if source == "classical":
        return RepresentationProfile.classical()
    return RepresentationProfile.holomorphic(series.spec.weight, series.spec.level)


# ---------------------------------------------------------------------------
# commands


def cmd_tau(res: _Resolver) -> int:
    n_max = res.get("n_max", int, required=True)
    out = res.get("out", str, required=True)
    if n_max < 1:
        raise _Usage(f"n-max must be >= 1, got {n_max}")
    try:
        series = generate_delta(n_max)
    except OverflowError as exc:  # unreachable with unbounded ints; kept for the contract
        sys.stderr.write(f"overflow: {exc}\n")
        return EX_CAPACITY
    atomic_write_text(out, coefficient_file_text(series))
    sys.stdout.write(f"wrote {n_max} exact coefficient rows to {out}\n")
    return EX_OK


def _sweep_records(report) -> list[Record]:
    records = [
        Record(
            check=report.suite,
            claim="randomized identity sweep, magnitude-normalized residual",
            value=report.worst_residual,
            threshold=report.tol,
            status=status_of(report.passed),
        )
    ]
    for f in report.failures:
        records.append(
            Record(
                check=f"{report.suite}:offending_input",
                claim=repr(f["alphas"]),
                value=f["value"],
                threshold=None,
                status=FAIL,
            )
        )
    return records


def _explicit_draw_records(suite: str, draws, tol: float) -> list[Record]:
    records = []
    for alphas in draws:
        data = SatakeLocalData(p=2, alphas=alphas, unramified=True)
        if suite == "brumley":
            value, ok = brumley_check(data, tol)
            thr = 1.0
        elif suite == "l412":
            value, ok = lambda_sum_lower_bound(data, tol)
            thr = 1.0 / data.m
        else:  # claimc
            idx = power_sum_unit_index(data, tol)
            value, ok, thr = (idx if idx is not None else -1), idx is not None, 1
        records.append(
            Record(
                check=f"{suite}:explicit",
                claim=repr(list(alphas)),
                value=value,
                threshold=thr,
                status=status_of(ok),
            )
        )
    return records


def cmd_verify(res: _Resolver) -> int:
    suite = res.get("suite", str, required=True)
    trials = _positive("trials", res.get("trials", int, 1000))
    seed = res.get("seed", int, 0)
    tol = _positive("tol", res.get("tol", float, 1e-10))
    records: list[Record] = []
    if suite == "newton":
        records += _sweep_records(newton_sweep(trials=trials, seed=seed, tol=tol))
    elif suite in ("rs", "brumley", "l412", "claimc"):
        satake_path = res.get("coeffs", str)
        if satake_path and suite in ("brumley", "l412", "claimc"):
            records += _explicit_draw_records(suite, read_satake_file(satake_path), tol)
        else:
            sweep = {
                "rs": rs_sweep,
                "brumley": brumley_sweep,
                "l412": lambda_sum_sweep,
                "claimc": unit_index_sweep,
            }[suite]
            for m in SWEEP_MS:
                records += _sweep_records(sweep(m, trials=trials, seed=seed + m, tol=tol))
    elif suite == "hecke":
        series = _load_series(res)
        rep = verify_hecke_relations(series, trials=trials, seed=seed, tol=tol)
        records.append(
            Record(
                check="hecke",
                claim="lambda(m)lambda(n) = sum over d | (m,n) of lambda(mn/d^2), sampled",
                value=rep.max_residual,
                threshold=rep.tol,
                status=status_of(rep.passed),
            )
        )
        for m, n, r in rep.failures[:10]:
            records.append(
                Record(
                    check="hecke:offending_input",
                    claim=f"(m,n)=({m},{n})",
                    value=r,
                    threshold=tol,
                    status=FAIL,
                )
            )
    elif suite == "deligne":
        series = _load_series(res)
        rep = verify_deligne(series)
        records.append(
            Record(
                check="deligne",
                claim="max over primes p coprime to the level of |lambda(p)| <= 2",
                value=rep.max_abs,
                threshold=rep.bound,
                status=status_of(rep.passed),
            )
        )
    else:
        raise _Usage(f"unknown suite {suite!r}")
    fmt = res.get("format", str, "table")
    _emit(records, fmt, res.get("out", str))
    return EX_OK if all(r.status in (PASS, INFO) for r in records) else EX_VERIFY


def cmd_signscan(res: _Resolver) -> int:
    series = _load_series(res)
    k = res.get("k", int, series.spec.weight)
    level = res.get("N", int, series.spec.level)
    x_max = res.get("x_max", float, float(series.n_max))
    if x_max > series.n_max:
        raise CapacityError(f"x-max {x_max} exceeds the series length {series.n_max}")
    records: list[Record] = []
    try:
        check = linnik_bound_check(series, k, level)
        records.append(
            Record(
                check="first_negative",
                claim=f"first lambda(n) < 0 with (n,N)=1 within (k^2 N)^(29/60), k={k} N={level}",
                value=check.n_first,
                threshold=check.bound,
                status=status_of(check.passed, inconclusive_on_fail=True),
            )
        )
    except NoSignChangeError:
        records.append(
            Record(
                check="first_negative",
                claim=f"no sign change up to n={series.n_max}; bound check inconclusive",
                value=None,
                threshold=float(k * k * level) ** (29.0 / 60.0),
                status=INCONCLUSIVE,
            )
        )
    grid = geometric_grid(min(10.0, x_max), x_max)
    report = sign_density(series, level, grid)
    if report.first_positive is not None:
        records.append(
            Record(
                check="first_positive",
                claim="first lambda(n) > 0 with (n,N)=1",
                value=report.first_positive,
                threshold=None,
                status=INFO,
            )
        )
    n_final = float(report.coprime_counts[-1])
    for label, counts in (("positive", report.n_pos), ("negative", report.n_neg)):
        records.append(
            Record(
                check=f"density_{label}",
                claim=f"{label}-sign count at x={x_max:g} over integers coprime to N",
                value=int(counts[-1]),
                threshold=None,
                status=INFO,
            )
        )
    for i, x in enumerate(report.x_grid):
        records.append(
            Record(
                check="density_sample",
                claim=f"x={float(x)!r}",
                value=f"{int(report.n_pos[i])},{int(report.n_neg[i])},{int(report.n_zero[i])}",
                threshold=None,
                status=INFO,
            )
        )

    def figure(path):
        from .figures import save_line_figure

        marks = {}
        if report.first_negative is not None:
            marks[f"first<0 at {report.first_negative}"] = float(report.first_negative)
        save_line_figure(
            path,
            report.x_grid,
            {"N+(x)": report.n_pos, "N-(x)": report.n_neg},
            xlabel="x",
            ylabel="count",
            title=f"sign counts, k={k} N={level}",
            logx=True,
            logy=True,
            marks=marks,
        )

    _emit(records, res.get("format", str, "table"), res.get("out", str), figure, res.get("no_figure", bool, False))
    return EX_OK


def cmd_psi(res: _Resolver) -> int:
    source = res.get("source", str, "classical")
    x_max = _positive("x-max", res.get("x_max", float, required=True))
    eps = res.get("eps", float, 0.1)
    if source == "classical":
        step = classical_psi_step(int(x_max))
        series = None
    else:
        series = _load_series(res)
        step = gl2_psi_step(series, min(series.n_max, int(x_max)))
    profile = _profile_for(source, series)
    grid = geometric_grid(min(4.0, x_max), x_max)
    sampled = sample_psi(step, grid)
    sup = grh_scaled_sup(sampled, profile)
    ms = mean_square(step, x_max, profile)
    om = omega_statistic(sampled, eps)
    records = [
        Record(
            check="psi_at_xmax",
            claim=f"sum of Lambda(n)a(n) for n <= {x_max:g} ({step.descriptor})",
            value=step.value_at(x_max),
            threshold=None,
            status=INFO,
        ),
        Record(
            check="grh_scaled_sup",
            claim="sup |psi(x)| / (x^(1/2) log^2(Qx)) over the grid",
            value=sup.sup,
            threshold=None,
            status=INFO,
        ),
        Record(
            check="mean_square",
            claim="(1/X) int_2^X psi^2 dx/x, against the scale log^2(Q)",
            value=ms.statistic,
            threshold=math.log(profile.q0) ** 2,
            status=INFO,
        ),
        Record(
            check="omega_statistic",
            claim=f"max |psi(x)|/x^(1/2-eps), eps={eps:g}",
            value=om.statistic,
            threshold=None,
            status=INFO,
        ),
    ]
    for x, v in zip(sampled.x_grid, sampled.values):
        records.append(
            Record(check="psi_sample", claim=f"x={float(x)!r}", value=float(v), threshold=None, status=INFO)
        )

    def figure(path):
        from .figures import save_step_figure

        save_step_figure(
            path,
            sampled.x_grid,
            sampled.values,
            xlabel="x",
            ylabel="psi(x)",
            title=f"psi on [4, {x_max:g}], {step.descriptor}",
        )

    _emit(records, res.get("format", str, "table"), res.get("out", str), figure, res.get("no_figure", bool, False))
    return EX_OK


def cmd_explicit(res: _Resolver) -> int:
    x = _positive("x", res.get("x", float, required=True))
    T = _positive("T", res.get("T", float, required=True))
    zeros = load_zero_table(res.get("zeros", str, required=True))
    source = res.get("source", str, "classical")
    series = None if source == "classical" else _load_series(res)
    profile = _profile_for(source, series)
    include_main = source == "classical"
    result = truncated_explicit_formula(x, T, zeros, profile, include_main)
    if source == "classical":
        step = classical_psi_step(int(x) + 1)
    else:
        step = gl2_psi_step(series, min(series.n_max, int(x) + 1))
    psi_x = step.value_at(x)
    residual = abs(result.estimate - psi_x)
    records = [
        Record(
            check="reconstruction",
            claim=f"[main] - sum over |gamma| <= {T:g} of x^rho/rho at x={x:g}",
            value=result.estimate,
            threshold=None,
            status=INFO,
        ),
        Record(check="psi_reference", claim="psi(x) from the sieve", value=psi_x, threshold=None, status=INFO),
        Record(
            check="residual",
            claim=f"|reconstruction - psi(x)| using {result.zeros_used} zeros",
            value=residual,
            threshold=None,
            status=INFO,
        ),
    ]
    for name, v in result.error_budget.items():
        records.append(
            Record(
                check=f"budget_{name}",
                claim="truncation term evaluated with constant 1 (reference scale)",
                value=v,
                threshold=None,
                status=INFO,
            )
        )
    grid_T = [t for t in (10.0, 30.0, 100.0, T) if t <= zeros.completeness_T]
    env = zero_count_envelope(zeros, profile, grid_T)
    records.append(
        Record(
            check="zero_count_envelope",
            claim="smallest C with N(T) <= C T log(Q T) on the sample grid",
            value=env.envelope_constant,
            threshold=None,
            status=INFO,
        )
    )
    # residual trace against zero count, for the figure and the records
    gammas = zeros.up_to(T)
    counts = [c for c in (1, 3, 10, 30, 100, 300, 1000) if c <= len(gammas)]
    trace = []
    for c in counts:
        partial = truncated_explicit_formula(
            x, float(gammas[c - 1]), zeros, profile, include_main
        )
        trace.append(abs(partial.estimate - psi_x))
        records.append(
            Record(
                check="residual_vs_zeros",
                claim=f"zeros={c}",
                value=trace[-1],
                threshold=None,
                status=INFO,
            )
        )

    def figure(path):
        from .figures import save_line_figure

        save_line_figure(
            path,
            counts,
            {"|reconstruction - psi|": trace},
            xlabel="zeros used",
            ylabel="residual",
            title=f"explicit-formula residual at x={x:g}",
            logx=True,
            logy=True,
        )

    _emit(records, res.get("format", str, "table"), res.get("out", str), figure, res.get("no_figure", bool, False))
    return EX_OK


def cmd_perron(res: _Resolver) -> int:
    series = _load_series(res)
    x = _positive("x", res.get("x", float, required=True))
    b = _positive("b", res.get("b", float, 1.3))
    T = _positive("T", res.get("T", float, 2000.0))
    ell = res.get("ell", int, 1)
    tol = _positive("tol", res.get("tol", float, 1e-6))
    result = perron_truncated(series.values, x, b, T, ell, tol)
    direct = weighted_dirichlet_sum(series.values, x, ell)
    diff = abs(result.value - direct)
    rel = diff / max(abs(direct), 1e-300)
    records = [
        Record(
            check="perron_quadrature",
            claim=f"(1/2 pi i) int F(s) x^s / s^(l+1) ds on Re s = {b:g}, |Im s| <= {T:g}, l={ell}",
            value=result.value,
            threshold=None,
            status=INFO,
        ),
        Record(
            check="direct_sum",
            claim=f"sum of a(n) log^l(x/n) / l! for n <= {x:g} (l-factorial normalization)",
            value=direct,
            threshold=None,
            status=INFO,
        ),
        Record(check="abs_difference", claim="quadrature vs direct sum", value=diff, threshold=None, status=INFO),
        Record(check="rel_difference", claim="relative difference", value=rel, threshold=None, status=INFO),
        Record(
            check="quadrature_error",
            claim="panel-refinement error estimate",
            value=result.error_estimate,
            threshold=tol,
            status=status_of(result.error_estimate <= tol),
        ),
    ]

    def figure(path):
        from .figures import save_line_figure

        n = np.arange(1, series.n_max + 1, dtype=float)
        an = series.values[1:]
        t_grid = np.linspace(0.0, min(T, 200.0), 400)
        env = [
            abs(np.sum(an * n ** (-b) * np.exp(-1j * t * np.log(n)))) * x**b / abs(b + 1j * t) ** (ell + 1)
            for t in t_grid
        ]
        save_line_figure(
            path,
            t_grid,
            {"|F(b+it) x^b / s^(l+1)|": env},
            xlabel="t",
            ylabel="integrand magnitude",
            title=f"inversion integrand along Re s = {b:g}",
            logy=True,
        )

    _emit(records, res.get("format", str, "table"), res.get("out", str), figure, res.get("no_figure", bool, False))
    return EX_OK


def cmd_variance(res: _Resolver) -> int:
    series = _load_series(res)
    X = _positive("x-max", res.get("x_max", float, required=True))
    c_list = res.get("c", _float_list, [1.0, 5.0, 25.0])
    profile = RepresentationProfile.holomorphic(series.spec.weight, series.spec.level)
    cap = int(X + max(c_list) * math.log(profile.q0 * X) ** 2) + 2
    if cap > series.n_max:
        raise CapacityError(
            f"need coefficients up to {cap} for X={X:g} (series has {series.n_max})"
        )
    step = gl2_psi_step(series, cap)
    records = []
    values = []
    for c in c_list:
        r = windowed_variance(step, X, LogSquaredWindow(c, profile))
        values.append(r.value)
        records.append(
            Record(
                check="windowed_variance",
                claim=f"int |psi(x+h)-psi(x)|^2 dx / (h(X)^2 X), h=c log^2(Qx), c={c:g}",
                value=r.value,
                threshold=None,
                status=INFO,
            )
        )
    decreasing = all(values[i + 1] < values[i] for i in range(len(values) - 1))
    if len(values) > 1:
        records.append(
            Record(
                check="variance_decay",
                claim="V strictly decreasing in the window scale c",
                value="yes" if decreasing else "no",
                threshold=None,
                status=status_of(decreasing),
            )
        )

    def figure(path):
        from .figures import save_line_figure

        save_line_figure(
            path,
            c_list,
            {"V(c)": values},
            xlabel="c",
            ylabel="normalized variance",
            title=f"short-interval variance at X={X:g}",
            logx=True,
            logy=True,
        )

    _emit(records, res.get("format", str, "table"), res.get("out", str), figure, res.get("no_figure", bool, False))
    return EX_OK


# ---------------------------------------------------------------------------
# wiring


class _Usage(Exception):
    pass


def build_parser() -> _Parser:
    parser = _Parser(prog="lfunlab", description=__doc__)
    parser.add_argument("--version", action="version", version=f"lfunlab {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p):
        p.add_argument("--config", help="key=value file mirroring the flags; flags win")
        p.add_argument("--out", help="write the report here (atomic)")
        p.add_argument("--format", choices=["table", "records"], default=None)
        p.add_argument("--no-figure", action="store_true", dest="no_figure")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("tau", help="write exact integer coefficients of the weight-12 level-1 form")
    p.add_argument("--n-max", dest="n_max", type=int, default=None)
    common(p)

    p = sub.add_parser("verify", help="randomized identity sweeps and series checks")
    p.add_argument("--suite", choices=["newton", "rs", "brumley", "l412", "claimc", "hecke", "deligne"])
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--coeffs", help="coefficient file (hecke/deligne) or explicit parameter file")
    common(p)

    p = sub.add_parser("signscan", help="first sign change, bound check, and sign densities")
    p.add_argument("--coeffs", required=False)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--x-max", dest="x_max", type=float, default=None)
    common(p)

    p = sub.add_parser("psi", help="prime-side counting function and its scaled statistics")
    p.add_argument("--x-max", dest="x_max", type=float, default=None)
    p.add_argument("--source", choices=["classical", "gl2"], default=None)
    p.add_argument("--coeffs")
    p.add_argument("--eps", type=float, default=None)
    common(p)

    p = sub.add_parser("explicit", help="truncated zero-sum reconstruction of psi")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--zeros")
    p.add_argument("--source", choices=["classical", "gl2"], default=None)
    p.add_argument("--coeffs")
    common(p)

    p = sub.add_parser("perron", help="vertical-line inversion vs the direct weighted sum")
    p.add_argument("--coeffs")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--ell", type=int, default=None)
    common(p)

    p = sub.add_parser("variance", help="short-interval variance of psi across window scales")
    p.add_argument("--coeffs")
    p.add_argument("--x-max", dest="x_max", type=float, default=None)
    p.add_argument("--c", default=None, help="comma-separated window scales")
    common(p)

    return parser


_HANDLERS = {
    "tau": cmd_tau,
    "verify": cmd_verify,
    "signscan": cmd_signscan,
    "psi": cmd_psi,
    "explicit": cmd_explicit,
    "perron": cmd_perron,
    "variance": cmd_variance,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EX_USAGE
    config = {}
    if getattr(args, "config", None):
        try:
            config = parse_config(args.config)
        except FileNotFoundError:
            sys.stderr.write(f"lfunlab: config file not found: {args.config}\n")
            return EX_NOINPUT
        except DataFormatError as exc:
            sys.stderr.write(f"lfunlab: {exc}\n")
            return EX_DATA
    res = _Resolver(args, config)
    try:
        return _HANDLERS[args.command](res)
    except _Usage as exc:
        sys.stderr.write(f"lfunlab {args.command}: {exc}\n")
        return EX_USAGE
    except FileNotFoundError as exc:
        sys.stderr.write(f"lfunlab {args.command}: missing input: {exc}\n")
        return EX_NOINPUT
    except (DataFormatError, MissingPrimeError, IncompleteZerosError, WindowError) as exc:
        sys.stderr.write(f"lfunlab {args.command}: {exc}\n")
        return EX_DATA
    except PreconditionError as exc:
        sys.stderr.write(f"lfunlab {args.command}: {exc}\n")
        return EX_DATA
    except CapacityError as exc:
        sys.stderr.write(f"lfunlab {args.command}: {exc}\n")
        return EX_CAPACITY
    except QuadratureError as exc:
        sys.stderr.write(f"lfunlab {args.command}: {exc}\n")
        return EX_VERIFY
    except LfunlabError as exc:
        sys.stderr.write(f"lfunlab {args.command}: {exc}\n")
        return EX_VERIFY


if __name__ == "__main__":
    sys.exit(main())
