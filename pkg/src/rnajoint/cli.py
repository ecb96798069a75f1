"""Command-line front end: counting tables, asymptotics grids, comparison data and validation.

Every subcommand writes either CSV (header row, comma separated) or a single
JSON object ``{"command", "config", "results", "timing"}``.  Output is
byte-identical across runs with the same arguments; ``timing`` is ``null``
unless ``--timing`` is given.

Exit status: 0 on success, 1 if ``validate`` finds a failing check, 2 for
usage errors, 3 when a parameter precondition is violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from decimal import Decimal
from typing import Callable

import mpmath

from . import asymptotics as asy
from . import oracle
from .joint import joint_by_recurrence, joint_gf, joint_series, joint_series_by_composition, recurrence_series
from .oracle import CapacityError
from .secondary import DomainError, ParameterError, PreconditionError, StructureParams, T_series
from .shapes import U_series, shape_gf

__all__ = ["RunConfig", "UsageError", "build_parser", "parse_config", "run", "main"]

COMMANDS = ("count", "shapes", "secondary", "asymptotics", "compare", "validate")
PRECISION_ENV = "RNAJOINT_PRECISION"
DEFAULT_ORACLE_CAP = 12


class UsageError(ValueError):
    """Malformed or inconsistent command-line arguments."""


@dataclass
class RunConfig:
    command: str
    params: StructureParams = field(default_factory=StructureParams)
    order: int | None = None
    bounds: tuple[int, int, int] | None = None
    max_arcs: int = 5
    sigma_range: tuple[int, ...] | None = None
    lambda_range: tuple[int, ...] | None = None
    s_max: int = 1000
    output_format: str = "csv"
    output_path: str | None = None
    precision_digits: int = 50
    oracle_cap: int = DEFAULT_ORACLE_CAP
    decimals: int | None = None
    timing: bool = False

    def echo(self) -> dict:
        d = asdict(self)
        d["params"] = {"sigma": self.params.sigma, "tau": self.params.tau, "lambda": self.params.lam}
        for key in ("bounds", "sigma_range", "lambda_range"):
            if d[key] is not None:
                d[key] = list(d[key])
        d.pop("timing")
        return d


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV, "50")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer (got {raw!r})") from None


def _parse_range(text: str) -> tuple[int, ...]:
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
            if lo > hi:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B or a comma list") from None


def _parse_bounds(text: str) -> tuple[int, int, int]:
    try:
        parts = tuple(int(t) for t in text.split(","))
    except ValueError:
        parts = ()
    if len(parts) != 3 or min(parts) < 0:
        raise UsageError(f"bad bounds {text!r}; expected N,M,H with non-negative integers")
    return parts


def _parse_params_flag(text: str) -> dict:
    out = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in ("sigma", "tau", "lambda"):
            raise UsageError(f"bad --params entry {item!r}; expected sigma=,tau=,lambda=")
        try:
            out[key] = int(value)
        except ValueError:
            raise UsageError(f"{key} must be an integer (got {value!r})") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rnajoint",
        description="Counting and asymptotics of RNA joint (interaction) structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="csv"):
        p.add_argument("--format", choices=("csv", "json"), default=fmt_default)
        p.add_argument("--output", help="write to this file instead of stdout")
        p.add_argument("--decimals", type=int, help="decimals for real numbers")
        p.add_argument("--precision", type=int, help=f"working digits (default ${PRECISION_ENV} or 50)")
        p.add_argument("--timing", action="store_true", help="record wall-clock time in JSON output")

    def structure(p, with_tau=True):
        p.add_argument("--sigma", type=int)
        if with_tau:
            p.add_argument("--tau", type=int)
        p.add_argument("--lambda", dest="lam", type=int)
        p.add_argument("--params", help="sigma=,tau=,lambda= in one flag")

    p = sub.add_parser("count", help="joint-structure counts")
    structure(p)
    p.add_argument("--total", type=int, help="rows s = 1..TOTAL of J(s), summed over n+m = s")
    p.add_argument("--order", type=int, help="alias for --total")
    p.add_argument("--bounds", help="N,M,H: emit trivariate coefficients (n, m, h, count)")
    common(p)

    p = sub.add_parser("shapes", help="shape counts by top arcs, bottom arcs and exterior arcs")
    p.add_argument("--max-arcs", type=int, default=5, help="total arcs t1+t2+h (default 5)")
    p.add_argument("--bounds", help="T1,T2,H box instead of a total-arc bound")
    common(p)

    p = sub.add_parser("secondary", help="secondary-structure counts T(n)")
    structure(p, with_tau=False)
    p.add_argument("--order", type=int, default=20)
    common(p)

    p = sub.add_parser("asymptotics", help="singularity reports: growth rates and constants")
    structure(p)
    p.add_argument("--sigma-range", help="A..B or comma list; emits a grid")
    p.add_argument("--lambda-range", help="A..B or comma list; emits a grid")
    common(p, fmt_default="json")

    p = sub.add_parser("compare", help="exact counts against the asymptotic estimate")
    structure(p)
    p.add_argument("--s-max", type=int, default=1000)
    common(p)

    p = sub.add_parser("validate", help="run the brute-force cross-checks")
    p.add_argument("--max-size", type=int, help=f"largest n+m for the joint oracle (default {DEFAULT_ORACLE_CAP})")
    common(p, fmt_default="json")
    return parser


def _structure_params(ns) -> StructureParams:
    values = {}
    if getattr(ns, "params", None):
        values = _parse_params_flag(ns.params)
    for key, attr in (("sigma", "sigma"), ("tau", "tau"), ("lambda", "lam")):
        flag = getattr(ns, attr, None)
        if flag is not None:
            if key in values and values[key] != flag:
                raise UsageError(f"{key} given twice with different values")
            values[key] = flag
    sigma = values.get("sigma", 1)
    return StructureParams(
        sigma=sigma, tau=values.get("tau", sigma), lam=values.get("lambda", 2)
    )


def parse_config(argv: list[str] | None = None) -> RunConfig:
    """Parse arguments into a :class:`RunConfig`.

    Raises ``SystemExit(2)`` from argparse for syntax errors, :class:`UsageError`
    for inconsistent values and :class:`ParameterError` for invalid parameters.
    """
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command, output_format=ns.format, output_path=ns.output)
    cfg.decimals = ns.decimals
    cfg.timing = ns.timing
    cfg.precision_digits = ns.precision if ns.precision is not None else _default_precision()
    if cfg.precision_digits < 20:
        raise UsageError("--precision must be at least 20 digits")
    if cfg.decimals is not None and not 0 <= cfg.decimals <= 30:
        raise UsageError("--decimals must lie in 0..30")
    if hasattr(ns, "sigma"):
        cfg.params = _structure_params(ns)

    if ns.command == "count":
        if ns.total is not None and ns.order is not None and ns.total != ns.order:
            raise UsageError("--total and --order disagree")
        cfg.order = ns.total if ns.total is not None else ns.order
        cfg.bounds = _parse_bounds(ns.bounds) if ns.bounds else None
        if cfg.order is None and cfg.bounds is None:
            cfg.order = 12
        if cfg.order is not None and cfg.bounds is not None:
            raise UsageError("choose either --total or --bounds")
        if cfg.order is not None and cfg.order < 0:
            raise UsageError("--total must be non-negative")
    elif ns.command == "shapes":
        cfg.max_arcs = ns.max_arcs
        cfg.bounds = _parse_bounds(ns.bounds) if ns.bounds else None
        if cfg.max_arcs < 0:
            raise UsageError("--max-arcs must be non-negative")
    elif ns.command == "secondary":
        cfg.order = ns.order
        if cfg.order < 0:
            raise UsageError("--order must be non-negative")
    elif ns.command == "asymptotics":
        if ns.sigma_range or ns.lambda_range:
            if ns.sigma is not None or ns.lam is not None or ns.params:
                raise UsageError("use either ranges or single parameters, not both")
            cfg.sigma_range = _parse_range(ns.sigma_range or "1..9")
            cfg.lambda_range = _parse_range(ns.lambda_range or "2")
    elif ns.command == "compare":
        cfg.s_max = ns.s_max
        if not 1 <= cfg.s_max <= 2000:
            raise UsageError("--s-max must lie in 1..2000")
    elif ns.command == "validate":
        cfg.oracle_cap = ns.max_size if ns.max_size is not None else DEFAULT_ORACLE_CAP
        if not 0 <= cfg.oracle_cap <= oracle.JOINT_CAP:
            raise UsageError(f"--max-size must lie in 0..{oracle.JOINT_CAP}")
    return cfg


# --------------------------------------------------------------------------
# formatting
# --------------------------------------------------------------------------


def format_real(x, decimals: int) -> str:
    """Fixed-point rendering without scientific notation, rounded half-even."""
    text = mpmath.nstr(mpmath.mpf(x), 40, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    return format(Decimal(text), f".{decimals}f")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


class _Table:
    """Rows plus the information needed to render them as CSV or JSON."""

    def __init__(self, header, rows, json_results=None):
        self.header = list(header)
        self.rows = rows
        self.json_results = json_results

    def as_json(self):
        if self.json_results is not None:
            return self.json_results
        return {"columns": self.header, "rows": [list(r) for r in self.rows]}


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _cmd_count(cfg: RunConfig, dec: int) -> _Table:
    if cfg.bounds is not None:
        J = joint_gf(cfg.params, cfg.bounds)
        rows = [(n, m, h, int(c)) for (n, m, h), c in sorted(J.coeffs.items())]
        return _Table(("n", "m", "h", "count"), rows)
    J = joint_series(cfg.params, cfg.order)
    rows = [(s, int(J[s])) for s in range(1, cfg.order + 1)]
    return _Table(("s", "count"), rows)


def _cmd_shapes(cfg: RunConfig, dec: int) -> _Table:
    if cfg.bounds is not None:
        G = shape_gf(cfg.bounds)
        items = sorted(G.coeffs.items())
    else:
        k = cfg.max_arcs
        G = shape_gf((k, k, k))
        items = sorted((key, c) for key, c in G.coeffs.items() if sum(key) <= k)
    return _Table(("t1", "t2", "h", "count"), [(*key, int(c)) for key, c in items])


def _cmd_secondary(cfg: RunConfig, dec: int) -> _Table:
    T = T_series(cfg.params.sigma, cfg.params.lam, cfg.order)
    return _Table(("n", "count"), [(n, int(T[n])) for n in range(cfg.order + 1)])


_REPORT_COLUMNS = ("sigma", "lambda", "status", "rho", "gamma", "growth_rate", "constant_c")


def _report_cells(cfg: RunConfig):
    if cfg.sigma_range is not None:
        grid = asy.growth_rate_grid(cfg.sigma_range, cfg.lambda_range, cfg.precision_digits)
        return sorted(grid.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    rep = asy.singularity_report(cfg.params, cfg.precision_digits)
    return [((cfg.params.sigma, cfg.params.lam), rep)]


def _cmd_asymptotics(cfg: RunConfig, dec: int) -> _Table:
    rows, reports = [], []
    for (sigma, lam), rep in _report_cells(cfg):
        if rep is None:
            rows.append((sigma, lam, "not-applicable", "", "", "", ""))
            reports.append({"sigma": sigma, "lambda": lam, "status": "not-applicable"})
            continue
        vals = (rep.rho, rep.gamma, rep.growth_rate, rep.constant_c)
        rows.append((sigma, lam, "ok", *(format_real(v, dec) for v in vals)))
        d = rep.to_dict(decimals=dec)
        reports.append({"sigma": sigma, "lambda": lam, "status": "ok", **d})
    return _Table(_REPORT_COLUMNS, rows, {"reports": reports})


def _cmd_compare(cfg: RunConfig, dec: int) -> _Table:
    with mpmath.workdps(cfg.precision_digits):
        table = asy.compare_table(cfg.params, cfg.s_max)
    rows = [(s, exact, format_real(est, dec), format_real(ratio, dec)) for s, exact, est, ratio in table]
    return _Table(("s", "exact", "estimate", "ratio"), rows)


# --------------------------------------------------------------------------
# validation suite
# --------------------------------------------------------------------------

VALIDATION_PARAMS = ((1, 1, 2), (2, 2, 2), (1, 1, 1), (2, 2, 3))


def _check(name: str, fn: Callable[[], list]) -> dict:
    mismatches = fn()
    return {"name": name, "passed": not mismatches, "mismatches": mismatches[:20]}


def _check_secondary(max_n: int) -> list:
    bad = []
    for sigma in (1, 2, 3):
        for lam in (1, 2, 3, 4):
            T = T_series(sigma, lam, max_n)
            for n in range(max_n + 1):
                brute = oracle.enumerate_secondary(n, sigma, lam)
                if brute != T[n]:
                    bad.append({"sigma": sigma, "lambda": lam, "n": n, "oracle": brute, "series": int(T[n])})
    return bad


def _check_shapes(max_arcs: int) -> list:
    G = shape_gf((max_arcs,) * 3)
    brute = oracle.enumerate_shapes(max_arcs)
    bad = []
    for key in sorted(set(brute) | {k for k in G.coeffs if sum(k) <= max_arcs}):
        if brute.get(key, 0) != G[key]:
            bad.append({"t1": key[0], "t2": key[1], "h": key[2], "oracle": brute.get(key, 0), "series": int(G[key])})
    U = U_series(max_arcs)
    for k in range(max_arcs + 1):
        total = sum(c for key, c in brute.items() if sum(key) == k)
        if total != U[k]:
            bad.append({"arcs": k, "oracle": total, "U": int(U[k])})
    return bad


def _check_joint(params: StructureParams, cap: int) -> list:
    J = joint_gf(params, (cap, cap, cap))
    bad = []
    for n in range(cap + 1):
        for m in range(cap + 1 - n):
            brute = oracle.enumerate_joint(n, m, params)
            for h in range(cap + 1):
                if brute.get(h, 0) != J[n, m, h]:
                    bad.append({"n": n, "m": m, "h": h, "oracle": brute.get(h, 0), "series": int(J[n, m, h])})
    return bad


def _check_diagonal(sigma: int, cap: int) -> list:
    params = StructureParams(sigma, sigma, 2)
    J = joint_gf(params, (cap, cap, cap)).specialize()
    S = joint_series(params, cap)
    return [{"s": s, "trivariate": int(J[s]), "univariate": int(S[s])} for s in range(cap + 1) if J[s] != S[s]]


def _check_paths(sigma: int, order: int) -> list:
    params = StructureParams(sigma, sigma, 2)
    a = joint_series(params, order)
    b = joint_series_by_composition(params, order)
    r = joint_by_recurrence(sigma, order)
    return [{"s": s, "quadratic": int(a[s]), "composition": int(b[s]), "recurrence": r[s]}
            for s in range(order + 1) if not a[s] == b[s] == r[s]]


def _check_residual(sigma: int, order: int) -> list:
    A, B, C = recurrence_series(sigma, order)
    J = joint_series(StructureParams(sigma, sigma, 2), order)
    res = (A * J + B) * J + C
    return [{"s": s, "residual": str(res[s])} for s in range(order + 1) if res[s] != 0]


def _cmd_validate(cfg: RunConfig, dec: int) -> _Table:
    cap = cfg.oracle_cap
    checks = [
        _check(f"secondary oracle n<={min(cap, 14)}", lambda: _check_secondary(min(cap, 14))),
        _check(f"shape oracle arcs<={min(cap, 5)}", lambda: _check_shapes(min(cap, 5))),
    ]
    for sigma, tau, lam in VALIDATION_PARAMS:
        p = StructureParams(sigma, tau, lam)
        checks.append(_check(f"joint oracle sigma={sigma} tau={tau} lambda={lam} n+m<={cap}",
                             lambda p=p: _check_joint(p, cap)))
    for sigma in (1, 2):
        checks.append(_check(f"diagonal sigma={sigma} s<={cap}", lambda s=sigma: _check_diagonal(s, cap)))
        checks.append(_check(f"three paths sigma={sigma} s<=200", lambda s=sigma: _check_paths(s, 200)))
    for sigma in (1, 2, 3):
        checks.append(_check(f"functional equation sigma={sigma} order 200",
                             lambda s=sigma: _check_residual(s, 200)))
    rows = [(c["name"], "pass" if c["passed"] else "fail", len(c["mismatches"])) for c in checks]
    passed = all(c["passed"] for c in checks)
    return _Table(("check", "status", "mismatches"), rows, {"passed": passed, "checks": checks})


_HANDLERS = {
    "count": _cmd_count,
    "shapes": _cmd_shapes,
    "secondary": _cmd_secondary,
    "asymptotics": _cmd_asymptotics,
    "compare": _cmd_compare,
    "validate": _cmd_validate,
}


# --------------------------------------------------------------------------
# entry points
# --------------------------------------------------------------------------


def render(cfg: RunConfig, table: _Table, elapsed: float | None) -> str:
    if cfg.output_format == "csv":
        return _csv_text(table.header, table.rows)
    doc = {
        "command": cfg.command,
        "config": cfg.echo(),
        "results": table.as_json(),
        "timing": {"wall_seconds": round(elapsed, 3)} if elapsed is not None else None,
    }
    return json.dumps(doc, indent=2) + "\n"


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute one configured command and emit its artifact; returns the exit status."""
    if cfg.command not in _HANDLERS:
        raise UsageError(f"unknown command {cfg.command!r}")
    dec = cfg.decimals if cfg.decimals is not None else (5 if cfg.command == "asymptotics" else 6)
    start = time.perf_counter()
    with mpmath.workdps(cfg.precision_digits):
        table = _HANDLERS[cfg.command](cfg, dec)
    elapsed = time.perf_counter() - start if cfg.timing else None
    text = render(cfg, table, elapsed)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        (stdout or sys.stdout).write(text)
    if cfg.command == "validate" and not table.json_results["passed"]:
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"rnajoint: error: {exc}", file=sys.stderr)
        return 2
    except ParameterError as exc:
        print(f"rnajoint: error: {exc}", file=sys.stderr)
        return 3
    try:
        return run(cfg)
    except (PreconditionError, ParameterError, CapacityError, DomainError) as exc:
        print(f"rnajoint: error: {exc}", file=sys.stderr)
        return 3
    except UsageError as exc:
        print(f"rnajoint: error: {exc}", file=sys.stderr)
        return 2
