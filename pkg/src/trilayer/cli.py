"""Command-line front end.

Exit codes: 0 success, 1 bad invocation or config, 2 numerical or I/O
failure, 3 a negative verdict (incompatible / infeasible). Verdicts are not
errors and never use 1 or 2.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys

from .analysis import SCAN_AXES, GrowthCurve, default_k_max, optimize_mu, param_scan, sweep
from .compat import DEFAULT_TOL, CompatibilityReport, branch_limit_report, feasible_mu
from .eigen import (
    NumericalError,
    amplitude_ratio,
    boundary_residuals,
    eigenpair,
    interface_ratio,
    log_amplitude_ratio,
)
from .model import ConfigError, load_config

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VERDICT = 0, 1, 2, 3

DISPERSION_HEADER = ("k", "re_sigma_plus", "im_sigma_plus", "re_sigma_minus",
                     "im_sigma_minus", "E_a", "E_b", "discriminant")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- formatting ---------------------------------------------------------------

def fmt_number(x) -> str:
    """Shortest round-trip decimal (at most 17 significant digits).

    Integral values print without a fractional part; ``-0.0`` prints as 0.
    """
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _json_number(x):
    x = float(x)
    if not math.isfinite(x):
        return None
    if x == int(x) and abs(x) < 1e16:
        return int(x)
    return x


def jsonable(obj):
    """Convert results to JSON-ready data; complex numbers become ``[re, im]``."""
    if isinstance(obj, complex):
        return [_json_number(obj.real), _json_number(obj.imag)]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, float)):
        return _json_number(obj)
    if isinstance(obj, dict):
        return {str(key): jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _dump(value, level: int) -> str:
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_dump(v, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return "[" + ", ".join(json.dumps(v, allow_nan=False) for v in value) + "]"
        return "[\n" + ",\n".join(inner + _dump(v, level + 1) for v in value) + "\n" + pad + "]"
    return json.dumps(value, allow_nan=False)


def json_text(data) -> str:
    """Indented JSON with scalar lists (complex pairs, sequences) kept on one line."""
    return _dump(jsonable(data), 0) + "\n"


def csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join("" if v is None else v if isinstance(v, str) else fmt_number(v)
                              for v in row))
    return "\n".join(lines) + "\n"


def report_dict(report: CompatibilityReport) -> dict:
    return {
        "branch": report.branch,
        "k_sequence": list(report.k_sequence),
        "Eb_over_sigma": list(report.Eb_over_sigma),
        "Ea_over_sigma": list(report.Ea_over_sigma),
        "F_at_a": list(report.F_at_a),
        "F_at_b": list(report.F_at_b),
        "limit_Eb_over_sigma": report.limit_Eb_over_sigma,
        "limit_Ea_over_sigma": report.limit_Ea_over_sigma,
        "matched_interface": report.matched_interface,
        "cross_limit_mismatch": report.cross_limit_mismatch,
        "tension_ratio_residual": report.tension_ratio_residual,
        "verdict": report.verdict,
    }


def curve_rows(curve: GrowthCurve):
    for p in curve.points:
        yield (p.k, p.sigma_plus.real, p.sigma_plus.imag, p.sigma_minus.real,
               p.sigma_minus.imag, p.E_a, p.E_b, p.discriminant)


def scan_header(name1: str, name2: str):
    return ("i", "j", name1, name2, "k_star", "sigma_star", "verdict", "error")


def scan_rows(cells):
    for c in cells:
        yield (c.i, c.j, c.value1, c.value2, c.k_star, c.sigma_star, c.verdict,
               None if c.error is None else c.error.replace(",", ";"))


def render(obj, fmt: str, scan_axes=("axis1", "axis2")) -> str:
    """Text for a report, growth curve or scan table in ``csv`` or ``json``."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    if isinstance(obj, CompatibilityReport):
        if fmt == "json":
            return json_text(report_dict(obj))
        rows = [(k, eb.real, eb.imag, ea.real, ea.imag, fa.real, fa.imag, fb.real, fb.imag)
                for k, eb, ea, fa, fb in zip(obj.k_sequence, obj.Eb_over_sigma,
                                             obj.Ea_over_sigma, obj.F_at_a, obj.F_at_b)]
        return csv_text(("k", "re_Eb_over_sigma", "im_Eb_over_sigma", "re_Ea_over_sigma",
                         "im_Ea_over_sigma", "re_F_at_a", "im_F_at_a", "re_F_at_b",
                         "im_F_at_b"), rows)
    if isinstance(obj, GrowthCurve):
        if fmt == "csv":
            return csv_text(DISPERSION_HEADER, curve_rows(obj))
        return json_text({
            "sigma_max": obj.sigma_max,
            "k_at_max": obj.k_at_max,
            "unstable_band": [list(b) for b in obj.unstable_band],
            "points": [dict(zip(DISPERSION_HEADER, row)) for row in curve_rows(obj)],
        })
    if isinstance(obj, list):
        header = scan_header(*scan_axes)
        if fmt == "csv":
            return csv_text(header, scan_rows(obj))
        return json_text([dict(zip(header, (c.i, c.j, c.value1, c.value2, c.k_star,
                                             c.sigma_star, c.verdict, c.error)))
                          for c in obj])
    raise TypeError(f"cannot render {type(obj).__name__}")


def emit_report(obj, fmt: str, sink, scan_axes=("axis1", "axis2")) -> int:
    """Write ``obj`` to ``sink`` (path, ``"-"`` or text stream); return bytes written."""
    return _write(render(obj, fmt, scan_axes), sink)


def _write(text: str, sink) -> int:
    data = text.encode("utf-8")
    if sink is None or sink == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    elif isinstance(sink, io.TextIOBase):
        sink.write(text)
    else:
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return len(data)


# -- subcommands --------------------------------------------------------------

def _floats(text: str, what: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated numbers, got {text!r}") from None
    if not values or not all(math.isfinite(v) for v in values):
        raise UsageError(f"{what}: expected finite numbers, got {text!r}")
    return values


def _axis(text: str, what: str):
    name, sep, values = text.partition("=")
    if not sep or name not in SCAN_AXES:
        raise UsageError(f"{what}: expected NAME=v1,v2,... with NAME in {', '.join(SCAN_AXES)}")
    return name, _floats(values, what)


def _k_range(args, cfg):
    k_min = 0.0 if args.kmin is None else args.kmin
    k_max = default_k_max(cfg) if args.kmax is None else args.kmax
    return k_min, k_max


def cmd_dispersion(args) -> int:
    cfg = load_config(args.config)
    k_min, k_max = _k_range(args, cfg)
    curve = sweep(cfg, k_min, k_max, args.samples)
    emit_report(curve, "csv", args.out)
    if args.summary:
        emit_report(curve, "json", args.summary)
    return EXIT_OK


def cmd_eigen(args) -> int:
    cfg = load_config(args.config)
    pair = eigenpair(cfg, args.k, args.branch)
    res = boundary_residuals(pair, cfg)
    log_ratio = log_amplitude_ratio(pair, cfg)
    ratio = amplitude_ratio(pair, cfg)
    out = {
        "k": pair.k,
        "branch": pair.branch,
        "sigma": pair.sigma,
        "a_hat": pair.a_hat,
        "b_hat": pair.b_hat,
        "F_at_a": interface_ratio(pair, cfg, "a"),
        "F_at_b": interface_ratio(pair, cfg, "b"),
        "row_residuals": {
            "row_a": res.row_a,
            "row_b": res.row_b,
            "scale_a": res.scale_a,
            "scale_b": res.scale_b,
            "degenerate_a": res.degenerate_a,
            "degenerate_b": res.degenerate_b,
        },
        "amplitude_ratio": ratio if math.isfinite(ratio) else None,
        "log_amplitude_ratio": log_ratio,
    }
    _write(json_text(out), args.out)
    return EXIT_OK


def cmd_compat(args) -> int:
    cfg = load_config(args.config)
    kseq = _floats(args.kseq, "--kseq") if args.kseq else None
    report = branch_limit_report(cfg, args.branch, kseq, tol=args.tol)
    emit_report(report, "json", args.out)
    return EXIT_OK if report.compatible else EXIT_VERDICT


def cmd_feasible(args) -> int:
    result = feasible_mu(args.muL, args.muR, args.Ta, args.Tb)
    if result.feasible:
        _write(fmt_number(result.mu) + "\n", args.out)
        return EXIT_OK
    detail = "" if result.mu is None else f" (mu_hat={fmt_number(result.mu)})"
    _write(f"infeasible: {result.reason}{detail}\n", args.out)
    return EXIT_VERDICT


def cmd_optimize(args) -> int:
    cfg = load_config(args.config)
    result = optimize_mu(cfg, (args.mu_lo, args.mu_hi), _k_range(args, cfg),
                         coarse=args.coarse)
    _write(json_text({"mu_star": result.mu_star, "objective_star": result.objective_star}),
           args.out)
    if args.trace:
        _write(csv_text(("mu", "objective"), result.trace), args.trace)
    return EXIT_OK


def cmd_scan(args) -> int:
    cfg = load_config(args.config)
    axis1 = _axis(args.axis1, "--axis1")
    axis2 = _axis(args.axis2, "--axis2")
    cells = param_scan(cfg, axis1, axis2, _k_range(args, cfg), tol=args.tol)
    emit_report(cells, "csv", args.out, scan_axes=(axis1[0], axis2[0]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trilayer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, config=True):
        if config:
            p.add_argument("--config", required=True, help="JSON flow configuration")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        return p

    def k_opts(p):
        p.add_argument("--kmin", type=float, default=None)
        p.add_argument("--kmax", type=float, default=None,
                       help="default: 10 x cutoff wavenumber")

    p = common(sub.add_parser("dispersion", help="growth rates on a wavenumber grid (CSV)"))
    k_opts(p)
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--summary", default=None, help="also write max growth and bands (JSON)")
    p.set_defaults(func=cmd_dispersion)

    p = common(sub.add_parser("eigen", help="null vector and diagnostics for one root (JSON)"))
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--branch", choices=("plus", "minus"), required=True)
    p.set_defaults(func=cmd_eigen)

    p = common(sub.add_parser("compat", help="large-k branch limits and verdict (JSON)"))
    p.add_argument("--branch", choices=("plus", "minus"), required=True)
    p.add_argument("--kseq", default=None, help="ascending wavenumbers, e.g. 5,10,15")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_compat)

    p = common(sub.add_parser("feasible-mu", help="middle viscosity forced by the tensions"),
               config=False)
    p.add_argument("--muL", type=float, required=True)
    p.add_argument("--muR", type=float, required=True)
    p.add_argument("--Ta", type=float, required=True)
    p.add_argument("--Tb", type=float, required=True)
    p.set_defaults(func=cmd_feasible)

    p = common(sub.add_parser("optimize", help="middle viscosity minimising max growth"))
    p.add_argument("--mu-lo", type=float, required=True)
    p.add_argument("--mu-hi", type=float, required=True)
    k_opts(p)
    p.add_argument("--coarse", type=int, default=32)
    p.add_argument("--trace", default=None, help="evaluation trace (CSV)")
    p.set_defaults(func=cmd_optimize)

    p = common(sub.add_parser("scan", help="2-D parameter scan (CSV)"))
    p.add_argument("--axis1", required=True, help="NAME=v1,v2,...")
    p.add_argument("--axis2", required=True, help="NAME=v1,v2,...")
    k_opts(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ArithmeticError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
