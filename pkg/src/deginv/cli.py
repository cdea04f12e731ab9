"""Command-line front end: single-value computations, sweeps, and a selftest.

Exit codes: 0 success, 1 selftest failure, 2 argument validation, 3 domain
error, 4 accuracy/vanishing error, 5 fit error.  Diagnostics go to stderr;
the data stream carries only the requested format (table, csv, or json).
The environment variable DEGINV_THREADS caps sweep parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import degeneration, invariants, modular, selftest, theta
from .errors import AccuracyError, DomainError, FitError, VanishingError

COMPUTE_NAMES = (
    "eta", "eta-norm", "theta1", "theta2", "chi10", "chi10-norm", "green",
    "delta1", "logd", "beta2", "lambda", "phi-limit", "delta-limit", "beta-limit",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deginv",
        description="Theta functions, Siegel modular forms and degeneration sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="evaluate a single quantity")
    compute.add_argument("name", choices=COMPUTE_NAMES)
    for flag in ("--omega-re", "--omega-im", "--omega1-re", "--omega1-im",
                 "--omega2-re", "--omega2-im", "--z-re", "--z-im",
                 "--z2-re", "--z2-im", "--u-re", "--u-im",
                 "--o11-re", "--o11-im", "--o12-re", "--o12-im",
                 "--o22-re", "--o22-im",
                 "--a1", "--a2", "--b1", "--b2",
                 "--phi", "--delta", "--g-ab",
                 "--phi1", "--phi2", "--delta1", "--delta2"):
        compute.add_argument(flag, type=float, default=None)
    compute.add_argument("--h", type=int, default=None)
    compute.add_argument("--h1", type=int, default=None)
    compute.add_argument("--h2", type=int, default=None)
    compute.add_argument("--mode", choices=("separating", "nonseparating"), default=None)
    _add_common_flags(compute)

    sweep = sub.add_parser("sweep", help="sweep a degenerating family")
    sweep.add_argument("mode", choices=("separating", "nonseparating"))
    for flag in ("--omega-re", "--omega-im", "--omega1-re", "--omega1-im",
                 "--omega2-re", "--omega2-im", "--u-re", "--u-im", "--x-offset"):
        sweep.add_argument(flag, type=float, default=None)
    sweep.add_argument("--start", type=float, default=None,
                       help="first grid value (log-spaced grid)")
    sweep.add_argument("--end", type=float, default=None,
                       help="last grid value (log-spaced grid)")
    sweep.add_argument("--points", type=int, default=None,
                       help="number of log-spaced grid points")
    sweep.add_argument("--at", type=float, action="append", default=None,
                       help="explicit grid value; repeatable, replaces --start/--end")
    _add_common_flags(sweep)

    self_cmd = sub.add_parser("selftest", help="run the embedded property suite")
    _add_common_flags(self_cmd)
    return parser


def _add_common_flags(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--eps", type=float, default=1e-12, help="absolute error target")
    cmd.add_argument("--max-radius", type=int, default=64, help="lattice radius cap")
    cmd.add_argument("--format", choices=("table", "csv", "json"), default="table")
    cmd.add_argument("--output", default=None, help="destination path (default stdout)")
    cmd.add_argument("--precision", type=int, default=12, help="decimal digits [4, 17]")


def _require(args: argparse.Namespace, *flags: str) -> list[float]:
    values = []
    for flag in flags:
        value = getattr(args, flag.lstrip("-").replace("-", "_"))
        if value is None:
            raise _ArgError(f"{flag} is required for this computation")
        values.append(value)
    return values


class _ArgError(Exception):
    pass


def _round_floats(obj, precision: int):
    if isinstance(obj, float):
        return float(f"{obj:.{precision}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, precision) for v in obj]
    return obj


def _emit(rows: list[tuple[str, object]], comments: list[tuple[str, object]],
          args: argparse.Namespace, json_payload: dict) -> None:
    """Write the payload in the requested format.

    ``rows`` are the primary records, ``comments`` the summary block (CSV
    renders them as '# key = value' lines, the table as a trailing block).
    """
    p = args.precision
    fmt = lambda v: f"{v:.{p}g}" if isinstance(v, float) else str(v)
    lines: list[str] = []
    if args.format == "json":
        lines.append(json.dumps(_round_floats(json_payload, p)))
    elif args.format == "csv":
        header = rows[0][0] if rows else ""
        lines.append(header)
        for _, record in rows:
            lines.append(",".join(fmt(v) for v in record))
        for key, value in comments:
            lines.append(f"# {key} = {fmt(value)}")
    else:
        width = max((len(str(r[0])) for r in rows + comments), default=0)
        for key, record in rows:
            if isinstance(record, tuple):
                record = "  ".join(fmt(v) for v in record)
            lines.append(f"{str(key):<{width}}  {fmt(record) if not isinstance(record, str) else record}")
        if comments:
            lines.append("")
            for key, value in comments:
                lines.append(f"{str(key):<{width}}  {fmt(value)}")
    text = "\n".join(lines) + "\n"
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _omega(args, prefix="omega") -> theta.UpperHalfPoint:
    re_val = getattr(args, f"{prefix}_re")
    (im_val,) = _require(args, f"--{prefix}-im")
    return theta.UpperHalfPoint(0.0 if re_val is None else re_val, im_val)


def _siegel(args) -> theta.SiegelPoint2:
    vals = _require(args, "--o11-re", "--o11-im", "--o12-re", "--o12-im",
                    "--o22-re", "--o22-im")
    return theta.SiegelPoint2(complex(vals[0], vals[1]), complex(vals[2], vals[3]),
                              complex(vals[4], vals[5]))


def _split(args) -> invariants.GenusSplit:
    if args.mode is None:
        raise _ArgError("--mode is required for limit evaluators")
    if args.mode == "separating":
        if args.h1 is None or args.h2 is None:
            raise _ArgError("--h1 and --h2 are required in separating mode")
        return invariants.GenusSplit.separating(args.h1, args.h2)
    if args.h is None:
        raise _ArgError("--h is required in nonseparating mode")
    return invariants.GenusSplit.nonseparating(args.h)


def _limit_inputs(args, names: tuple[str, ...]) -> dict[str, float]:
    out = {}
    for name in names:
        value = getattr(args, name)
        if value is None:
            raise _ArgError(f"--{name.replace('_', '-')} is required in this mode")
        out[name] = value
    return out


def _run_compute(args) -> tuple[list, list, dict]:
    acc = theta.AccuracyTarget(args.eps, args.max_radius)
    name = args.name
    if name == "eta":
        value = theta.log_abs_eta(_omega(args), acc)
        fields = [("log_abs_eta", value)]
    elif name == "eta-norm":
        value = modular.log_petersson_eta(_omega(args), acc).log_norm
        fields = [("log_petersson_eta", value)]
    elif name == "theta1":
        z_re, z_im = (args.z_re or 0.0), (args.z_im or 0.0)
        value = theta.theta_odd_genus1(complex(z_re, z_im), _omega(args), acc)
        fields = [("re", value.real), ("im", value.imag)]
    elif name == "theta2":
        vals = _require(args, "--a1", "--a2", "--b1", "--b2")
        char = theta.ThetaChar2((vals[0], vals[1]), (vals[2], vals[3]))
        z = (complex(args.z_re or 0.0, args.z_im or 0.0),
             complex(args.z2_re or 0.0, args.z2_im or 0.0))
        value = theta.theta_char_genus2(char, z, _siegel(args), acc)
        fields = [("re", value.real), ("im", value.imag)]
    elif name == "chi10":
        value = modular.chi10(_siegel(args), acc)
        fields = [("re", value.real), ("im", value.imag)]
    elif name == "chi10-norm":
        value = modular.log_petersson_chi10(_siegel(args), acc).log_norm
        fields = [("log_petersson_chi10", value)]
    elif name == "green":
        (u_re, u_im) = _require(args, "--u-re", "--u-im")
        disp = invariants.TorusDisplacement(complex(u_re, u_im), _omega(args))
        fields = [("green", invariants.green_torus(disp, acc))]
    elif name == "delta1":
        fields = [("delta", invariants.delta_elliptic(
            invariants.EllipticCurveData(_omega(args)), acc))]
    elif name == "logd":
        fields = [("logd", invariants.arakelov_d_torus(
            invariants.EllipticCurveData(_omega(args)), acc))]
    elif name == "beta2":
        fields = [("beta", invariants.beta_genus2(_siegel(args), acc))]
    elif name == "lambda":
        if args.h is None:
            raise _ArgError("--h is required for lambda")
        vals = _require(args, "--phi", "--delta")
        fields = [("lambda", invariants.lambda_invariant(args.h, vals[0], vals[1]))]
    elif name == "phi-limit":
        split = _split(args)
        names = ("phi1", "phi2") if split.mode == "separating" else ("phi", "g_ab")
        result = invariants.phi_limit(split, **_limit_inputs(args, names))
        fields = [("slope", result.slope), ("limit", result.limit)]
    elif name in ("delta-limit", "beta-limit"):
        split = _split(args)
        if name == "delta-limit":
            names = (("delta1", "delta2") if split.mode == "separating"
                     else ("delta", "g_ab"))
            result = invariants.delta_limit(split, **_limit_inputs(args, names))
        else:
            names = (("phi1", "phi2", "delta1", "delta2") if split.mode == "separating"
                     else ("phi", "delta", "g_ab"))
            result = invariants.beta_limit(split, **_limit_inputs(args, names))
        fields = [("slope", result.slope), ("log_log_coeff", result.log_log_coeff),
                  ("limit", result.limit)]
    else:  # pragma: no cover - argparse restricts choices
        raise _ArgError(f"unknown computation {name}")

    rows = [("field,value", (key, value)) for key, value in fields]
    payload = {"name": name, **{key: value for key, value in fields}}
    table = [(key, value) for key, value in fields]
    return table if args.format == "table" else rows, [], payload


def _run_sweep(args) -> tuple[list, list, dict]:
    acc = theta.AccuracyTarget(args.eps, args.max_radius)
    if args.at:
        points = tuple(args.at)
    else:
        if args.start is None or args.end is None or args.points is None:
            raise _ArgError("--start, --end and --points are required without --at")
        if args.points < 1:
            raise _ArgError("--points must be >= 1")
        if args.points == 1:
            points = (args.start,)
        else:
            points = tuple(np.geomspace(args.start, args.end, args.points))
    grid = degeneration.SweepGrid(args.mode, points)

    if args.mode == "separating":
        fam = degeneration.SeparatingFamily(_omega(args, "omega1"), _omega(args, "omega2"))
        family_desc = {"omega1_re": fam.omega1.re, "omega1_im": fam.omega1.im,
                       "omega2_re": fam.omega2.re, "omega2_im": fam.omega2.im}
    else:
        (u_re, u_im) = _require(args, "--u-re", "--u-im")
        fam = degeneration.NonSeparatingFamily(
            _omega(args), complex(u_re, u_im), args.x_offset or 0.0)
        family_desc = {"omega_re": fam.omega.re, "omega_im": fam.omega.im,
                       "u_re": fam.u.real, "u_im": fam.u.imag,
                       "x_offset": fam.x_offset}

    raw_threads = os.environ.get("DEGINV_THREADS", "1") or "1"
    try:
        threads = int(raw_threads)
    except ValueError:
        raise _ArgError(f"DEGINV_THREADS must be a positive integer, got {raw_threads!r}")
    if threads < 1:
        raise _ArgError(f"DEGINV_THREADS must be a positive integer, got {raw_threads!r}")
    report = degeneration.run_sweep(grid, fam, acc, threads=threads)

    rows = [("param,value", (param, value)) for param, value in report.samples]
    table_rows = []
    previous = None
    for param, value in report.samples:
        diff = "" if previous is None else f"{value - previous:+.3e}"
        table_rows.append((f"{param:.6g}", (value, diff) if diff else (value,)))
        previous = value
    comments = [("extrapolated_limit", report.extrapolated_limit),
                ("rhs", report.closed_form_rhs),
                ("discrepancy", report.discrepancy),
                ("estimated_order", report.estimated_order)]
    payload = {
        "mode": args.mode,
        "family": family_desc,
        "samples": [{"param": param, "value": value} for param, value in report.samples],
        "extrapolated_limit": report.extrapolated_limit,
        "rhs": report.closed_form_rhs,
        "discrepancy": report.discrepancy,
        "estimated_order": report.estimated_order,
    }
    return table_rows if args.format == "table" else rows, comments, payload


def _run_selftest(args) -> tuple[int, tuple[list, list, dict]]:
    results = selftest.run_selftest()
    rows = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        if args.format == "csv":
            rows.append(("group,passed,worst_residual",
                         (res.name, status, res.worst_residual)))
        else:
            rows.append((res.name, (status, res.worst_residual)))
    payload = {"groups": [{"name": r.name, "passed": r.passed,
                           "worst_residual": r.worst_residual} for r in results],
               "passed": all(r.passed for r in results)}
    failures = [r for r in results if not r.passed]
    for res in failures:
        print(f"selftest group {res.name} failed "
              f"(worst residual {res.worst_residual:.3g})", file=sys.stderr)
    return (1 if failures else 0), (rows, [], payload)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse validation: exit 2, help: exit 0
        return int(exc.code or 0)
    if not 4 <= args.precision <= 17:
        print("error: --precision must lie in [4, 17]", file=sys.stderr)
        return 2
    try:
        if args.command == "compute":
            rows, comments, payload = _run_compute(args)
            code = 0
        elif args.command == "sweep":
            rows, comments, payload = _run_sweep(args)
            code = 0
        else:
            code, (rows, comments, payload) = _run_selftest(args)
    except _ArgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except (AccuracyError, VanishingError) as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return 4
    except FitError as exc:
        print(f"fit error: {exc}", file=sys.stderr)
        return 5
    _emit(rows, comments, args, payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
