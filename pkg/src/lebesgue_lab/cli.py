"""Command-line front end: ``lebesgue-lab <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage or validation
error, 3 numerical failure (unconverged quadrature, root count mismatch).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .errors import DomainError, QuadratureError, RootCountError, TruncationError, ValidationError
from .lebesgue import (
    asymptotic_constant,
    asymptotic_constant_gamma_form,
    asymptotic_constant_quadrature,
    kernel_closed_form,
    kernel_closed_form_rp,
    kernel_direct_sum,
    lebesgue_exact,
    xirong_comparison,
)
from .manifold import Family, make_manifold
from .multiplier import MultiplierSeq, cesaro_kernel_l1, default_k_max, kolmogorov_rate

SCHEMA = "lebesgue-lab/1"
EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_int_spec(text: str, field: str) -> list:
    """Parse "1..8", "10,20,40" or a mix such as "1..3,10" into a list of ints."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if hi < lo:
                raise ValidationError(f"--{field}: empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif re.fullmatch(r"-?\d+", part):
            out.append(int(part))
        else:
            raise ValidationError(f"--{field}: cannot parse {part!r}")
    if not out:
        raise ValidationError(f"--{field}: empty specification")
    if any(v < 0 for v in out):
        raise ValidationError(f"--{field}: values must be nonnegative")
    return out


def _threads(arg):
    if arg is not None:
        if arg < 1:
            raise ValidationError("--threads must be >= 1")
        return arg
    env = os.environ.get("LEBESGUE_LAB_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValidationError(f"LEBESGUE_LAB_THREADS must be an integer, got {env!r}")
        if value < 1:
            raise ValidationError("LEBESGUE_LAB_THREADS must be >= 1")
        return value
    return min(4, os.cpu_count() or 1)


def _fanout(fn, items, threads):
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


def _pretty(v) -> str:
    if isinstance(v, (float, np.floating)):
        return "%.10g" % v
    return _fmt(v)


def render(rows, columns, fmt, meta) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"schema={SCHEMA}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(r[c]) for c in columns])
        return buf.getvalue()
    if fmt == "json":
        clean = [{c: (float(r[c]) if isinstance(r[c], np.floating) else r[c]) for c in columns} for r in rows]
        return json.dumps({"meta": meta, "rows": clean}, indent=1) + "\n"
    cells = [[_pretty(r[c]) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _single_d(args):
    ds = parse_int_spec(args.d, "d")
    if len(ds) != 1:
        raise ValidationError("--d: this command takes a single dimension")
    return ds[0]


def cmd_table(args):
    spec = make_manifold(Family.parse(args.family), _single_d(args))
    ns = parse_int_spec(args.n, "n")

    def row(n):
        r = lebesgue_exact(spec, n, args.quad_order)
        return {"family": spec.family.value, "d": spec.d, "n": n, "exact": r.exact,
                "asymptotic": r.asymptotic, "ratio": r.ratio, "quad_error": r.quad_error,
                "converged": r.converged}

    rows = _fanout(row, ns, args.threads)
    cols = ["family", "d", "n", "exact", "asymptotic", "ratio", "quad_error"]
    return rows, cols, all(r["converged"] for r in rows)


def cmd_constant(args):
    ds = parse_int_spec(args.d, "d")
    family = Family.parse(args.family)
    rows = []
    for d in ds:
        spec = make_manifold(family, d)
        q = asymptotic_constant_quadrature(spec, 1e-10)
        rows.append({"family": family.value, "d": d, "chi": spec.chi, "k_beta": asymptotic_constant(spec),
                     "k_gamma": asymptotic_constant_gamma_form(spec), "k_quadrature": q.value,
                     "converged": q.converged})
    return rows, ["family", "d", "chi", "k_beta", "k_gamma", "k_quadrature"], all(r["converged"] for r in rows)


def cmd_kernel(args):
    spec = make_manifold(Family.parse(args.family), _single_d(args))
    ns = parse_int_spec(args.n, "n")
    if args.points < 2:
        raise ValidationError("--points must be >= 2")
    lo = 0.0 if spec.projective_even else -1.0
    t = np.linspace(lo, 1.0, args.points)
    rows = []
    for n in ns:
        closed = kernel_closed_form_rp(spec, n, t) if spec.projective_even else kernel_closed_form(spec, n, t)
        direct = kernel_direct_sum(spec, n, t)
        for ti, c, dsum in zip(t, closed, direct):
            rows.append({"family": spec.family.value, "d": spec.d, "n": n, "t": float(ti),
                         "closed_form": float(c), "direct_sum": float(dsum)})
    return rows, ["family", "d", "n", "t", "closed_form", "direct_sum"], True


def cmd_multiplier(args):
    spec = make_manifold(Family.parse(args.family), _single_d(args))
    ns = parse_int_spec(args.n, "n")
    if args.kind == "cesaro":
        if args.delta is None:
            raise ValidationError("--delta is required for --kind cesaro")

        def row(n):
            r = cesaro_kernel_l1(spec, args.delta, n, args.quad_order)
            return {"family": spec.family.value, "d": spec.d, "n": n, "delta": float(args.delta),
                    "cesaro_l1": r.value, "quad_error": r.error_estimate, "converged": r.converged}

        rows = _fanout(row, ns, args.threads)
        cols = ["family", "d", "n", "delta", "cesaro_l1", "quad_error"]
        return rows, cols, all(r["converged"] for r in rows)
    k_max = args.k_max
    if args.kind == "sobolev":
        if args.gamma is None:
            raise ValidationError("--gamma is required for --kind sobolev")
        seq = MultiplierSeq.sobolev(spec, args.gamma, k_max)
    else:
        if args.alpha is None:
            raise ValidationError("--alpha is required for --kind logdamped")
        seq = MultiplierSeq.log_damped(spec, args.alpha, k_max)
    if min(ns) < 1:
        raise ValidationError("--n: the rate needs n >= 1")

    def row(n):
        rate = kolmogorov_rate(spec, seq, n, args.quad_order)
        return {"family": spec.family.value, "d": spec.d, "n": n, "lambda_next": seq(n + 1),
                "predicted": rate.predicted, "empirical": rate.empirical, "ratio": rate.ratio,
                "truncation_bound": rate.truncation_bound, "truncated": rate.truncated,
                "converged": rate.converged}

    rows = _fanout(row, ns, args.threads)
    cols = ["family", "d", "n", "lambda_next", "predicted", "empirical", "ratio", "truncation_bound", "truncated"]
    return rows, cols, all(r["converged"] for r in rows)


def cmd_xirong(args):
    ds = parse_int_spec(args.d, "d")
    rows = []
    for d in ds:
        x = xirong_comparison(d)
        rows.append({"d": d, "k_left": x.k_left, "k_right": x.k_right, "k_theorem1": x.k_theorem1,
                     "rel_diff_left_right": x.rel_diff_left_right})
    return rows, ["d", "k_left", "k_right", "k_theorem1", "rel_diff_left_right"], True


def cmd_verify(args):
    from .acceptance import run_all

    results = run_all(quick=args.quick)
    passed = all(r.passed for r in results)
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "quick": bool(args.quick),
        "passed": passed,
        "checks": [{"id": r.id, "name": r.name, "passed": r.passed, "seconds": round(r.seconds, 3),
                    "details": {k: _jsonable(v) for k, v in r.details.items()}} for r in results],
    }
    return json.dumps(report, indent=1) + "\n", passed


def _jsonable(v):
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.bool_):
        return bool(v)
    return v


COMMANDS = {
    "table": cmd_table,
    "constant": cmd_constant,
    "kernel": cmd_kernel,
    "multiplier": cmd_multiplier,
    "xirong": cmd_xirong,
}


def build_parser():
    p = _Parser(prog="lebesgue-lab", description="Lebesgue constants of Fourier-Laplace projections.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, family=True, n=True, d_default=None):
        if family:
            sp.add_argument("--family", required=True, help="sphere, real-projective, complex-projective, "
                                                            "quaternionic-projective or cayley")
        sp.add_argument("--d", required=d_default is None, default=d_default, help="dimension or range, e.g. 2..10")
        if n:
            sp.add_argument("--n", required=True, help='degrees, e.g. "1..8" or "10,20,40"')
        sp.add_argument("--format", choices=["csv", "json", "pretty"], default="csv")
        sp.add_argument("--output", default="-", help='output path, "-" for stdout')
        sp.add_argument("--quad-order", type=int, default=32)
        sp.add_argument("--k-max", type=int, default=None)
        sp.add_argument("--threads", type=int, default=None)

    common(sub.add_parser("table", help="exact and asymptotic Lebesgue constants"))
    common(sub.add_parser("constant", help="the leading constant by three routes"), n=False)
    sp = sub.add_parser("kernel", help="closed-form against direct-sum kernel on a t grid")
    common(sp)
    sp.add_argument("--points", type=int, default=41)
    sp = sub.add_parser("multiplier", help="Cesaro norms or Kolmogorov rates")
    common(sp)
    sp.add_argument("--kind", choices=["sobolev", "logdamped", "cesaro"], required=True)
    sp.add_argument("--gamma", type=float)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--delta", type=float)
    common(sub.add_parser("xirong", help="compare published forms of the sphere constant"),
           family=False, n=False, d_default="2..10")
    sp = sub.add_parser("verify", help="run the acceptance checks, JSON report")
    sp.add_argument("--quick", action="store_true")
    sp.add_argument("--output", default="-")
    return p


def _write(text, path, stdout):
    if path in (None, "-"):
        stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def run(argv, stdout, stderr) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            text, passed = cmd_verify(args)
            _write(text, args.output, stdout)
            return EXIT_OK if passed else EXIT_VERIFY
        if not 8 <= args.quad_order <= 128:
            raise ValidationError(f"--quad-order must be in [8, 128], got {args.quad_order}")
        args.threads = _threads(args.threads)
        if args.k_max is None:
            ns = parse_int_spec(args.n, "n") if getattr(args, "n", None) else [0]
            args.k_max = default_k_max(max(ns))
        elif args.k_max < 1:
            raise ValidationError("--k-max must be a positive integer")
        rows, cols, ok = COMMANDS[args.command](args)
        meta = {"schema": SCHEMA, "command": args.command, "quad_order": args.quad_order,
                "k_max": args.k_max, "version": __version__}
        _write(render(rows, cols, args.format, meta), args.output, stdout)
        if not ok:
            stderr.write("error: quadrature did not reach its tolerance for some rows\n")
            return EXIT_NUMERIC
        return EXIT_OK
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (ValidationError, DomainError, TruncationError) as exc:
        stderr.write(f"validation error: {exc}\n")
        return EXIT_USAGE
    except (RootCountError, QuadratureError, FloatingPointError) as exc:
        stderr.write(f"numerical error: {exc}\n")
        return EXIT_NUMERIC
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main_capture(argv):
    """Run the CLI in-process; returns (exit code, stdout text)."""
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue()


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv, sys.stdout, sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
