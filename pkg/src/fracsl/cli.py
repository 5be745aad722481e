"""Command-line front end: ``fracsl {solve,study,validate}``.

Exit status is 0 on success, 1 for domain errors (bad parameters, a potential
that does not parse or cannot be evaluated, resonant lambda) and 2 for
numerical failures (singular system, degenerate ladder, oracle not
converging).
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import math
import os
import sys
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

import numpy as np

from . import __version__
from .assembly import assemble, solve, solve_system
from .convergence import DegenerateLadder, StudyError, check_n_list, run_study
from .grid import DomainError, ProblemSpec, make_grid
from .lup import SingularMatrix, lup_decompose, lup_solve
from .oracle import (
    NonConverged,
    OracleConfig,
    analytic_alpha1,
    direct_left_integral,
    power_law_solution,
)
from .potential import EvalError, PotentialSyntaxError, Num, eval_on_nodes
from .quadrature import (
    apply_left_integral,
    apply_right_integral,
    composition_matrix,
    make_weights,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_NUMERIC = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def format_number(x: float, precision: int) -> str:
    """Fixed-point text rounded half-to-even on the exact binary value."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    q = Decimal(x).quantize(Decimal(1).scaleb(-precision), rounding=ROUND_HALF_EVEN)
    if q.is_zero():
        q = abs(q)
    return f"{q:f}"


def _parse_fraction(text: str) -> Fraction:
    try:
        frac = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid probe {text!r}") from None
    if not (0 < frac < 1):
        raise UsageError(f"probe {text!r} must lie strictly between 0 and 1")
    return frac


def _parse_n_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"invalid n-list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracsl", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="mode", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--alpha", type=float, required=True, help="order in (0, 1]")
    common.add_argument("--lambda", dest="lam", type=float, required=True)
    common.add_argument("--q", default="0", help='potential q(t), e.g. "sin(pi*t)"')
    common.add_argument("--b", type=float, default=1.0, help="domain length")
    common.add_argument("--L", type=float, default=1.0, help="right boundary value f(b)")
    common.add_argument("--output", "-o", default="-", help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--precision", type=int, default=8, help="decimals in CSV output")

    p = sub.add_parser("solve", parents=[common], help="solve on one grid")
    p.add_argument("--n", type=int, required=True, help="number of subintervals")
    p.add_argument("--refine", action="store_true", help="one step of iterative refinement")

    p = sub.add_parser("study", parents=[common], help="grid-refinement convergence study")
    p.add_argument("--n-list", required=True, help="doubling sizes, e.g. 256,512,1024")
    p.add_argument("--probes", default="1/4,1/2,3/4", help="probe points as fractions of b")

    p = sub.add_parser("validate", parents=[common], help="operator and solver spot checks")
    p.add_argument("--n", type=int, default=64)
    return parser


def _config(args) -> dict:
    cfg = {
        "mode": args.mode,
        "alpha": args.alpha,
        "lambda": args.lam,
        "q": args.q,
        "b": args.b,
        "L": args.L,
    }
    if args.mode in ("solve", "validate"):
        cfg["n"] = args.n
    if args.mode == "study":
        cfg["n_list"] = args.n_list_values
        cfg["probes"] = [str(p) for p in args.probe_values]
    return cfg


def _cmd_solve(args, spec, out):
    sol = solve(spec, args.n, refine=args.refine)
    if args.format == "json":
        doc = {
            "config": _config(args),
            "grid": {"n": sol.grid.n, "b": sol.grid.b, "dt": sol.grid.dt, "nodes": sol.t.tolist()},
            "values": sol.values.tolist(),
        }
        json.dump(doc, out, indent=1)
        out.write("\n")
        return EXIT_OK
    prec = args.precision
    out.write("t,f\n")
    for t, f in zip(sol.t, sol.values):
        out.write(f"{format_number(t, prec)},{format_number(f, prec)}\n")
    return EXIT_OK


def _cmd_study(args, spec, out):
    records = run_study(spec, args.n_list_values, args.probe_values)
    if args.format == "json":
        doc = {
            "config": _config(args),
            "grid": [{"n": n, "b": spec.b, "dt": spec.b / n} for n in args.n_list_values],
            "values": [
                {"n": n, "f": {str(r.probe): r.values[k] for r in records}}
                for k, n in enumerate(args.n_list_values)
            ],
            "ladders": [
                {
                    "probe": str(r.probe),
                    "t": float(r.probe) * spec.b,
                    "dt": list(r.dts),
                    "f": list(r.values),
                    "R": list(r.ratios),
                    "p": [None] + list(r.rates) + [None] if r.rates else [None] * len(r.ladder),
                }
                for r in records
            ],
        }
        json.dump(doc, out, indent=1)
        out.write("\n")
        return EXIT_OK
    prec = args.precision
    out.write("dt,probe,f,p\n")
    for k, n in enumerate(args.n_list_values):
        for r in records:
            dt, f = r.ladder[k]
            p = r.rates[k - 1] if 1 <= k <= len(r.rates) else None
            p_text = "" if p is None else format_number(p, prec)
            out.write(f"{dt!r},{float(r.probe) * spec.b!r},{format_number(f, prec)},{p_text}\n")
    return EXIT_OK


def run_checks(spec: ProblemSpec, n: int) -> list:
    """Named spot checks for ``validate``: list of ``(name, passed, detail)``."""
    checks = []
    alpha = spec.alpha
    grid = make_grid(n, spec.b)
    ws = make_weights(alpha, grid)
    W = ws.left_matrix()
    V = ws.right_matrix()
    t = grid.nodes

    checks.append(("weights_nonnegative", bool((W >= 0).all() and (V >= 0).all()), ""))

    closed = t**alpha / math.gamma(1 + alpha)
    row_sums = np.array([math.fsum(row) for row in W])
    ulps = np.abs(row_sums - closed) / np.spacing(np.maximum(np.abs(closed), np.abs(row_sums)) + 0.0)
    ulps[0] = 0.0 if row_sums[0] == 0.0 else np.inf
    checks.append(("row_sum_constant", bool(ulps.max() <= 2), f"max {ulps.max():.1f} ulp"))

    mirror = all(ws.right(i, j) == ws.left(n - i, n - j) for i in range(n + 1) for j in range(i, n + 1))
    checks.append(("mirror_symmetry", mirror, ""))

    rng = np.random.default_rng(0)
    phi = rng.standard_normal(n + 1)
    A = composition_matrix(ws)
    diff = np.abs(A @ phi - apply_left_integral(apply_right_integral(phi, ws), ws)).max()
    bound = 1e-12 * np.abs(phi).max() * n
    checks.append(("composition_vs_nested", bool(diff <= bound), f"{diff:.2e} <= {bound:.2e}"))

    def smooth(x):
        return np.cos(x) + x

    errs = []
    for m in (n, 2 * n):
        g = make_grid(m, spec.b)
        ref = np.array([direct_left_integral(smooth, alpha, ti, OracleConfig.for_grid(m)) for ti in g.nodes])
        approx = apply_left_integral(smooth(g.nodes), make_weights(alpha, g))
        errs.append(np.abs(approx - ref).max())
    order = math.log2(errs[0] / errs[1])
    checks.append(
        ("left_integral_order", bool(order >= 1 + alpha - 0.2), f"observed {order:.3f}, nominal {1 + alpha:.3f}")
    )

    system = assemble(spec, grid, A)
    (row0, rhs0), (rown, rhsn) = system.raw_boundary_rows
    e0 = np.zeros(n + 1)
    e0[0] = 1.0
    en = np.zeros(n + 1)
    en[n] = 1.0
    red = max(np.abs(row0 - e0).max(), abs(rhs0), np.abs(rown - en).max(), abs(rhsn - spec.L))
    checks.append(("boundary_rows_reduce", bool(red <= 1e-14), f"{red:.1e}"))

    factors = lup_decompose(system.matrix)
    x = lup_solve(factors, system.rhs)
    res = np.abs(system.matrix @ x - system.rhs).max() / max(np.abs(system.rhs).max(), 1e-300)
    checks.append(("lup_residual", bool(res <= 1e-10), f"{res:.1e}"))

    coef = spec.lam + eval_on_nodes(spec.potential, t)
    if np.all(coef == 0.0):
        err = np.abs(x - power_law_solution(spec, t)).max()
        checks.append(("power_law_exact", bool(err <= 1e-12), f"{err:.1e}"))

    if alpha == 1.0 and spec.potential == Num(0.0) and spec.lam < 0:
        errs = []
        for m in (n, 2 * n):
            sol = solve(spec, m)
            errs.append(np.abs(sol.values - analytic_alpha1(spec.lam, spec.b, spec.L, sol.t)).max())
        ratio = errs[0] / errs[1]
        checks.append(("classical_limit_order", bool(3.4 <= ratio <= 4.6), f"error ratio {ratio:.3f}"))
    return checks


def _cmd_validate(args, spec, out):
    checks = run_checks(spec, args.n)
    if args.format == "json":
        json.dump(
            {"config": _config(args), "checks": [{"name": c, "pass": ok, "detail": d} for c, ok, d in checks]},
            out,
            indent=1,
        )
        out.write("\n")
    else:
        for name, ok, detail in checks:
            line = f"{name}: {'pass' if ok else 'FAIL'}"
            out.write(line + (f" ({detail})" if detail else "") + "\n")
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_NUMERIC


@contextlib.contextmanager
def _thread_cap():
    env = os.environ.get("FRACSL_THREADS")
    if not env:
        yield
        return
    from threadpoolctl import threadpool_limits

    with threadpool_limits(limits=max(1, int(env))):
        yield


def main(argv=None) -> int:
    stderr = sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.precision < 0:
            raise UsageError("--precision must be non-negative")
        if args.mode == "study":
            args.probe_values = [_parse_fraction(p) for p in args.probes.split(",") if p.strip()]
            args.n_list_values = check_n_list(_parse_n_list(args.n_list), args.probe_values)
        spec = ProblemSpec(args.alpha, args.lam, args.q, args.b, args.L)
        if args.mode == "validate" and args.alpha == 1.0 and args.q.strip() == "0" and args.lam < 0:
            analytic_alpha1(args.lam, args.b, args.L, 0.0)  # rejects resonant lambda up front

        buf = io.StringIO()
        handler = {"solve": _cmd_solve, "study": _cmd_study, "validate": _cmd_validate}[args.mode]
        with _thread_cap():
            code = handler(args, spec, buf)
        if args.output == "-":
            sys.stdout.write(buf.getvalue())
        else:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(buf.getvalue())
        return code
    except UsageError as exc:
        print(f"fracsl: error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except StudyError as exc:
        code = EXIT_DOMAIN if isinstance(exc.__cause__, (DomainError, EvalError)) else EXIT_NUMERIC
        print(f"fracsl: error: {exc}", file=stderr)
        return code
    except (DomainError, PotentialSyntaxError, EvalError) as exc:
        print(f"fracsl: error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except (SingularMatrix, DegenerateLadder, NonConverged) as exc:
        print(f"fracsl: numerical failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"fracsl: error: {exc}", file=stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
