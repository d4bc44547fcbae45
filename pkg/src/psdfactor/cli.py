"""Command line front-end: factor, verify, analyze, trials.

Exit codes: 0 success, 1 pipeline or verification failure, 2 parse or
validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .eigenstructure import analyze_spectrum
from .errors import FactorizationError, InputError, OddMultiplicity
from .factorizer import FactorizationOptions, choose_x0, factorize, normalize
from .matpoly import MatPoly, coeff_max_diff, eval_poly, gram
from .riccati import build_pencil, build_riccati_data
from .trials import run_trials, worst_error

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_IO = 0, 1, 2, 3

VERDICTS = {
    "generic": "FACTORIZABLE-GENERIC",
    "needs-exact": "NEEDS-EXACT-JORDAN",
    "not-factorizable": "NOT-FACTORIZABLE",
}

TRIALS_TOL = 1e-4


def _x0_arg(text):
    if text == "auto":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or a real number, got {text!r}")


def _err(msg):
    print(msg, file=sys.stderr)


def _diagnostic(exc: FactorizationError) -> str:
    name = "OddMultiplicity" if isinstance(exc, OddMultiplicity) else type(exc).__name__
    return f"error stage={exc.stage} type={name} detail={exc.args[0] if exc.args else ''}"


def _read(path, reader, *args):
    """Returns (value, exit_code)."""
    try:
        return reader(path, *args), None
    except OSError as exc:
        _err(f"error stage=io detail={exc}")
        return None, EXIT_IO
    except (InputError, ValueError) as exc:
        _err(f"error stage=parse path={path} detail={exc}")
        return None, EXIT_PARSE


def cmd_factor(args) -> int:
    q, code = _read(args.input, io.read_poly, "Q")
    if code is not None:
        return code
    jordan = None
    if args.jordan:
        jordan, code = _read(args.jordan, io.read_jordan)
        if code is not None:
            return code
    try:
        q = MatPoly(q.coeffs, symmetric=True)
        opts = FactorizationOptions(x0=args.x0, residual_tol=args.tol, jordan=jordan)
        rep = factorize(q, opts)
    except InputError as exc:
        _err(_diagnostic(exc))
        return EXIT_PARSE
    except FactorizationError as exc:
        _err(_diagnostic(exc))
        return EXIT_FAIL
    except ValueError as exc:
        _err(f"error stage=input detail={exc}")
        return EXIT_PARSE
    for line in rep.lines():
        print(line)
    if not rep.ok:
        failed = ",".join(k for k, v in rep.checks.items() if not v)
        _err(f"error stage=verify type=CheckFailed detail={failed}")
        return EXIT_FAIL
    try:
        io.write_poly(args.output, rep.G, "G")
    except OSError as exc:
        _err(f"error stage=io detail={exc}")
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    q, code = _read(args.q, io.read_poly)
    if code is not None:
        return code
    g, code = _read(args.g, io.read_poly)
    if code is not None:
        return code
    if q.n != g.n:
        _err(f"error stage=parse detail=dimension mismatch: Q is {q.n}x{q.n}, G is {g.n}x{g.n}")
        return EXIT_PARSE
    qg = gram(g)
    coeff_res = coeff_max_diff(q, qg)
    grid_res = 0.0
    for x in np.linspace(-5.0, 5.0, args.grid):
        Qx = eval_poly(q, x)
        Gx = eval_poly(g, x)
        grid_res = max(grid_res, float(np.max(np.abs(Qx - Gx.T @ Gx))) / (1.0 + float(np.max(np.abs(Qx)))))
    ok = coeff_res <= args.tol and grid_res <= args.tol
    print(f"coeff_residual = {coeff_res:.6e}")
    print(f"grid_residual = {grid_res:.6e}")
    print(f"status = {'OK' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def analyze_poly(q: MatPoly, x0="auto"):
    """(x0, M_r, eigenvalues, clusters, verdict) for the normalized polynomial."""
    q = MatPoly(q.coeffs, symmetric=True)
    if q.degree % 2 or q.degree == 0:
        raise InputError(f"degree must be even and positive, got {q.degree}")
    x0 = choose_x0(q) if x0 == "auto" else float(x0)
    p, _ = normalize(q, x0)
    Mr = build_pencil(build_riccati_data(p)).Mr
    clusters, verdict = analyze_spectrum(Mr)
    return x0, Mr, np.linalg.eigvals(Mr), clusters, VERDICTS[verdict]


def cmd_analyze(args) -> int:
    q, code = _read(args.input, io.read_poly)
    if code is not None:
        return code
    try:
        x0, Mr, eig, clusters, verdict = analyze_poly(q, args.x0)
    except InputError as exc:
        _err(_diagnostic(exc))
        return EXIT_PARSE
    except FactorizationError as exc:
        _err(_diagnostic(exc))
        return EXIT_FAIL
    except ValueError as exc:
        _err(f"error stage=input detail={exc}")
        return EXIT_PARSE
    print(f"x0 = {x0!r}")
    for z in sorted(eig, key=lambda z: (-z.real, -z.imag)):
        print(f"eigenvalue = {z.real:.12g} {z.imag:+.12g}i")
    for c in clusters:
        if c.is_real:
            print(f"cluster = real {c.center.real:.10g} multiplicity={c.size}")
        else:
            print(f"cluster = complex {c.center.real:.10g} +- {c.center.imag:.10g}i "
                  f"multiplicity={c.size}")
    if args.print_mr:
        for row in Mr:
            print("Mr_row = " + " ".join(f"{v:.17g}" for v in row))
    print(f"verdict = {verdict}")
    return EXIT_OK


def cmd_trials(args) -> int:
    results = run_trials(args.count, args.seed, args.nmax, args.mmax, workers=args.workers)
    for r in results:
        if r.failure:
            print(f"trial {r.index} n={r.n} m={r.m} FAILED {r.failure}")
        else:
            print(f"trial {r.index} n={r.n} m={r.m} error={r.error:.6e}")
    worst = worst_error(results)
    failures = sum(r.failure is not None for r in results)
    print(f"trials = {len(results)}")
    print(f"failures = {failures}")
    print(f"worst_error = {worst:.6e}")
    return EXIT_OK if failures == 0 and worst <= TRIALS_TOL else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(prog="psdfactor",
                                 description="Real factorization Q(x) = G(x)^T G(x) of PSD matrix polynomials")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factor", help="factor a polynomial file")
    f.add_argument("input")
    f.add_argument("output")
    f.add_argument("--x0", type=_x0_arg, default="auto")
    f.add_argument("--tol", type=float, default=1e-5, help="max coefficient residual accepted")
    f.add_argument("--jordan", help="exact real Jordan data for M_r of the normalized polynomial")
    f.set_defaults(func=cmd_factor)

    v = sub.add_parser("verify", help="check Q = G^T G")
    v.add_argument("q")
    v.add_argument("g")
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--grid", type=int, default=101)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="eigenvalue clustering of M_r and a factorizability verdict")
    a.add_argument("input")
    a.add_argument("--x0", type=_x0_arg, default="auto")
    a.add_argument("--print-mr", action="store_true")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("trials", help="randomized round-trip experiment")
    t.add_argument("--count", type=int, default=100)
    t.add_argument("--seed", type=int, default=1)
    t.add_argument("--nmax", type=int, default=5)
    t.add_argument("--mmax", type=int, default=5)
    t.add_argument("--workers", type=int, default=1)
    t.set_defaults(func=cmd_trials)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
