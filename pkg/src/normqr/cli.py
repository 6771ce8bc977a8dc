"""Command-line front end.

Exit status: 0 success, 1 invalid arguments, 2 numerical failure, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .experiments import (
    DEFAULT_KAPPA_LIST,
    DEFAULT_M_LIST,
    DEFAULT_TRIALS,
    ExperimentConfig,
    run_basis_experiment,
    run_bound_sweep,
)
from .genqr import EmptyFactorizationError, gen_qr
from .linalg import InvalidInputError, NormKind, SingularMatrixError
from .minnorm import LpSolverError
from .textio import format_matrix, read_matrix, write_matrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _norm(text: str) -> NormKind:
    try:
        return NormKind.parse(text)
    except InvalidInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="normqr", description="Norm-generalized QR factorization and experiments.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("factor", help="factor a matrix file")
    f.add_argument("matrix_file")
    f.add_argument("--norm", type=_norm, required=True, help="l1, l2 or linf")
    f.add_argument("--breakdown-tol", type=float, default=1e-10)
    f.add_argument("--out-q", help="write Q here (default: stdout)")
    f.add_argument("--out-r", help="write R here (default: stdout)")

    s = sub.add_parser("sweep", help="conditioning of Q across sizes and kappa(A)")
    s.add_argument("--norm", type=_norm, required=True)
    s.add_argument("--m-list", type=_int_list, default=list(DEFAULT_M_LIST))
    s.add_argument("--kappa-list", type=_float_list, default=list(DEFAULT_KAPPA_LIST))
    s.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)

    b = sub.add_parser("basis", help="factor a Vandermonde matrix on [-1, 1]")
    b.add_argument("--m", type=int, default=400)
    b.add_argument("--n", type=int, default=5)
    b.add_argument("--norm", type=_norm, required=True)
    b.add_argument("--out", required=True)
    return p


def _factor(args) -> int:
    A = read_matrix(args.matrix_file)
    f = gen_qr(A, args.norm, args.breakdown_tol)
    if args.out_q:
        write_matrix(args.out_q, f.Q)
    else:
        sys.stdout.write("# Q\n" + format_matrix(f.Q))
    if args.out_r:
        write_matrix(args.out_r, f.R)
    else:
        sys.stdout.write("# R\n" + format_matrix(f.R))
    if f.skipped:
        print(f"skipped columns (0-based): {list(f.skipped)}", file=sys.stderr)
    return EXIT_OK


def _sweep(args) -> int:
    cfg = ExperimentConfig(
        norm_kind=args.norm, m_list=args.m_list, kappa_list=args.kappa_list,
        trials=args.trials, seed=args.seed, output_path=args.out,
    )
    records = run_bound_sweep(cfg)
    failed = sum(r.failed for r in records)
    if failed:
        print(f"{failed} of {len(records)} factorizations failed", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _basis(args) -> int:
    if args.m < 2 or args.n < 1 or args.n > args.m:
        raise InvalidInputError(f"need m >= 2 and 1 <= n <= m, got m={args.m}, n={args.n}")
    run_basis_experiment(args.m, args.n, args.norm, args.out)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"factor": _factor, "sweep": _sweep, "basis": _basis}[args.command]
    try:
        return handler(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EmptyFactorizationError, SingularMatrixError, LpSolverError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
