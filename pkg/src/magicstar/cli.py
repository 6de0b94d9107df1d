"""Command-line front end: root export, verification, brackets, star emission.

Exit codes: 0 success, 1 a verified proposition failed, 2 bad arguments or an
out-of-scope request, 3 I/O trouble.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import MagicStarAlgebra
from .report import VerifyReport
from .roots import AlgebraId, CapacityError, Family, generate, write_roots_tsv
from .simple import SimpleBasis
from .star import emit_star_svg, project, write_cells_tsv
from .tables import SweepTables, default_threads
from .verify import run_suite, suites_for

__all__ = ["main", "build_parser"]


def _algebra(args) -> AlgebraId:
    return AlgebraId(Family(args.algebra), args.level)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="magicstar",
        description="exact root systems, brackets and machine verification"
        " of the Magic Star algebras",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument(
            "--algebra", required=True, choices=[f.value for f in Family]
        )
        sp.add_argument("--level", type=int, default=1, metavar="N")

    sp = sub.add_parser("roots", help="write the root list as TSV")
    common(sp)
    sp.add_argument("--out", default="-", help="output path, or - for stdout")

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp)
    sp.add_argument(
        "--suite",
        default="all",
        help="comma-separated suite names, or 'all'",
    )
    sp.add_argument("--mode", choices=["exhaustive", "sampled"], default=None)
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=None)

    sp = sub.add_parser("brackets", help="export the structure constants")
    common(sp)
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("star", help="emit the Magic Star as SVG and cell TSV")
    common(sp)
    sp.add_argument("--svg", default=None)
    sp.add_argument("--tsv", default=None)
    sp.add_argument("--axes", choices=["123", "456"], default="123")

    sp = sub.add_parser(
        "epsilon", help="asymmetry function value on two roots (by index)"
    )
    common(sp)
    sp.add_argument("first", type=int)
    sp.add_argument("second", type=int)
    return p


def cmd_roots(args) -> int:
    try:
        system = generate(_algebra(args))
    except (CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.out == "-":
            write_roots_tsv(system, sys.stdout)
        else:
            write_roots_tsv(system, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def cmd_verify(args) -> int:
    try:
        algebra = _algebra(args)
        names = suites_for(algebra, [s.strip() for s in args.suite.split(",")])
    except (CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    threads = default_threads(args.threads)
    cache: dict = {}
    bad = False
    for name in names:
        rep = run_suite(
            name,
            algebra,
            mode=args.mode,
            samples=args.samples,
            seed=args.seed,
            threads=threads,
            _cache=cache,
        )
        print(rep.serialize())
        print(f"  elapsed: {rep.elapsed:.2f}s", file=sys.stderr)
        bad = bad or not rep.ok
    return 1 if bad else 0


def cmd_brackets(args) -> int:
    try:
        algebra = _algebra(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if algebra.family not in (Family.E6, Family.E7, Family.E8):
        print(
            "error: algebra structure out of scope for"
            f" {algebra.family.value} (e6/e7/e8 only)",
            file=sys.stderr,
        )
        return 2
    try:
        system = generate(algebra)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    alg = MagicStarAlgebra(system)
    try:
        alg.structure_constants().write(args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def cmd_star(args) -> int:
    try:
        algebra = _algebra(args)
        system = generate(algebra)
        cells = project(system, axes=args.axes)
    except (CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.svg:
            emit_star_svg(cells, args.svg)
        if args.tsv:
            write_cells_tsv(cells, args.tsv)
        if not args.svg and not args.tsv:
            for (r, s), cell in sorted(cells.items()):
                print(f"({r},{s})\torth={cell.orth_like}\tspin={cell.spin}")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def cmd_epsilon(args) -> int:
    try:
        algebra = _algebra(args)
        if algebra.family not in (Family.E6, Family.E7, Family.E8):
            raise ValueError("the asymmetry function needs e6/e7/e8")
        system = generate(algebra)
        tables = SweepTables(system)
        m = len(system)
        if not (0 <= args.first < m and 0 <= args.second < m):
            raise ValueError(f"root indices must be within 0..{m - 1}")
    except (CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    C = tables.C
    sign = tables.eps.epsilon(C[args.first], C[args.second])
    print(sign)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "roots": cmd_roots,
        "verify": cmd_verify,
        "brackets": cmd_brackets,
        "star": cmd_star,
        "epsilon": cmd_epsilon,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
