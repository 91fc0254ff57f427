"""Command-line interface.

Exit codes: 0 success or congruence verified, 1 congruence refuted (or the
two Bernoulli routes disagree), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from .bernoulli import zeta_ratio
from .bigmath import factorize
from .dirichlet import (
    NonIntegralError,
    gen_bernoulli_via_polynomials,
    gen_bernoulli_via_recursion,
    quad_character,
)
from .io import FORMATS, Table, emit, load_fixture, norm_table
from .numberfield import NotIntegralAtPrime
from .qseries import delta_qexp, eisenstein_chi, eisenstein_level1
from .scan import scan_range
from .sturm import (
    InsufficientPrecision,
    norm_difference_table,
    sturm_bound,
    verify_congruence,
    verify_level1,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _even(text: str) -> int:
    value = int(text)
    if value < 2 or value % 2:
        raise argparse.ArgumentTypeError(f"expected an even integer >= 2, got {text}")
    return value


def zeta_table(max_two_m: int) -> Table:
    rows = []
    for two_m in range(2, max_two_m + 1, 2):
        z = zeta_ratio(two_m)
        rows.append((two_m, factorize(z.numerator), factorize(z.denominator)))
    return Table("Z_2m = zeta(2m)/pi^2m = N_2m/D_2m", ("2m", "N_2m", "D_2m"), tuple(rows))


def genbern_table(p: int, max_two_m: int, method: str) -> tuple[Table, bool]:
    chi = quad_character(p)
    indices = range(2, max_two_m + 1, 2)
    poly = rec = None
    if method in ("poly", "both"):
        poly = {n: p * gen_bernoulli_via_polynomials(chi, n) for n in indices}
    if method in ("recursion", "both"):
        table = gen_bernoulli_via_recursion(chi, max_two_m)
        rec = {n: p * table[n] for n in indices}
    values = poly if poly is not None else rec
    agree_all = True
    rows = []
    for n in indices:
        v = values[n]
        if v.denominator != 1:
            raise NonIntegralError(f"{p} * B_{n},chi = {v} is not an integer")
        row = [n, v.numerator, factorize(v.numerator) if v else 0]
        if method == "both":
            agree = poly[n] == rec[n]
            agree_all &= agree
            row.append(agree)
        rows.append(tuple(row))
    columns = ["2m", "p*B_2m,chi", "factorization"]
    if method == "both":
        columns.append("methods agree")
    meta = (("p", p), ("method", method))
    return Table(f"p*B_2m,chi for p = {p}", tuple(columns), tuple(rows), meta), agree_all


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eiscong", description="Exact special values and Eisenstein congruences.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--format", choices=FORMATS, default="text")
        return sp

    sp = add("zeta-table", "numerators and denominators of zeta(2m)/pi^2m")
    sp.add_argument("--max", type=_even, default=20)

    sp = add("genbern", "p * B_2m,chi for the quadratic character mod p")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--max", type=_even, default=20)
    sp.add_argument("--method", choices=("poly", "recursion", "both"), default="both")

    sp = add("scan", "candidate congruence primes in numerators")
    source = sp.add_mutually_exclusive_group(required=True)
    source.add_argument("--p", type=int)
    source.add_argument("--zeta", action="store_true")
    sp.add_argument("--max", type=_even, default=20)

    sp = add("eisenstein", "q-expansion of E_k,chi on Gamma_0(p)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=_even, required=True)
    sp.add_argument("--terms", type=int, default=11)

    sp = add("eisenstein1", "q-expansion of the level-1 Eisenstein series E_k")
    sp.add_argument("--k", type=_even, required=True)
    sp.add_argument("--terms", type=int, default=11)

    sp = add("delta", "q-expansion of Delta")
    sp.add_argument("--terms", type=int, default=11)

    sp = add("sturm", "Sturm bound for Gamma_0(N)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--level", type=int, required=True)

    sp = add("norms", "norms of a_n(fixture) - a_n(E_k,chi)")
    sp.add_argument("--fixture", required=True)
    sp.add_argument("--p", type=int)
    sp.add_argument("--k", type=_even)
    sp.add_argument("--terms", type=int, default=11)

    sp = add("verify", "check fixture = E_k,chi (mod l) up to the Sturm bound")
    sp.add_argument("--fixture", required=True)
    sp.add_argument("--p", type=int)
    sp.add_argument("--k", type=_even)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--mode", choices=("norm", "embed"), default="embed")
    sp.add_argument("--terms", type=int, default=None)

    sp = add("verify-level1", "Delta = E_12 mod 691, or Delta*E_4 = E_16 mod 3617")
    sp.add_argument("--which", type=int, choices=(691, 3617), required=True)
    sp.add_argument("--terms", type=int, default=100)
    return parser


def _fixture_and_eisenstein(args, terms: int | None):
    fixture = load_fixture(args.fixture)
    p = args.p if args.p is not None else fixture.character
    k = args.k if args.k is not None else fixture.weight
    if (p, k) != (fixture.character, fixture.weight) or fixture.level != p:
        raise ValueError(
            f"fixture is weight {fixture.weight}, level {fixture.level}, character mod "
            f"{fixture.character}; requested p = {p}, k = {k}"
        )
    f = fixture.to_qseries()
    g = eisenstein_chi(quad_character(p), k, max(terms or 0, f.precision))
    return f, g


def _dispatch(args, out: TextIO) -> int:
    fmt = args.format
    cmd = args.command
    if cmd == "zeta-table":
        out.write(emit(zeta_table(args.max), fmt))
    elif cmd == "genbern":
        table, agree = genbern_table(args.p, args.max, args.method)
        out.write(emit(table, fmt))
        return EXIT_OK if agree else EXIT_FAIL
    elif cmd == "scan":
        out.write(emit(scan_range(None if args.zeta else args.p, args.max), fmt))
    elif cmd == "eisenstein":
        out.write(emit(eisenstein_chi(quad_character(args.p), args.k, args.terms), fmt))
    elif cmd == "eisenstein1":
        out.write(emit(eisenstein_level1(args.k, args.terms), fmt))
    elif cmd == "delta":
        out.write(emit(delta_qexp(args.terms), fmt))
    elif cmd == "sturm":
        out.write(emit(sturm_bound(args.k, args.level), fmt))
    elif cmd == "norms":
        f, g = _fixture_and_eisenstein(args, args.terms)
        out.write(emit(norm_table(norm_difference_table(f, g, args.terms)), fmt))
    elif cmd == "verify":
        f, g = _fixture_and_eisenstein(args, args.terms)
        report = verify_congruence(f, g, args.ell, args.mode, terms=args.terms)
        out.write(emit(report, fmt))
        return EXIT_OK if report.passed else EXIT_FAIL
    elif cmd == "verify-level1":
        report = verify_level1(args.which, args.terms)
        out.write(emit(report, fmt))
        return EXIT_OK if report.passed else EXIT_FAIL
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return _dispatch(args, out)
    except (
        ValueError,
        OSError,
        NotIntegralAtPrime,
        NonIntegralError,
        InsufficientPrecision,
    ) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
