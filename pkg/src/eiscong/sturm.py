"""Sturm bounds and coefficient-wise congruence checks between q-series.

Two modes:

``norm``
    l must divide N(a_n(f) - a_n(g)) for each checked n. Cheap, but a
    split l = P1*P2 lets different n pick different primes above l.
``embed``
    one root r of D mod l is fixed for all n and every difference must
    reduce to 0 under alpha -> r. This pins a single prime ideal.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .bigmath import Factorization, factorize, factorize_rational, is_prime, primes_below
from .numberfield import (
    NotIntegralAtPrime,
    QuadFieldElem,
    ResidueEmbedding,
    embeddings,
    norm,
    rational_residue,
    reduce,
)
from .qseries import QSeries, delta_qexp, eisenstein_level1, eisenstein_level1_unit

__all__ = [
    "SturmBound",
    "CongruenceRow",
    "CongruenceReport",
    "NormRow",
    "InsufficientPrecision",
    "gamma0_index",
    "sturm_bound",
    "verify_congruence",
    "norm_difference_table",
    "Level1Report",
    "verify_level1",
]

RATIONAL_NORM_NOTE = (
    "difference is rational: its norm from Q(alpha) is its square; "
    "a table listing the value itself shows the element, not the norm"
)


class InsufficientPrecision(ValueError):
    pass


def gamma0_index(N: int) -> int:
    """[SL2(Z) : Gamma_0(N)] = N * prod_{q | N} (1 + 1/q)."""
    if N < 1:
        raise ValueError("level must be positive")
    index = Fraction(N)
    for q in factorize(N).primes:
        index *= Fraction(q + 1, q)
    return int(index)


@dataclass(frozen=True)
class SturmBound:
    weight: int
    level: int
    index: int
    bound: Fraction
    cutoff: int


def sturm_bound(k: int, N: int) -> SturmBound:
    """k * index / 12, and the last coefficient index we check (floor of it).

    Checking 0..floor(bound) is one more index than strictly needed when
    the bound is an integer.
    """
    if k < 1:
        raise ValueError("weight must be positive")
    index = gamma0_index(N)
    bound = Fraction(k * index, 12)
    return SturmBound(k, N, index, bound, bound.numerator // bound.denominator)


def _divisible(x: Fraction, ell: int) -> bool:
    if x.denominator % ell == 0:
        raise NotIntegralAtPrime(f"{x} has {ell} in its denominator")
    return x.numerator % ell == 0


def _norm_of(diff) -> Fraction:
    return norm(diff) if isinstance(diff, QuadFieldElem) else Fraction(diff) ** 2


def _field_discriminant(*series: QSeries) -> int | None:
    for s in series:
        for c in s.coefficients:
            if isinstance(c, QuadFieldElem):
                return c.D
    return None


@dataclass(frozen=True)
class NormRow:
    n: int
    difference: object
    norm: Fraction
    factorization: Factorization | None
    flagged: bool = False


def norm_difference_table(f: QSeries, g: QSeries, terms: int) -> list[NormRow]:
    """Factorized N(a_n(f) - a_n(g)) for n < terms.

    Rational differences are normed as x^2; at n = 0 such rows carry a flag
    (see RATIONAL_NORM_NOTE).
    """
    if min(f.precision, g.precision) < terms:
        raise InsufficientPrecision(f"need {terms} coefficients")
    in_field = _field_discriminant(f, g) is not None
    rows = []
    for n in range(terms):
        diff = f[n] - g[n]
        nm = _norm_of(diff)
        rational = not isinstance(diff, QuadFieldElem) or diff.is_rational
        rows.append(
            NormRow(
                n=n,
                difference=diff,
                norm=nm,
                factorization=factorize_rational(nm) if nm else None,
                flagged=in_field and n == 0 and rational and nm != 0,
            )
        )
    return rows


@dataclass(frozen=True)
class CongruenceRow:
    n: int
    difference: object
    checked: bool
    passed: bool
    norm: Fraction | None = None
    factorization: Factorization | None = None
    residue: int | None = None
    note: str = ""


@dataclass(frozen=True)
class CongruenceReport:
    prime: int
    mode: Literal["norm", "embed"]
    root: int | None
    sturm: SturmBound
    rows: tuple[CongruenceRow, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        """Verdict over the Sturm range 0..cutoff."""
        return all(r.passed for r in self.rows if r.checked)

    @property
    def all_rows_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def checked_count(self) -> int:
        return sum(r.checked for r in self.rows)


def _norm_rows(diffs, ell, cutoff, flag_rational):
    rows = []
    for n, diff in enumerate(diffs):
        nm = _norm_of(diff)
        rational = not isinstance(diff, QuadFieldElem) or diff.is_rational
        flagged = flag_rational and n == 0 and rational and nm != 0
        rows.append(
            CongruenceRow(
                n=n,
                difference=diff,
                checked=n <= cutoff,
                passed=nm == 0 or _divisible(nm, ell),
                norm=nm,
                factorization=factorize_rational(nm) if nm else None,
                note=RATIONAL_NORM_NOTE if flagged else "",
            )
        )
    return rows


def _embed_rows(diffs, emb: ResidueEmbedding | None, ell, cutoff):
    rows = []
    for n, diff in enumerate(diffs):
        residue = reduce(diff, emb) if emb is not None else rational_residue(diff, ell)
        rows.append(
            CongruenceRow(n=n, difference=diff, checked=n <= cutoff, passed=residue == 0, residue=residue)
        )
    return rows


def verify_congruence(
    f: QSeries,
    g: QSeries,
    ell: int,
    mode: Literal["norm", "embed"] = "embed",
    *,
    terms: int | None = None,
) -> CongruenceReport:
    """Check f = g (mod l) on coefficients 0..cutoff of the Sturm bound.

    Rows for n < ``terms`` are reported (default: exactly the Sturm range);
    rows beyond the cutoff are informational and do not affect ``passed``.
    In embed mode both roots of D mod l are tried and the first one that
    kills every checked difference is kept; if neither does, the root with
    the longest run of vanishing rows is reported.
    """
    if not is_prime(ell):
        raise ValueError(f"l = {ell} is not prime")
    if mode not in ("norm", "embed"):
        raise ValueError(f"unknown mode {mode!r}")
    for attr in ("weight", "level", "character"):
        if getattr(f, attr) != getattr(g, attr):
            raise ValueError(
                f"series differ in {attr}: {getattr(f, attr)} vs {getattr(g, attr)}"
            )
    if f.weight is None or f.level is None:
        raise ValueError("series must carry weight and level to apply the Sturm bound")
    sb = sturm_bound(f.weight, f.level)
    needed = sb.cutoff + 1
    if terms is None:
        terms = needed
    terms = max(terms, needed)
    if min(f.precision, g.precision) < terms:
        raise InsufficientPrecision(
            f"need coefficients q^0..q^{terms - 1}, have O(q^{min(f.precision, g.precision)})"
        )
    diffs = [f[n] - g[n] for n in range(terms)]
    D = _field_discriminant(f, g)
    notes: list[str] = []

    if mode == "embed" and D is not None:
        embs = embeddings(D, ell) if ell != 2 and D % ell else ()
        if not embs:
            msg = (
                f"{ell} does not split in Q(sqrt({D})); falling back to norm mode, "
                "where per-coefficient checks do not pin one prime ideal"
            )
            warnings.warn(msg, stacklevel=2)
            notes.append(msg)
            mode = "norm"
        else:
            best = None
            for emb in embs:
                rows = _embed_rows(diffs, emb, ell, sb.cutoff)
                report = CongruenceReport(ell, "embed", emb.root, sb, tuple(rows), tuple(notes))
                if report.passed:
                    return report
                run = next((r.n for r in rows if not r.passed), len(rows))
                if best is None or run > best[0]:
                    best = (run, report)
            return best[1]

    if mode == "embed":
        rows = _embed_rows(diffs, None, ell, sb.cutoff)
        return CongruenceReport(ell, "embed", None, sb, tuple(rows), tuple(notes))

    rows = _norm_rows(diffs, ell, sb.cutoff, flag_rational=D is not None)
    if any(r.note for r in rows):
        notes.append(f"n=0: {RATIONAL_NORM_NOTE}")
    return CongruenceReport(ell, "norm", None, sb, tuple(rows), tuple(notes))


@dataclass(frozen=True)
class PrimeRow:
    p: int
    coefficient: Fraction
    target: int
    residue: int

    @property
    def passed(self) -> bool:
        return self.residue == 0


@dataclass(frozen=True)
class Level1Report:
    """A level-1 cusp form against its Eisenstein series, coefficientwise
    and at primes (a_p = p^(k-1) + 1 mod l)."""

    ell: int
    weight: int
    congruence: CongruenceReport
    prime_rows: tuple[PrimeRow, ...]

    @property
    def passed(self) -> bool:
        return self.congruence.all_rows_pass and all(r.passed for r in self.prime_rows)


LEVEL1_CASES = {691: 12, 3617: 16}


def verify_level1(which: int, terms: int = 100) -> Level1Report:
    """Delta = E_12 (mod 691), or Delta*E_4 = E_16 (mod 3617), on n <= terms."""
    if which not in LEVEL1_CASES:
        raise ValueError(f"supported primes: {sorted(LEVEL1_CASES)}")
    k = LEVEL1_CASES[which]
    size = terms + 1
    if k == 12:
        cusp = delta_qexp(size)
    else:
        cusp = delta_qexp(size) * eisenstein_level1_unit(4, size)
    eis = eisenstein_level1(k, size)
    report = verify_congruence(cusp, eis, which, "embed", terms=size)
    prime_rows = tuple(
        PrimeRow(p, cusp[p], p ** (k - 1) + 1, rational_residue(cusp[p] - p ** (k - 1) - 1, which))
        for p in primes_below(terms)
    )
    return Level1Report(which, k, report, prime_rows)
