"""Quadratic Dirichlet characters and generalized Bernoulli numbers B_{n,chi}.

Two independent routes compute B_{n,chi}: evaluation of Bernoulli
polynomials at a/p, and the bottom-up recursion over twisted power sums.
:func:`gen_bernoulli` runs both and refuses to answer if they differ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from types import MappingProxyType
from typing import Literal, Mapping

from .bernoulli import bernoulli_polynomial
from .bigmath import is_prime

__all__ = [
    "QuadCharacter",
    "GenBernoulliTable",
    "MethodDisagreement",
    "NonIntegralError",
    "quad_character",
    "power_sum",
    "gen_bernoulli_via_polynomials",
    "gen_bernoulli_via_recursion",
    "gen_bernoulli",
    "cross_checked_table",
    "carlitz_integer",
    "leopoldt_ratio",
]


class MethodDisagreement(ArithmeticError):
    """The two B_{n,chi} routes disagree; always an implementation bug."""


class NonIntegralError(ArithmeticError):
    """A value that must be an integer came out fractional."""


@dataclass(frozen=True)
class QuadCharacter:
    """The Legendre symbol (./p) as a Dirichlet character mod p."""

    modulus: int
    values: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.values[a % self.modulus]

    @property
    def is_even(self) -> bool:
        return self(-1) == 1

    def __repr__(self) -> str:
        return f"QuadCharacter({self.modulus})"


def quad_character(p: int) -> QuadCharacter:
    """Legendre-symbol character mod an odd prime p, via Euler's criterion."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    half = (p - 1) // 2
    values = [0]
    for a in range(1, p):
        r = pow(a, half, p)
        values.append(-1 if r == p - 1 else r)
    return QuadCharacter(p, tuple(values))


def _require_even_character(chi: QuadCharacter) -> None:
    if chi.modulus % 4 != 1:
        raise ValueError(f"needs p = 1 (mod 4), got p = {chi.modulus}")


def power_sum(chi: QuadCharacter, n: int) -> int:
    """S_chi(n) = sum_{a=1}^{p-1} chi(a) a^n."""
    return sum(chi(a) * a**n for a in range(1, chi.modulus))


def gen_bernoulli_via_polynomials(chi: QuadCharacter, n: int) -> Fraction:
    """B_{n,chi} = p^(n-1) sum_a chi(a) B_n(a/p); chi(p) = 0 drops a = p."""
    p = chi.modulus
    poly = bernoulli_polynomial(n)
    total = sum((chi(a) * poly(Fraction(a, p)) for a in range(1, p)), Fraction(0))
    return total * Fraction(p) ** (n - 1)


@dataclass(frozen=True)
class GenBernoulliTable:
    modulus: int
    entries: Mapping[int, Fraction]
    method: Literal["polynomial", "recursion", "cross-checked"]

    def __getitem__(self, n: int) -> Fraction:
        return self.entries[n]


def gen_bernoulli_via_recursion(chi: QuadCharacter, max_two_m: int) -> GenBernoulliTable:
    """B_{2,chi}, ..., B_{max_two_m,chi} from the twisted power-sum recursion."""
    _require_even_character(chi)
    if max_two_m < 2 or max_two_m % 2:
        raise ValueError(f"max_two_m must be even and >= 2, got {max_two_m}")
    p = chi.modulus
    entries: dict[int, Fraction] = {2: Fraction(power_sum(chi, 2), p)}
    for m in range(2, max_two_m // 2 + 1):
        two_m = 2 * m
        correction = sum(
            comb(two_m, 2 * j + 1) * entries[2 * j + 2] / (2 * j + 2) * p ** (two_m - 2 * j - 1)
            for j in range(m - 1)
        )
        entries[two_m] = (power_sum(chi, two_m) - correction) / p
    return GenBernoulliTable(p, MappingProxyType(entries), "recursion")


def gen_bernoulli(chi: QuadCharacter, n: int) -> Fraction:
    """B_{n,chi}, cross-checked.

    Even n: polynomial route against the recursion. Odd n (and n = 0): the
    polynomial route must vanish, as it does for every even character.
    """
    _require_even_character(chi)
    if n < 0:
        raise ValueError("index must be nonnegative")
    value = gen_bernoulli_via_polynomials(chi, n)
    if n == 0 or n % 2:
        if value != 0:
            raise MethodDisagreement(f"B_{n},chi = {value} for p = {chi.modulus}, expected 0")
        return value
    other = gen_bernoulli_via_recursion(chi, n)[n]
    if other != value:
        raise MethodDisagreement(
            f"B_{n},chi mod {chi.modulus}: polynomial {value} != recursion {other}"
        )
    return value


def cross_checked_table(chi: QuadCharacter, max_two_m: int) -> GenBernoulliTable:
    """Even-index table where every entry agrees between both routes."""
    table = gen_bernoulli_via_recursion(chi, max_two_m)
    for n, value in table.entries.items():
        poly = gen_bernoulli_via_polynomials(chi, n)
        if poly != value:
            raise MethodDisagreement(
                f"B_{n},chi mod {chi.modulus}: polynomial {poly} != recursion {value}"
            )
    return GenBernoulliTable(table.modulus, table.entries, "cross-checked")


def carlitz_integer(chi: QuadCharacter, two_m: int) -> int:
    """p * B_{2m,chi}, which is always an integer."""
    if two_m < 2 or two_m % 2:
        raise ValueError(f"two_m must be even and >= 2, got {two_m}")
    scaled = chi.modulus * gen_bernoulli(chi, two_m)
    if scaled.denominator != 1:
        raise NonIntegralError(f"{chi.modulus} * B_{two_m},chi = {scaled} is not an integer")
    return scaled.numerator


def leopoldt_ratio(chi: QuadCharacter, two_m: int) -> Fraction:
    """L(2m, chi) / (pi^(2m) sqrt(p)) as an exact rational."""
    if two_m < 2 or two_m % 2:
        raise ValueError(f"two_m must be even and >= 2, got {two_m}")
    m = two_m // 2
    p = chi.modulus
    return (
        (-1) ** (m - 1)
        * Fraction(1, 2)
        * Fraction(2, p) ** two_m
        * gen_bernoulli(chi, two_m)
        / factorial(two_m)
    )
