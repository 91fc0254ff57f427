"""Bernoulli numbers, Bernoulli polynomials and the rational zeta ratios.

Convention: B_m are the coefficients of t*e^t/(e^t - 1), so B_1 = +1/2.
Even-index values agree with the other common convention.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

__all__ = [
    "BernoulliPolynomial",
    "bernoulli_number",
    "bernoulli_numbers",
    "bernoulli_polynomial",
    "zeta_ratio",
]

_memo: list[Fraction] = [Fraction(1)]
_memo_lock = threading.Lock()


def bernoulli_numbers(m: int) -> list[Fraction]:
    """B_0, ..., B_m in one pass of the recursion sum_{j<=m} C(m+1, j) B_j = m + 1."""
    if m < 0:
        raise ValueError("index must be nonnegative")
    with _memo_lock:
        for n in range(len(_memo), m + 1):
            s = sum(comb(n + 1, j) * _memo[j] for j in range(n))
            _memo.append((n + 1 - s) / (n + 1))
        return _memo[: m + 1]


def bernoulli_number(m: int) -> Fraction:
    """B_m with B_1 = +1/2.

    >>> bernoulli_number(12)
    Fraction(-691, 2730)
    """
    return bernoulli_numbers(m)[m]


@dataclass(frozen=True)
class BernoulliPolynomial:
    """B_n(x); ``coefficients[i]`` is the coefficient of x**i."""

    degree: int
    coefficients: tuple[Fraction, ...]

    def __call__(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def bernoulli_polynomial(n: int) -> BernoulliPolynomial:
    """B_n(x) = sum_j (-1)^j C(n, j) B_j x^(n-j).

    With B_1 = +1/2 the sign factor yields the standard Bernoulli
    polynomial, e.g. B_1(x) = x - 1/2.
    """
    bs = bernoulli_numbers(n)
    coeffs = [Fraction(0)] * (n + 1)
    for j in range(n + 1):
        coeffs[n - j] = (-1) ** j * comb(n, j) * bs[j]
    return BernoulliPolynomial(n, tuple(coeffs))


def zeta_ratio(two_m: int) -> Fraction:
    """zeta(2m) / pi^(2m) as an exact positive rational (Euler)."""
    if two_m < 2 or two_m % 2:
        raise ValueError(f"zeta_ratio needs an even argument >= 2, got {two_m}")
    m = two_m // 2
    return (-1) ** (m - 1) * Fraction(2**two_m, 2 * factorial(two_m)) * bernoulli_number(two_m)
