"""Exact integer and rational substrate: binomials, primality, factorization.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

__all__ = [
    "Rational",
    "Factorization",
    "binomial",
    "is_prime",
    "factorize",
    "factorize_rational",
    "divisors",
    "primes_below",
]

Rational = Fraction

TRIAL_LIMIT = 10_000

# Deterministic Miller-Rabin witnesses for every n < 3.3 * 10**24 (> 2**64).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


@lru_cache(maxsize=None)
def _small_primes(limit: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def primes_below(n: int) -> list[int]:
    """All primes p with p < n."""
    if n <= 2:
        return []
    return list(_small_primes(n - 1))


def binomial(n: int, k: int) -> int:
    """C(n, k) for nonnegative n, k; zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial is defined here for nonnegative arguments only")
    return math.comb(n, k)


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
        if d == 13 and math.isqrt(n) ** 2 == n:
            return False
    p, q = 1, (1 - d) // 4

    k, s = n + 1, 0
    while k % 2 == 0:
        k //= 2
        s += 1

    def halve(x: int) -> int:
        return (x + n) // 2 % n if x % 2 else x // 2 % n

    # Binary ladder for U_k, V_k, Q^k modulo n.
    u, v, qk = 1, p, q % n
    for bit in bin(k)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = halve(p * u + v), halve(d * u + p * v)
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test without false positives at desk scale.

    Trial division by small primes, then Miller-Rabin with a base set that
    is deterministic below 3.3e24; larger inputs go through Baillie-PSW
    (base-2 strong test plus a strong Lucas test), for which no
    counterexample is known.
    """
    if n < 2:
        return False
    for p in _small_primes(1000):
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 1000 * 1000:
        return True
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_strong_probable_prime(n, b) for b in _MR_BASES)
    return _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)


@dataclass(frozen=True)
class Factorization:
    """Signed prime-power decomposition ``sign * prod(p**e)``.

    Exponents are positive for integers. :func:`factorize_rational` also
    produces negative exponents for primes of the denominator.
    """

    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        primes = [p for p, _ in self.factors]
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise ValueError("primes must be strictly increasing")
        if any(e == 0 for _, e in self.factors):
            raise ValueError("exponents must be nonzero")

    @property
    def value(self) -> Fraction:
        num, den = 1, 1
        for p, e in self.factors:
            if e > 0:
                num *= p**e
            else:
                den *= p ** (-e)
        return Fraction(self.sign * num, den)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def render(self, sep: str = "·") -> str:
        """``-1·2^3·5`` style; a unit renders as ``1`` or ``-1``."""
        parts = [str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors]
        if self.sign < 0:
            parts.insert(0, "-1")
        return sep.join(parts) if parts else str(self.sign)

    def __str__(self) -> str:
        return self.render()


def _brent_rho(n: int, c: int) -> int:
    """One Pollard-Brent run with x -> x^2 + c from the fixed start 2.

    Returns a divisor of n, possibly n itself when the cycle closes.
    """
    y, r, q, g = 2, 1, 1, 1
    m = 128
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g


def _split(n: int) -> int:
    """A nontrivial divisor of the composite n (odd, no small factors)."""
    r = math.isqrt(n)
    if r * r == n:
        return r
    c = 1
    while True:
        d = _brent_rho(n, c)
        if 1 < d < n:
            return d
        c += 1


def _large_prime_factors(n: int) -> Iterator[int]:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            yield m
            continue
        d = _split(m)
        stack.extend((d, m // d))


def factorize(n: int) -> Factorization:
    """Factor a nonzero integer.

    Trial division up to 10**4, then Pollard-Brent rho with a fixed
    polynomial schedule, so the result never depends on randomness.

    >>> str(factorize(804))
    '2^2·3·67'
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    n = abs(n)
    counts: dict[int, int] = {}
    for p in _small_primes(TRIAL_LIMIT):
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    if n > 1:
        if n <= TRIAL_LIMIT * TRIAL_LIMIT:
            counts[n] = counts.get(n, 0) + 1
        else:
            for p in _large_prime_factors(n):
                counts[p] = counts.get(p, 0) + 1
    return Factorization(sign, tuple(sorted(counts.items())))


def factorize_rational(x: Fraction | int) -> Factorization:
    """Factor a nonzero rational; denominator primes get negative exponents."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("cannot factor 0")
    num = factorize(x.numerator)
    den = factorize(x.denominator)
    merged = dict(num.factors)
    for p, e in den.factors:
        merged[p] = -e
    return Factorization(num.sign, tuple(sorted(merged.items())))


def divisors(n: int) -> list[int]:
    """Positive divisors of n >= 1 in increasing order."""
    if n < 1:
        raise ValueError("divisors needs a positive integer")
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)
