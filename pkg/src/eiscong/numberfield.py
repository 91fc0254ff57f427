"""Arithmetic in Q(alpha) with alpha^2 = D, plus reduction modulo split primes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

from .bigmath import is_prime

__all__ = [
    "QuadFieldElem",
    "ResidueEmbedding",
    "RamifiedPrimeError",
    "NotIntegralAtPrime",
    "norm",
    "conjugate",
    "sqrt_mod",
    "split_type",
    "embeddings",
    "reduce",
    "rational_residue",
]

Scalar = Union[int, Fraction]


class RamifiedPrimeError(ValueError):
    """l divides D, so there is no pair of distinct residue embeddings."""


class NotIntegralAtPrime(ArithmeticError):
    """A coefficient has l in its denominator; its residue is undefined."""


@dataclass(frozen=True)
class QuadFieldElem:
    """a + b*alpha with alpha^2 = D."""

    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.D >= 0 and math.isqrt(self.D) ** 2 == self.D:
            raise ValueError(f"D = {self.D} is a square; Q(alpha) would not be quadratic")

    @classmethod
    def generator(cls, D: int) -> QuadFieldElem:
        return cls(Fraction(0), Fraction(1), D)

    def _coerce(self, other: object) -> QuadFieldElem | None:
        if isinstance(other, QuadFieldElem):
            if other.D != self.D:
                raise ValueError(f"mixing Q(sqrt({self.D})) with Q(sqrt({other.D}))")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadFieldElem(Fraction(other), Fraction(0), self.D)
        return None

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __add__(self, other: object) -> QuadFieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadFieldElem(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self) -> QuadFieldElem:
        return QuadFieldElem(-self.a, -self.b, self.D)

    def __sub__(self, other: object) -> QuadFieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadFieldElem(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other: object) -> QuadFieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> QuadFieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadFieldElem(
            self.a * o.a + self.D * self.b * o.b, self.a * o.b + self.b * o.a, self.D
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> QuadFieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = norm(o)
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(alpha)")
        c = conjugate(o) * self
        return QuadFieldElem(c.a / n, c.b / n, self.D)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadFieldElem):
            return (self.a, self.b, self.D) == (other.a, other.b, other.D)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.D))

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        term = "alpha" if abs(self.b) == 1 else f"{abs(self.b)}*alpha"
        if self.a == 0:
            return f"-{term}" if self.b < 0 else term
        return f"{self.a} {'-' if self.b < 0 else '+'} {term}"


def norm(x: QuadFieldElem | Scalar) -> Fraction:
    """N(a + b*alpha) = a^2 - D*b^2. A bare rational x has norm x^2."""
    if isinstance(x, QuadFieldElem):
        return x.a * x.a - x.D * x.b * x.b
    return Fraction(x) ** 2


def conjugate(x: QuadFieldElem) -> QuadFieldElem:
    return QuadFieldElem(x.a, -x.b, x.D)


def _check_odd_prime(ell: int) -> None:
    if ell < 3 or ell % 2 == 0 or not is_prime(ell):
        raise ValueError(f"l must be an odd prime, got {ell}")


def _tonelli_shanks(n: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def split_type(D: int, ell: int) -> Literal["split", "inert", "ramified"]:
    _check_odd_prime(ell)
    if D % ell == 0:
        return "ramified"
    return "split" if pow(D % ell, (ell - 1) // 2, ell) == 1 else "inert"


def sqrt_mod(D: int, ell: int) -> tuple[int, ...]:
    """Both square roots (ascending) of D mod an odd prime l, or () if none.

    Raises :class:`RamifiedPrimeError` when l | D.
    """
    kind = split_type(D, ell)
    if kind == "ramified":
        raise RamifiedPrimeError(f"{ell} divides D = {D}")
    if kind == "inert":
        return ()
    r = _tonelli_shanks(D % ell, ell)
    return tuple(sorted((r, ell - r)))


@dataclass(frozen=True)
class ResidueEmbedding:
    """The map a + b*alpha -> a + b*r (mod l) for a fixed root r of D."""

    prime: int
    root: int
    D: int

    def __post_init__(self) -> None:
        if (self.root * self.root - self.D) % self.prime:
            raise ValueError(f"{self.root}^2 is not {self.D} mod {self.prime}")

    def __call__(self, x: QuadFieldElem | Scalar) -> int:
        return reduce(x, self)


def embeddings(D: int, ell: int) -> tuple[ResidueEmbedding, ...]:
    return tuple(ResidueEmbedding(ell, r, D) for r in sqrt_mod(D, ell))


def rational_residue(x: Fraction | int, ell: int) -> int:
    """x mod l for an l-integral rational x."""
    x = Fraction(x)
    if x.denominator % ell == 0:
        raise NotIntegralAtPrime(f"{x} has {ell} in its denominator")
    return x.numerator * pow(x.denominator, -1, ell) % ell


def reduce(x: QuadFieldElem | Scalar, emb: ResidueEmbedding) -> int:
    """Residue of an l-integral element in Z/l under the embedding."""
    ell = emb.prime
    if not isinstance(x, QuadFieldElem):
        return rational_residue(x, ell)
    if x.D != emb.D:
        raise ValueError(f"element of Q(sqrt({x.D})) reduced with an embedding for D = {emb.D}")
    return (rational_residue(x.a, ell) + rational_residue(x.b, ell) * emb.root) % ell
