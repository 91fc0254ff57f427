"""Truncated q-expansions and the modular-form builders used for congruences."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Sequence

from .bernoulli import bernoulli_number
from .bigmath import divisors
from .dirichlet import QuadCharacter, gen_bernoulli

__all__ = [
    "QSeries",
    "delta_qexp",
    "eisenstein_level1",
    "eisenstein_level1_unit",
    "eisenstein_chi",
    "series_sub",
    "series_mul",
]


def _merge(x, y):
    return x if x == y else None


@dataclass(frozen=True)
class QSeries:
    """sum_{n < precision} c_n q^n, with O(q^precision) implied.

    Coefficients are Fractions or :class:`QuadFieldElem`. ``weight``,
    ``level`` and ``character`` (the modulus of a quadratic nebentypus, or
    None for trivial) only label the series.
    """

    coefficients: tuple[Any, ...]
    weight: int | None = None
    level: int | None = None
    character: int | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a q-series needs at least one coefficient")
        coeffs = tuple(Fraction(c) if isinstance(c, int) else c for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def precision(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, n: int):
        if not 0 <= n < self.precision:
            raise IndexError(f"coefficient q^{n} is beyond precision O(q^{self.precision})")
        return self.coefficients[n]

    def __len__(self) -> int:
        return self.precision

    def truncate(self, precision: int) -> QSeries:
        return QSeries(
            self.coefficients[:precision], self.weight, self.level, self.character, self.name
        )

    def _binary(self, other: QSeries, op) -> QSeries:
        n = min(self.precision, other.precision)
        try:
            coeffs = tuple(op(a, b) for a, b in zip(self.coefficients[:n], other.coefficients[:n]))
        except (TypeError, ValueError) as exc:
            raise TypeError(f"incompatible coefficient domains: {exc}") from exc
        return QSeries(
            coeffs,
            _merge(self.weight, other.weight),
            _merge(self.level, other.level),
            _merge(self.character, other.character),
        )

    def __add__(self, other: QSeries) -> QSeries:
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other: QSeries) -> QSeries:
        return self._binary(other, lambda a, b: a - b)

    def __neg__(self) -> QSeries:
        return QSeries(tuple(-c for c in self.coefficients), self.weight, self.level, self.character)

    def scale(self, c) -> QSeries:
        return QSeries(
            tuple(c * a for a in self.coefficients), self.weight, self.level, self.character
        )

    def __mul__(self, other: QSeries) -> QSeries:
        n = min(self.precision, other.precision)
        f, g = self.coefficients, other.coefficients
        try:
            coeffs = [sum((f[i] * g[k - i] for i in range(1, k + 1)), f[0] * g[k]) for k in range(n)]
        except (TypeError, ValueError) as exc:
            raise TypeError(f"incompatible coefficient domains: {exc}") from exc
        weight = None
        if self.weight is not None and other.weight is not None:
            weight = self.weight + other.weight
        level = None
        if self.level is not None and other.level is not None:
            level = lcm(self.level, other.level)
        # Quadratic characters: chi * chi is trivial, trivial * chi is chi.
        if self.character == other.character:
            character = None
        elif self.character is None or other.character is None:
            character = self.character or other.character
        else:
            character = None
            level = None
        return QSeries(tuple(coeffs), weight, level, character)

    def __str__(self) -> str:
        out = ""
        for n, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if n == 0 else "q" if n == 1 else f"q^{n}"
            text = str(c)
            negative = text.startswith("-") and " " not in text
            if negative:
                text = text[1:]
            elif " " in text:
                text = f"({text})"
            body = mono if mono and text == "1" else f"{text}*{mono}" if mono else text
            if not out:
                out = f"-{body}" if negative else body
            else:
                out += f" - {body}" if negative else f" + {body}"
        return f"{out or '0'} + O(q^{self.precision})"


def series_sub(f: QSeries, g: QSeries) -> QSeries:
    return f - g


def series_mul(f: QSeries, g: QSeries) -> QSeries:
    return f * g


def _poly_mul(f: Sequence[int], g: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for i, a in enumerate(f[:n]):
        if a:
            for j, b in enumerate(g[: n - i]):
                out[i + j] += a * b
    return out


def delta_qexp(terms: int) -> QSeries:
    """Delta = q * prod_{n>=1} (1 - q^n)^24, coefficients tau(0..terms-1)."""
    if terms < 2:
        raise ValueError("delta_qexp needs terms >= 2")
    width = terms - 1  # the leading q shifts everything by one
    euler = [1] + [0] * (width - 1)
    for n in range(1, width):
        factor = [0] * width
        factor[0], factor[n] = 1, -1
        euler = _poly_mul(euler, factor, width)
    # (.)^24 as ((x^3)^2)^2)^2
    p = _poly_mul(_poly_mul(euler, euler, width), euler, width)
    for _ in range(3):
        p = _poly_mul(p, p, width)
    return QSeries(tuple([0] + p), weight=12, level=1, name="Delta")


def _sigma(n: int, power: int, chi: QuadCharacter | None = None) -> int:
    if chi is None:
        return sum(d**power for d in divisors(n))
    return sum(chi(d) * d**power for d in divisors(n))


def eisenstein_level1(k: int, terms: int) -> QSeries:
    """-B_k/(2k) + sum sigma_{k-1}(n) q^n (normalized so a_1 = 1)."""
    if k < 4 or k % 2:
        raise ValueError(f"level-1 Eisenstein weight must be even and >= 4, got {k}")
    const = -bernoulli_number(k) / (2 * k)
    coeffs = [const] + [Fraction(_sigma(n, k - 1)) for n in range(1, terms)]
    return QSeries(tuple(coeffs), weight=k, level=1, name=f"E{k}")


def eisenstein_level1_unit(k: int, terms: int) -> QSeries:
    """The level-1 Eisenstein series scaled to constant term 1 (E_4 = 1 + 240 ...)."""
    e = eisenstein_level1(k, terms)
    return e.scale(1 / e[0])


def eisenstein_chi(chi: QuadCharacter, k: int, terms: int) -> QSeries:
    """-B_{k,chi}/(2k) + sum_n (sum_{d|n} chi(d) d^(k-1)) q^n on Gamma_0(p) with nebentypus chi."""
    if k < 2 or k % 2:
        raise ValueError(f"weight must be even and >= 2, got {k}")
    const = -gen_bernoulli(chi, k) / (2 * k)
    coeffs = [const] + [Fraction(_sigma(n, k - 1, chi)) for n in range(1, terms)]
    return QSeries(
        tuple(coeffs), weight=k, level=chi.modulus, character=chi.modulus, name=f"E{k},chi{chi.modulus}"
    )
