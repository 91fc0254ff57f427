"""Numerator scans for candidate congruence primes.

A candidate is a prime l dividing the relevant numerator with
l > 2m + 1 (zeta) or l > max(p, 2m + 1) (quadratic character mod p).
Primes at or below the threshold are explained by Clausen-von Staudt and
the factorial in the special-value formula.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

from .bernoulli import zeta_ratio
from .bigmath import Factorization, factorize
from .dirichlet import carlitz_integer, quad_character

__all__ = ["CandidateReport", "zeta_candidates", "dirichlet_candidates", "scan_range"]


@dataclass(frozen=True)
class CandidateReport:
    source: Literal["zeta", "dirichlet"]
    modulus: int | None
    two_m: int
    numerator: int
    factorization: Factorization
    threshold: int
    candidates: tuple[int, ...]


def _report(source, modulus, two_m, numerator, threshold) -> CandidateReport:
    fac = factorize(numerator)
    return CandidateReport(
        source=source,
        modulus=modulus,
        two_m=two_m,
        numerator=numerator,
        factorization=fac,
        threshold=threshold,
        candidates=tuple(p for p in fac.primes if p > threshold),
    )


def zeta_candidates(two_m: int) -> CandidateReport:
    """Scan the numerator of zeta(2m)/pi^(2m)."""
    return _report("zeta", None, two_m, zeta_ratio(two_m).numerator, two_m + 1)


def dirichlet_candidates(p: int, two_m: int) -> CandidateReport:
    """Scan p * B_{2m,chi} for the quadratic character mod p."""
    chi = quad_character(p)
    return _report("dirichlet", p, two_m, carlitz_integer(chi, two_m), max(p, two_m + 1))


def scan_range(
    p: int | None, two_m_max: int, *, workers: int = 1
) -> list[CandidateReport]:
    """One report per even index 2..two_m_max, ascending.

    ``p=None`` scans zeta values instead of L-values. With ``workers > 1``
    the indices are evaluated on a thread pool; output order is unaffected.
    """
    if two_m_max < 2:
        raise ValueError("two_m_max must be >= 2")
    indices = range(2, two_m_max + 1, 2)
    if p is None:
        job = zeta_candidates
    else:
        quad_character(p)  # fail fast on a bad modulus

        def job(two_m: int) -> CandidateReport:
            return dirichlet_candidates(p, two_m)

    if workers <= 1:
        return [job(i) for i in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, indices))
