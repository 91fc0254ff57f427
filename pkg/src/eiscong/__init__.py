"""Exact special values of zeta and quadratic Dirichlet L-functions, and the
Eisenstein congruences their numerators predict."""

from .bernoulli import bernoulli_number, bernoulli_polynomial, zeta_ratio
from .bigmath import Factorization, binomial, factorize, is_prime
from .dirichlet import (
    carlitz_integer,
    gen_bernoulli,
    gen_bernoulli_via_polynomials,
    gen_bernoulli_via_recursion,
    leopoldt_ratio,
    power_sum,
    quad_character,
)
from .numberfield import QuadFieldElem, ResidueEmbedding, conjugate, norm, reduce, sqrt_mod
from .qseries import QSeries, delta_qexp, eisenstein_chi, eisenstein_level1
from .scan import dirichlet_candidates, scan_range, zeta_candidates
from .sturm import gamma0_index, norm_difference_table, sturm_bound, verify_congruence

__version__ = "0.1.0"
