"""Exact, desk-scale computations around Sun's 2^k + m conjecture.

Prime-pair counts, the singular-series mean over the shifts 2^k - k, the
Romanov-type constant, residue equidistribution and the constant chains that
turn these into density bounds.
"""

from .arith_core import (
    ConstantEstimate,
    FactorMap,
    f_exact,
    f_value,
    factorize,
    inverse_c2_series,
    mertens_product,
    mobius,
    mult_order,
    singular_series,
    twin_prime_constant,
)
from .constants import (
    FactorTableCache,
    conditional_chain,
    density_chain,
    mersenne_factorization,
    romanov_constant,
    romanov_main,
    romanov_tail_bound,
    romanov_terms,
    unconditional_chain,
)
from .empirics import moments, selberg_check, sun_witness, verify_sun_range
from .equidist import f_p_average, fundamental_domain_count, rho
from .phi_mean import capital_k, enumerate_index_set, pair_difference, phi
from .prime_engine import build_sieve, is_prime_u64, is_probable_prime_big, prime_count, prime_pair_count

__version__ = "0.1.0"
