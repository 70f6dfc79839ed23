"""Quadratic character sums over fundamental discriminants: exact S_d(x)
scans, mean values against their main terms, three resonator constructions
with exact moment ratios, Gal-type GCD sums, and smooth-number counts.
"""

from .arith import (
    Discriminant,
    SmoothnessParams,
    SquarefreeDecomposition,
    divisor_count,
    enumerate_fundamental,
    enumerate_smooth,
    error_factors,
    factorize,
    is_fundamental,
    kronecker,
    largest_prime_factor,
    primes_up_to,
    psi_count,
    squarefree_decompose,
)
from .charsums import (
    CharSumProfile,
    EmptyWindowError,
    MaxSearchResult,
    char_sum,
    char_sum_prefix,
    delta_max,
    pv_baseline,
)
from .gcdsum import GcdSet, construct_extremal_set, gcd_sum, gcd_sum_reference
from .meanvalues import (
    MeanValueReport,
    mean_value_main_term,
    mean_value_report,
    mean_value_sum,
    mean_value_window_sum,
)
from .resonance import (
    LongResonator,
    MediumResonator,
    RatioReport,
    ResonatorSpec,
    ShortChainReport,
    ShortResonator,
    build_resonator,
    lemma_dd_ratio,
    moment_ratio,
    resonator_value,
    short_chain_bound,
)

__version__ = "0.1.0"
