"""Numerical checks for prime-interval ratio sets and their power means.

The package is organised around one pipeline: sieve primes in an interval
(x, y], form the exact ratios p_n / (p_{n+1} - 2), take power means of those
ratios, and compare the outcome against the Mertens-type constants and
asymptotic products that predict its size.  Everything is sized for a
desk machine; hard capacity caps are enforced rather than guessed at.
"""

from .analytic import (
    EULER_GAMMA,
    AsymptoticCheck,
    ConstantsBundle,
    ProductMethod,
    compute_constants,
    derived_constants,
    estimate_C,
    estimate_M,
    lemma1_check,
    lemma2_check,
    log_t_product,
    mertens_check,
    mertens_sum,
    t_product,
    twin_product,
)
from .errors import CacheFormatError, CapacityError, EmptySetError
from .means import (
    MeanLimit,
    MeanValue,
    RatioElement,
    RatioSet,
    build_ratio_set,
    max_element,
    mean_limit,
    min_element,
    power_mean,
)
from .selftest import SelftestReport, run_selftest
from .sieve import (
    DEFAULT_SEGMENT_SIZE,
    MAX_SIEVE_LIMIT,
    GapRecord,
    IntervalPrimes,
    PrimeSeq,
    cached_primes_up_to,
    interval_primes,
    iter_prime_segments,
    load_cache,
    max_gap_up_to,
    next_prime_after,
    prime_count,
    prime_stream,
    primes_up_to,
    save_cache,
    twin_pairs_in,
)
from .verify import (
    C_RANGE,
    BetaSpec,
    CriterionReport,
    Theorem1Row,
    beta_for,
    theorem1_report,
    theorem1_scan,
    twin_criterion,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticCheck",
    "BetaSpec",
    "C_RANGE",
    "CacheFormatError",
    "CapacityError",
    "ConstantsBundle",
    "CriterionReport",
    "DEFAULT_SEGMENT_SIZE",
    "EULER_GAMMA",
    "EmptySetError",
    "GapRecord",
    "IntervalPrimes",
    "MAX_SIEVE_LIMIT",
    "MeanLimit",
    "MeanValue",
    "PrimeSeq",
    "ProductMethod",
    "RatioElement",
    "RatioSet",
    "SelftestReport",
    "Theorem1Row",
    "beta_for",
    "build_ratio_set",
    "cached_primes_up_to",
    "compute_constants",
    "derived_constants",
    "estimate_C",
    "estimate_M",
    "interval_primes",
    "iter_prime_segments",
    "lemma1_check",
    "lemma2_check",
    "load_cache",
    "log_t_product",
    "max_element",
    "max_gap_up_to",
    "mean_limit",
    "mertens_check",
    "mertens_sum",
    "min_element",
    "next_prime_after",
    "power_mean",
    "prime_count",
    "prime_stream",
    "primes_up_to",
    "run_selftest",
    "save_cache",
    "t_product",
    "theorem1_report",
    "theorem1_scan",
    "twin_criterion",
    "twin_pairs_in",
    "twin_product",
    "__version__",
]
