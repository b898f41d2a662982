"""Exact verification of truncated hypergeometric supercongruences.

The package evaluates Morita's p-adic Gamma function and truncated pFq series
in residue rings Z/p^k, certifies the underlying combinatorial identities with
exact rational arithmetic, and checks a catalog of congruence statements over
ranges of primes and p-adic parameters.
"""

from .padic_core import (
    DEFAULT_MAX_MODULUS,
    IndexOutOfRange,
    ModulusContext,
    NotInvertible,
    NotPAdicInteger,
    PadicError,
    PRational,
    Residue,
    delta,
    harmonic_mod,
    has_even_residue,
    is_prime,
    least_residue,
    mod_inverse,
    reduce_rational,
    s_p,
    sieve_primes,
)
from .padic_gamma import CapExceeded, GammaEvaluator, g1, g1_of_one
from .hyperseries import (
    LowerParameterPole,
    NonUnitDenominator,
    SeriesSpec,
    pochhammer_exact,
    pochhammer_mod,
    series_2f1_half,
    series_3f2_one,
    truncated_pfq_exact,
    truncated_pfq_mod,
)
from .identities import (
    IdentityCheck,
    IdentityReport,
    OddInput,
    a_n,
    b_n,
    check_b8,
    check_b9,
    check_b17,
    check_b18,
    check_clausen_truncated,
    check_gauss_half,
    check_recurrences,
    sweep_identity,
)
from .congruences import (
    PASS,
    FAIL,
    SKIPPED,
    STATEMENTS,
    HypothesisFailed,
    ReportRecord,
    StatementChecker,
    check_c9_trace,
    check_c15,
    check_statement,
    default_parameters,
    named_rationals,
    rhs_conj,
    rhs_thm1,
    rhs_thm2,
    sample_fractions,
)

__version__ = "0.1.0"
