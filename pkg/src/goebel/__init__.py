"""Exact and tracked-precision computation of k-Goebel sequences.

The package answers "when does the sequence stop being an integer?" two
ways: an exact rational oracle (bounded by a digit budget) and a
tracked-precision modular recursion whose failure states are replayable
certificates of non-integrality.  A finite verification routine proves the
minimum such index over all k >= 2 is 19, attained exactly for
k = 6, 14 (mod 18), and the results cross-check against OEIS A108394.
"""

from .engine import (
    Certificate,
    NkResult,
    NSetEntry,
    NSetSummary,
    PrimeCaseCheck,
    PrimePlan,
    TheoremReport,
    compute_nk,
    first_failure_within,
    n_set_scan,
    nk_table,
    per_prime_failures,
    periodic_representative,
    replay_certificate,
    variant_nk,
    verify_main_theorem,
)
from .errors import (
    DomainError,
    GoebelError,
    NotInvertible,
    PrecisionExhausted,
    VerificationFailed,
)
from .exact import (
    DigitBudget,
    ExactSequenceResult,
    ExactTerm,
    NonIntegerScan,
    check_sum_product_agreement,
    decimal_digits,
    exact_sequence,
    exact_sequence_by_sum,
    first_noninteger,
    format_term,
)
from .oeis import BFileEntry, CheckReport, ParseError, check_entries, load_bfile, parse_bfile, render_bfile
from .padic import (
    PrimePower,
    is_prime,
    mod_inverse,
    mod_pow,
    nu,
    nu_factorial,
    primes_up_to,
    totient_prime_power,
)
from .records import RunRecord, make_record
from .tracked import (
    FAILURE,
    Failure,
    SequenceConfig,
    TraceResult,
    TrackedResidue,
    first_failure,
    initial_state,
    run,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "BFileEntry",
    "Certificate",
    "CheckReport",
    "DigitBudget",
    "DomainError",
    "ExactSequenceResult",
    "ExactTerm",
    "FAILURE",
    "Failure",
    "GoebelError",
    "NkResult",
    "NonIntegerScan",
    "NotInvertible",
    "NSetEntry",
    "NSetSummary",
    "ParseError",
    "PrecisionExhausted",
    "PrimeCaseCheck",
    "PrimePlan",
    "PrimePower",
    "RunRecord",
    "SequenceConfig",
    "TheoremReport",
    "TraceResult",
    "TrackedResidue",
    "VerificationFailed",
    "check_entries",
    "check_sum_product_agreement",
    "compute_nk",
    "decimal_digits",
    "exact_sequence",
    "exact_sequence_by_sum",
    "first_failure",
    "first_failure_within",
    "first_noninteger",
    "format_term",
    "initial_state",
    "is_prime",
    "load_bfile",
    "make_record",
    "mod_inverse",
    "mod_pow",
    "n_set_scan",
    "nk_table",
    "nu",
    "nu_factorial",
    "parse_bfile",
    "per_prime_failures",
    "periodic_representative",
    "primes_up_to",
    "render_bfile",
    "replay_certificate",
    "run",
    "step",
    "totient_prime_power",
    "variant_nk",
    "verify_main_theorem",
]
