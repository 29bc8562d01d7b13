"""Exact rational evaluation of k-Goebel sequences: the ground-truth oracle.

Terms are arbitrary-precision fractions computed by the product recursion
n*g(n) = g(n-1)*(n-1 + g(n-1)^(k-1)); an independent evaluator uses the
defining sum n*g(n) = 1 + sum_{j<n} g(j)^k.  Numerators grow doubly
exponentially (for k = 2 the 43rd term already has about 1.8e11 decimal
digits), so every entry point takes a decimal-digit budget and truncates
rather than approximating.  The budget is measured on the term's numerator
before reduction, so a run is cut at the first step whose raw product would
exceed it.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

# 30102/100000 < log10(2) < 30103/100000: bit-length digit bounds.
_LOG10_2_FLOOR = 30102
_LOG10_2_CEIL = 30103


def decimal_digits(x: int) -> int:
    """Number of decimal digits of |x| (1 for 0), without string conversion."""
    x = abs(x)
    if x < 10:
        return 1
    d = (x.bit_length() - 1) * _LOG10_2_FLOOR // 100000 + 1
    while 10 ** d <= x:
        d += 1
    return d


def _digits_at_least(bits: int) -> int:
    """Lower bound on the digit count of any integer with the given bit length."""
    if bits <= 0:
        return 1
    return (bits - 1) * _LOG10_2_FLOOR // 100000 + 1


def _budget_exceeded(x: int, cap: int) -> bool:
    """Whether |x| has more than cap decimal digits.

    Bit-length bounds decide almost every case; the exact count (which costs
    a cap-sized power of ten) is only computed inside the narrow band where
    the bounds straddle the cap.
    """
    bits = x.bit_length()
    if bits * _LOG10_2_CEIL // 100000 + 1 <= cap:
        return False
    if _digits_at_least(bits) > cap:
        return True
    return decimal_digits(x) > cap


@dataclass(frozen=True)
class DigitBudget:
    """Cap on the decimal size of unreduced numerators (default one million digits)."""

    max_decimal_digits: int = 1_000_000

    def __post_init__(self):
        if self.max_decimal_digits < 1:
            raise DomainError(
                f"digit budget must be >= 1, got {self.max_decimal_digits}"
            )

    @classmethod
    def coerce(cls, value: "DigitBudget | int | None") -> "DigitBudget":
        if value is None:
            return cls()
        if isinstance(value, DigitBudget):
            return value
        return cls(int(value))


@dataclass(frozen=True)
class ExactTerm:
    """Term g(n) as a fully reduced rational."""

    n: int
    value: Fraction


@dataclass(frozen=True)
class ExactSequenceResult:
    """A computed prefix, possibly cut short by the digit budget.

    ``truncated_at`` is the first index whose term blew the budget; the terms
    list then stops at the preceding index.
    """

    k: int
    init: int
    terms: tuple[ExactTerm, ...]
    truncated_at: int | None

    def values(self) -> list[Fraction]:
        return [t.value for t in self.terms]

    def term(self, n: int) -> ExactTerm:
        for t in self.terms:
            if t.n == n:
                return t
        raise IndexError(f"term {n} not computed")


@dataclass(frozen=True)
class NonIntegerScan:
    """Verdict of a first-non-integer scan.

    When ``index`` is None the verdict is only a lower bound: nothing
    non-integral appeared among the terms scanned, which stopped at
    ``scanned_to`` (or earlier, at ``truncated_at``, on budget exhaustion).
    """

    index: int | None
    truncated_at: int | None
    scanned_to: int


def _validate(k: int, init: int, n_max: int):
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if init < 1:
        raise DomainError(f"initial value must be >= 1, got {init}")
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")


def exact_sequence(
    k: int,
    n_max: int,
    init: int = 2,
    budget: DigitBudget | int | None = None,
) -> ExactSequenceResult:
    """Terms of the k-Goebel sequence via the product recursion.

    The canonical sequence (init == 2) starts at n = 0 with g(0) = 1; variant
    initial values define the sequence from n = 1 only, since the sum form's
    leading term is specific to the canonical seed.
    """
    _validate(k, init, n_max)
    cap = DigitBudget.coerce(budget).max_decimal_digits
    terms: list[ExactTerm] = []
    if init == 2:
        terms.append(ExactTerm(0, Fraction(1)))
    if n_max == 0:
        return ExactSequenceResult(k, init, tuple(terms), None)
    if _budget_exceeded(init, cap):
        return ExactSequenceResult(k, init, tuple(terms), 1)
    terms.append(ExactTerm(1, Fraction(init)))
    num, den = init, 1
    for n in range(2, n_max + 1):
        # Unreduced step: num*((n-1)*den^(k-1) + num^(k-1)) over n*den^k.
        # Reject on a cheap lower bound before touching the big power.
        if _digits_at_least(k * (num.bit_length() - 1) + 1) > cap:
            return ExactSequenceResult(k, init, tuple(terms), n)
        num_pow = num ** (k - 1)
        den_pow = den ** (k - 1)
        raw_num = num * ((n - 1) * den_pow + num_pow)
        if _budget_exceeded(raw_num, cap):
            return ExactSequenceResult(k, init, tuple(terms), n)
        value = Fraction(raw_num, n * den * den_pow)
        num, den = value.numerator, value.denominator
        terms.append(ExactTerm(n, value))
    return ExactSequenceResult(k, init, tuple(terms), None)


def exact_sequence_by_sum(
    k: int,
    n_max: int,
    budget: DigitBudget | int | None = None,
) -> ExactSequenceResult:
    """Terms of the canonical sequence via the defining sum; independent of
    the product-recursion evaluator and used to cross-check it."""
    _validate(k, 2, n_max)
    cap = DigitBudget.coerce(budget).max_decimal_digits
    terms = [ExactTerm(0, Fraction(1))]
    acc = Fraction(2)  # 1 + g(0)^k
    for n in range(1, n_max + 1):
        value = acc / n
        if _budget_exceeded(value.numerator, cap):
            return ExactSequenceResult(k, 2, tuple(terms), n)
        terms.append(ExactTerm(n, value))
        acc += value ** k
    return ExactSequenceResult(k, 2, tuple(terms), None)


def check_sum_product_agreement(
    k: int,
    n_max: int,
    init: int = 2,
    budget: DigitBudget | int | None = None,
) -> bool:
    """True iff the sum and product evaluators agree term-by-term up to n_max
    (over the prefix both computed within budget)."""
    if init != 2:
        raise DomainError("the sum form is only defined for the canonical init = 2")
    by_product = exact_sequence(k, n_max, init=2, budget=budget)
    by_sum = exact_sequence_by_sum(k, n_max, budget=budget)
    common = min(len(by_product.terms), len(by_sum.terms))
    return by_product.terms[:common] == by_sum.terms[:common]


def first_noninteger(
    k: int,
    init: int = 2,
    budget: DigitBudget | int | None = None,
    n_max: int = 4096,
) -> NonIntegerScan:
    """Least computed index whose term is not an integer.

    Scans at most n_max terms; stops early on budget exhaustion.  A None
    index therefore only bounds the first non-integer term from below.
    """
    seq = exact_sequence(k, n_max, init=init, budget=budget)
    for term in seq.terms:
        if term.value.denominator > 1:
            return NonIntegerScan(term.n, None, term.n)
    scanned_to = seq.terms[-1].n if seq.terms else 0
    return NonIntegerScan(None, seq.truncated_at, scanned_to)


def format_term(value: Fraction) -> str:
    """Render a rational as "num/den", or as a bare integer when whole."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
