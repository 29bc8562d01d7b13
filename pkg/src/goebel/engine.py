"""Search and verification layer for first-non-integer indices.

The reduced denominator of g(n) divides n!, so a prime can only obstruct
integrality at an index it divides; checking all primes p <= n_cap, each at
precision r = nu_p(n_cap!), decides integrality exactly for every index up
to n_cap.  The engine runs that sweep under iterative deepening
(n_cap = 64, 128, ... up to a hard cap), takes the minimum first failure
over primes, and packages the answer with a replayable certificate: the
failing prime, the failing index, the precision used, and a hash of the
residue trace leading to the failure.

Two primes failing at the same index are tie-broken toward the smaller
prime, so results are deterministic regardless of execution order; sweeps
over k are embarrassingly parallel.

The finite theorem check covers every k >= 2 with finitely many runs: a
tracked trace at precision r depends on k only through k mod phi(p^r) once
k > r, so the windows [2, phi(p^r) + r] for p in {2,...,17} prove the first
eighteen terms integral for all k, and the p = 19 window pins down exactly
which k first fail at index 19.
"""

import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial

from .errors import DomainError, VerificationFailed
from .exact import DigitBudget, first_noninteger
from .padic import is_prime, nu_factorial, primes_up_to, totient_prime_power
from .tracked import FAILURE, SequenceConfig, TraceResult, run

DEFAULT_HARD_CAP = 4096
_FIRST_CAP = 64

#: Primes whose tracked runs to n = 18 settle integrality of terms 1..18.
THEOREM_PRIMES = (2, 3, 5, 7, 11, 13, 17)
THEOREM_INDEX = 18


@dataclass(frozen=True)
class PrimePlan:
    """The (prime, precision) pairs that decide integrality up to n_cap."""

    n_cap: int
    entries: tuple[tuple[int, int], ...]

    @classmethod
    def for_cap(cls, n_cap: int) -> "PrimePlan":
        if n_cap < 2:
            raise DomainError(f"n_cap must be >= 2, got {n_cap}")
        entries = tuple((p, nu_factorial(p, n_cap)) for p in primes_up_to(n_cap))
        return cls(n_cap, entries)


@dataclass(frozen=True)
class Certificate:
    """Replayable witness for a first-non-integer index.

    Rerunning the tracked recursion for (k, init) at (p, r) must fail first
    at exactly index n and reproduce trace_hash.
    """

    p: int
    n: int
    r: int
    trace_hash: str

    def to_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "r": self.r, "trace_hash": self.trace_hash}

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(p=d["p"], n=d["n"], r=d["r"], trace_hash=d["trace_hash"])


@dataclass(frozen=True)
class NkResult:
    """Outcome of a first-non-integer search for one (k, init).

    ``nk`` is None when no failure occurred up to ``searched_to`` (which is
    then the hard cap); otherwise ``searched_to`` is the deepening cap under
    which the value was certified.
    """

    k: int
    init: int
    nk: int | None
    searched_to: int
    certificate: Certificate | None
    per_prime: tuple[tuple[int, int], ...] | None = None

    @property
    def found(self) -> bool:
        return self.nk is not None

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "init": self.init,
            "nk": self.nk,
            "searched_to": self.searched_to,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "per_prime": [list(pair) for pair in self.per_prime]
            if self.per_prime is not None
            else None,
        }


def _trace_hash(k: int, init: int, p: int, r: int, trace: TraceResult) -> str:
    rows = []
    for n, state in trace.rows():
        if state is FAILURE:
            rows.append(f"{n}:F")
            break
        rows.append(f"{n}:{state.a}.{state.b}")
    payload = f"k={k};init={init};p={p};r={r};" + ";".join(rows)
    return hashlib.sha256(payload.encode("ascii")).hexdigest()


def _certificate_for(k: int, init: int, p: int, n: int, n_cap: int) -> Certificate:
    r = nu_factorial(p, n_cap)
    trace = run(SequenceConfig(k, p, r, init), n, keep_trace=True)
    if trace.first_failure != n:
        raise VerificationFailed(k, p, n, "certificate replay did not fail as recorded")
    return Certificate(p=p, n=n, r=r, trace_hash=_trace_hash(k, init, p, r, trace))


def replay_certificate(k: int, cert: Certificate, init: int = 2) -> bool:
    """Recompute the certified run and confirm it fails first at cert.n with
    the recorded trace hash."""
    trace = run(SequenceConfig(k, cert.p, cert.r, init), cert.n, keep_trace=True)
    if trace.first_failure != cert.n:
        return False
    return _trace_hash(k, init, cert.p, cert.r, trace) == cert.trace_hash


def first_failure_within(
    k: int, n_cap: int, init: int = 2
) -> tuple[int, int] | None:
    """Minimum (index, prime) of any tracked failure at indices <= n_cap.

    Scans every prime <= n_cap at precision nu_p(n_cap!).  A prime cannot
    fail before index p, so primes at or beyond the best index so far are
    skipped, and each remaining run stops once it can no longer improve the
    minimum.  Ties go to the smaller prime by the ascending scan order.
    """
    best: tuple[int, int] | None = None
    for p, r in PrimePlan.for_cap(n_cap).entries:
        if best is not None and p >= best[0]:
            break
        limit = n_cap if best is None else best[0] - 1
        if limit < p:
            continue
        ff = run(SequenceConfig(k, p, r, init), limit).first_failure
        if ff is not None and (best is None or ff < best[0]):
            best = (ff, p)
    return best


def per_prime_failures(k: int, n_cap: int, init: int = 2) -> dict[int, int]:
    """First failure index per prime, for every prime <= n_cap that fails
    within n_cap (full scan, no early stopping)."""
    failures: dict[int, int] = {}
    for p, r in PrimePlan.for_cap(n_cap).entries:
        ff = run(SequenceConfig(k, p, r, init), n_cap).first_failure
        if ff is not None:
            failures[p] = ff
    return failures


def _deepening_caps(hard_cap: int) -> list[int]:
    caps = []
    cap = _FIRST_CAP
    while cap < hard_cap:
        caps.append(cap)
        cap *= 2
    caps.append(hard_cap)
    return caps


def compute_nk(
    k: int,
    init: int = 2,
    hard_cap: int = DEFAULT_HARD_CAP,
    per_prime: bool = False,
) -> NkResult:
    """First index at which the (k, init) sequence leaves the integers.

    Iteratively deepens the prime sweep; a found value never changes when
    the hard cap grows, only an exceeded cap can resolve into a value.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if init < 1:
        raise DomainError(f"initial value must be >= 1, got {init}")
    if hard_cap < 2:
        raise DomainError(f"hard_cap must be >= 2, got {hard_cap}")
    for n_cap in _deepening_caps(hard_cap):
        found = first_failure_within(k, n_cap, init)
        if found is not None:
            n, p = found
            result = NkResult(
                k=k,
                init=init,
                nk=n,
                searched_to=n_cap,
                certificate=_certificate_for(k, init, p, n, n_cap),
            )
            if per_prime:
                result = replace(
                    result,
                    per_prime=tuple(sorted(per_prime_failures(k, n_cap, init).items())),
                )
            return result
    return NkResult(k=k, init=init, nk=None, searched_to=hard_cap, certificate=None)


def variant_nk(
    k: int,
    init: int,
    hard_cap: int = DEFAULT_HARD_CAP,
    cross_check: bool = False,
) -> NkResult:
    """compute_nk for a non-standard initial value.

    With cross_check=True the verdict is compared against an exact rational
    scan (within a modest digit budget); disagreement raises, since it would
    mean one of the two evaluators is broken.
    """
    result = compute_nk(k, init=init, hard_cap=hard_cap)
    if cross_check:
        scan_to = result.nk if result.found else min(hard_cap, _FIRST_CAP)
        scan = first_noninteger(
            k, init=init, budget=DigitBudget(200_000), n_max=scan_to
        )
        if scan.index is not None and scan.index != result.nk:
            raise VerificationFailed(
                k, 0, scan.index, f"exact scan disagrees with tracked result {result.nk}"
            )
        if result.found and scan.index is None and scan.scanned_to >= result.nk:
            raise VerificationFailed(
                k, result.certificate.p, result.nk, "exact scan saw only integers"
            )
    return result


def nk_table(
    k_from: int = 2,
    k_to: int = 61,
    init: int = 2,
    hard_cap: int = DEFAULT_HARD_CAP,
    jobs: int = 1,
) -> list[NkResult]:
    """First-non-integer indices for every k in [k_from, k_to].

    With jobs > 1 the per-k searches run in separate processes; each k is
    independent and results merge by k order, so output does not depend on
    scheduling.
    """
    if k_from < 2 or k_to < k_from:
        raise DomainError(f"bad k range [{k_from}, {k_to}]")
    ks = range(k_from, k_to + 1)
    if jobs > 1:
        worker = partial(compute_nk, init=init, hard_cap=hard_cap)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, ks))
    return [compute_nk(k, init=init, hard_cap=hard_cap) for k in ks]


def periodic_representative(p: int, r: int, k: int) -> int:
    """The small exponent whose tracked traces match k's at precision r.

    Traces at (p, r) repeat in k with period phi(p^r) once k > r, so every
    k >= 2 is represented inside the window starting at max(2, r + 1) of
    length phi(p^r); k itself is returned when already inside.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    phi = totient_prime_power(p, r)
    start = max(2, r + 1)
    if start <= k < start + phi:
        return k
    return start + (k - start) % phi


@dataclass(frozen=True)
class PrimeCaseCheck:
    """One prime's slice of the finite verification: every k in [2, k_max]
    ran to the target index without failure."""

    p: int
    r: int
    k_max: int
    cases: int
    failures: int = 0

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "k_max": self.k_max,
            "cases": self.cases,
            "failures": self.failures,
        }


@dataclass(frozen=True)
class TheoremReport:
    """Structured outcome of the finite verification.

    ``failing_k`` lists the k in [2, 19] whose p = 19 run fails at index 19;
    the congruence classes mod 18 are derived from them.  ``confirmed`` is
    True exactly when the computation reproduces: minimum first-non-integer
    index 19, attained precisely for k = 6, 14 (mod 18).
    """

    prime_checks: tuple[PrimeCaseCheck, ...]
    failing_k: tuple[int, ...]
    min_nk: int | None
    classes: tuple[int, ...]
    modulus: int
    confirmed: bool
    elapsed_s: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {
            "prime_checks": [c.to_dict() for c in self.prime_checks],
            "p19_failing_k": list(self.failing_k),
            "min_nk": self.min_nk,
            "classes": list(self.classes),
            "modulus": self.modulus,
            "confirmed": self.confirmed,
            "elapsed_s": self.elapsed_s,
        }


def verify_main_theorem(progress=None) -> TheoremReport:
    """Run the complete finite check behind the minimum-index theorem.

    For each p in {2,...,17} at r = nu_p(18!), every k in [2, phi(p^r) + r]
    must reach index 18 unfailed; for p = 19 at r = 1, the k in [2, 19]
    failing at index 19 are recorded.  Any failure in the first part is a
    counterexample and raises VerificationFailed.
    """
    started = time.perf_counter()
    checks = []
    for p in THEOREM_PRIMES:
        r = nu_factorial(p, THEOREM_INDEX)
        k_max = totient_prime_power(p, r) + r
        for k in range(2, k_max + 1):
            ff = run(SequenceConfig(k, p, r), THEOREM_INDEX).first_failure
            if ff is not None:
                raise VerificationFailed(k, p, ff)
        checks.append(PrimeCaseCheck(p=p, r=r, k_max=k_max, cases=k_max - 1))
        if progress is not None:
            progress(checks[-1])
    failing = []
    for k in range(2, 20):
        ff = run(SequenceConfig(k, 19, 1), 19).first_failure
        if ff is not None and ff != 19:
            # Impossible: precision 1 cannot be consumed before index 19.
            raise VerificationFailed(k, 19, ff)
        if ff == 19:
            failing.append(k)
    classes = tuple(sorted(k % 18 for k in failing))
    modulus = totient_prime_power(19, 1)
    report = TheoremReport(
        prime_checks=tuple(checks),
        failing_k=tuple(failing),
        min_nk=19 if failing else None,
        classes=classes,
        modulus=modulus,
        confirmed=bool(failing) and classes == (6, 14) and modulus == 18,
        elapsed_s=time.perf_counter() - started,
    )
    return report


@dataclass(frozen=True)
class NSetEntry:
    """One distinct first-non-integer value, with the smallest k attaining it."""

    value: int
    smallest_k: int
    value_is_prime: bool

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "smallest_k": self.smallest_k,
            "value_is_prime": self.value_is_prime,
        }


@dataclass(frozen=True)
class NSetSummary:
    """Distinct first-non-integer values seen for k in [2, k_to]."""

    k_to: int
    hard_cap: int
    entries: tuple[NSetEntry, ...]
    exceeded: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "k_to": self.k_to,
            "hard_cap": self.hard_cap,
            "entries": [e.to_dict() for e in self.entries],
            "exceeded_cap_for_k": list(self.exceeded),
        }


def n_set_scan(
    k_to: int, hard_cap: int = DEFAULT_HARD_CAP, jobs: int = 1
) -> NSetSummary:
    """Collect the set of first-non-integer values over k in [2, k_to]."""
    if k_to < 2:
        raise DomainError(f"k_to must be >= 2, got {k_to}")
    results = nk_table(2, k_to, hard_cap=hard_cap, jobs=jobs)
    smallest: dict[int, int] = {}
    exceeded = []
    for res in results:
        if res.found:
            smallest.setdefault(res.nk, res.k)
        else:
            exceeded.append(res.k)
    entries = tuple(
        NSetEntry(value=v, smallest_k=k, value_is_prime=is_prime(v))
        for v, k in sorted(smallest.items())
    )
    return NSetSummary(
        k_to=k_to, hard_cap=hard_cap, entries=entries, exceeded=tuple(exceeded)
    )
