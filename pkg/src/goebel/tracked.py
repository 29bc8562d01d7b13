"""Tracked-precision modular evaluation of k-Goebel sequences.

A k-Goebel sequence satisfies the product recursion

    n * g(n) = g(n-1) * (n - 1 + g(n-1)^(k-1)),    g(1) = init  (2 by default).

Working modulo a prime power p^r, each division by n costs nu_p(n) digits of
p-adic precision, so after step n the state is a residue known modulo
p^(r - nu_p(n!)).  The state machine therefore carries an explicit precision
exponent b alongside the residue a.  One of two things happens at step n:

  * the forced divisibility a*(n-1 + a^(k-1)) == 0 (mod p^nu_p(n)) holds, the
    quotient is multiplied by the inverse of n/p^nu_p(n), and b drops by
    nu_p(n); or
  * it fails, which certifies that the exact term g(n) has p in its reduced
    denominator, and the state collapses to the absorbing sentinel FAILURE.

States are only defined while nu_p(n!) <= r.  Stepping past that range is a
hard PrecisionExhausted error, never a silent failure: beyond the range a
non-failing state would carry no p-integrality evidence at all.
"""

from dataclasses import dataclass

from .errors import DomainError, PrecisionExhausted
from .padic import is_prime, mod_inverse, nu, nu_factorial


class Failure:
    """Absorbing sentinel: the sequence has left the p-local integers."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "F"


#: The unique failure state.
FAILURE = Failure()


@dataclass(frozen=True)
class TrackedResidue:
    """A residue a modulo p^b with explicit precision exponent b."""

    p: int
    a: int
    b: int

    def __post_init__(self):
        if self.b < 0:
            raise DomainError(f"precision exponent must be >= 0, got {self.b}")
        if not 0 <= self.a < self.p ** self.b:
            raise DomainError(
                f"residue {self.a} out of range [0, {self.p}^{self.b})"
            )

    @property
    def modulus(self) -> int:
        return self.p ** self.b

    def __repr__(self) -> str:
        return f"{{{self.a},{self.b}}}"


#: A state is either a residue-with-precision or the failure sentinel.
State = TrackedResidue | Failure


@dataclass(frozen=True)
class SequenceConfig:
    """Parameters of one tracked run: exponent k, prime p, precision r, seed value."""

    k: int
    p: int
    r: int
    init: int = 2

    def __post_init__(self):
        if self.k < 2:
            raise DomainError(f"k must be >= 2, got {self.k}")
        if self.r < 1:
            raise DomainError(f"initial precision must be >= 1, got {self.r}")
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if self.init < 1:
            raise DomainError(f"initial value must be >= 1, got {self.init}")

    def max_index(self) -> int:
        """Largest n with nu_p(n!) <= r, i.e. the last index this run covers."""
        lo, hi = 1, (self.r + 1) * self.p  # nu_p(((r+1)p)!) >= r+1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if nu_factorial(self.p, mid) <= self.r:
                lo = mid
            else:
                hi = mid - 1
        return lo


def initial_state(cfg: SequenceConfig) -> TrackedResidue:
    """The index-1 state: init reduced modulo p^r at full precision."""
    modulus = cfg.p ** cfg.r
    return TrackedResidue(cfg.p, cfg.init % modulus, cfg.r)


def step(state: State, cfg: SequenceConfig, n: int) -> State:
    """Advance the index-(n-1) state to index n.

    Failure is absorbing.  Raises PrecisionExhausted when the state holds
    fewer than nu_p(n) digits, which can only happen if the caller stepped
    past the legal index range.
    """
    if n < 2:
        raise DomainError(f"step index must be >= 2, got {n}")
    if isinstance(state, Failure):
        return FAILURE
    if state.p != cfg.p:
        raise DomainError(f"state prime {state.p} does not match config prime {cfg.p}")
    p = cfg.p
    e = nu(p, n)
    if state.b < e:
        raise PrecisionExhausted(p, state.b, n, e)
    pb = p ** state.b
    t = state.a * (n - 1 + pow(state.a, cfg.k - 1, pb)) % pb
    pe = p ** e
    if t % pe:
        return FAILURE
    b2 = state.b - e
    if b2 == 0:
        return TrackedResidue(p, 0, 0)
    pb2 = pb // pe
    a2 = (t // pe) * mod_inverse(n // pe, pb2) % pb2
    return TrackedResidue(p, a2, b2)


@dataclass
class TraceResult:
    """Outcome of a bounded run.

    ``states`` (present only when requested) holds the state at every index
    n = 1..n_max; after a failure the remaining entries are all FAILURE.
    ``hit_zero_precision`` flags that the trace reached precision 0, after
    which non-failure carries no further integrality evidence.
    """

    cfg: SequenceConfig
    n_max: int
    final: State
    first_failure: int | None
    hit_zero_precision: bool
    states: list[State] | None = None

    def state_at(self, n: int) -> State:
        if self.states is None:
            raise ValueError("trace was not kept; rerun with keep_trace=True")
        if not 1 <= n <= self.n_max:
            raise IndexError(f"index {n} outside 1..{self.n_max}")
        return self.states[n - 1]

    def rows(self):
        """Yield (n, state) pairs for n = 1..n_max (requires a kept trace)."""
        if self.states is None:
            raise ValueError("trace was not kept; rerun with keep_trace=True")
        for i, state in enumerate(self.states, start=1):
            yield i, state


def run(cfg: SequenceConfig, n_max: int, keep_trace: bool = False) -> TraceResult:
    """Run the recursion from index 1 through n_max.

    Rejects n_max outside the legal range nu_p(n_max!) <= r up front; within
    it, precision can never be exhausted, so the loop needs no per-step
    domain checks.  Once precision hits zero no later step can fail, and the
    tail is filled with {0,0} states directly.
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    p, r = cfg.p, cfg.r
    if nu_factorial(p, n_max) > r:
        raise DomainError(
            f"n_max={n_max} needs more than r={r} digits at p={p}; "
            f"maximal legal n_max is {cfg.max_index()}"
        )
    k1 = cfg.k - 1
    pb = p ** r
    a = cfg.init % pb
    b = r
    trace: list[State] | None = [TrackedResidue(p, a, b)] if keep_trace else None
    first_failure: int | None = None
    hit_zero = False
    for n in range(2, n_max + 1):
        t = a * (n - 1 + pow(a, k1, pb)) % pb
        if n % p:
            a = t * pow(n, -1, pb) % pb
        else:
            e = 1
            m = n // p
            while m % p == 0:
                e += 1
                m //= p
            if t % (p ** e):
                first_failure = n
                break
            b -= e
            pb //= p ** e
            if b == 0:
                a = 0
                hit_zero = True
                if trace is not None:
                    trace.extend(TrackedResidue(p, 0, 0) for _ in range(n, n_max + 1))
                break
            a = (t // p ** e) * pow(m, -1, pb) % pb
        if trace is not None:
            trace.append(TrackedResidue(p, a, b))
    if first_failure is not None:
        final: State = FAILURE
        if trace is not None:
            trace.extend([FAILURE] * (n_max - first_failure + 1))
    else:
        final = TrackedResidue(p, a, b)
    return TraceResult(
        cfg=cfg,
        n_max=n_max,
        final=final,
        first_failure=first_failure,
        hit_zero_precision=hit_zero,
        states=trace,
    )


def first_failure(cfg: SequenceConfig, n_max: int) -> int | None:
    """Least n <= n_max at which the run fails, or None."""
    return run(cfg, n_max).first_failure
