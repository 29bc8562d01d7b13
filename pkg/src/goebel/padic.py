"""Number-theoretic primitives over Python's arbitrary-precision integers.

Everything here is pure and exact: valuations, Legendre's factorial
valuation, modular exponentiation/inversion for prime-power moduli, a prime
sieve, and totients of prime powers.  No fixed-width arithmetic anywhere.

The modulus 1 (p^0) is a legal "trivial ring" everywhere; its unique
residue is canonicalized to 0, and multiplication by an inverse in it is
the identity.
"""

from dataclasses import dataclass

from .errors import DomainError, NotInvertible


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (intended for n < 10^10)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def nu(p: int, n: int) -> int:
    """Exponent of the largest power of the prime p dividing n.

    >>> nu(7, 49)
    2
    >>> nu(2, 96)
    5
    """
    if n == 0:
        raise DomainError("nu(p, 0) is infinite")
    if n < 0 or p < 2:
        raise DomainError(f"nu expects n >= 1 and p >= 2, got p={p}, n={n}")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def nu_factorial(p: int, n: int) -> int:
    """Exponent of the largest power of the prime p dividing n!.

    Computed by Legendre's closed form sum(n // p^i for i >= 1).

    >>> nu_factorial(7, 18)
    2
    >>> nu_factorial(2, 18)
    16
    """
    if n < 0 or p < 2:
        raise DomainError(f"nu_factorial expects n >= 0 and p >= 2, got p={p}, n={n}")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def mod_pow(a: int, e: int, m: int) -> int:
    """a^e mod m with a, e >= 0 and m >= 1; returns 0 when m == 1."""
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    if a < 0 or e < 0:
        raise DomainError(f"mod_pow expects a, e >= 0, got a={a}, e={e}")
    return pow(a, e, m)


def mod_inverse(u: int, m: int) -> int:
    """The v in [0, m) with u*v == 1 (mod m); 0 for the trivial modulus m == 1."""
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    if u < 1:
        raise DomainError(f"mod_inverse expects u >= 1, got {u}")
    if m == 1:
        return 0
    try:
        return pow(u, -1, m)
    except ValueError:
        raise NotInvertible(u, m) from None


def totient_prime_power(p: int, r: int) -> int:
    """Euler's totient of p^r for prime p and r >= 1: p^(r-1) * (p - 1)."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if r < 1:
        raise DomainError(f"totient of p^r needs r >= 1, got r={r}")
    return p ** (r - 1) * (p - 1)


def primes_up_to(n: int) -> list[int]:
    """Ascending list of all primes <= n (empty for n < 2), by sieve.

    >>> primes_up_to(17)
    [2, 3, 5, 7, 11, 13, 17]
    """
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, n + 1) if sieve[i]]


@dataclass(frozen=True)
class PrimePower:
    """A modulus p^r with p prime and r >= 0 (r == 0 is the trivial modulus 1)."""

    p: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if self.r < 0:
            raise DomainError(f"exponent must be >= 0, got {self.r}")

    @property
    def modulus(self) -> int:
        return self.p ** self.r

    def totient(self) -> int:
        return totient_prime_power(self.p, self.r)
