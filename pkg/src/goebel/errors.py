"""Exception types shared across the package."""


class GoebelError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GoebelError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NotInvertible(GoebelError, ValueError):
    """A modular inverse was requested for a non-unit."""

    def __init__(self, value: int, modulus: int):
        self.value = value
        self.modulus = modulus
        super().__init__(f"{value} is not invertible modulo {modulus}")


class PrecisionExhausted(GoebelError):
    """A tracked-residue step needed more p-adic precision than the state carries.

    Only reachable by stepping past the legal index range of a run; never
    raised for indices the initial precision covers.
    """

    def __init__(self, p: int, b: int, n: int, e: int):
        self.p = p
        self.b = b
        self.n = n
        self.e = e
        super().__init__(
            f"state holds {b} p-adic digits (p={p}) but index n={n} consumes {e}"
        )


class VerificationFailed(GoebelError):
    """The finite theorem check hit a counterexample (k, p, n)."""

    def __init__(self, k: int, p: int, n: int, detail: str = ""):
        self.k = k
        self.p = p
        self.n = n
        msg = f"counterexample at k={k}, p={p}, n={n}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
