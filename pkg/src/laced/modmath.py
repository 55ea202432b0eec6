"""Prime selection, residue normalization and factorial-type arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "LacedParams",
    "is_prime",
    "least_prime_geq",
    "shifted_residue",
    "falling_factorial",
    "generalized_binomial",
]


def is_prime(m: int) -> bool:
    """Deterministic trial division; intended for m up to roughly 10**7."""
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0 or m % 3 == 0:
        return False
    d = 5
    while d * d <= m:
        if m % d == 0 or m % (d + 2) == 0:
            return False
        d += 6
    return True


def least_prime_geq(n: int) -> int:
    """Return the smallest prime p with p >= n."""
    if n < 1:
        raise DomainError(f"least_prime_geq requires n >= 1, got {n}")
    m = max(n, 2)
    while not is_prime(m):
        m += 1
    return m


def shifted_residue(v: int, p: int) -> int:
    """Reduce v modulo p into the range [1, p] (residue 0 becomes p)."""
    r = v % p
    return p if r == 0 else r


def falling_factorial(x, k: int):
    """(x)_k = x (x-1) ... (x-k+1). Exact when x is an int."""
    if k < 0:
        raise DomainError(f"falling factorial needs k >= 0, got {k}")
    out = 1
    for j in range(k):
        out *= x - j
    return out


def generalized_binomial(x, k: int):
    """(x+k-1)_k / k!, the number of k-multisets drawn from x kinds.

    Integer ``x`` gives an exact int (the product of k consecutive integers is
    always divisible by k!); a real ``x`` gives a float.
    """
    num = falling_factorial(x + k - 1, k)
    if isinstance(x, int):
        return num // math.factorial(k)
    return num / math.factorial(k)


@dataclass(frozen=True)
class LacedParams:
    """The pair (n, p) fixing one laced Boolean function.

    ``p`` must be the least prime that is >= ``n``; use :meth:`for_n` unless
    you already have both numbers.
    """

    n: int
    p: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        expected = least_prime_geq(self.n)
        if self.p != expected:
            raise DomainError(
                f"p must be the least prime >= n (n={self.n}, expected {expected}, got {self.p})"
            )

    @classmethod
    def for_n(cls, n: int) -> "LacedParams":
        if not isinstance(n, int) or isinstance(n, bool):
            raise DomainError(f"n must be an integer, got {n!r}")
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
        return cls(n, least_prime_geq(n))
