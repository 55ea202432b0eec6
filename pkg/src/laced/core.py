"""Pointwise evaluation of the laced (weighted-sum) Boolean function.

Coordinates are 1-based everywhere on the public surface: coordinate ``k``
carries weight ``k`` in the weighted sum. An input vector is a tuple of 0/1
ints; ``encode``/``decode`` give the packed integer form where bit ``k-1``
holds ``x_k``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DomainError
from .modmath import LacedParams, shifted_residue

Bits = tuple[int, ...]


def as_bits(X: Sequence[int]) -> Bits:
    bits = tuple(int(b) for b in X)
    if any(b not in (0, 1) for b in bits):
        raise DomainError(f"input vector must contain only 0/1, got {X!r}")
    return bits


def parse_bits(text: str) -> Bits:
    """Parse a '0'/'1' string, leftmost character is x_1."""
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise DomainError(f"bit string must be a non-empty string of 0/1 characters, got {text!r}")
    return tuple(int(ch) for ch in text)


def format_bits(X: Sequence[int]) -> str:
    return "".join(str(b) for b in X)


def encode(X: Sequence[int]) -> int:
    return sum(b << k for k, b in enumerate(X))


def decode(code: int, n: int) -> Bits:
    if not 0 <= code < 1 << n:
        raise DomainError(f"code {code} does not fit in {n} bits")
    return tuple((code >> k) & 1 for k in range(n))


def _check(params: LacedParams, X: Sequence[int]) -> Bits:
    bits = as_bits(X)
    if len(bits) != params.n:
        raise DomainError(f"input has length {len(bits)}, expected n={params.n}")
    return bits


def s_of(params: LacedParams, X: Sequence[int]) -> int:
    """Weighted sum of X reduced into [1, p]."""
    bits = _check(params, X)
    total = sum(k for k, b in enumerate(bits, start=1) if b)
    return shifted_residue(total, params.p)


def read_index(params: LacedParams, s: int) -> int:
    """Coordinate read by f once the weighted sum is known to be ``s``."""
    return s if s <= params.n else 1


def eval_f(params: LacedParams, X: Sequence[int]) -> int:
    bits = _check(params, X)
    return bits[read_index(params, s_of(params, bits)) - 1]


def flip(X: Sequence[int], i: int) -> Bits:
    """Copy of X with coordinate i (1-based) negated."""
    bits = as_bits(X)
    if not 1 <= i <= len(bits):
        raise DomainError(f"flip index {i} outside [1, {len(bits)}]")
    out = list(bits)
    out[i - 1] ^= 1
    return tuple(out)
