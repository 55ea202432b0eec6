"""Distinct-coordinate sieve over cycle types, character sums and bias bounds.

Two backends count ordered k-tuples of pairwise-distinct elements of D with
a prescribed sum mod p:

* :func:`sieve_distinct_count` is exact. It runs the signed sum over cycle
  types, evaluating each collapsed count by cyclic convolution over Z_p.
* :func:`character_sieve_count` expands the same count in additive
  characters and evaluates it in complex floating point. It exists to check
  the character-sum derivation numerically, not to be trusted on its own.

Floating-point tolerances used by this package live here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator

import numpy as np

from .counting import ResidueMultiset, count_k_subsets_mod_p
from .errors import DomainError, NumericalFaultError
from .modmath import falling_factorial, generalized_binomial

CHAR_SUM_ATOL = 1e-9  # one character sum
ASSEMBLED_RTOL = 1e-6  # relative to (|D|)_k, for a full character expansion
BOUND_SLACK = 1e-6  # on the right side of the bias bound, which uses a float bias
MAX_TYPE_K = 40


@dataclass(frozen=True)
class PermutationType:
    """Cycle type (c_1, ..., c_k) of a permutation of k points."""

    k: int
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.c) != self.k:
            raise DomainError(f"cycle vector must have length k={self.k}, got {len(self.c)}")
        if any(ci < 0 for ci in self.c):
            raise DomainError(f"cycle counts must be non-negative: {self.c}")
        if sum(i * ci for i, ci in enumerate(self.c, start=1)) != self.k:
            raise DomainError(f"cycle vector {self.c} does not describe a permutation of {self.k}")

    @classmethod
    def from_parts(cls, parts, k: int | None = None) -> "PermutationType":
        parts = list(parts)
        k = sum(parts) if k is None else k
        c = [0] * k
        for part in parts:
            c[part - 1] += 1
        return cls(k, tuple(c))

    @property
    def length(self) -> int:
        """Number of cycles, fixed points included."""
        return sum(self.c)

    @property
    def sign(self) -> int:
        return -1 if (self.k - self.length) % 2 else 1

    @cached_property
    def class_size(self) -> int:
        denom = 1
        for i, ci in enumerate(self.c, start=1):
            denom *= i**ci * math.factorial(ci)
        size, rem = divmod(math.factorial(self.k), denom)
        assert rem == 0, "class size formula must divide exactly"
        return size

    def parts(self) -> list[int]:
        return [i for i in range(self.k, 0, -1) for _ in range(self.c[i - 1])]

    def __str__(self):
        return "(" + ",".join(map(str, self.parts())) + ")"


def _partitions(k: int, largest: int) -> Iterator[list[int]]:
    if k == 0:
        yield []
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield [first] + rest


def enumerate_types(k: int) -> list[PermutationType]:
    """All cycle types of S_k, largest parts first (e.g. (3), (2,1), (1,1,1))."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if k > MAX_TYPE_K:
        raise DomainError(f"k={k} exceeds the partition enumeration cap {MAX_TYPE_K}")
    return [PermutationType.from_parts(parts, k) for parts in _partitions(k, k)]


def type_count(t: PermutationType) -> int:
    return t.class_size


def cycle_index_identity_check(k: int, q: int) -> tuple[int, int]:
    """Evaluate both sides of sum_c N(c) q^(sum c_i) = (q+k-1)_k exactly."""
    if q < 0:
        raise DomainError(f"q must be >= 0, got {q}")
    lhs = sum(t.class_size * q**t.length for t in enumerate_types(k))
    return lhs, falling_factorial(q + k - 1, k)


def _cyclic_convolve(u: list[int], v: list[int], p: int) -> list[int]:
    out = [0] * p
    for r, ur in enumerate(u):
        if ur:
            for s, vs in enumerate(v):
                if vs:
                    out[(r + s) % p] += ur * vs
    return out


def _collapsed_vector(t: PermutationType, D: ResidueMultiset) -> list[int]:
    """Entry r: assignments of one element of D per cycle with sum(len * y) = r."""
    p = D.p
    acc = [0] * p
    acc[0] = 1
    for i, ci in enumerate(t.c, start=1):
        if not ci:
            continue
        u = [0] * p
        for a in D.elements:
            u[(i * a) % p] += 1
        for _ in range(ci):
            acc = _cyclic_convolve(acc, u, p)
    return acc


def type_restricted_count(t: PermutationType, D: ResidueMultiset, b: int) -> int:
    """Number of k-tuples over D, constant on each cycle of t, summing to b."""
    D.require_distinct()
    return _collapsed_vector(t, D)[b % D.p]


def sieve_distinct_count(D: ResidueMultiset, b: int, k: int) -> int:
    """Ordered distinct k-tuples from D summing to b, by the signed type sum."""
    D.require_distinct()
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    return sum(
        t.sign * t.class_size * type_restricted_count(t, D, b) for t in enumerate_types(k)
    )


def _chi(t: int, a: int, p: int) -> complex:
    return cmath.exp(2j * math.pi * ((t * a) % p) / p)


def power_sum(D: ResidueMultiset, t: int, i: int = 1) -> complex:
    """sum over a in D of chi_t(a)^i."""
    p = D.p
    if not 0 <= t < p:
        raise DomainError(f"character index must lie in [0, {p - 1}], got {t}")
    return sum((_chi(t, i * a, p) for a in D.elements), 0j)


def _character_sum_magnitudes(D: ResidueMultiset) -> np.ndarray:
    p = D.p
    elems = np.asarray(D.elements, dtype=np.int64)
    t = np.arange(p, dtype=np.int64)
    phases = (np.outer(t, elems) % p) * (2 * np.pi / p)
    return np.abs(np.exp(1j * phases).sum(axis=1))


@dataclass(frozen=True)
class BiasReport:
    phi: float
    witness_t: int  # 0 only when p = 2 and D is empty


def fourier_bias(D: ResidueMultiset) -> BiasReport:
    """max over nontrivial characters of |sum_{a in D} chi(a)|.

    Magnitudes within CHAR_SUM_ATOL of the maximum count as ties; the
    smallest character index among them wins.
    """
    mags = _character_sum_magnitudes(D)[1:]
    if mags.size == 0:
        return BiasReport(0.0, 0)
    top = float(mags.max())
    witness = int(np.flatnonzero(mags >= top - CHAR_SUM_ATOL)[0]) + 1
    return BiasReport(max(top, 0.0), witness)


def character_sieve_count(D: ResidueMultiset, b: int, k: int) -> float:
    """Distinct-tuple count from the full additive-character expansion."""
    D.require_distinct()
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    p, n = D.p, len(D)
    types = enumerate_types(k)
    elems = np.asarray(D.elements, dtype=np.int64)
    total = complex(falling_factorial(n, k))
    for t in range(1, p):
        # power sums S_i = sum chi_t(a)^i, i = 1..k
        S = [
            np.exp(2j * np.pi * ((t * i * elems) % p) / p).sum() if n else 0j
            for i in range(1, k + 1)
        ]
        inner = 0j
        for ty in types:
            term = complex(ty.sign * ty.class_size)
            for i, ci in enumerate(ty.c, start=1):
                if ci:
                    term *= S[i - 1] ** ci
            inner += term
        total += _chi(t, -b, p) * inner
    total /= p
    scale = max(falling_factorial(n, k), 1)
    if abs(total.imag) > ASSEMBLED_RTOL * scale:
        raise NumericalFaultError(
            f"imaginary residue {total.imag:.3e} exceeds {ASSEMBLED_RTOL} * {scale}"
        )
    return total.real


@dataclass(frozen=True)
class BoundReport:
    exact_over_kfact: Fraction
    rhs: float
    phi: float
    holds: bool
    k_below_p: bool  # the bound is only guaranteed when k < p


def bias_bound(D: ResidueMultiset, b: int, k: int) -> BoundReport:
    """Compare N/k! against binom(n, k)/p - multichoose(bias, k).

    N (ordered distinct k-tuples summing to b) is taken from the size-k
    subset DP, so N/k! is the number of k-subsets with that sum. The bound
    controls every i-th power of a nontrivial character by the bias, which
    fails once i reaches p; for k >= p ``holds`` can legitimately be false.
    """
    D.require_distinct()
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    n, p = len(D), D.p
    exact = Fraction(count_k_subsets_mod_p(D, k)[b])
    phi = fourier_bias(D).phi
    rhs = math.comb(n, k) / p - generalized_binomial(float(phi), k)
    return BoundReport(exact, rhs, phi, exact >= rhs - BOUND_SLACK, k < p)


def complement_bound(p: int, c: int, k: int) -> Fraction:
    """binom(p-c, k)/p - binom(c+k-1, k), exactly.

    For k = 0 this degenerates to 1/p - 1 and for k = p it exceeds the true
    count; the formula value is returned as is.
    """
    if not 0 <= c < p:
        raise DomainError(f"need 0 <= c < p, got c={c}, p={p}")
    if not 0 <= k <= p - c:
        raise DomainError(f"need 0 <= k <= p-c, got k={k}")
    return Fraction(math.comb(p - c, k), p) - generalized_binomial(c, k)


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    ratio: float
    phi: float


def is_smooth(D: ResidueMultiset, ambient_size: int, constant: float = 1.0) -> SmoothnessReport:
    """Test bias <= constant * sqrt(|D| log ambient_size)."""
    if len(D) < 1 or ambient_size < len(D):
        raise DomainError(f"need ambient_size >= |D| >= 1, got {ambient_size}, {len(D)}")
    if ambient_size < 2:
        raise DomainError("ambient_size must be >= 2 so that log(ambient_size) > 0")
    phi = fourier_bias(D).phi
    ratio = phi / math.sqrt(len(D) * math.log(ambient_size))
    return SmoothnessReport(ratio <= constant, ratio, phi)
