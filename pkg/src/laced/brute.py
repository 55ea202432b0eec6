"""Exhaustive-enumeration ground truth.

Everything here walks all 2^n inputs (or all subsets / tuples of a residue
set), so it is only usable for small sizes; ``DEFAULT_LIMIT`` bounds that.
The function table is built with numpy in packed-integer order, and all
totals are converted back to Python ints before they leave the module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .core import eval_f, flip
from .counting import ResidueMultiset
from .errors import DomainError, EnumerationLimitError
from .modmath import LacedParams

DEFAULT_LIMIT = 24


@dataclass(frozen=True)
class SensitivityReport:
    n: int
    total_flips: int
    average: Fraction
    maximum: Optional[int] = None  # not available from the counting route

    def __post_init__(self):
        if self.total_flips % 2:
            raise ValueError(f"total_flips must be even, got {self.total_flips}")
        if not 0 <= self.average <= self.n:
            raise ValueError(f"average {self.average} outside [0, {self.n}]")


def _require_small(size: int, limit: int, what: str) -> None:
    if size > limit:
        raise EnumerationLimitError(
            f"{what} of size {size} exceeds the enumeration limit {limit}; use the DP method"
        )


def truth_table(params: LacedParams, limit: int = DEFAULT_LIMIT) -> np.ndarray:
    """f(X) for every packed input code 0 .. 2^n - 1, as uint8."""
    n, p = params.n, params.p
    _require_small(n, limit, "n")
    codes = np.arange(1 << n, dtype=np.int64)
    s = np.zeros(1 << n, dtype=np.int64)
    for k in range(1, n + 1):
        s += k * ((codes >> (k - 1)) & 1)
    s %= p
    s[s == 0] = p
    idx = np.where(s <= n, s, 1)
    return ((codes >> (idx - 1)) & 1).astype(np.uint8)


def _sensitivity_vector(params: LacedParams, table: np.ndarray) -> np.ndarray:
    codes = np.arange(table.size, dtype=np.int64)
    sens = np.zeros(table.size, dtype=np.int32)
    for i in range(params.n):
        sens += table != table[codes ^ (1 << i)]
    return sens


def brute_weight(params: LacedParams, limit: int = DEFAULT_LIMIT) -> int:
    return int(truth_table(params, limit).sum(dtype=np.int64))


def brute_sensitivity_at(params: LacedParams, X: Sequence[int]) -> int:
    fx = eval_f(params, X)
    return sum(fx != eval_f(params, flip(X, i)) for i in range(1, params.n + 1))


def brute_max_sensitivity(params: LacedParams, limit: int = DEFAULT_LIMIT) -> int:
    table = truth_table(params, limit)
    return int(_sensitivity_vector(params, table).max())


def brute_avg_sensitivity(params: LacedParams, limit: int = DEFAULT_LIMIT) -> SensitivityReport:
    table = truth_table(params, limit)
    sens = _sensitivity_vector(params, table)
    total = int(sens.sum(dtype=np.int64))
    return SensitivityReport(
        n=params.n,
        total_flips=total,
        average=Fraction(total, 1 << params.n),
        maximum=int(sens.max()),
    )


def brute_zero_to_one_flips(params: LacedParams, limit: int = DEFAULT_LIMIT) -> int:
    """#{(X, i) : f(X) = 0 and f(X^(i)) = 1}."""
    table = truth_table(params, limit)
    codes = np.arange(table.size, dtype=np.int64)
    total = 0
    for i in range(params.n):
        total += int(((table == 0) & (table[codes ^ (1 << i)] == 1)).sum(dtype=np.int64))
    return total


def brute_count_subsets(
    D: ResidueMultiset, b: int, k: Optional[int] = None, limit: int = DEFAULT_LIMIT
) -> int:
    """Subsets of D's positions (optionally of size k) whose sum is b mod p."""
    _require_small(len(D), limit, "|D|")
    p, elems = D.p, D.elements
    b %= p
    sizes = range(len(elems) + 1) if k is None else [k]
    total = 0
    for size in sizes:
        if not 0 <= size <= len(elems):
            continue
        for combo in itertools.combinations(elems, size):
            if sum(combo) % p == b:
                total += 1
    return total


def brute_count_distinct_tuples(
    D: ResidueMultiset, b: int, k: int, limit: int = DEFAULT_LIMIT
) -> int:
    """Ordered k-tuples of pairwise-distinct elements of D summing to b mod p."""
    _require_small(len(D), limit, "|D|")
    D.require_distinct()
    if k < 0:
        raise DomainError(f"tuple length must be >= 0, got {k}")
    p = D.p
    b %= p
    return sum(1 for t in itertools.permutations(D.elements, k) if sum(t) % p == b)
