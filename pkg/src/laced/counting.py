"""Exact subset-sum counting modulo a prime.

Tables are plain lists of Python ints indexed by residue, so counts never
overflow. Subsets are taken over element *positions*; a multiset with a
repeated residue (or a residue 0) is counted correctly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError
from .modmath import LacedParams, is_prime


@dataclass(frozen=True)
class ResidueMultiset:
    """A sequence of residues in [0, p-1], duplicates allowed."""

    p: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"modulus must be prime, got {self.p}")
        elems = tuple(int(a) for a in self.elements)
        object.__setattr__(self, "elements", elems)
        bad = [a for a in elems if not 0 <= a < self.p]
        if bad:
            raise DomainError(f"residues must lie in [0, {self.p - 1}], got {bad}")

    @classmethod
    def of(cls, p: int, elements: Iterable[int], *, reduce: bool = False) -> "ResidueMultiset":
        elems = [a % p for a in elements] if reduce else list(elements)
        return cls(p, tuple(elems))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_distinct(self) -> bool:
        return len(set(self.elements)) == len(self.elements)

    def require_distinct(self) -> None:
        if not self.is_distinct():
            raise DomainError(f"residue set has repeated elements: {self.elements}")


@dataclass(frozen=True)
class SumCountTable:
    """``counts[r]`` = number of counted subsets with element sum = r (mod p)."""

    p: int
    counts: tuple[int, ...]

    def __getitem__(self, b: int) -> int:
        return self.counts[b % self.p]

    def total(self) -> int:
        return sum(self.counts)


def _add_element(counts: list[int], d: int, p: int) -> list[int]:
    # new[r] = old[r] + old[r - d]
    if d == 0:
        return [2 * c for c in counts]
    shifted = counts[-d:] + counts[:-d]
    return [a + b for a, b in zip(counts, shifted)]


def count_table(p: int, elements: Iterable[int]) -> list[int]:
    """Raw list form of :func:`count_subsets_mod_p`."""
    counts = [0] * p
    counts[0] = 1
    for d in elements:
        counts = _add_element(counts, d % p, p)
    return counts


def count_subsets_mod_p(D: ResidueMultiset) -> SumCountTable:
    return SumCountTable(D.p, tuple(count_table(D.p, D.elements)))


def count_k_subsets_mod_p(D: ResidueMultiset, k: int) -> SumCountTable:
    """Counts of size-k subsets by residue; all zero when k > |D|."""
    p = D.p
    if k < 0:
        raise DomainError(f"subset size must be >= 0, got {k}")
    if k > len(D):
        return SumCountTable(p, (0,) * p)
    # layers[j][r]: subsets of size j with sum r
    layers = [[0] * p for _ in range(k + 1)]
    layers[0][0] = 1
    for seen, d in enumerate(D.elements, start=1):
        for j in range(min(seen, k), 0, -1):
            prev, cur = layers[j - 1], layers[j]
            for r in range(p):
                if prev[r]:
                    cur[(r + d) % p] += prev[r]
    return SumCountTable(p, tuple(layers[k]))


def remove_element(counts: list[int], d: int, p: int) -> list[int]:
    """Undo one :func:`_add_element` step exactly.

    Solves g[r] + g[r - d] = h[r] around the single cycle r, r+d, r+2d, ...
    of length p. Odd p closes the cycle with g = (alternating sum) / 2.
    """
    d %= p
    if d == 0:
        return [c // 2 for c in counts]
    if p == 2:
        raise DomainError("element removal is singular modulo 2; rebuild the table instead")
    g = [0] * p
    alt = 0
    sign = 1
    r = 0
    for _ in range(p):
        alt += sign * counts[r]
        sign = -sign
        r = (r - d) % p
    g[0] = alt // 2
    r = d
    prev = g[0]
    for _ in range(p - 1):
        prev = counts[r] - prev
        g[r] = prev
        r = (r + d) % p
    return g


def laced_weight_multiset(params: LacedParams, excluded: Iterable[int] = ()) -> ResidueMultiset:
    """Residues k mod p for every coordinate k in 1..n outside ``excluded``."""
    excl = set(excluded)
    bad = [i for i in excl if not 1 <= i <= params.n]
    if bad:
        raise DomainError(f"excluded coordinates outside [1, {params.n}]: {sorted(bad)}")
    return ResidueMultiset(
        params.p, tuple(k % params.p for k in range(1, params.n + 1) if k not in excl)
    )


class LacedCounter:
    """Subset-sum tables for the laced weight set with a few coordinates removed.

    The table for the full coordinate set is built once by the forward DP;
    a table with coordinates E removed is obtained by peeling those
    coordinates off one at a time with :func:`remove_element`. Tables are
    memoized by excluded set, up to ``max_cached_size`` removed coordinates.
    """

    def __init__(self, params: LacedParams, max_cached_size: int = 2):
        self.params = params
        self.max_cached_size = max_cached_size
        self._cache: dict[frozenset[int], list[int]] = {}
        self._full = count_table(params.p, range(1, params.n + 1))

    def table(self, excluded: Iterable[int]) -> list[int]:
        key = frozenset(excluded)
        if not key:
            return self._full
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        p = self.params.p
        if p == 2:
            # n <= 2 here, direct DP is trivial
            out = count_table(p, (k for k in range(1, self.params.n + 1) if k not in key))
        else:
            last = max(key)
            out = remove_element(self.table(key - {last}), last, p)
        if len(key) <= self.max_cached_size:
            self._cache[key] = out
        return out

    def count(self, excluded: Iterable[int], residue: int) -> int:
        return self.table(excluded)[residue % self.params.p]

    def clear(self) -> None:
        self._cache.clear()
