"""Exact weight and average sensitivity of the laced function in polynomial time.

Both quantities are split by the value s = s(X) of the weighted sum. Once s
is fixed, the only bits that matter are the handful of coordinates read by
f, and the rest of X is a free subset of the remaining coordinates whose
weights must hit a known residue. Those subsets are counted by
:class:`laced.counting.LacedCounter`.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .brute import SensitivityReport
from .core import read_index
from .counting import LacedCounter
from .modmath import LacedParams, shifted_residue

log = logging.getLogger(__name__)


def weight_exact(params: LacedParams, counter: Optional[LacedCounter] = None) -> int:
    """Number of inputs X with f(X) = 1."""
    n, p = params.n, params.p
    counter = counter or LacedCounter(params)
    # s <= n: f reads x_s, so x_s = 1 and the other coordinates sum to 0
    total = sum(counter.count({s}, 0) for s in range(1, n + 1))
    # s > n: f reads x_1, so x_1 = 1 and the other coordinates sum to s - 1
    total += sum(counter.count({1}, s - 1) for s in range(n + 1, p + 1))
    return total


def _flip_cell(params: LacedParams, counter: LacedCounter, i: int, xi: int, s: int) -> int:
    """#{X : x_i = xi, s(X) = s, f(X) != f(X with bit i flipped)}."""
    p = params.p
    s_flipped = shifted_residue(s + i if xi == 0 else s - i, p)
    a = read_index(params, s)
    a_flipped = read_index(params, s_flipped)
    others = sorted({a, a_flipped} - {i})
    fixed = [i] + others
    table = counter.table(fixed)
    total = 0
    for values in itertools.product((0, 1), repeat=len(others)):
        bits = {i: xi, **dict(zip(others, values))}
        before = bits[a]
        after = 1 - xi if a_flipped == i else bits[a_flipped]
        if before == after:
            continue
        used = sum(j for j in fixed if bits[j])
        total += table[(s - used) % p]
    return total


def total_flips_exact(params: LacedParams, counter: Optional[LacedCounter] = None) -> int:
    """sum over X and i of |f(X) - f(X^(i))|, without enumerating X."""
    n, p = params.n, params.p
    counter = counter or LacedCounter(params)
    total = 0
    for i in range(1, n + 1):
        for xi in (0, 1):
            for s in range(1, p + 1):
                total += _flip_cell(params, counter, i, xi, s)
        # pair tables keyed on i are not reused by later i
        counter.clear()
    return total


def avg_sensitivity_exact(
    params: LacedParams, counter: Optional[LacedCounter] = None
) -> SensitivityReport:
    total = total_flips_exact(params, counter)
    return SensitivityReport(n=params.n, total_flips=total, average=Fraction(total, 1 << params.n))


@dataclass(frozen=True)
class AsymptoticRow:
    n: int
    p: Optional[int]
    weight: Optional[int] = None
    weight_ratio: Optional[float] = None
    sens_total: Optional[int] = None
    sens_avg: Optional[Fraction] = None
    sens_ratio: Optional[float] = None
    error: Optional[str] = None


def asymptotic_row(n: int, with_sensitivity: bool = True) -> AsymptoticRow:
    params = LacedParams.for_n(n)
    counter = LacedCounter(params)
    weight = weight_exact(params, counter)
    row = dict(n=n, p=params.p, weight=weight, weight_ratio=float(Fraction(weight, 1 << (n - 1))))
    if with_sensitivity:
        rep = avg_sensitivity_exact(params, counter)
        row.update(
            sens_total=rep.total_flips,
            sens_avg=rep.average,
            sens_ratio=float(rep.average / n),
        )
    return AsymptoticRow(**row)


def asymptotic_table(n_values: Iterable[int], with_sensitivity: bool = True) -> list[AsymptoticRow]:
    """One row per n; a failing row carries its error and the sweep continues."""
    rows = []
    for n in n_values:
        try:
            rows.append(asymptotic_row(n, with_sensitivity))
        except Exception as exc:  # noqa: BLE001 - reported per row
            log.warning("row n=%s failed: %s", n, exc)
            p = None
            try:
                p = LacedParams.for_n(n).p
            except Exception:  # noqa: BLE001
                pass
            rows.append(AsymptoticRow(n=n, p=p, error=str(exc)))
    return rows
