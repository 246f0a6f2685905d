"""Brute-force reference for the exact lower and upper probabilities.

Deliberately naive and independent of :mod:`npi_order.multi_group`: it
rebuilds the cells from raw values, puts every middle-group mass at a
numeric point inside its cell, and evaluates the event with a literal
loop over every index tuple.  Meant for tests on small inputs only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .domain import BudgetExceeded, MultiGroupData, RationalProb

__all__ = ["OracleResult", "oracle_cells", "oracle_point", "oracle_count", "oracle_min_max"]

DEFAULT_HARD_CAP = 10**6


@dataclass(frozen=True)
class OracleResult:
    lower: RationalProb
    upper: RationalProb
    assignments_evaluated: int


def oracle_cells(data: MultiGroupData, j: int) -> list[list[tuple]]:
    """Cells ``(left, right)`` of every interval of group ``j``, from raw values."""
    own = [-math.inf, *data.groups[j].values, math.inf]
    others = sorted(v for l, g in enumerate(data.groups) if l != j for v in g.values)
    out = []
    for lo, hi in zip(own, own[1:]):
        cuts = [lo] + [v for v in others if lo < v < hi] + [hi]
        out.append(list(zip(cuts, cuts[1:])))
    return out


def oracle_point(data: MultiGroupData, j: int, cell: tuple, lower: bool) -> Fraction:
    """A point of ``cell`` for a group-``j`` mass.

    Starts from the cell midpoint (``min - 1`` / ``max + 1`` of the pooled
    data for unbounded cells) and nudges by a group-dependent amount so
    that masses of different groups sharing a cell come out in descending
    group order for the lower probability and ascending for the upper.
    """
    lo, hi = cell
    if lo == -math.inf and hi == math.inf:
        mid, width = Fraction(0), Fraction(1)
    elif lo == -math.inf:
        mid, width = hi - 1, Fraction(1)
    elif hi == math.inf:
        mid, width = lo + 1, Fraction(1)
    else:
        mid, width = (lo + hi) / 2, hi - lo
    step = width / (4 * data.q)
    return mid - j * step if lower else mid + j * step


def oracle_count(data: MultiGroupData, points: dict[int, list], lower: bool) -> int:
    """Literal indicator sum over all index tuples.

    ``points[j]`` holds the mass position of each interval of middle group
    ``j``; the first and last groups use their interval endpoints.
    """
    q = data.q
    cols = []
    for j, g in enumerate(data.groups):
        ends = [-math.inf, *g.values, math.inf]
        if j == 0:
            cols.append(ends[1:] if lower else ends[:-1])
        elif j == q - 1:
            cols.append(ends[:-1] if lower else ends[1:])
        else:
            cols.append(points[j])

    def nest(k: int, prev) -> int:
        # loop over column k, descending only while the chain still holds
        if k == q:
            return 1
        return sum(nest(k + 1, v) for v in cols[k] if prev < v)

    return sum(nest(1, v) for v in cols[0])


def oracle_min_max(data: MultiGroupData, hard_cap: int = DEFAULT_HARD_CAP) -> OracleResult:
    """Enumerate every cell choice for every middle interval.

    Raises:
        BudgetExceeded: if the number of assignments exceeds ``hard_cap``.
    """
    q = data.q
    middle = list(range(1, q - 1))
    cells = {j: oracle_cells(data, j) for j in middle}
    slots = [(j, i) for j in middle for i in range(len(cells[j]))]
    n_assign = math.prod(len(cells[j][i]) for j, i in slots)
    if n_assign > hard_cap:
        raise BudgetExceeded(n_assign, hard_cap, "oracle")

    denom = math.prod(g.n + 1 for g in data.groups)
    results = []
    for lower in (True, False):
        best = None
        options = [[oracle_point(data, j, c, lower) for c in cells[j][i]] for j, i in slots]
        for choice in itertools.product(*options):
            points: dict[int, list] = {j: [] for j in middle}
            for (j, _), point in zip(slots, choice):
                points[j].append(point)
            c = oracle_count(data, points, lower)
            if best is None or (c < best if lower else c > best):
                best = c
        results.append(RationalProb(best, denom))
    return OracleResult(results[0], results[1], n_assign)
