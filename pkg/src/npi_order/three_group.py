"""Exact lower and upper probabilities for three ordered groups.

For ``X < Y < Z`` only the middle group needs optimising.  Each
Y-interval carries one probability mass and, once the X masses sit at
the right (lower) or left (upper) ends of their intervals and the Z
masses at the opposite ends, the contribution of placing that mass in a
cell is ``K = S_x * S_z``: the number of X masses below the cell times
the number of Z masses above it.  Intervals do not interact, so the
extremes are sums of per-interval extremes of ``K``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domain import ArityError, MultiGroupData, RationalProb, SubIntervalPartition, partition

__all__ = ["KjProfile", "kj_profile", "exact_three"]


@dataclass(frozen=True)
class KjProfile:
    """``K`` values over every cell of every Y-interval.

    ``lower[i]`` / ``upper[i]`` list the K values of the cells of
    Y-interval ``i + 1`` under the lower / upper orientation.  ``argmin``
    and ``argmax`` hold the leftmost optimal cell position per interval.
    """

    partitions: tuple[SubIntervalPartition, ...]
    lower: tuple[tuple[int, ...], ...]
    upper: tuple[tuple[int, ...], ...]
    argmin: tuple[int, ...]
    argmax: tuple[int, ...]

    @property
    def minima(self) -> tuple[int, ...]:
        return tuple(ks[k] for ks, k in zip(self.lower, self.argmin))

    @property
    def maxima(self) -> tuple[int, ...]:
        return tuple(ks[k] for ks, k in zip(self.upper, self.argmax))


def _check(data: MultiGroupData) -> None:
    if data.q != 3:
        raise ArityError(f"three-group routine called with q={data.q}")


def kj_profile(data: MultiGroupData) -> KjProfile:
    _check(data)
    nz = data.groups[2].n
    parts, lower, upper = [], [], []
    for i in range(1, data.groups[1].n + 2):
        part = partition(data, 1, i)
        parts.append(part)
        lo, up = [], []
        for cell in part.cells:
            below_x = cell.prefix[0]
            above_z = nz - cell.prefix[2]
            lo.append(below_x * above_z)
            # upper orientation adds the -inf X end and the +inf Z end
            up.append((below_x + 1) * (above_z + 1))
        lower.append(tuple(lo))
        upper.append(tuple(up))
    argmin = tuple(ks.index(min(ks)) for ks in lower)
    argmax = tuple(ks.index(max(ks)) for ks in upper)
    return KjProfile(tuple(parts), tuple(lower), tuple(upper), argmin, argmax)


def exact_three(data: MultiGroupData) -> tuple[RationalProb, RationalProb]:
    """NPI lower and upper probability of ``X_next < Y_next < Z_next``."""
    prof = kj_profile(data)
    denom = data.npi_denominator
    return RationalProb(sum(prof.minima), denom), RationalProb(sum(prof.maxima), denom)
