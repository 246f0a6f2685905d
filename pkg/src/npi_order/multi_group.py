"""Lower and upper probabilities for ``q`` ordered groups.

Positions are handled symbolically.  With ``N`` pooled observations,
data point ``p`` has key ``(2p + 1, 0)`` and a probability mass placed in
gap ``g`` has key ``(2g, rank)``.  The literal infinite endpoints are
``(-2, 0)`` and ``(2N + 2, 0)``; two masses sent to the same infinity
compare equal, so ``inf < inf`` is false exactly as in the indicator
sums.

When masses of several middle groups share a gap their relative order
is free.  The event count is a sum of products of the indicators
``I(t_j < t_{j+1})``, hence non-decreasing in each of them, so the
extremes put same-gap masses in descending group order for the lower
probability and ascending order for the upper.  ``rank`` encodes that
choice: ``-j`` for the lower orientation, ``+j`` for the upper.
"""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass, field
from typing import Literal

from .domain import (
    ArityError,
    BudgetExceeded,
    EmptyGroup,
    MultiGroupData,
    RationalProb,
)

__all__ = [
    "DEFAULT_BUDGET",
    "FourBounds",
    "MassAssignment",
    "AlgorithmA",
    "AlgorithmB",
    "empirical_h",
    "bounds",
    "perfect_reference",
    "complexity_estimate",
    "assignment_count",
    "exact_search",
    "extreme_assignment",
    "algorithm_a",
    "algorithm_b",
    "permutation_scan",
]

DEFAULT_BUDGET = 10**8

Key = tuple[int, int]
NEG_INF: Key = (-2, 0)


def _pos_inf(data: MultiGroupData) -> Key:
    return (2 * data.total + 2, 0)


def _data_keys(data: MultiGroupData, j: int) -> list[Key]:
    return [(2 * p + 1, 0) for p in data.ranks[j]]


def _right_ends(data: MultiGroupData, j: int) -> list[Key]:
    return _data_keys(data, j) + [_pos_inf(data)]


def _left_ends(data: MultiGroupData, j: int) -> list[Key]:
    return [NEG_INF] + _data_keys(data, j)


def _rank(j: int, lower: bool) -> int:
    return -j if lower else j


def _outer_points(data: MultiGroupData, lower: bool) -> tuple[list[Key], list[Key]]:
    """Endpoint masses of the first and last group for one orientation."""
    last = data.q - 1
    if lower:
        return _right_ends(data, 0), _left_ends(data, last)
    return _left_ends(data, 0), _right_ends(data, last)


# ------------------------------------------------------------------ #
# Chain counting
# ------------------------------------------------------------------ #


def _chain_ends(points: list[list[Key]]) -> list[tuple[Key, int]]:
    """Chains ``p_0 < p_1 < ... < p_K`` with ``p_k`` from ``points[k]``.

    Returns, for every point of the last list, its key and the number of
    chains ending there.
    """
    depth = len(points)
    events = sorted((key, k) for k, keys in enumerate(points) for key in keys)
    below = [1] + [0] * depth  # below[k]: chains of length k strictly below
    ends: list[tuple[Key, int]] = []
    start = 0
    while start < len(events):
        stop = start
        key = events[start][0]
        while stop < len(events) and events[stop][0] == key:
            stop += 1
        gained = [0] * (depth + 1)
        for _, k in events[start:stop]:
            gained[k + 1] += below[k]
            if k == depth - 1:
                ends.append((key, below[k]))
        for k in range(1, depth + 1):
            below[k] += gained[k]
        start = stop
    return ends


def _chain_count(points: list[list[Key]]) -> int:
    return sum(w for _, w in _chain_ends(points))


class _ChainLookup:
    """Number of chains ending strictly below (or starting strictly above) a key."""

    def __init__(self, ends: list[tuple[Key, int]], reverse: bool = False):
        ends = sorted(ends)
        self.keys = [k for k, _ in ends]
        self.reverse = reverse
        self.cum = list(itertools.accumulate((w for _, w in ends), initial=0))

    def __call__(self, key: Key) -> int:
        if self.reverse:
            return self.cum[-1] - self.cum[bisect.bisect_right(self.keys, key)]
        return self.cum[bisect.bisect_left(self.keys, key)]


def _negated(points: list[list[Key]]) -> list[list[Key]]:
    return [[(-a, -b) for a, b in keys] for keys in reversed(points)]


# ------------------------------------------------------------------ #
# Empirical value and the four computable bounds
# ------------------------------------------------------------------ #


def empirical_h(data: MultiGroupData) -> RationalProb:
    """Fraction of data tuples ``(x_1, ..., x_q)`` in increasing order."""
    if min(data.sizes) == 0:
        raise EmptyGroup("empirical value needs every group to be non-empty")
    count = _chain_count([_data_keys(data, j) for j in range(data.q)])
    return RationalProb(count, math.prod(data.sizes))


@dataclass(frozen=True)
class FourBounds:
    """Computable bounds on the exact NPI lower and upper probabilities.

    ``ll <= lower <= lu`` and ``ul <= upper <= uu``.
    """

    ll: RationalProb
    lu: RationalProb
    ul: RationalProb
    uu: RationalProb

    def as_tuple(self) -> tuple[RationalProb, ...]:
        return self.ll, self.lu, self.ul, self.uu


def _interval_keys(data: MultiGroupData, j: int) -> list[tuple[Key, Key]]:
    ends = _left_ends(data, j) + [_pos_inf(data)]
    return list(zip(ends, ends[1:]))


def _separated_count(data: MultiGroupData) -> int:
    # every interval lies wholly below the next group's interval
    tails = sorted((hi, 1) for _, hi in _interval_keys(data, 0))
    for j in range(1, data.q):
        lookup = _ChainLookup(tails)
        tails = sorted((hi, lookup(lo)) for lo, hi in _interval_keys(data, j))
    return sum(w for _, w in tails)


def _compatible_count(data: MultiGroupData) -> int:
    # some increasing choice of points exists: every earlier left end
    # lies below every later right end, i.e. running max(lo) < hi
    states: dict[Key, int] = {}
    for lo, _ in _interval_keys(data, 0):
        states[lo] = states.get(lo, 0) + 1
    for j in range(1, data.q):
        nxt: dict[Key, int] = {}
        for lo, hi in _interval_keys(data, j):
            for top, ways in states.items():
                if top < hi:
                    m = max(top, lo)
                    nxt[m] = nxt.get(m, 0) + ways
        states = nxt
    return sum(states.values())


def bounds(data: MultiGroupData) -> FourBounds:
    if data.q < 3:
        raise ArityError(f"bounds need q >= 3, got {data.q}")
    q = data.q
    middle = [_right_ends(data, j) for j in range(1, q - 1)]
    lu = _chain_count([_right_ends(data, 0), *middle, _left_ends(data, q - 1)])
    ul = _chain_count([_left_ends(data, 0), *middle, _right_ends(data, q - 1)])
    denom = data.npi_denominator
    return FourBounds(
        RationalProb(_separated_count(data), denom),
        RationalProb(lu, denom),
        RationalProb(ul, denom),
        RationalProb(_compatible_count(data), denom),
    )


def perfect_reference(sizes) -> FourBounds:
    """The four bounds for data whose groups are perfectly separated in order."""
    sizes = list(sizes)
    if len(sizes) < 3:
        raise ArityError(f"need q >= 3 sizes, got {len(sizes)}")
    if min(sizes) < 0:
        raise ValueError("sizes must be non-negative")
    first, inner, last = sizes[0], sizes[1:-1], sizes[-1]
    denom = math.prod(n + 1 for n in sizes)
    ll = first * last * math.prod(n - 1 for n in inner)
    if any(n < 1 for n in inner):
        ll = 0
    return FourBounds(
        RationalProb(max(ll, 0), denom),
        RationalProb(math.prod(sizes), denom),
        RationalProb((first + 1) * (last + 1) * math.prod(inner), denom),
        RationalProb(denom, denom),
    )


# ------------------------------------------------------------------ #
# Mass assignments
# ------------------------------------------------------------------ #


def complexity_estimate(data: MultiGroupData) -> int:
    """Number of ways to place every middle-group mass in a cell.

    Python integers do not overflow, so the product is returned exactly.
    """
    return math.prod(
        len(data.interval_gaps(j, i))
        for j in range(1, data.q - 1)
        for i in range(1, data.groups[j].n + 2)
    )


@dataclass(frozen=True)
class MassAssignment:
    """A cell for every middle-group interval.

    ``cells[(j, i)]`` is the 0-based cell position inside interval ``i`` of
    group ``j``.  ``lower`` selects the endpoint orientation of the first
    and last groups and the order of masses sharing a gap.
    """

    lower: bool
    cells: dict[tuple[int, int], int] = field(hash=False)

    def gaps(self, data: MultiGroupData) -> dict[tuple[int, int], int]:
        return {(j, i): data.interval_gaps(j, i)[k] for (j, i), k in self.cells.items()}


def _assignment_points(
    data: MultiGroupData, gaps: dict[tuple[int, int], int], lower: bool
) -> list[list[Key]]:
    first, last = _outer_points(data, lower)
    middle = []
    for j in range(1, data.q - 1):
        middle.append(
            [(2 * gaps[(j, i)], _rank(j, lower)) for i in range(1, data.groups[j].n + 2)]
        )
    return [first, *middle, last]


def assignment_count(data: MultiGroupData, assignment: MassAssignment) -> int:
    """Count of index tuples satisfying the event under one assignment."""
    expected = {(j, i) for j in range(1, data.q - 1) for i in range(1, data.groups[j].n + 2)}
    if set(assignment.cells) != expected:
        raise ValueError("assignment must choose exactly one cell per middle interval")
    return _chain_count(_assignment_points(data, assignment.gaps(data), assignment.lower))


def _search(
    data: MultiGroupData,
    lower: bool,
    allowed: dict[tuple[int, int], set[int]] | None = None,
) -> tuple[int, dict[tuple[int, int], int]]:
    """Extreme event count over assignments, by a pruned left-to-right sweep.

    Sweeping the pooled order, the state is which open middle intervals
    already hold their mass plus the running chain counts ``c[k]``
    (chains through groups ``0..k-1`` lying wholly to the left).  Every
    later step only adds non-negative multiples of these counts, so a
    state dominated componentwise can be dropped without losing the
    optimum.  Returns the optimal count and its gap per ``(j, i)``.
    """
    q, total, owner = data.q, data.total, data.owner
    width = q - 1  # c[2..q]; c[1] is the same in every state
    n_mid = q - 2
    better = (lambda a, b: a <= b) if lower else (lambda a, b: a >= b)
    current = [1] * q
    c1 = 0 if lower else 1  # upper: the first group's mass at -inf

    # flags -> {counts: trace}
    states: dict[tuple[bool, ...], dict[tuple[int, ...], object]] = {
        (False,) * n_mid: {(0,) * width: None}
    }

    def get(vec, k):
        return 1 if k == 0 else c1 if k == 1 else vec[k - 2]

    def prune(bucket: dict) -> dict:
        if len(bucket) < 2:
            return bucket
        order = sorted(bucket, key=sum, reverse=not lower)
        kept: list[tuple[int, ...]] = []
        for vec in order:
            if not any(all(better(a, b) for a, b in zip(other, vec)) for other in kept):
                kept.append(vec)
        return {vec: bucket[vec] for vec in kept}

    for g in range(total + 1):
        nxt: dict[tuple[bool, ...], dict[tuple[int, ...], object]] = {}
        for flags, bucket in states.items():
            free = [
                m
                for m in range(n_mid)
                if not flags[m]
                and (allowed is None or g in allowed[(m + 1, current[m + 1])])
            ]
            for size in range(len(free) + 1):
                for chosen in itertools.combinations(free, size):
                    placed = sorted((m + 1 for m in chosen), reverse=lower)
                    new_flags = tuple(f or (m in chosen) for m, f in enumerate(flags))
                    target = nxt.setdefault(new_flags, {})
                    for vec, trace in bucket.items():
                        v = list(vec)
                        for j in placed:
                            v[j - 1] += get(v, j)
                        v = tuple(v)
                        for j in placed:
                            trace = (trace, (j, current[j], g))
                        target.setdefault(v, trace)
        states = {f: prune(b) for f, b in nxt.items()}

        if g == total:
            break
        j = owner[g]
        if j == 0:
            c1 += 1
        elif j == q - 1:
            states = {
                f: {v[:-1] + (v[-1] + get(v, q - 1),): t for v, t in b.items()}
                for f, b in states.items()
            }
            states = {f: prune(b) for f, b in states.items()}
        else:
            m = j - 1
            kept = {}
            for flags, bucket in states.items():
                if flags[m]:
                    kept[flags[:m] + (False,) + flags[m + 1 :]] = bucket
            states = kept
            current[j] += 1

    done = states.get((True,) * n_mid)
    if not done:
        raise ValueError("no feasible assignment within the allowed cells")
    finals = []
    for v, trace in done.items():
        count = v[-1]
        if not lower:
            count += get(v, q - 1)  # last group's mass at +inf
        finals.append((count, trace))
    best = min(finals, key=lambda t: t[0]) if lower else max(finals, key=lambda t: t[0])

    chosen: dict[tuple[int, int], int] = {}
    trace = best[1]
    while trace is not None:
        trace, (j, i, gap) = trace
        chosen[(j, i)] = gap
    return best[0], chosen


def _to_assignment(data: MultiGroupData, gaps: dict, lower: bool) -> MassAssignment:
    return MassAssignment(
        lower, {(j, i): g - data.interval_gaps(j, i).start for (j, i), g in gaps.items()}
    )


def _guard(estimate: int, budget: int | None, what: str) -> None:
    if budget is not None and estimate > budget:
        raise BudgetExceeded(estimate, budget, what)


def exact_search(
    data: MultiGroupData, budget: int | None = DEFAULT_BUDGET
) -> tuple[RationalProb, RationalProb]:
    """Exact NPI lower and upper probabilities for any ``q``.

    Raises:
        BudgetExceeded: if :func:`complexity_estimate` is above ``budget``.
    """
    _guard(complexity_estimate(data), budget, "exact search")
    denom = data.npi_denominator
    lo, _ = _search(data, lower=True)
    up, _ = _search(data, lower=False)
    return RationalProb(lo, denom), RationalProb(up, denom)


def extreme_assignment(
    data: MultiGroupData, lower: bool, budget: int | None = DEFAULT_BUDGET
) -> MassAssignment:
    """An assignment attaining the exact lower (or upper) probability."""
    _guard(complexity_estimate(data), budget, "exact search")
    _, gaps = _search(data, lower=lower)
    return _to_assignment(data, gaps, lower)


# ------------------------------------------------------------------ #
# Heuristics
# ------------------------------------------------------------------ #


@dataclass(frozen=True)
class AlgorithmA:
    """One-group-at-a-time optimisation.

    ``per_group_lower[m]`` / ``per_group_upper[m]`` belong to middle group
    ``m + 1``.  ``optimal_cells_*[m][(i)]`` lists every cell position of
    interval ``i + 1`` attaining that group's optimum.
    """

    lower: RationalProb
    upper: RationalProb
    per_group_lower: tuple[RationalProb, ...]
    per_group_upper: tuple[RationalProb, ...]
    optimal_cells_lower: tuple[tuple[tuple[int, ...], ...], ...]
    optimal_cells_upper: tuple[tuple[tuple[int, ...], ...], ...]


def _fixed_points(data: MultiGroupData, j: int, lower: bool) -> list[list[Key]]:
    """Points of every group while middle group ``j`` is optimised.

    Other middle groups sit at their data values: their infinite end
    contributes nothing whichever end is used.  A group with no data has
    only infinite ends; in the upper orientation its mass goes to the
    end on the event's side of group ``j`` so it can still complete
    chains, in the lower orientation it is left out (no chain survives).
    """
    first, last = _outer_points(data, lower)
    pts = [first]
    for l in range(1, data.q - 1):
        if l == j:
            pts.append([])
        elif data.groups[l].n:
            pts.append(_data_keys(data, l))
        elif lower:
            pts.append([])
        else:
            gap = 0 if l < j else data.total
            pts.append([(2 * gap, _rank(l, lower))])
    pts.append(last)
    return pts


def _optimise_group(data: MultiGroupData, j: int, lower: bool):
    pts = _fixed_points(data, j, lower)
    below = _ChainLookup(_chain_ends(pts[:j]))
    # chains through groups j+1..q-1, keyed by their starting point
    above = _ChainLookup(
        [((-a, -b), w) for (a, b), w in _chain_ends(_negated(pts[j + 1 :]))], reverse=True
    )
    rank = _rank(j, lower)
    pick = min if lower else max
    total, ties = 0, []
    for i in range(1, data.groups[j].n + 2):
        gaps = data.interval_gaps(j, i)
        ks = [below((2 * g, rank)) * above((2 * g, rank)) for g in gaps]
        best = pick(ks)
        total += best
        ties.append(tuple(k for k, v in enumerate(ks) if v == best))
    return total, tuple(ties)


def algorithm_a(data: MultiGroupData) -> AlgorithmA:
    if data.q < 3:
        raise ArityError(f"algorithm A needs q >= 3, got {data.q}")
    denom = data.npi_denominator
    lows, ups, cells_lo, cells_up = [], [], [], []
    for j in range(1, data.q - 1):
        value, ties = _optimise_group(data, j, lower=True)
        lows.append(RationalProb(value, denom))
        cells_lo.append(ties)
        value, ties = _optimise_group(data, j, lower=False)
        ups.append(RationalProb(value, denom))
        cells_up.append(ties)
    return AlgorithmA(
        min(lows),
        max(ups),
        tuple(lows),
        tuple(ups),
        tuple(cells_lo),
        tuple(cells_up),
    )


@dataclass(frozen=True)
class AlgorithmB:
    lower: RationalProb
    upper: RationalProb
    lower_assignment: MassAssignment
    upper_assignment: MassAssignment


def algorithm_b(
    data: MultiGroupData,
    budget: int | None = DEFAULT_BUDGET,
    a_result: AlgorithmA | None = None,
) -> AlgorithmB:
    """Joint placement restricted to each group's own optimal cells.

    Every middle group's masses are confined to the cells that were
    optimal when that group was optimised alone (all tied optima are
    kept), and all masses are then placed simultaneously, ordering the
    ones that share a gap to push the count down (lower) or up (upper).

    Raises:
        BudgetExceeded: when the number of candidate combinations is above
            ``budget``.
    """
    a = a_result or algorithm_a(data)
    denom = data.npi_denominator
    out = []
    for lower, cells in ((True, a.optimal_cells_lower), (False, a.optimal_cells_upper)):
        allowed = {}
        for m, per_interval in enumerate(cells):
            j = m + 1
            for idx, ks in enumerate(per_interval):
                gaps = data.interval_gaps(j, idx + 1)
                allowed[(j, idx + 1)] = {gaps[k] for k in ks}
        _guard(math.prod(len(s) for s in allowed.values()), budget, "algorithm B")
        count, gaps = _search(data, lower, allowed)
        out.append((RationalProb(count, denom), _to_assignment(data, gaps, lower)))
    (lo, lo_asg), (up, up_asg) = out
    return AlgorithmB(lo, up, lo_asg, up_asg)


# ------------------------------------------------------------------ #
# Orderings
# ------------------------------------------------------------------ #


def permutation_scan(
    data: MultiGroupData,
    objective: Literal["min_h", "max_h"],
    budget: int | None = DEFAULT_BUDGET,
) -> tuple[tuple[str, ...], RationalProb]:
    """Ordering of the groups with the smallest or largest empirical value.

    Orderings are visited in lexicographic order of group positions and
    the first one reaching the extreme wins.
    """
    if objective not in ("min_h", "max_h"):
        raise ValueError(f"unknown objective {objective!r}")
    _guard(math.factorial(data.q), budget, "permutation scan")
    best = None
    for perm in itertools.permutations(data.labels):
        h = empirical_h(data.reordered(perm))
        if (
            best is None
            or (objective == "min_h" and h < best[1])
            or (objective == "max_h" and h > best[1])
        ):
            best = (perm, h)
    return best
