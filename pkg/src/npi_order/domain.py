"""Data model, validation and the pooled-order machinery.

Every computation in this package works on *ranks*, not values.  The
observations of all groups are pooled into one strictly increasing
sequence; data point ``p`` of that sequence splits the real line into
``N + 1`` open gaps numbered ``0..N`` (gap ``g`` lies between pooled
points ``g - 1`` and ``g``, with virtual ``-inf``/``+inf`` at the ends).

Indexing conventions used across the package:

* groups are addressed by their 0-based position in the ordering event;
* data intervals of a group are 1-based, ``i = 1..n + 1``, so interval
  ``i`` is ``(x_{i-1}, x_i)`` with ``x_0 = -inf`` and ``x_{n+1} = +inf``;
* cells inside an interval are 0-based list positions.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import cached_property
from numbers import Integral, Real
from typing import IO

__all__ = [
    "NPIError",
    "TieError",
    "EmptyInput",
    "EmptyGroup",
    "ArityError",
    "ShapeError",
    "BudgetExceeded",
    "RationalProb",
    "GroupSample",
    "MultiGroupData",
    "Cell",
    "SubIntervalPartition",
    "to_exact",
    "validate_and_sort",
    "partition",
    "read_long_csv",
]


# ------------------------------------------------------------------ #
# Errors
# ------------------------------------------------------------------ #


class NPIError(Exception):
    """Base class for every error raised by this package."""


class TieError(NPIError, ValueError):
    """A duplicate value was found under the ``reject`` tie policy."""


class EmptyInput(NPIError, ValueError):
    """Fewer than two groups were supplied."""


class EmptyGroup(NPIError, ValueError):
    """An operation that needs observations met a group with ``n = 0``."""


class ArityError(NPIError, ValueError):
    """The number of groups does not suit the operation."""


class ShapeError(NPIError, ValueError):
    """A ranked-set table is ragged or too small."""


class BudgetExceeded(NPIError):
    """The requested computation is larger than the allowed budget.

    Attributes:
        estimate: size of the search that would have been needed.
        budget: the limit that was in force.
    """

    def __init__(self, estimate: int, budget: int, what: str = "search"):
        self.estimate = estimate
        self.budget = budget
        super().__init__(f"{what} needs {estimate} steps, budget is {budget}")


# ------------------------------------------------------------------ #
# Exact probabilities
# ------------------------------------------------------------------ #


@dataclass(frozen=True)
class RationalProb:
    """A probability kept as an unreduced ``count / denom`` pair.

    The denominator is left unreduced on purpose: NPI quantities are
    reported over ``prod(n_j + 1)`` and the empirical value over
    ``prod(n_j)``, and those are the numbers people compare against.

    Equality is structural (``1/2 != 2/4``); the ordering operators
    compare numeric values.
    """

    count: int
    denom: int

    def __post_init__(self):
        if self.denom <= 0:
            raise ValueError(f"denominator must be positive, got {self.denom}")
        if not 0 <= self.count <= self.denom:
            raise ValueError(f"count {self.count} outside [0, {self.denom}]")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.count, self.denom)

    def __float__(self) -> float:
        return self.count / self.denom

    def decimal(self, places: int = 4) -> str:
        """Round-half-even decimal rendering, computed in integers."""
        scale = 10**places
        whole, rem = divmod(self.count * scale, self.denom)
        if 2 * rem > self.denom or (2 * rem == self.denom and whole % 2 == 1):
            whole += 1
        head, tail = divmod(whole, scale)
        return f"{head}.{tail:0{places}d}" if places else str(head)

    def _key(self, other: RationalProb) -> tuple[int, int]:
        if not isinstance(other, RationalProb):
            return NotImplemented
        return self.count * other.denom, other.count * self.denom

    def __lt__(self, other):
        a, b = self._key(other)
        return a < b

    def __le__(self, other):
        a, b = self._key(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._key(other)
        return a > b

    def __ge__(self, other):
        a, b = self._key(other)
        return a >= b

    def __str__(self) -> str:
        return f"{self.count}/{self.denom}"


# ------------------------------------------------------------------ #
# Samples
# ------------------------------------------------------------------ #


def to_exact(value) -> Fraction:
    """Convert an observation to an exact rational.

    Strings are parsed as written (``"13.0"`` and ``"13"`` are the same
    number); floats go through their shortest ``repr`` so that ``0.3`` is
    three tenths rather than its binary neighbour.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not observations")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"observation must be finite, got {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a finite number: {value!r}") from None
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValueError(f"observation must be finite, got {value!r}")
        return Fraction(value)
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, Real):
        return to_exact(float(value))
    raise TypeError(f"unsupported observation type {type(value).__name__}")


@dataclass(frozen=True)
class GroupSample:
    """Sorted observations of one group.

    ``endpoint(0)`` and ``endpoint(n + 1)`` give the virtual infinite
    endpoints; they are never stored.
    """

    label: str
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = self.values
        for a, b in zip(vals, vals[1:]):
            if not a < b:
                raise TieError(f"group {self.label!r}: values not strictly increasing at {b}")

    @property
    def n(self) -> int:
        return len(self.values)

    def endpoint(self, i: int):
        if i == 0:
            return -math.inf
        if i == self.n + 1:
            return math.inf
        if 1 <= i <= self.n:
            return self.values[i - 1]
        raise IndexError(f"endpoint index {i} outside 0..{self.n + 1}")


@dataclass(frozen=True)
class MultiGroupData:
    """Groups in the order of the event ``X_1 < X_2 < ... < X_q``."""

    groups: tuple[GroupSample, ...]

    def __post_init__(self):
        if len(self.groups) < 2:
            raise EmptyInput(f"need at least 2 groups, got {len(self.groups)}")
        labels = [g.label for g in self.groups]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate group labels in {labels}")
        seen: dict[Fraction, str] = {}
        for g in self.groups:
            for v in g.values:
                if v in seen:
                    raise TieError(f"value {v} appears in groups {seen[v]!r} and {g.label!r}")
                seen[v] = g.label

    @classmethod
    def from_lists(cls, groups: Iterable[Iterable], labels: Iterable[str] | None = None):
        """Build from already-untied value lists (sorted here)."""
        groups = [sorted(to_exact(v) for v in vals) for vals in groups]
        if labels is None:
            labels = [f"X{k + 1}" for k in range(len(groups))]
        return cls(tuple(GroupSample(str(lab), tuple(vals)) for lab, vals in zip(labels, groups)))

    @property
    def q(self) -> int:
        return len(self.groups)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(g.n for g in self.groups)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(g.label for g in self.groups)

    @property
    def npi_denominator(self) -> int:
        return math.prod(n + 1 for n in self.sizes)

    def reordered(self, labels: Iterable[str]) -> MultiGroupData:
        """Same observations, different ordering event."""
        by_label = {g.label: g for g in self.groups}
        labels = list(labels)
        missing = [lab for lab in labels if lab not in by_label]
        if missing:
            raise KeyError(f"unknown group label(s): {missing}")
        if len(set(labels)) != len(labels):
            raise ValueError(f"ordering repeats a label: {labels}")
        return MultiGroupData(tuple(by_label[lab] for lab in labels))

    # pooled order ------------------------------------------------------

    @cached_property
    def _pooled(self) -> tuple[tuple[Fraction, int], ...]:
        return tuple(sorted((v, j) for j, g in enumerate(self.groups) for v in g.values))

    @property
    def pooled_values(self) -> tuple[Fraction, ...]:
        return tuple(v for v, _ in self._pooled)

    @cached_property
    def owner(self) -> tuple[int, ...]:
        """Group index of each pooled data point, in increasing value order."""
        return tuple(j for _, j in self._pooled)

    @cached_property
    def ranks(self) -> tuple[tuple[int, ...], ...]:
        """Pooled index of every observation, per group."""
        out: list[list[int]] = [[] for _ in self.groups]
        for p, j in enumerate(self.owner):
            out[j].append(p)
        return tuple(tuple(r) for r in out)

    @property
    def total(self) -> int:
        return len(self.owner)

    def interval_gaps(self, j: int, i: int) -> range:
        """Gaps making up data interval ``i`` of group ``j``."""
        r = self.ranks[j]
        if not 1 <= i <= len(r) + 1:
            raise IndexError(f"interval {i} outside 1..{len(r) + 1} for group {j}")
        lo = r[i - 2] if i >= 2 else -1
        hi = r[i - 1] if i <= len(r) else self.total
        return range(lo + 1, hi + 1)


# ------------------------------------------------------------------ #
# Ingestion
# ------------------------------------------------------------------ #


def _untie(items: list[tuple[int, Fraction]], epsilon: Fraction) -> list[Fraction]:
    distinct = sorted(set(v for _, v in items))
    mult: dict[Fraction, int] = {}
    for _, v in items:
        mult[v] = mult.get(v, 0) + 1
    worst = max(mult.values())
    if worst == 1:
        return [v for _, v in items]
    gaps = [b - a for a, b in zip(distinct, distinct[1:])]
    if gaps and (worst - 1) * epsilon >= min(gaps):
        epsilon = min(gaps) / worst
    # items are already in (group position, appearance) order
    used: dict[Fraction, int] = {}
    out = []
    for _, v in items:
        k = used.get(v, 0)
        used[v] = k + 1
        out.append(v + k * epsilon)
    return out


def validate_and_sort(
    raw: Mapping[str, Iterable],
    ties: str = "reject",
    epsilon: float | str | Fraction = "1e-9",
) -> MultiGroupData:
    """Turn raw per-group value lists into a validated :class:`MultiGroupData`.

    Args:
        raw: group label -> observations; mapping order is the event order.
        ties: ``"reject"`` raises :class:`TieError` on any duplicate value,
            within or across groups.  ``"epsilon"`` shifts the k-th copy of a
            value up by ``k * epsilon``; copies are numbered by group position
            in ``raw`` and then by order of appearance.  The step is shrunk
            when needed so no shifted value reaches the next distinct value.
        epsilon: the perturbation step for the ``epsilon`` policy.

    Returns:
        The groups sorted strictly increasing, in the mapping's order.
    """
    if ties not in ("reject", "epsilon"):
        raise ValueError(f"unknown tie policy {ties!r}")
    labels = [str(k) for k in raw]
    if len(labels) < 2:
        raise EmptyInput(f"need at least 2 groups, got {len(labels)}")
    items = [(j, to_exact(v)) for j, vals in enumerate(raw.values()) for v in vals]

    if ties == "reject":
        seen: dict[Fraction, int] = {}
        for j, v in items:
            if v in seen:
                raise TieError(f"value {v} occurs in {labels[seen[v]]!r} and {labels[j]!r}")
            seen[v] = j
        values = [v for _, v in items]
    else:
        eps = to_exact(epsilon)
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        values = _untie(items, eps)

    per_group: list[list[Fraction]] = [[] for _ in labels]
    for (j, _), v in zip(items, values):
        per_group[j].append(v)
    return MultiGroupData(
        tuple(GroupSample(lab, tuple(sorted(vals))) for lab, vals in zip(labels, per_group))
    )


def read_long_csv(stream: IO[str]) -> dict[str, list[Fraction]]:
    """Read ``group,value`` rows into an insertion-ordered mapping."""
    reader = csv.DictReader(stream)
    if reader.fieldnames is None or not {"group", "value"} <= set(reader.fieldnames):
        raise ValueError("CSV header must contain 'group' and 'value'")
    out: dict[str, list[Fraction]] = {}
    for line, row in enumerate(reader, start=2):
        try:
            out.setdefault(row["group"].strip(), []).append(to_exact(row["value"]))
        except (ValueError, TypeError, AttributeError) as exc:
            raise ValueError(f"line {line}: {exc}") from None
    return out


# ------------------------------------------------------------------ #
# Sub-interval partition
# ------------------------------------------------------------------ #


@dataclass(frozen=True)
class Cell:
    """One open sub-interval, identified by its pooled gap.

    ``prefix[l]`` is the number of group-``l`` observations at or below the
    left edge, i.e. strictly below every point of the cell.
    """

    gap: int
    left: Fraction | float
    right: Fraction | float
    prefix: tuple[int, ...]


@dataclass(frozen=True)
class SubIntervalPartition:
    group_index: int
    interval_index: int
    breakpoints: tuple[Fraction, ...]
    cells: tuple[Cell, ...]


def partition(data: MultiGroupData, j: int, i: int) -> SubIntervalPartition:
    """Cut interval ``i`` of group ``j`` at the other groups' observations."""
    if not 0 <= j < data.q:
        raise IndexError(f"group index {j} outside 0..{data.q - 1}")
    gaps = data.interval_gaps(j, i)
    pooled = data.pooled_values
    owner = data.owner

    prefix = [0] * data.q
    for p in range(gaps.start):
        prefix[owner[p]] += 1
    cells = []
    for g in gaps:
        left = pooled[g - 1] if g > 0 else -math.inf
        right = pooled[g] if g < len(pooled) else math.inf
        cells.append(Cell(g, left, right, tuple(prefix)))
        if g < len(pooled):
            prefix[owner[g]] += 1
    breakpoints = tuple(pooled[g] for g in gaps[:-1])
    return SubIntervalPartition(j, i, breakpoints, tuple(cells))
