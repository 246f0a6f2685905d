"""Report builders for the usual uses of ordering probabilities.

* several treatment groups expected in a given order,
* a diagnostic marker over ordered disease classes (bounds on the volume
  under the ROC surface),
* a ranked set sample, one group per rank, asking whether the next cycle
  comes out in rank order.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .domain import (
    ArityError,
    BudgetExceeded,
    MultiGroupData,
    RationalProb,
    ShapeError,
    validate_and_sort,
)
from .multi_group import (
    DEFAULT_BUDGET,
    AlgorithmA,
    AlgorithmB,
    FourBounds,
    algorithm_a,
    algorithm_b,
    bounds,
    empirical_h,
    exact_search,
    perfect_reference,
)
from .three_group import exact_three

__all__ = ["OrderingReport", "ordering_report", "vus_bounds", "rss_perfect_ordering"]


@dataclass(frozen=True)
class OrderingReport:
    """Everything computed for one ordering event.

    ``exact``, ``algorithm_b`` and ``empirical`` are ``None`` when they
    could not be computed (over budget, or an empty group for the
    empirical value).
    """

    labels: tuple[str, ...]
    sizes: tuple[int, ...]
    bounds: FourBounds
    algorithm_a: AlgorithmA
    algorithm_b: AlgorithmB | None
    exact: tuple[RationalProb, RationalProb] | None
    empirical: RationalProb | None
    perfect: FourBounds

    @property
    def denominator(self) -> int:
        return self.bounds.ll.denom

    def decimals(self, places: int = 4) -> dict[str, str]:
        """Flat name -> decimal string view, handy for tables."""
        b = self.bounds
        out = {
            "ll": b.ll.decimal(places),
            "lu": b.lu.decimal(places),
            "ul": b.ul.decimal(places),
            "uu": b.uu.decimal(places),
            "lower_a": self.algorithm_a.lower.decimal(places),
            "upper_a": self.algorithm_a.upper.decimal(places),
        }
        if self.algorithm_b is not None:
            out["lower_b"] = self.algorithm_b.lower.decimal(places)
            out["upper_b"] = self.algorithm_b.upper.decimal(places)
        if self.exact is not None:
            out["lower"] = self.exact[0].decimal(places)
            out["upper"] = self.exact[1].decimal(places)
        if self.empirical is not None:
            out["empirical"] = self.empirical.decimal(places)
        return out


def ordering_report(
    data: MultiGroupData, budget: int | None = DEFAULT_BUDGET, with_b: bool = True
) -> OrderingReport:
    if data.q < 3:
        raise ArityError(f"an ordering report needs q >= 3, got {data.q}")
    a = algorithm_a(data)
    b = None
    if with_b:
        try:
            b = algorithm_b(data, budget=budget, a_result=a)
        except BudgetExceeded:
            pass
    if data.q == 3:
        exact = exact_three(data)
    else:
        try:
            exact = exact_search(data, budget=budget)
        except BudgetExceeded:
            exact = None
    emp = empirical_h(data) if min(data.sizes) > 0 else None
    return OrderingReport(
        data.labels,
        data.sizes,
        bounds(data),
        a,
        b,
        exact,
        emp,
        perfect_reference(data.sizes),
    )


def vus_bounds(data: MultiGroupData, budget: int | None = DEFAULT_BUDGET) -> OrderingReport:
    """NPI bounds on the volume under the ROC (hyper-)surface.

    ``data`` must list the disease classes from least to most severe.
    """
    return ordering_report(data, budget=budget)


def rss_perfect_ordering(
    table: Sequence[Sequence],
    ties: str = "epsilon",
    epsilon="1e-9",
    budget: int | None = DEFAULT_BUDGET,
) -> OrderingReport:
    """Report for the next cycle of a ranked set sample coming out in rank order.

    Args:
        table: one row per rank (lowest first), one column per cycle.
        ties: tie policy passed to :func:`validate_and_sort`.  Defaults to
            ``"epsilon"`` because judgement-ranked measurements often repeat
            values within a rank.
    """
    rows = [list(r) for r in table]
    if len(rows) < 3:
        raise ShapeError(f"need at least 3 ranks, got {len(rows)}")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ShapeError(f"ragged table: row lengths {sorted(widths)}")
    if widths == {0}:
        raise ShapeError("table has no cycles")
    raw = {f"R{k + 1}": r for k, r in enumerate(rows)}
    return ordering_report(validate_and_sort(raw, ties=ties, epsilon=epsilon), budget=budget)
