"""Command-line front end.

Subcommands::

    npi-order order FILE [--order A,B,C] [--methods ...]
    npi-order vus   FILE --order benign,early,late
    npi-order rss   FILE            # header rank,cycle,value
    npi-order scan  FILE [--order ...]

Output is a JSON object with sorted keys; counts and denominators are
decimal strings.  Exit status: 0 ok, 2 invalid input, 3 over budget.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .applications import OrderingReport, rss_perfect_ordering, vus_bounds
from .domain import BudgetExceeded, MultiGroupData, NPIError, RationalProb, ShapeError, read_long_csv, to_exact, validate_and_sort
from .multi_group import (
    DEFAULT_BUDGET,
    algorithm_a,
    algorithm_b,
    bounds,
    empirical_h,
    exact_search,
    perfect_reference,
    permutation_scan,
)
from .three_group import exact_three, kj_profile

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 2, 3

METHODS = ("bounds", "exact", "algA", "algB", "empirical", "perfect", "kj-profile", "permutations")
DEFAULT_METHODS = ("bounds", "exact", "algA", "empirical", "perfect")


@dataclass
class RunConfig:
    command: str
    input: Path
    ordering: list[str] | None = None
    methods: list[str] = field(default_factory=lambda: list(DEFAULT_METHODS))
    ties: str = "reject"
    epsilon: str = "1e-9"
    budget: int | None = DEFAULT_BUDGET
    output: Path | None = None


# ------------------------------------------------------------------ #
# Serialisation
# ------------------------------------------------------------------ #


def _prob(p: RationalProb, with_denom: bool = False) -> dict:
    out = {"count": str(p.count), "decimal": p.decimal(4)}
    if with_denom:
        out["denominator"] = str(p.denom)
    return out


def _four(b) -> dict:
    return {"ll": _prob(b.ll), "lu": _prob(b.lu), "ul": _prob(b.ul), "uu": _prob(b.uu)}


def _pair(lower: RationalProb, upper: RationalProb) -> dict:
    return {"lower": _prob(lower), "upper": _prob(upper)}


def _alg_a(a) -> dict:
    out = _pair(a.lower, a.upper)
    out["per_group_lower"] = [_prob(p) for p in a.per_group_lower]
    out["per_group_upper"] = [_prob(p) for p in a.per_group_upper]
    return out


def _envelope(command: str, labels, sizes, denominator: int, methods: dict) -> dict:
    return {
        "command": command,
        "ordering": list(labels),
        "n": list(sizes),
        "denominator": str(denominator),
        "methods": methods,
    }


def report_methods(report: OrderingReport) -> dict:
    out = {
        "bounds": _four(report.bounds),
        "algA": _alg_a(report.algorithm_a),
        "perfect": _four(report.perfect),
    }
    if report.algorithm_b is not None:
        out["algB"] = _pair(report.algorithm_b.lower, report.algorithm_b.upper)
    if report.exact is not None:
        out["exact"] = _pair(*report.exact)
    if report.empirical is not None:
        out["empirical"] = _prob(report.empirical, with_denom=True)
    return out


def _scan(data: MultiGroupData, budget) -> dict:
    out = {}
    for objective in ("min_h", "max_h"):
        perm, h = permutation_scan(data, objective, budget=budget)
        out[objective] = {"ordering": list(perm), **_prob(h, with_denom=True)}
    return out


def compute_methods(data: MultiGroupData, methods: Sequence[str], budget) -> dict:
    out: dict = {}
    a = None
    for name in methods:
        if name == "bounds":
            out[name] = _four(bounds(data))
        elif name == "exact":
            pair = exact_three(data) if data.q == 3 else exact_search(data, budget=budget)
            out[name] = _pair(*pair)
        elif name == "algA":
            a = a or algorithm_a(data)
            out[name] = _alg_a(a)
        elif name == "algB":
            a = a or algorithm_a(data)
            b = algorithm_b(data, budget=budget, a_result=a)
            out[name] = _pair(b.lower, b.upper)
        elif name == "empirical":
            out[name] = _prob(empirical_h(data), with_denom=True)
        elif name == "perfect":
            out[name] = _four(perfect_reference(data.sizes))
        elif name == "kj-profile":
            prof = kj_profile(data)
            out[name] = {
                "lower": [[str(k) for k in ks] for ks in prof.lower],
                "upper": [[str(k) for k in ks] for ks in prof.upper],
                "argmin": list(prof.argmin),
                "argmax": list(prof.argmax),
                "minima": [str(k) for k in prof.minima],
                "maxima": [str(k) for k in prof.maxima],
            }
        elif name == "permutations":
            out[name] = _scan(data, budget)
        else:
            raise ValueError(f"unknown method {name!r}")
    return out


# ------------------------------------------------------------------ #
# Input
# ------------------------------------------------------------------ #


def _load_groups(cfg: RunConfig) -> MultiGroupData:
    with open(cfg.input, newline="") as fh:
        raw = read_long_csv(fh)
    if cfg.ordering:
        if len(set(cfg.ordering)) != len(cfg.ordering):
            raise ValueError(f"--order repeats a label: {cfg.ordering}")
        missing = [lab for lab in cfg.ordering if lab not in raw]
        if missing:
            raise ValueError(f"--order names groups absent from the input: {missing}")
        raw = {lab: raw[lab] for lab in cfg.ordering}
    return validate_and_sort(raw, ties=cfg.ties, epsilon=cfg.epsilon)


def read_rss_csv(path: Path) -> list[list]:
    """``rank,cycle,value`` rows -> table with one row per rank."""
    cells: dict = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"rank", "cycle", "value"} <= set(reader.fieldnames):
            raise ValueError("CSV header must contain 'rank', 'cycle' and 'value'")
        for row in reader:
            key = (to_exact(row["rank"]), to_exact(row["cycle"]))
            if key in cells:
                raise ShapeError(f"duplicate entry for rank {row['rank']}, cycle {row['cycle']}")
            cells[key] = to_exact(row["value"])
    ranks = sorted({r for r, _ in cells})
    cycles = sorted({c for _, c in cells})
    if len(cells) != len(ranks) * len(cycles):
        raise ShapeError("ragged table: every rank needs a value in every cycle")
    return [[cells[(r, c)] for c in cycles] for r in ranks]


# ------------------------------------------------------------------ #
# Driver
# ------------------------------------------------------------------ #


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one configuration; returns the exit code and JSON payload."""
    try:
        if cfg.command == "rss":
            table = read_rss_csv(cfg.input)
            report = rss_perfect_ordering(table, ties=cfg.ties, epsilon=cfg.epsilon, budget=cfg.budget)
            return EXIT_OK, _envelope("rss", report.labels, report.sizes, report.denominator, report_methods(report))

        data = _load_groups(cfg)
        if cfg.command == "vus":
            methods = report_methods(vus_bounds(data, budget=cfg.budget))
        elif cfg.command == "scan":
            methods = {"permutations": _scan(data, cfg.budget)}
        else:
            unknown = [m for m in cfg.methods if m not in METHODS]
            if unknown:
                raise ValueError(f"unknown method(s) {unknown}; choose from {list(METHODS)}")
            methods = compute_methods(data, cfg.methods, cfg.budget)
        return EXIT_OK, _envelope(cfg.command, data.labels, data.sizes, data.npi_denominator, methods)
    except BudgetExceeded as exc:
        return EXIT_BUDGET, _error(EXIT_BUDGET, exc, estimate=str(exc.estimate))
    except (NPIError, ValueError, KeyError, OSError) as exc:
        return EXIT_INVALID, _error(EXIT_INVALID, exc)


def _error(code: int, exc: Exception, **extra) -> dict:
    msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
    return {"error": {"code": code, "type": type(exc).__name__, "message": str(msg), **extra}}


def _parse_ties(text: str) -> tuple[str, str]:
    kind, _, eps = text.partition(":")
    if kind not in ("reject", "epsilon") or (kind == "reject" and eps):
        raise argparse.ArgumentTypeError("use 'reject', 'epsilon' or 'epsilon:STEP'")
    return kind, eps or "1e-9"


def _parse_budget(text: str) -> int | None:
    if text.lower() in ("none", "inf", "unlimited"):
        return None
    value = int(float(text)) if "e" in text.lower() else int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def _parse_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("input", type=Path, help="CSV file")
    shared.add_argument("--order", type=_parse_list, default=None, help="comma-separated group labels, first to last")
    shared.add_argument("--budget", type=_parse_budget, default=DEFAULT_BUDGET, help="search size limit ('none' for no limit)")
    shared.add_argument("-o", "--output", type=Path, default=None, help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="npi-order", description="NPI lower and upper probabilities for ordered future observations."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    order = sub.add_parser("order", parents=[shared], help="generic ordering event (CSV: group,value)")
    order.add_argument("--methods", type=_parse_list, default=list(DEFAULT_METHODS), help=f"comma-separated subset of {','.join(METHODS)}")
    order.add_argument("--ties", type=_parse_ties, default=("reject", "1e-9"))
    vus = sub.add_parser("vus", parents=[shared], help="bounds on the volume under the ROC surface")
    vus.add_argument("--ties", type=_parse_ties, default=("reject", "1e-9"))
    rss = sub.add_parser("rss", parents=[shared], help="ranked set sample (CSV: rank,cycle,value)")
    rss.add_argument("--ties", type=_parse_ties, default=("epsilon", "1e-9"))
    scan = sub.add_parser("scan", parents=[shared], help="orderings with extreme empirical value")
    scan.add_argument("--ties", type=_parse_ties, default=("reject", "1e-9"))
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    ties, eps = args.ties
    cfg = RunConfig(
        command=args.command,
        input=args.input,
        ordering=args.order,
        methods=getattr(args, "methods", list(DEFAULT_METHODS)),
        ties=ties,
        epsilon=eps,
        budget=args.budget,
        output=args.output,
    )
    code, payload = run(cfg)
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if cfg.output is not None and code == EXIT_OK:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
