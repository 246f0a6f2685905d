from __future__ import annotations

import random
from fractions import Fraction

import pytest

from npi_order import MultiGroupData

EX1 = {
    "X": [2, 3, 5, 6, 7, 8, 10, 11, 15, 17, 18, 21],
    "Y": [9, 20],
    "Z": [1, 4, 12, 13, 14, 16, 19, 22, 23, 24, 25],
}

EX2 = {
    "X1": [1, 6, 11, 16],
    "X2": [4, 8, 10, 12, 15],
    "X3": [3, 9, 14, 17, 20],
    "X4": [2, 5, 7, 13, 18, 19],
}

# one row per rank, one column per cycle
RSS_TABLE = [
    ["0.3", "3.9", "3.4", "5.1", "3.2"],
    ["2.8", "11.9", "11.8", "10.4", "14.1"],
    ["24.4", "12.6", "13.0", "19.3", "13"],
    ["5.7", "10.5", "21.8", "21", "25"],
    ["14.3", "56.5", "29.6", "15", "22.9"],
]


def make(groups: dict) -> MultiGroupData:
    return MultiGroupData.from_lists(list(groups.values()), list(groups))


def random_instance(rng: random.Random, qs=(3, 4), max_n: int = 3, min_n: int = 0) -> MultiGroupData:
    """Tie-free integer data with group sizes drawn uniformly."""
    q = rng.choice(qs)
    sizes = [rng.randint(min_n, max_n) for _ in range(q)]
    pool = rng.sample(range(1, 10 * (sum(sizes) + 1)), sum(sizes))
    groups, at = [], 0
    for n in sizes:
        groups.append(pool[at : at + n])
        at += n
    return MultiGroupData.from_lists(groups)


def negate_reverse(data: MultiGroupData) -> MultiGroupData:
    groups = [[-v for v in g.values] for g in reversed(data.groups)]
    return MultiGroupData.from_lists(groups, list(reversed(data.labels)))


def transform(data: MultiGroupData, f) -> MultiGroupData:
    return MultiGroupData.from_lists([[f(v) for v in g.values] for g in data.groups], list(data.labels))


def cubic(v: Fraction) -> Fraction:
    return v**3 + 7 * v


@pytest.fixture
def ex1() -> MultiGroupData:
    return make(EX1)


@pytest.fixture
def ex2() -> MultiGroupData:
    return make(EX2)
