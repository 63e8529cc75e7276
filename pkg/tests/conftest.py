"""Shared fixtures: the published example cases used as golden tests."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import pytest


@dataclass(frozen=True)
class GoldenCase:
    case_id: int
    description: str
    ground_truth: Any
    prediction: Any
    printed: float  # the 2-decimal value as published
    exact: Fraction | None  # closed-form score where derivable


ONEOF = "$oneof"

TABLE1 = [
    GoldenCase(1, "correct string", "Hello World", "Hello World", 1.0, Fraction(1)),
    GoldenCase(2, "typo", "Hello World", "Hello Wolrd", 0.82, Fraction(9, 11)),
    GoldenCase(3, "incorrect string", "Hello World", "How are you?", 0.0, Fraction(0)),
    GoldenCase(4, "hallucination", None, "Hello World!", 0.0, Fraction(0)),
    GoldenCase(5, "one of n", {ONEOF: ["Hello", "World"]}, "Hello", 1.0, Fraction(1)),
    GoldenCase(6, "typo in one of n", {ONEOF: ["Hello", "World"]}, "Wolrd", 0.6, Fraction(3, 5)),
    GoldenCase(7, "expected string", "Hello World", ["Hello", "World"], 0.0, Fraction(0)),
    GoldenCase(8, "correct list", ["Hello", "World"], ["World", "Hello"], 1.0, Fraction(1)),
    GoldenCase(9, "missing element", ["Hello", "World"], ["Hello"], 0.5, Fraction(1, 2)),
    GoldenCase(
        10,
        "correct dict",
        {"a": "Hello", "b": "World"},
        {"b": "World", "a": "Hello"},
        1.0,
        Fraction(1),
    ),
    GoldenCase(11, "missing key", {"a": "Hello", "b": "World"}, {"a": "Hello"}, 0.5, Fraction(1, 2)),
    GoldenCase(
        12,
        "hallucinated key",
        {"a": "Hello", "b": "World"},
        {"b": "World", "a": "Hello", "c": "Great"},
        0.67,
        Fraction(2, 3),
    ),
    GoldenCase(
        13,
        "complex object",
        {"a": "Hello", "b": ["W", "r", "l", "d"]},
        {"a": "Hello", "b": ["w", "r", "d"]},
        0.8,
        Fraction(4, 5),
    ),
]

# Edge cases; the incorrect-format case (16) is asserted as a range only:
# the published 0.58 is not reproducible from the definitions (direct
# computation gives 1 - 4/11), so it is excluded from exact golden checks.
TABLE2_EXACT = [
    GoldenCase(14, "list cast to one-of", ["Hello", "World"], "Hello", 1.0, Fraction(1)),
    GoldenCase(15, "comparison of numbers", 0.2, 0.199999999, 0.0, Fraction(0)),
    GoldenCase(17, "unanswerable, incorrect answer", "Yesterday", "Last Week", 0.0, Fraction(0)),
    GoldenCase(18, "unanswerable, no answer", "Yesterday", None, 0.0, Fraction(0)),
]

CASE16 = GoldenCase(16, "incorrect format", "31.12.2023", "31.Dec 2023", 0.58, None)

# Exact mean of the 13 table-1 scores, used by the batch-evaluation checks.
TABLE1_MEAN = sum(case.exact for case in TABLE1) / 13
assert TABLE1_MEAN == Fraction(1301, 2145)


@pytest.fixture
def table1_cases() -> list[GoldenCase]:
    return list(TABLE1)


@pytest.fixture
def table2_cases() -> list[GoldenCase]:
    return list(TABLE2_EXACT)


@pytest.fixture
def golden_cases() -> list[GoldenCase]:
    return list(TABLE1) + list(TABLE2_EXACT)
