"""Typed value trees and JSON ingestion.

Ground truths and predictions are JSON documents mapped onto a small closed
set of node types: none, string, tuple ("one of"), list ("all of") and dict.
Numbers and booleans are canonicalized to strings at ingestion, so scoring
only ever deals with these five shapes.

Ground-truth documents may mark a set of acceptable alternatives with a
single-key object ``{"$oneof": [...]}``; predictions may not.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Union

from .errors import (
    DuplicateId,
    EmptyTuple,
    MalformedInput,
    NonFiniteNumber,
    TupleInPrediction,
)

ONEOF_KEY = "$oneof"


class Role(str, Enum):
    """Which side of the comparison a document belongs to."""

    GROUND_TRUTH = "ground_truth"
    PREDICTION = "prediction"


@dataclass(frozen=True)
class NoneValue:
    """The unanswerable/absent marker."""


@dataclass(frozen=True)
class StringValue:
    text: str


@dataclass(frozen=True)
class TupleValue:
    """A non-empty set of acceptable alternatives (ground truth only)."""

    alternatives: tuple["ValueTree", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        if not self.alternatives:
            raise EmptyTuple("a one-of set must contain at least one alternative")


@dataclass(frozen=True)
class ListValue:
    """An order-insensitive collection; duplicates allowed."""

    elements: tuple["ValueTree", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))


@dataclass(frozen=True)
class DictValue:
    """A key/value mapping with unique string keys. Treat as immutable."""

    entries: dict[str, "ValueTree"] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", dict(self.entries))


ValueTree = Union[NoneValue, StringValue, TupleValue, ListValue, DictValue]

NONE = NoneValue()


def canonical_scalar(raw: bool | int | float) -> str:
    """Render a number or boolean as its canonical string.

    Booleans become "true"/"false".  Integer-valued numbers are rendered
    without a fractional part or exponent; everything else uses the shortest
    decimal string that round-trips to the same value.
    """
    if isinstance(raw, bool):
        return "true" if raw else "false"
    if isinstance(raw, int):
        return str(raw)
    if isinstance(raw, float):
        if not math.isfinite(raw):
            raise NonFiniteNumber(f"cannot canonicalize non-finite number {raw!r}")
        if raw.is_integer():
            return str(int(raw))
        return repr(raw)
    raise TypeError(f"expected a number or boolean, got {type(raw).__name__}")


def tree_from_value(value: Any, role: Role | str) -> ValueTree:
    """Convert a parsed JSON-like value into a :data:`ValueTree`.

    ``role`` decides whether the one-of wrapper is accepted: it maps to a
    tuple node in ground truth and is rejected in predictions.
    """
    role = Role(role)
    if value is None:
        return NONE
    if isinstance(value, str):
        return StringValue(value)
    if isinstance(value, (bool, int, float)):
        return StringValue(canonical_scalar(value))
    if isinstance(value, (list, tuple)):
        return ListValue(tuple(tree_from_value(item, role) for item in value))
    if isinstance(value, dict):
        if ONEOF_KEY in value:
            return _tuple_from_wrapper(value, role)
        entries: dict[str, ValueTree] = {}
        for key, item in value.items():
            if not isinstance(key, str):
                raise MalformedInput(f"object keys must be strings, got {key!r}")
            entries[key] = tree_from_value(item, role)
        return DictValue(entries)
    raise MalformedInput(f"unsupported value of type {type(value).__name__}: {value!r}")


def _tuple_from_wrapper(value: dict, role: Role) -> TupleValue:
    if role is Role.PREDICTION:
        raise TupleInPrediction(
            f"the {ONEOF_KEY!r} wrapper is reserved for ground-truth documents"
        )
    if len(value) != 1:
        raise MalformedInput(
            f"{ONEOF_KEY!r} must be the only key of its object, got {sorted(value)!r}"
        )
    alternatives = value[ONEOF_KEY]
    if not isinstance(alternatives, list):
        raise MalformedInput(f"{ONEOF_KEY!r} must hold an array of alternatives")
    if not alternatives:
        raise EmptyTuple(f"{ONEOF_KEY!r} must hold at least one alternative")
    return TupleValue(tuple(tree_from_value(item, role) for item in alternatives))


def tree_to_value(tree: ValueTree) -> Any:
    """Inverse of :func:`tree_from_value`; tuples serialize as the one-of wrapper."""
    if isinstance(tree, NoneValue):
        return None
    if isinstance(tree, StringValue):
        return tree.text
    if isinstance(tree, TupleValue):
        return {ONEOF_KEY: [tree_to_value(item) for item in tree.alternatives]}
    if isinstance(tree, ListValue):
        return [tree_to_value(item) for item in tree.elements]
    if isinstance(tree, DictValue):
        return {key: tree_to_value(item) for key, item in tree.entries.items()}
    raise TypeError(f"not a ValueTree: {tree!r}")


def _checked_object(pairs: list[tuple[str, Any]]) -> dict[str, Any]:
    obj: dict[str, Any] = {}
    for key, value in pairs:
        if key in obj:
            raise MalformedInput(f"duplicate key {key!r} in object")
        obj[key] = value
    return obj


def _reject_constant(token: str) -> Any:
    raise NonFiniteNumber(f"non-finite number {token} is not allowed")


def loads_strict(text: str) -> Any:
    """json.loads that rejects duplicate object keys and non-finite numbers."""
    try:
        return json.loads(text, object_pairs_hook=_checked_object, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None


def parse_tree(text: str, role: Role | str) -> ValueTree:
    """Parse one serialized JSON document into a :data:`ValueTree`."""
    return tree_from_value(loads_strict(text), role)


@dataclass(frozen=True)
class DocumentSet:
    """An ordered collection of (sample_id, tree) pairs with unique ids."""

    samples: tuple[tuple[str, ValueTree], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", tuple(self.samples))
        seen: set[str] = set()
        for sample_id, _ in self.samples:
            if sample_id in seen:
                raise DuplicateId(f"duplicate sample id {sample_id!r}")
            seen.add(sample_id)

    def __len__(self) -> int:
        return len(self.samples)

    def ids(self) -> tuple[str, ...]:
        return tuple(sample_id for sample_id, _ in self.samples)

    def mapping(self) -> dict[str, ValueTree]:
        return dict(self.samples)


def parse_record(text: str) -> tuple[str, Any]:
    """Parse one JSONL record line into (sample_id, raw value)."""
    obj = loads_strict(text)
    if not isinstance(obj, dict):
        raise MalformedInput("record must be an object with 'id' and 'value' fields")
    if "id" not in obj or "value" not in obj:
        raise MalformedInput("record must carry both 'id' and 'value' fields")
    if not isinstance(obj["id"], str):
        raise MalformedInput(f"record id must be a string, got {obj['id']!r}")
    return obj["id"], obj["value"]


def iter_record_lines(text: str) -> Iterable[tuple[int, str]]:
    """Yield (line_number, line) for non-blank lines of a JSONL document."""
    for line_no, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            yield line_no, line


def load_document_set(text: str, role: Role | str) -> DocumentSet:
    """Load a line-delimited record file strictly: any bad line raises."""
    samples: list[tuple[str, ValueTree]] = []
    for line_no, line in iter_record_lines(text):
        try:
            sample_id, value = parse_record(line)
            samples.append((sample_id, tree_from_value(value, role)))
        except (MalformedInput, TupleInPrediction, EmptyTuple, NonFiniteNumber) as exc:
            raise type(exc)(f"line {line_no}: {exc}") from None
    return DocumentSet(tuple(samples))
