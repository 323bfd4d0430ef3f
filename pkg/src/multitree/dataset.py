"""Schema-declared attribute-vector datasets: parsing, validation, splitting.

Schema file format (one declaration per line, terminated by a period;
comment lines start with ``|``)::

    class: pass, fail.
    experience: yes, no.
    mark: continuous.

The ``class:`` line must come first.  Data files are header-less CSV with
the class label in the last column; ``?`` marks a missing value.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass, field

from .errors import (
    ArityMismatchError,
    BadCountError,
    DuplicateAttributeError,
    EmptyValueSetError,
    FewerThanTwoClassesError,
    NumericParseError,
    SchemaSyntaxError,
    UnknownDiscreteValueError,
    UnknownLabelError,
)

MISSING = None

CONTINUOUS = "continuous"
DISCRETE = "discrete"


@dataclass(frozen=True)
class AttributeDecl:
    name: str
    kind: str  # DISCRETE | CONTINUOUS
    values: tuple[str, ...] = ()  # empty for continuous

    def __post_init__(self):
        if self.kind not in (DISCRETE, CONTINUOUS):
            raise ValueError(f"unknown attribute kind {self.kind!r}")
        if self.kind == CONTINUOUS and self.values:
            raise ValueError("continuous attributes carry no value list")

    @property
    def is_continuous(self) -> bool:
        return self.kind == CONTINUOUS


@dataclass(frozen=True)
class Schema:
    attributes: tuple[AttributeDecl, ...]
    class_labels: tuple[str, ...]

    def __post_init__(self):
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names) or any(not n for n in names):
            raise DuplicateAttributeError(
                "attribute names must be unique and non-empty"
            )
        for a in self.attributes:
            if a.kind == DISCRETE:
                if len(a.values) < 2 or len(set(a.values)) != len(a.values):
                    raise EmptyValueSetError(
                        f"attribute {a.name!r} needs >= 2 distinct values"
                    )
        if len(self.class_labels) < 2 or len(set(self.class_labels)) != len(
            self.class_labels
        ):
            raise FewerThanTwoClassesError(
                "schema needs >= 2 distinct class labels"
            )

    def attribute_index(self, name: str) -> int:
        for i, a in enumerate(self.attributes):
            if a.name == name:
                return i
        raise KeyError(name)

    def label_index(self, label: str) -> int:
        return self.class_labels.index(label)


@dataclass(frozen=True)
class Instance:
    values: tuple  # str (discrete) | float (continuous) | None (missing)
    label: str


@dataclass(frozen=True)
class Dataset:
    schema: Schema
    instances: tuple[Instance, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)


def parse_schema(text: str) -> Schema:
    """Parse a schema file; the first non-comment line declares the classes."""
    class_labels = None
    attrs = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("|"):
            continue
        if not line.endswith("."):
            raise SchemaSyntaxError(line_no, "declaration must end with '.'")
        line = line[:-1]
        if ":" not in line:
            raise SchemaSyntaxError(line_no, "expected '<name>: <values>'")
        name, _, rhs = line.partition(":")
        name = name.strip()
        items = [v.strip() for v in rhs.split(",")]
        if any(not v for v in items):
            raise SchemaSyntaxError(line_no, "empty item in value list")
        if class_labels is None:
            if name != "class":
                raise SchemaSyntaxError(line_no, "first declaration must be 'class:'")
            class_labels = tuple(items)
            continue
        if items == [CONTINUOUS]:
            attrs.append(AttributeDecl(name, CONTINUOUS))
        else:
            attrs.append(AttributeDecl(name, DISCRETE, tuple(items)))
    if class_labels is None:
        raise SchemaSyntaxError(0, "missing 'class:' declaration")
    return Schema(tuple(attrs), class_labels)


def schema_to_text(schema: Schema) -> str:
    lines = ["class: " + ", ".join(schema.class_labels) + "."]
    for a in schema.attributes:
        if a.is_continuous:
            lines.append(f"{a.name}: continuous.")
        else:
            lines.append(f"{a.name}: " + ", ".join(a.values) + ".")
    return "\n".join(lines) + "\n"


def _parse_cell(raw: str, decl: AttributeDecl, row_no: int, col: int):
    raw = raw.strip()
    if raw == "?":
        return MISSING
    if decl.is_continuous:
        try:
            value = float(raw)
        except ValueError as exc:
            raise NumericParseError(row_no, col, f"bad number {raw!r}") from exc
        if not math.isfinite(value):
            raise NumericParseError(row_no, col, f"non-finite number {raw!r}")
        return value
    if raw not in decl.values:
        raise UnknownDiscreteValueError(
            row_no, col, f"value {raw!r} not declared for {decl.name!r}"
        )
    return raw


def parse_dataset(text: str, schema: Schema) -> Dataset:
    """Parse header-less CSV rows (label last, '?' = missing) into a Dataset."""
    n_attrs = len(schema.attributes)
    instances = []
    reader = csv.reader(io.StringIO(text))
    for row_no, row in enumerate(reader, start=1):
        if not row:
            continue
        if len(row) != n_attrs + 1:
            raise ArityMismatchError(
                row_no, f"expected {n_attrs + 1} columns, got {len(row)}"
            )
        values = tuple(
            _parse_cell(cell, decl, row_no, col)
            for col, (cell, decl) in enumerate(zip(row[:-1], schema.attributes))
        )
        label = row[-1].strip()
        if label not in schema.class_labels:
            raise UnknownLabelError(row_no, f"unknown class label {label!r}")
        instances.append(Instance(values, label))
    return Dataset(schema, tuple(instances))


def _format_value(value, decl: AttributeDecl) -> str:
    if value is MISSING:
        return "?"
    if decl.is_continuous:
        return repr(value)
    return value


def dataset_to_csv(dataset: Dataset) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for inst in dataset.instances:
        writer.writerow(
            [
                _format_value(v, d)
                for v, d in zip(inst.values, dataset.schema.attributes)
            ]
            + [inst.label]
        )
    return out.getvalue()


def split(dataset: Dataset, train_count: int, seed: int) -> tuple[Dataset, Dataset]:
    """Deterministically shuffle and partition into (train, test).

    Sizes are exactly (train_count, len - train_count); identical seeds
    give identical partitions.
    """
    n = len(dataset)
    if not 0 < train_count < n:
        raise BadCountError(f"train_count must be in (0, {n}), got {train_count}")
    order = list(range(n))
    random.Random(seed).shuffle(order)
    train = tuple(dataset.instances[i] for i in order[:train_count])
    test = tuple(dataset.instances[i] for i in order[train_count:])
    return Dataset(dataset.schema, train), Dataset(dataset.schema, test)
