"""Matching dataset: per (attribute, value) significance weights and supportability scores.

The on-disk form is a strict CSV dialect: comma separated, double-quote
escaping, LF line endings, exactly one header row, no comments. Parsing
collects every problem it finds instead of stopping at the first one;
hard errors raise, a coverage gap is attached as a soft diagnostic.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping

from .catalog import ARCHITECTURE_ORDER, ArchitectureId
from .errors import DatasetValidationError, Diagnostic, UnknownAttributeError, UnknownValueError
from .taxonomy import Registry, default_registry, normalize_identifier

CSV_HEADER = (
    "attribute_name,attribute_value,attribute_weight,"
    "pure_physical,centrally_virtualized,on_premise_cloud,"
    "public_cloud,distributed_virtualization,hybrid"
)
_HEADER_FIELDS = CSV_HEADER.split(",")

SCORE_MIN = 0.0
SCORE_MAX = 5.0


@dataclass(frozen=True)
class MatchingRow:
    attribute: str
    value: str
    weight: float
    scores: Mapping[ArchitectureId, float]

    @property
    def key(self) -> tuple[str, str]:
        return (self.attribute, self.value)


@dataclass(frozen=True)
class MatchingDataset:
    rows: tuple[MatchingRow, ...]
    source: str
    schema_version: str
    diagnostics: tuple[Diagnostic, ...] = ()

    def row_for(self, attribute: str, value: str) -> MatchingRow | None:
        return self._index.get((attribute, value))

    @property
    def _index(self) -> dict[tuple[str, str], MatchingRow]:
        index = getattr(self, "_index_cache", None)
        if index is None:
            index = {row.key: row for row in self.rows}
            object.__setattr__(self, "_index_cache", index)
        return index

    @property
    def coverage_complete(self) -> bool:
        return not any(d.code == "IncompleteCoverage" for d in self.diagnostics)


def format_number(value: float) -> str:
    """Shortest decimal that round-trips to the same float; integral values drop the point."""
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def parse_dataset(
    data: bytes | str,
    registry: Registry | None = None,
    source: str = "<stream>",
) -> MatchingDataset:
    """Parse and fully validate a matching dataset CSV.

    Raises DatasetValidationError carrying every hard diagnostic found.
    A dataset that is valid but does not cover every (attribute, value)
    pair comes back with an IncompleteCoverage diagnostic attached.
    """
    registry = registry or default_registry()
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DatasetValidationError(
                [Diagnostic("MalformedCsv", f"input is not UTF-8: {exc}", line=None)]
            ) from exc
    else:
        text = data
    if text.startswith("﻿"):
        text = text[1:]

    errors: list[Diagnostic] = []
    rows: list[MatchingRow] = []
    seen: dict[tuple[str, str], list[int]] = {}

    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    try:
        records = list(reader)
    except csv.Error as exc:
        raise DatasetValidationError(
            [Diagnostic("MalformedCsv", f"CSV syntax error: {exc}", line=reader.line_num)]
        ) from exc

    if not records:
        raise DatasetValidationError(
            [Diagnostic("MalformedCsv", "empty input: missing header row", line=1)]
        )
    if records[0] != _HEADER_FIELDS:
        raise DatasetValidationError(
            [
                Diagnostic(
                    "MalformedCsv",
                    f"header must be exactly {CSV_HEADER!r}",
                    line=1,
                    details={"got": ",".join(records[0])},
                )
            ]
        )

    for line, record in enumerate(records[1:], start=2):
        if not record:
            continue  # trailing blank line
        if len(record) != len(_HEADER_FIELDS):
            errors.append(
                Diagnostic(
                    "MalformedCsv",
                    f"expected {len(_HEADER_FIELDS)} fields, got {len(record)}",
                    line=line,
                )
            )
            continue
        row = _parse_row(record, line, registry, errors)
        if row is None:
            continue
        if row.key in seen:
            seen[row.key].append(line)
        else:
            seen[row.key] = [line]
            rows.append(row)

    for (attribute, value), lines in seen.items():
        if len(lines) > 1:
            errors.append(
                Diagnostic(
                    "DuplicateRow",
                    f"duplicate row for ({attribute}, {value}) on lines {lines}",
                    line=lines[1],
                    key=(attribute, value),
                    details={"attribute": attribute, "value": value, "lines": lines},
                )
            )

    if errors:
        errors.sort(key=lambda d: (d.line or 0, d.code, d.key))
        raise DatasetValidationError(errors)

    diagnostics: list[Diagnostic] = []
    missing = [pair for pair in registry.iter_pairs() if pair not in seen]
    if missing:
        diagnostics.append(
            Diagnostic(
                "IncompleteCoverage",
                f"{len(missing)} (attribute, value) pair(s) have no row",
                key=tuple(missing),
                details={"missing": [list(p) for p in missing]},
            )
        )

    return MatchingDataset(
        rows=tuple(rows),
        source=source,
        schema_version=registry.schema_version,
        diagnostics=tuple(diagnostics),
    )


def _parse_row(
    record: list[str], line: int, registry: Registry, errors: list[Diagnostic]
) -> MatchingRow | None:
    attribute_raw, value_raw, weight_raw = record[0], record[1], record[2]
    try:
        definition = registry.lookup(attribute_raw)
    except UnknownAttributeError:
        errors.append(
            Diagnostic(
                "UnknownAttribute",
                f"unknown attribute {attribute_raw!r}",
                line=line,
                key=(normalize_identifier(attribute_raw),),
                details={"attribute": attribute_raw},
            )
        )
        return None
    try:
        label = definition.value_label(value_raw)
    except UnknownValueError:
        errors.append(
            Diagnostic(
                "UnknownValue",
                f"attribute {definition.name!r} has no value {value_raw!r}",
                line=line,
                key=(definition.name, normalize_identifier(value_raw)),
                details={
                    "attribute": definition.name,
                    "value": value_raw,
                    "allowed": list(definition.values),
                },
            )
        )
        return None

    ok = True
    weight = _parse_float(weight_raw, line, "attribute_weight", errors)
    if weight is None:
        ok = False
    elif not math.isfinite(weight) or weight < 0:
        errors.append(
            Diagnostic(
                "WeightOutOfRange",
                f"weight {weight_raw!r} must be a finite number >= 0",
                line=line,
                key=(definition.name, label.label),
            )
        )
        ok = False

    scores: dict[ArchitectureId, float] = {}
    for arch, cell in zip(ARCHITECTURE_ORDER, record[3:]):
        score = _parse_float(cell, line, arch.value, errors)
        if score is None:
            ok = False
        elif not math.isfinite(score) or not SCORE_MIN <= score <= SCORE_MAX:
            errors.append(
                Diagnostic(
                    "ScoreOutOfRange",
                    f"{arch.value} score {cell!r} must be in [{SCORE_MIN:g}, {SCORE_MAX:g}]",
                    line=line,
                    key=(definition.name, label.label, arch.value),
                )
            )
            ok = False
        else:
            scores[arch] = score

    if not ok:
        return None
    return MatchingRow(definition.name, label.label, weight, scores)


def _parse_float(cell: str, line: int, column: str, errors: list[Diagnostic]) -> float | None:
    try:
        return float(cell)
    except ValueError:
        errors.append(
            Diagnostic(
                "MalformedCsv",
                f"column {column!r} value {cell!r} is not a number",
                line=line,
                key=(column,),
            )
        )
        return None


def serialize_dataset(dataset: MatchingDataset, registry: Registry | None = None) -> bytes:
    """Canonical CSV: fixed header, rows in registry attribute order then value ordinal."""
    registry = registry or default_registry()

    def sort_key(row: MatchingRow) -> tuple[int, int]:
        definition = registry.lookup(row.attribute)
        return (registry.attribute_index(row.attribute), definition.values.index(row.value))

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_HEADER_FIELDS)
    for row in sorted(dataset.rows, key=sort_key):
        writer.writerow(
            [row.attribute, row.value, format_number(row.weight)]
            + [format_number(row.scores[arch]) for arch in ARCHITECTURE_ORDER]
        )
    return out.getvalue().encode("utf-8")


@lru_cache(maxsize=1)
def default_dataset() -> MatchingDataset:
    """The bundled illustrative dataset; full coverage over the default registry."""
    data = resources.files("rangematch.data").joinpath("matching_dataset.csv").read_bytes()
    return parse_dataset(data, default_registry(), source="bundled-default")


def load_dataset(path: str | Path | None, registry: Registry | None = None) -> MatchingDataset:
    """Dataset from a CSV file; the bundled default when path is None or "default"."""
    if path is None or str(path) == "default":
        if registry is None or registry is default_registry():
            return default_dataset()
        data = resources.files("rangematch.data").joinpath("matching_dataset.csv").read_bytes()
        return parse_dataset(data, registry, source="bundled-default")
    return parse_dataset(Path(path).read_bytes(), registry, source=str(path))
