"""Two-stage matching: select the dataset rows a profile picks, then
sum weight x supportability per architecture into a ranked, explainable result.

All functions are pure over immutable inputs. Accumulation walks attributes
in registry order so results are bit-for-bit deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .catalog import ARCHITECTURE_ORDER, ArchitectureId
from .dataset import MatchingDataset, MatchingRow
from .errors import (
    DuplicateAttributeError,
    EmptyCompareError,
    MalformedProfileError,
    MissingRowError,
    RangeMatchError,
    SchemaMismatchError,
)
from .taxonomy import Registry, default_registry


@dataclass(frozen=True)
class RequirementProfile:
    """A user's partial selection: at most one value per attribute."""

    selections: Mapping[str, str]
    label: str | None = None
    schema_version: str | None = None

    @classmethod
    def validated(
        cls,
        selections: Mapping[str, str],
        registry: Registry | None = None,
        label: str | None = None,
        schema_version: str | None = None,
    ) -> "RequirementProfile":
        """Normalize identifiers and check every pair against the taxonomy."""
        registry = registry or default_registry()
        normalized: dict[str, str] = {}
        for attribute, value in selections.items():
            definition = registry.lookup(attribute)
            if definition.name in normalized:
                raise DuplicateAttributeError(
                    f"attribute {definition.name!r} selected more than once",
                    attribute=definition.name,
                )
            normalized[definition.name] = definition.value_label(value).label
        return cls(
            selections=normalized,
            label=label,
            schema_version=schema_version if schema_version is not None else registry.schema_version,
        )

    def to_json_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"schema_version": self.schema_version}
        if self.label is not None:
            doc["label"] = self.label
        doc["selections"] = dict(self.selections)
        return doc


def load_profile(path: str | Path, registry: Registry | None = None) -> RequirementProfile:
    """Profile from a JSON file: {schema_version, label?, selections}."""
    try:
        document = json.loads(Path(path).read_bytes().decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedProfileError(f"profile file is not valid UTF-8 JSON: {exc}") from exc
    return profile_from_json_dict(document, registry)


def profile_from_json_dict(document: Any, registry: Registry | None = None) -> RequirementProfile:
    if not isinstance(document, dict):
        raise MalformedProfileError("profile document must be a JSON object")
    unknown = set(document) - {"schema_version", "label", "selections"}
    if unknown:
        raise MalformedProfileError(f"unexpected profile fields: {sorted(unknown)}")
    version = document.get("schema_version")
    if not isinstance(version, str):
        raise MalformedProfileError("profile schema_version must be a string")
    label = document.get("label")
    if label is not None and not isinstance(label, str):
        raise MalformedProfileError("profile label must be a string")
    selections = document.get("selections")
    if not isinstance(selections, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in selections.items()
    ):
        raise MalformedProfileError("profile selections must map attribute names to values")
    return RequirementProfile.validated(
        selections, registry, label=label, schema_version=version
    )


@lru_cache(maxsize=1)
def example_profile() -> RequirementProfile:
    """The bundled example used in docs and regression tests."""
    data = resources.files("rangematch.data").joinpath("example_profile.json").read_bytes()
    return profile_from_json_dict(json.loads(data.decode("utf-8")))


@dataclass(frozen=True)
class ContributionMatrix:
    """Per (attribute, architecture) contribution: weight x supportability."""

    attributes: tuple[str, ...]
    values: Mapping[str, Mapping[ArchitectureId, float]]

    def entry(self, attribute: str, arch: ArchitectureId) -> float:
        return self.values[attribute][arch]

    @property
    def cell_count(self) -> int:
        return len(self.attributes) * len(ARCHITECTURE_ORDER)

    def to_json_dict(self) -> dict[str, dict[str, float]]:
        return {
            attribute: {arch.value: self.values[attribute][arch] for arch in ARCHITECTURE_ORDER}
            for attribute in self.attributes
        }


@dataclass(frozen=True)
class MatchResult:
    totals: Mapping[ArchitectureId, float]
    ranking: tuple[tuple[ArchitectureId, ...], ...]
    matrix: ContributionMatrix
    profile_echo: RequirementProfile
    dataset_source: str

    @property
    def top_group(self) -> tuple[ArchitectureId, ...]:
        return self.ranking[0]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "totals": {arch.value: self.totals[arch] for arch in ARCHITECTURE_ORDER},
            "ranking": [[arch.value for arch in group] for group in self.ranking],
            "matrix": self.matrix.to_json_dict(),
            "profile_echo": self.profile_echo.to_json_dict(),
            "dataset_source": self.dataset_source,
        }


def score_lookup(
    profile: RequirementProfile,
    dataset: MatchingDataset,
    registry: Registry | None = None,
) -> list[MatchingRow]:
    """One dataset row per selection, in registry attribute order."""
    registry = registry or default_registry()
    if profile.schema_version is not None and profile.schema_version != dataset.schema_version:
        raise SchemaMismatchError(
            "profile and dataset were validated against different schema versions",
            profile_version=profile.schema_version,
            dataset_version=dataset.schema_version,
        )
    ordered = sorted(profile.selections.items(), key=lambda kv: registry.attribute_index(kv[0]))
    rows: list[MatchingRow] = []
    for attribute, value in ordered:
        registry.validate_value(attribute, value)
        row = dataset.row_for(attribute, value)
        if row is None:
            raise MissingRowError(
                f"dataset has no row for ({attribute}, {value})",
                attribute=attribute,
                value=value,
            )
        rows.append(row)
    return rows


def score_calculation(
    rows: list[MatchingRow],
    profile_echo: RequirementProfile | None = None,
    dataset_source: str = "",
) -> MatchResult:
    """Weighted totals, exact-equality rank groups, and the contribution matrix."""
    seen: set[str] = set()
    for row in rows:
        if row.attribute in seen:
            raise DuplicateAttributeError(
                f"two rows share attribute {row.attribute!r}", attribute=row.attribute
            )
        seen.add(row.attribute)

    totals = {arch: 0.0 for arch in ARCHITECTURE_ORDER}
    matrix_values: dict[str, dict[ArchitectureId, float]] = {}
    for row in rows:
        contributions = {arch: row.weight * row.scores[arch] for arch in ARCHITECTURE_ORDER}
        matrix_values[row.attribute] = contributions
        for arch in ARCHITECTURE_ORDER:
            totals[arch] += contributions[arch]

    ranking = rank_groups(totals)
    matrix = ContributionMatrix(tuple(r.attribute for r in rows), matrix_values)
    echo = profile_echo if profile_echo is not None else RequirementProfile(
        selections={row.attribute: row.value for row in rows}
    )
    return MatchResult(
        totals=totals,
        ranking=ranking,
        matrix=matrix,
        profile_echo=echo,
        dataset_source=dataset_source,
    )


def rank_groups(totals: Mapping[ArchitectureId, float]) -> tuple[tuple[ArchitectureId, ...], ...]:
    """Descending by total; exact-equality ties share a group in canonical order."""
    groups: dict[float, list[ArchitectureId]] = {}
    for arch in ARCHITECTURE_ORDER:
        groups.setdefault(totals[arch], []).append(arch)
    return tuple(
        tuple(groups[total]) for total in sorted(groups, reverse=True)
    )


def match(
    profile: RequirementProfile,
    dataset: MatchingDataset,
    registry: Registry | None = None,
) -> MatchResult:
    rows = score_lookup(profile, dataset, registry)
    return score_calculation(rows, profile_echo=profile, dataset_source=dataset.source)


def compare(
    profiles: list[RequirementProfile],
    dataset: MatchingDataset,
    registry: Registry | None = None,
) -> list[MatchResult | RangeMatchError]:
    """Positional results; a failing profile yields its error without aborting the rest."""
    if not profiles:
        raise EmptyCompareError("compare needs at least one profile")
    outcomes: list[MatchResult | RangeMatchError] = []
    for profile in profiles:
        try:
            outcomes.append(match(profile, dataset, registry))
        except RangeMatchError as exc:
            outcomes.append(exc)
    return outcomes
