"""Reference architecture catalog: six architectures with qualitative metric profiles.

Ratings are 1-5 Likert favorability scores (5 = the architecture does well on
that metric). The bundled ratings are illustrative editorial judgments stored
as data, overridable with a custom catalog file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping

from .errors import InvalidCatalogError


class ArchitectureId(str, Enum):
    """The six reference architectures; values double as CSV column names."""

    PURE_PHYSICAL = "pure_physical"
    CENTRALLY_VIRTUALIZED = "centrally_virtualized"
    ON_PREMISE_CLOUD = "on_premise_cloud"
    PUBLIC_CLOUD = "public_cloud"
    DISTRIBUTED_VIRTUALIZATION = "distributed_virtualization"
    HYBRID = "hybrid"


ARCHITECTURE_ORDER: tuple[ArchitectureId, ...] = tuple(ArchitectureId)


class MetricCategory(str, Enum):
    SCOPE = "scope"
    PERFORMANCE = "performance"
    COST = "cost"
    SECURITY = "security"


class MetricName(str, Enum):
    EXTENSIBILITY = "extensibility"
    CAPACITY = "capacity"
    BUILD_SPEED = "build_speed"
    LATENCY = "latency"
    BUDGET = "budget"
    STAFF = "staff"
    SECURITY = "security"

    @property
    def category(self) -> MetricCategory:
        return _METRIC_CATEGORIES[self]


_METRIC_CATEGORIES = {
    MetricName.EXTENSIBILITY: MetricCategory.SCOPE,
    MetricName.CAPACITY: MetricCategory.SCOPE,
    MetricName.BUILD_SPEED: MetricCategory.PERFORMANCE,
    MetricName.LATENCY: MetricCategory.PERFORMANCE,
    MetricName.BUDGET: MetricCategory.COST,
    MetricName.STAFF: MetricCategory.COST,
    MetricName.SECURITY: MetricCategory.SECURITY,
}

# Composite security rating may carry per-aspect annotations.
SECURITY_ASPECTS = (
    "confidentiality",
    "integrity",
    "availability",
    "non_repudiation",
    "authenticity",
    "privacy",
)


def _check_rating(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 5:
        raise InvalidCatalogError(f"{where}: rating must be an integer in [1, 5]")
    return value


@dataclass(frozen=True)
class ArchitectureProfile:
    id: ArchitectureId
    display_name: str
    summary: str
    metric_ratings: Mapping[MetricName, int]
    strengths: tuple[str, ...] = ()
    weaknesses: tuple[str, ...] = ()
    security_annotations: Mapping[str, int] = field(default_factory=dict)


class Catalog:
    """Immutable collection of the six architecture profiles."""

    def __init__(self, catalog_version: str, profiles: tuple[ArchitectureProfile, ...]):
        self.catalog_version = catalog_version
        self.profiles = profiles
        self._by_id = {p.id: p for p in profiles}

    def architectures(self) -> tuple[ArchitectureProfile, ...]:
        return self.profiles

    def profile(self, arch: ArchitectureId) -> ArchitectureProfile:
        return self._by_id[arch]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "catalog_version": self.catalog_version,
            "architectures": [
                {
                    "id": p.id.value,
                    "display_name": p.display_name,
                    "summary": p.summary,
                    "metric_ratings": {m.value: r for m, r in p.metric_ratings.items()},
                    "strengths": list(p.strengths),
                    "weaknesses": list(p.weaknesses),
                    "security_annotations": dict(p.security_annotations),
                }
                for p in self.profiles
            ],
        }

    @classmethod
    def from_json_dict(cls, document: Any) -> "Catalog":
        if not isinstance(document, dict):
            raise InvalidCatalogError("catalog document must be a JSON object")
        version = document.get("catalog_version")
        if not isinstance(version, str):
            raise InvalidCatalogError("catalog_version must be a string")
        raw = document.get("architectures")
        if not isinstance(raw, list):
            raise InvalidCatalogError("architectures must be a list")

        by_id: dict[ArchitectureId, ArchitectureProfile] = {}
        for entry in raw:
            profile = _parse_profile(entry)
            if profile.id in by_id:
                raise InvalidCatalogError(f"duplicate architecture {profile.id.value!r}")
            by_id[profile.id] = profile
        missing = [a.value for a in ARCHITECTURE_ORDER if a not in by_id]
        if missing:
            raise InvalidCatalogError(f"catalog is missing architectures: {missing}")
        return cls(version, tuple(by_id[a] for a in ARCHITECTURE_ORDER))

    @classmethod
    def from_path(cls, path: str | Path) -> "Catalog":
        try:
            document = json.loads(Path(path).read_bytes().decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise InvalidCatalogError(f"catalog file is not valid UTF-8 JSON: {exc}") from exc
        return cls.from_json_dict(document)


def _parse_profile(entry: Any) -> ArchitectureProfile:
    if not isinstance(entry, dict):
        raise InvalidCatalogError("architecture entries must be objects")
    try:
        arch = ArchitectureId(entry.get("id"))
    except ValueError:
        raise InvalidCatalogError(f"unknown architecture id {entry.get('id')!r}") from None

    ratings_raw = entry.get("metric_ratings")
    if not isinstance(ratings_raw, dict):
        raise InvalidCatalogError(f"{arch.value}: metric_ratings must be an object")
    ratings: dict[MetricName, int] = {}
    for key, value in ratings_raw.items():
        try:
            metric = MetricName(key)
        except ValueError:
            raise InvalidCatalogError(f"{arch.value}: unknown metric {key!r}") from None
        ratings[metric] = _check_rating(value, f"{arch.value}.{key}")
    missing = [m.value for m in MetricName if m not in ratings]
    if missing:
        raise InvalidCatalogError(f"{arch.value}: missing metric ratings: {missing}")

    annotations_raw = entry.get("security_annotations", {})
    if not isinstance(annotations_raw, dict):
        raise InvalidCatalogError(f"{arch.value}: security_annotations must be an object")
    annotations: dict[str, int] = {}
    for key, value in annotations_raw.items():
        if key not in SECURITY_ASPECTS:
            raise InvalidCatalogError(f"{arch.value}: unknown security aspect {key!r}")
        annotations[key] = _check_rating(value, f"{arch.value}.security.{key}")

    return ArchitectureProfile(
        id=arch,
        display_name=str(entry.get("display_name", arch.value)),
        summary=str(entry.get("summary", "")),
        metric_ratings=MappingProxyType(ratings),
        strengths=tuple(str(s) for s in entry.get("strengths", [])),
        weaknesses=tuple(str(w) for w in entry.get("weaknesses", [])),
        security_annotations=MappingProxyType(annotations),
    )


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    data = resources.files("rangematch.data").joinpath("catalog.json").read_bytes()
    return Catalog.from_json_dict(json.loads(data.decode("utf-8")))


def load_catalog(path: str | Path | None = None) -> Catalog:
    if path is None:
        return default_catalog()
    return Catalog.from_path(path)


def architectures() -> tuple[ArchitectureProfile, ...]:
    """The six profiles in canonical order."""
    return default_catalog().architectures()


def profile(arch: ArchitectureId) -> ArchitectureProfile:
    return default_catalog().profile(arch)
