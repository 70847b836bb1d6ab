"""Requirement taxonomy: three requirement sets, 22 attributes, ordered value domains.

The attribute names and their grouping are fixed; the value domains are data,
loaded from a versioned JSON schema file so they can be revised without code
changes. The bundled default ships with the package.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Iterator

from .errors import InvalidSchemaError, UnknownAttributeError, UnknownValueError


class RequirementSet(str, Enum):
    PURPOSE = "purpose"
    SCOPE = "scope"
    CONSTRAINTS = "constraints"


# Fixed attribute names per requirement set, in presentation order.
CANONICAL_ATTRIBUTES: tuple[tuple[str, RequirementSet], ...] = (
    ("employment", RequirementSet.PURPOSE),
    ("sector", RequirementSet.PURPOSE),
    ("teaming", RequirementSet.PURPOSE),
    ("scoring", RequirementSet.PURPOSE),
    ("tutoring", RequirementSet.PURPOSE),
    ("domain", RequirementSet.SCOPE),
    ("federation", RequirementSet.SCOPE),
    ("concurrency", RequirementSet.SCOPE),
    ("connectivity", RequirementSet.SCOPE),
    ("fidelity", RequirementSet.SCOPE),
    ("duration", RequirementSet.SCOPE),
    ("availability", RequirementSet.SCOPE),
    ("retention", RequirementSet.SCOPE),
    ("integration", RequirementSet.SCOPE),
    ("updateability", RequirementSet.SCOPE),
    ("scalability", RequirementSet.SCOPE),
    ("budget", RequirementSet.CONSTRAINTS),
    ("build_speed", RequirementSet.CONSTRAINTS),
    ("latency", RequirementSet.CONSTRAINTS),
    ("staff", RequirementSet.CONSTRAINTS),
    ("physical", RequirementSet.CONSTRAINTS),
    ("security", RequirementSet.CONSTRAINTS),
)

SUPPORTED_SCHEMA_VERSIONS = ("1",)

_CANONICAL_INDEX = {name: i for i, (name, _) in enumerate(CANONICAL_ATTRIBUTES)}
_CANONICAL_SET = dict(CANONICAL_ATTRIBUTES)


def normalize_identifier(text: str) -> str:
    """Lowercase snake_case form used for all attribute/value keys.

    "Build Speed" -> "build_speed".
    """
    cleaned = re.sub(r"[\s\-]+", "_", text.strip().lower())
    return re.sub(r"_+", "_", cleaned)


@dataclass(frozen=True)
class ValueLabel:
    label: str
    ordinal: int


@dataclass(frozen=True)
class AttributeDefinition:
    """One requirement attribute with its ordered value domain."""

    name: str
    requirement_set: RequirementSet
    values: tuple[str, ...]
    description: str = ""

    def value_label(self, value: str) -> ValueLabel:
        normalized = normalize_identifier(value)
        try:
            return ValueLabel(normalized, self.values.index(normalized))
        except ValueError:
            raise UnknownValueError(
                f"attribute {self.name!r} has no value {value!r}",
                attribute=self.name,
                value=value,
                allowed=list(self.values),
            ) from None


class Registry:
    """Immutable attribute registry loaded from a schema document."""

    def __init__(self, schema_version: str, attributes: tuple[AttributeDefinition, ...]):
        self.schema_version = schema_version
        self.attributes = attributes
        self._by_name = {a.name: a for a in attributes}

    def lookup(self, name: str) -> AttributeDefinition:
        definition = self._by_name.get(normalize_identifier(name))
        if definition is None:
            raise UnknownAttributeError(f"unknown attribute {name!r}", attribute=name)
        return definition

    def validate_value(self, attribute: str, value: str) -> ValueLabel:
        return self.lookup(attribute).value_label(value)

    def attribute_index(self, name: str) -> int:
        return _CANONICAL_INDEX[self.lookup(name).name]

    def iter_pairs(self) -> Iterator[tuple[str, str]]:
        """All (attribute, value) pairs in canonical order."""
        for definition in self.attributes:
            for value in definition.values:
                yield definition.name, value

    def pair_count(self) -> int:
        return sum(len(a.values) for a in self.attributes)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "attributes": [
                {
                    "name": a.name,
                    "set": a.requirement_set.value,
                    "values": list(a.values),
                    "description": a.description,
                }
                for a in self.attributes
            ],
        }

    @classmethod
    def from_json_dict(cls, document: Any) -> "Registry":
        if not isinstance(document, dict):
            raise InvalidSchemaError("schema document must be a JSON object")
        unknown = set(document) - {"schema_version", "attributes"}
        if unknown:
            raise InvalidSchemaError(f"unexpected schema fields: {sorted(unknown)}")
        version = document.get("schema_version")
        if not isinstance(version, str):
            raise InvalidSchemaError("schema_version must be a string")
        if version not in SUPPORTED_SCHEMA_VERSIONS:
            raise InvalidSchemaError(
                f"unsupported schema_version {version!r}",
                supported=list(SUPPORTED_SCHEMA_VERSIONS),
            )
        raw = document.get("attributes")
        if not isinstance(raw, list):
            raise InvalidSchemaError("attributes must be a list")

        parsed: dict[str, AttributeDefinition] = {}
        for entry in raw:
            parsed.update(_parse_attribute(entry))

        missing = [name for name, _ in CANONICAL_ATTRIBUTES if name not in parsed]
        extra = sorted(set(parsed) - set(_CANONICAL_INDEX))
        if missing or extra:
            raise InvalidSchemaError(
                "schema attributes do not match the fixed taxonomy",
                missing=missing,
                unexpected=extra,
            )
        ordered = tuple(parsed[name] for name, _ in CANONICAL_ATTRIBUTES)
        return cls(version, ordered)

    @classmethod
    def from_bytes(cls, data: bytes) -> "Registry":
        try:
            document = json.loads(data.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise InvalidSchemaError(f"schema file is not valid UTF-8 JSON: {exc}") from exc
        return cls.from_json_dict(document)

    @classmethod
    def from_path(cls, path: str | Path) -> "Registry":
        return cls.from_bytes(Path(path).read_bytes())


def _parse_attribute(entry: Any) -> dict[str, AttributeDefinition]:
    if not isinstance(entry, dict):
        raise InvalidSchemaError("attribute entries must be objects")
    unknown = set(entry) - {"name", "set", "values", "description"}
    if unknown:
        raise InvalidSchemaError(f"unexpected attribute fields: {sorted(unknown)}")
    name = normalize_identifier(str(entry.get("name", "")))
    if name not in _CANONICAL_SET:
        raise InvalidSchemaError(f"unknown attribute {name!r} in schema file", attribute=name)
    declared_set = entry.get("set")
    expected_set = _CANONICAL_SET[name]
    if declared_set != expected_set.value:
        raise InvalidSchemaError(
            f"attribute {name!r} must belong to set {expected_set.value!r}",
            attribute=name,
            declared=declared_set,
        )
    raw_values = entry.get("values")
    if not isinstance(raw_values, list) or len(raw_values) < 2:
        raise InvalidSchemaError(f"attribute {name!r} needs at least 2 values", attribute=name)
    values = tuple(normalize_identifier(str(v)) for v in raw_values)
    if len(set(values)) != len(values):
        raise InvalidSchemaError(f"attribute {name!r} has duplicate values", attribute=name)
    description = entry.get("description", "")
    if not isinstance(description, str):
        raise InvalidSchemaError(f"attribute {name!r} description must be a string")
    return {name: AttributeDefinition(name, expected_set, values, description)}


@lru_cache(maxsize=1)
def default_registry() -> Registry:
    data = resources.files("rangematch.data").joinpath("schema.json").read_bytes()
    return Registry.from_bytes(data)


def load_registry(path: str | Path | None = None) -> Registry:
    """Registry from a schema file; the bundled default when path is None."""
    if path is None:
        return default_registry()
    return Registry.from_path(path)


def registry() -> tuple[AttributeDefinition, ...]:
    """All 22 attribute definitions, purpose first, then scope, then constraints."""
    return default_registry().attributes


def lookup_attribute(name: str) -> AttributeDefinition:
    return default_registry().lookup(name)


def validate_value(attribute: str, value: str) -> ValueLabel:
    return default_registry().validate_value(attribute, value)
