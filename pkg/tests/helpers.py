"""Shared builders for randomized and fixture-based tests."""

from __future__ import annotations

import random

from rangematch import (
    ARCHITECTURE_ORDER,
    CANONICAL_ATTRIBUTES,
    CSV_HEADER,
    MatchingDataset,
    Registry,
    default_registry,
    parse_dataset,
)

ARCH_NAMES = tuple(a.value for a in ARCHITECTURE_ORDER)


def pick_value(rng: random.Random, step: float | None) -> float:
    """A weight or score in [0, 5]: continuous, or on a fixed grid when step is set."""
    if step is None:
        return rng.uniform(0.0, 5.0)
    return rng.randrange(0, round(5 / step) + 1) * step


def random_rows(
    rng: random.Random,
    registry: Registry | None = None,
    min_rows: int = 10,
    max_rows: int = 110,
    step: float | None = None,
) -> dict:
    """Distinct (attribute, value) rows drawn from the registry's pair universe."""
    registry = registry or default_registry()
    pairs = list(registry.iter_pairs())
    rng.shuffle(pairs)
    count = rng.randint(min(min_rows, len(pairs)), min(max_rows, len(pairs)))
    return {
        pair: (pick_value(rng, step), {arch: pick_value(rng, step) for arch in ARCH_NAMES})
        for pair in pairs[:count]
    }


def rows_to_csv(rows: dict, rng: random.Random | None = None) -> bytes:
    """CSV bytes for a rows mapping; row order shuffled when rng is given."""
    items = list(rows.items())
    if rng is not None:
        rng.shuffle(items)
    lines = [CSV_HEADER]
    for (attribute, value), (weight, scores) in items:
        cells = [attribute, value, repr(weight)] + [repr(scores[a]) for a in ARCH_NAMES]
        lines.append(",".join(cells))
    return ("\n".join(lines) + "\n").encode("utf-8")


def dataset_from_rows(
    rows: dict, registry: Registry | None = None, rng: random.Random | None = None
) -> MatchingDataset:
    return parse_dataset(rows_to_csv(rows, rng), registry, source="<generated>")


def random_selections(
    rng: random.Random, rows: dict, max_attributes: int | None = None
) -> dict[str, str]:
    """One value per attribute, drawn only from pairs present in rows."""
    by_attribute: dict[str, list[str]] = {}
    for attribute, value in rows:
        by_attribute.setdefault(attribute, []).append(value)
    names = sorted(by_attribute)
    rng.shuffle(names)
    limit = len(names) if max_attributes is None else min(max_attributes, len(names))
    count = rng.randint(1, limit)
    return {name: rng.choice(by_attribute[name]) for name in sorted(names[:count])}


def synthetic_registry(rng: random.Random, max_values: int = 8) -> Registry:
    """A valid registry with the fixed attribute names but randomized value domains.

    Lets randomized datasets exceed the default registry's 80-pair universe.
    """
    attributes = []
    for name, requirement_set in CANONICAL_ATTRIBUTES:
        width = rng.randint(2, max_values)
        attributes.append(
            {
                "name": name,
                "set": requirement_set.value,
                "values": [f"{name}_v{i}" for i in range(width)],
                "description": "",
            }
        )
    return Registry.from_json_dict({"schema_version": "1", "attributes": attributes})
