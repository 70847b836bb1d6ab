"""Decision support for matching cyber range architectures to requirements.

The engine scores six reference architectures against a requirement profile
over a fixed 22-attribute taxonomy: each selected (attribute, value) pair
contributes weight times per-architecture supportability score, and the
architecture totals are ranked. Heat map rendering explains where the totals
come from.

Typical use:

    from rangematch import default_dataset, example_profile, match

    result = match(example_profile(), default_dataset())
    print(result.top_group)
"""

from .catalog import (
    ARCHITECTURE_ORDER,
    ArchitectureId,
    ArchitectureProfile,
    Catalog,
    MetricCategory,
    MetricName,
    SECURITY_ASPECTS,
    architectures,
    default_catalog,
    load_catalog,
)
from .dataset import (
    CSV_HEADER,
    MatchingDataset,
    MatchingRow,
    default_dataset,
    load_dataset,
    parse_dataset,
    serialize_dataset,
)
from .errors import (
    DatasetValidationError,
    Diagnostic,
    DuplicateAttributeError,
    EmptyCompareError,
    EmptyMatrixError,
    InvalidCatalogError,
    InvalidSchemaError,
    MalformedProfileError,
    MissingRowError,
    RangeMatchError,
    SchemaMismatchError,
    UnknownAttributeError,
    UnknownValueError,
)
from .explain import (
    HeatMapSpec,
    NormalizationMode,
    normalize,
    ramp_color,
    render_svg,
    render_text,
)
from .matcher import (
    ContributionMatrix,
    MatchResult,
    RequirementProfile,
    compare,
    example_profile,
    load_profile,
    match,
    profile_from_json_dict,
    rank_groups,
    score_calculation,
    score_lookup,
)
from .taxonomy import (
    AttributeDefinition,
    CANONICAL_ATTRIBUTES,
    Registry,
    RequirementSet,
    default_registry,
    load_registry,
    lookup_attribute,
    normalize_identifier,
    registry,
    validate_value,
)

__version__ = "1.0.0"

__all__ = [
    "ARCHITECTURE_ORDER",
    "ArchitectureId",
    "ArchitectureProfile",
    "AttributeDefinition",
    "CANONICAL_ATTRIBUTES",
    "CSV_HEADER",
    "Catalog",
    "ContributionMatrix",
    "DatasetValidationError",
    "Diagnostic",
    "DuplicateAttributeError",
    "EmptyCompareError",
    "EmptyMatrixError",
    "HeatMapSpec",
    "InvalidCatalogError",
    "InvalidSchemaError",
    "MalformedProfileError",
    "MatchResult",
    "MatchingDataset",
    "MatchingRow",
    "MetricCategory",
    "MetricName",
    "MissingRowError",
    "NormalizationMode",
    "RangeMatchError",
    "Registry",
    "RequirementProfile",
    "RequirementSet",
    "SECURITY_ASPECTS",
    "SchemaMismatchError",
    "UnknownAttributeError",
    "UnknownValueError",
    "architectures",
    "compare",
    "default_catalog",
    "default_dataset",
    "default_registry",
    "example_profile",
    "load_catalog",
    "load_dataset",
    "load_profile",
    "load_registry",
    "lookup_attribute",
    "match",
    "normalize",
    "normalize_identifier",
    "parse_dataset",
    "profile_from_json_dict",
    "ramp_color",
    "rank_groups",
    "registry",
    "render_svg",
    "render_text",
    "score_calculation",
    "score_lookup",
    "serialize_dataset",
    "validate_value",
    "__version__",
]
