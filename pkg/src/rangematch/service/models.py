"""Request and response bodies for the HTTP API.

Request models reject unknown fields so client typos fail loudly (422) instead
of being silently ignored. Response models mirror the engine's JSON layouts.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field


class ProfileBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: str = "1"
    label: str | None = None
    selections: dict[str, str]


class MatchRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    profile: ProfileBody
    dataset: str = "default"
    normalization: Literal["global_linear", "per_attribute_linear"] = "global_linear"


class CompareRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    profiles: list[ProfileBody]
    dataset: str = "default"


class ApiError(BaseModel):
    code: str
    message: str
    details: dict[str, Any] = Field(default_factory=dict)


class AttributeBody(BaseModel):
    name: str
    set: str
    values: list[str]
    description: str = ""


class AttributesResponse(BaseModel):
    schema_version: str
    attributes: list[AttributeBody]


class ArchitectureBody(BaseModel):
    id: str
    display_name: str
    summary: str
    metric_ratings: dict[str, int]
    strengths: list[str]
    weaknesses: list[str]
    security_annotations: dict[str, int]


class ArchitecturesResponse(BaseModel):
    catalog_version: str
    architectures: list[ArchitectureBody]


class NormalizedMatrix(BaseModel):
    mode: str
    values: dict[str, dict[str, float]]


class MatchResponse(BaseModel):
    totals: dict[str, float]
    ranking: list[list[str]]
    matrix: dict[str, dict[str, float]]
    profile_echo: ProfileBody
    dataset_source: str
    normalized: NormalizedMatrix


class CompareResponse(BaseModel):
    dataset_source: str
    results: list[dict[str, Any]]


class HealthResponse(BaseModel):
    status: str
    version: str
    dataset_source: str
