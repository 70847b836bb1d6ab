"""FastAPI application factory.

Engine errors surface as HTTP 400 with the stable error record (code, message,
details); request-shape problems are FastAPI's usual 422. GET endpoints only
produce JSON and answer 406 when the Accept header rules that out.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Mapping

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..catalog import Catalog, default_catalog
from ..dataset import MatchingDataset, default_dataset
from ..errors import EmptyCompareError, RangeMatchError
from ..explain import NormalizationMode, normalize, normalized_to_json_dict
from ..matcher import example_profile, match, profile_from_json_dict
from ..taxonomy import Registry, default_registry
from .models import (
    ApiError,
    ArchitecturesResponse,
    AttributesResponse,
    CompareRequest,
    CompareResponse,
    HealthResponse,
    MatchRequest,
    MatchResponse,
    ProfileBody,
)

API_PREFIX = "/api/v1"


class UnknownDatasetError(RangeMatchError):
    code = "UnknownDataset"


def _accepts_json(accept: str | None) -> bool:
    if not accept:
        return True
    for part in accept.split(","):
        mime = part.split(";")[0].strip().lower()
        if mime in ("application/json", "application/*", "*/*"):
            return True
    return False


def _negotiate(request: Request) -> JSONResponse | None:
    accept = request.headers.get("accept")
    if _accepts_json(accept):
        return None
    return JSONResponse(
        status_code=406,
        content={
            "code": "NotAcceptable",
            "message": f"cannot produce {accept!r}; this endpoint serves application/json",
            "details": {},
        },
    )


def create_app(
    registry: Registry | None = None,
    catalog: Catalog | None = None,
    datasets: Mapping[str, MatchingDataset] | None = None,
    ui_dir: Path | None = None,
) -> FastAPI:
    """Build the service around a fixed registry, catalog, and named datasets."""
    registry = registry or default_registry()
    catalog = catalog or default_catalog()
    datasets = dict(datasets) if datasets else {"default": default_dataset()}

    from .. import __version__

    app = FastAPI(
        title="rangematch",
        version=__version__,
        docs_url="/api/docs",
        openapi_url="/api/openapi.json",
    )

    @app.exception_handler(RangeMatchError)
    async def engine_error(_request: Request, exc: RangeMatchError) -> JSONResponse:
        record = exc.record()
        record.setdefault("details", {})
        return JSONResponse(status_code=400, content=record)

    def _dataset(name: str) -> MatchingDataset:
        try:
            return datasets[name]
        except KeyError:
            raise UnknownDatasetError(
                f"no dataset named {name!r}", available=sorted(datasets)
            ) from None

    error_responses: dict[int | str, dict[str, Any]] = {400: {"model": ApiError}}

    @app.get(f"{API_PREFIX}/health", response_model=HealthResponse)
    def health(request: Request) -> Any:
        if (refusal := _negotiate(request)) is not None:
            return refusal
        return {
            "status": "ok",
            "version": __version__,
            "dataset_source": _dataset("default").source,
        }

    @app.get(f"{API_PREFIX}/attributes", response_model=AttributesResponse)
    def get_attributes(request: Request) -> Any:
        if (refusal := _negotiate(request)) is not None:
            return refusal
        return registry.to_json_dict()

    @app.get(f"{API_PREFIX}/architectures", response_model=ArchitecturesResponse)
    def get_architectures(request: Request) -> Any:
        if (refusal := _negotiate(request)) is not None:
            return refusal
        return catalog.to_json_dict()

    @app.get(
        f"{API_PREFIX}/profiles/example",
        response_model=ProfileBody,
        response_model_exclude_none=True,
    )
    def get_example_profile(request: Request) -> Any:
        if (refusal := _negotiate(request)) is not None:
            return refusal
        return example_profile().to_json_dict()

    @app.post(
        f"{API_PREFIX}/match",
        response_model=MatchResponse,
        response_model_exclude_none=True,
        responses=error_responses,
    )
    def post_match(body: MatchRequest) -> Any:
        dataset = _dataset(body.dataset)
        profile = profile_from_json_dict(body.profile.model_dump(exclude_none=True), registry)
        result = match(profile, dataset, registry)
        mode = NormalizationMode(body.normalization)
        if result.matrix.attributes:
            normalized = normalized_to_json_dict(normalize(result.matrix, mode), mode)
        else:
            # empty selections: nothing to normalize, but the match itself is valid
            normalized = {"mode": mode.value, "values": {}}
        return {**result.to_json_dict(), "normalized": normalized}

    @app.post(
        f"{API_PREFIX}/compare",
        response_model=CompareResponse,
        responses=error_responses,
    )
    def post_compare(body: CompareRequest) -> Any:
        dataset = _dataset(body.dataset)
        if not body.profiles:
            raise EmptyCompareError("compare requires at least one profile")
        results: list[dict[str, Any]] = []
        for entry in body.profiles:
            try:
                profile = profile_from_json_dict(entry.model_dump(exclude_none=True), registry)
                results.append(match(profile, dataset, registry).to_json_dict())
            except RangeMatchError as exc:
                record = exc.record()
                record.setdefault("details", {})
                results.append({"error": record})
        return {"dataset_source": dataset.source, "results": results}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:

        @app.get("/", include_in_schema=False)
        def index() -> JSONResponse:
            return JSONResponse(
                {"service": "rangematch", "api": API_PREFIX, "docs": "/api/docs"}
            )

    return app
