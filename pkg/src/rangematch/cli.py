"""Command-line entry point.

Thin layer over the engine: each subcommand loads the registry/catalog/dataset
it needs, calls the corresponding engine function, and formats the result.
Failures exit 1 with one machine-parsable JSON record per error on stderr;
usage errors exit 2. Output files are written via temp-and-rename so a failed
run never leaves partial files behind.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog as catalog_mod
from . import dataset as dataset_mod
from . import matcher as matcher_mod
from . import taxonomy as taxonomy_mod
from .catalog import ARCHITECTURE_ORDER
from .errors import DatasetValidationError, Diagnostic, RangeMatchError
from .explain import HeatMapSpec, NormalizationMode, normalize, normalized_to_json_dict, render_svg

ENV_DATASET = "RANGEMATCH_DATASET"
ENV_UI_DIR = "RANGEMATCH_UI_DIR"


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DatasetValidationError as exc:
        for diagnostic in exc.diagnostics:
            _emit_diagnostic(diagnostic, getattr(args, "dataset", None))
        return 1
    except RangeMatchError as exc:
        _emit_error(exc.code, exc.message, _location_of(args))
        return 1
    except OSError as exc:
        _emit_error("IoError", str(exc), getattr(exc, "filename", None))
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rangematch",
        description="Match cyber range reference architectures to requirement profiles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list-attributes", help="print the 22 requirement attributes")
    _add_schema_flag(p)
    _add_format_flag(p)
    p.set_defaults(handler=cmd_list_attributes)

    p = sub.add_parser("list-architectures", help="print the six reference architectures")
    p.add_argument("--catalog", default=None, help="catalog JSON file (default: bundled)")
    _add_format_flag(p)
    p.set_defaults(handler=cmd_list_architectures)

    p = sub.add_parser("validate", help="validate a matching dataset CSV")
    _add_dataset_flags(p)
    p.add_argument("--strict", action="store_true", help="treat incomplete coverage as an error")
    _add_format_flag(p)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("match", help="score architectures against a requirement profile")
    _add_dataset_flags(p)
    p.add_argument("--profile", required=True, help="requirement profile JSON file")
    p.add_argument("--output", default=None, help="write the full-precision result JSON here")
    p.add_argument("--heatmap", default=None, help="write the contribution heat map SVG here")
    _add_format_flag(p)
    p.set_defaults(handler=cmd_match)

    p = sub.add_parser("compare", help="score several profiles side by side")
    _add_dataset_flags(p)
    p.add_argument(
        "--profile", action="append", required=True,
        help="profile JSON file (repeat for each profile)",
    )
    p.add_argument("--output", default=None, help="write the results JSON here")
    _add_format_flag(p)
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("export-defaults", help="write the bundled data files for editing")
    p.add_argument("--out-dir", required=True, help="directory to write the defaults into")
    p.set_defaults(handler=cmd_export_defaults)

    p = sub.add_parser("serve", help="run the HTTP API (and UI, when built)")
    _add_dataset_flags(p)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--ui-dir", default=None, help="directory with the built web UI")
    p.set_defaults(handler=cmd_serve)

    return parser


def _add_schema_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--schema", default=None, help="taxonomy schema JSON file (default: bundled)")


def _add_dataset_flags(p: argparse.ArgumentParser) -> None:
    _add_schema_flag(p)
    p.add_argument(
        "--dataset", default=None,
        help=f"matching dataset CSV, or 'default' for the bundled one (env {ENV_DATASET} overrides the default)",
    )


def _add_format_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format", choices=("json", "table", "csv"), default=None,
        help="output format (default: table on a terminal, json otherwise)",
    )


def _pick_format(args: argparse.Namespace) -> str:
    if args.format:
        return args.format
    return "table" if sys.stdout.isatty() else "json"


def _load_registry(args: argparse.Namespace) -> taxonomy_mod.Registry:
    schema = getattr(args, "schema", None)
    if schema in (None, "default"):
        return taxonomy_mod.default_registry()
    return taxonomy_mod.load_registry(schema)


def _dataset_path(args: argparse.Namespace) -> str | None:
    """--dataset wins; 'default'/absent falls back to the env override, then bundled."""
    requested = getattr(args, "dataset", None)
    if requested not in (None, "default"):
        return requested
    return os.environ.get(ENV_DATASET) or None


def _load_dataset(args: argparse.Namespace, registry: taxonomy_mod.Registry) -> dataset_mod.MatchingDataset:
    return dataset_mod.load_dataset(_dataset_path(args), registry)


def _location_of(args: argparse.Namespace) -> str | None:
    profile = getattr(args, "profile", None)
    if isinstance(profile, list):
        return None
    return profile or _dataset_path(args)


def _emit_error(code: str, message: str, location: str | None = None) -> None:
    record = {"code": code, "message": message}
    if location:
        record["location"] = str(location)
    print(json.dumps(record), file=sys.stderr)


def _emit_diagnostic(diagnostic: Diagnostic, source: str | None) -> None:
    record = diagnostic.record()
    where = source or "dataset"
    record["location"] = f"{where}:{diagnostic.line}" if diagnostic.line else where
    print(json.dumps(record), file=sys.stderr)


def _atomic_write(path: str | Path, data: bytes) -> None:
    target = Path(path)
    tmp = target.with_name(f"{target.name}.tmp{os.getpid()}")
    tmp.write_bytes(data)
    os.replace(tmp, target)


def cmd_list_attributes(args: argparse.Namespace) -> int:
    registry = _load_registry(args)
    fmt = _pick_format(args)
    if fmt == "json":
        print(json.dumps(registry.to_json_dict(), indent=2))
    elif fmt == "csv":
        print("set,name,values")
        for a in registry.attributes:
            print(f"{a.requirement_set.value},{a.name},{'|'.join(a.values)}")
    else:
        for a in registry.attributes:
            print(f"{a.requirement_set.value:<11}  {a.name:<13}  {' < '.join(a.values)}")
    return 0


def cmd_list_architectures(args: argparse.Namespace) -> int:
    catalog = catalog_mod.load_catalog(args.catalog)
    fmt = _pick_format(args)
    if fmt == "json":
        print(json.dumps(catalog.to_json_dict(), indent=2))
    elif fmt == "csv":
        print("id,display_name")
        for p in catalog.architectures():
            print(f"{p.id.value},{p.display_name}")
    else:
        for p in catalog.architectures():
            print(f"{p.id.value:<28}  {p.display_name}")
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    registry = _load_registry(args)
    dataset = _load_dataset(args, registry)
    fmt = _pick_format(args)
    coverage_errors = [d for d in dataset.diagnostics if d.code == "IncompleteCoverage"]
    strict_failed = bool(args.strict and coverage_errors)
    if fmt == "json":
        print(json.dumps({
            "valid": not strict_failed,
            "rows": len(dataset.rows),
            "source": dataset.source,
            "diagnostics": [d.record() for d in dataset.diagnostics],
        }, indent=2))
    else:
        status = "invalid" if strict_failed else "ok"
        coverage = "complete" if dataset.coverage_complete else "incomplete"
        print(f"{status}: {len(dataset.rows)} rows, coverage {coverage} ({dataset.source})")
    if strict_failed:
        for diagnostic in coverage_errors:
            _emit_diagnostic(diagnostic, _dataset_path(args))
        return 1
    return 0


def _totals_table(result: matcher_mod.MatchResult) -> str:
    lines = [f"{'rank':>4}  {'architecture':<28}  total"]
    for group_index, group in enumerate(result.ranking, start=1):
        for arch in group:
            lines.append(f"{group_index:>4}  {arch.value:<28}  {result.totals[arch]:.6g}")
    return "\n".join(lines)


def _totals_csv(result: matcher_mod.MatchResult) -> str:
    rank_of = {arch: i for i, group in enumerate(result.ranking, start=1) for arch in group}
    lines = ["architecture,total,rank"]
    for arch in ARCHITECTURE_ORDER:
        lines.append(f"{arch.value},{result.totals[arch]:.6g},{rank_of[arch]}")
    return "\n".join(lines)


def cmd_match(args: argparse.Namespace) -> int:
    registry = _load_registry(args)
    dataset = _load_dataset(args, registry)
    profile = matcher_mod.load_profile(args.profile, registry)
    result = matcher_mod.match(profile, dataset, registry)

    # render everything before touching the filesystem
    result_json = json.dumps(result.to_json_dict(), indent=2).encode("utf-8")
    svg = render_svg(_heatmap_spec(result)) if args.heatmap else None

    fmt = _pick_format(args)
    if fmt == "json":
        print(json.dumps(result.to_json_dict(), indent=2))
    elif fmt == "csv":
        print(_totals_csv(result))
    else:
        print(_totals_table(result))

    if args.output:
        _atomic_write(args.output, result_json)
    if svg is not None:
        _atomic_write(args.heatmap, svg)
    return 0


def _heatmap_spec(result: matcher_mod.MatchResult) -> HeatMapSpec:
    title = result.profile_echo.label or "Architecture contribution heat map"
    return HeatMapSpec(matrix=result.matrix, title=title)


def cmd_compare(args: argparse.Namespace) -> int:
    registry = _load_registry(args)
    dataset = _load_dataset(args, registry)

    outcomes: list[matcher_mod.MatchResult | RangeMatchError] = []
    for path in args.profile:
        try:
            profile = matcher_mod.load_profile(path, registry)
            outcomes.append(matcher_mod.match(profile, dataset, registry))
        except RangeMatchError as exc:
            outcomes.append(exc)

    document = {
        "dataset_source": dataset.source,
        "results": [
            o.to_json_dict() if isinstance(o, matcher_mod.MatchResult) else {"error": o.record()}
            for o in outcomes
        ],
    }
    fmt = _pick_format(args)
    if fmt == "json":
        print(json.dumps(document, indent=2))
    elif fmt == "csv":
        print(_compare_csv(args.profile, outcomes))
    else:
        print(_compare_table(args.profile, outcomes))
    if args.output:
        _atomic_write(args.output, json.dumps(document, indent=2).encode("utf-8"))

    failed = [(path, o) for path, o in zip(args.profile, outcomes) if isinstance(o, RangeMatchError)]
    for path, error in failed:
        _emit_error(error.code, error.message, path)
    return 1 if failed else 0


def _column_names(paths: list[str], outcomes: list) -> list[str]:
    names = []
    for path, outcome in zip(paths, outcomes):
        if isinstance(outcome, matcher_mod.MatchResult) and outcome.profile_echo.label:
            names.append(outcome.profile_echo.label)
        else:
            names.append(Path(path).stem)
    return names


def _compare_table(paths: list[str], outcomes: list) -> str:
    names = _column_names(paths, outcomes)
    widths = [max(len(n), 10) for n in names]
    lines = [f"{'architecture':<28}  " + "  ".join(n.rjust(w) for n, w in zip(names, widths))]
    for arch in ARCHITECTURE_ORDER:
        cells = []
        for outcome, w in zip(outcomes, widths):
            if isinstance(outcome, matcher_mod.MatchResult):
                cells.append(f"{outcome.totals[arch]:.6g}".rjust(w))
            else:
                cells.append(f"error:{outcome.code}".rjust(w))
        lines.append(f"{arch.value:<28}  " + "  ".join(cells))
    return "\n".join(lines)


def _compare_csv(paths: list[str], outcomes: list) -> str:
    names = _column_names(paths, outcomes)
    lines = ["architecture," + ",".join(names)]
    for arch in ARCHITECTURE_ORDER:
        cells = [
            f"{o.totals[arch]:.6g}" if isinstance(o, matcher_mod.MatchResult) else ""
            for o in outcomes
        ]
        lines.append(f"{arch.value}," + ",".join(cells))
    return "\n".join(lines)


def cmd_export_defaults(args: argparse.Namespace) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    from importlib import resources

    for name in ("schema.json", "catalog.json", "matching_dataset.csv", "example_profile.json"):
        data = resources.files("rangematch.data").joinpath(name).read_bytes()
        _atomic_write(out_dir / name, data)
        print(out_dir / name)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    registry = _load_registry(args)
    dataset = _load_dataset(args, registry)
    ui_dir = args.ui_dir or os.environ.get(ENV_UI_DIR) or _default_ui_dir()
    app = create_app(
        registry=registry,
        catalog=catalog_mod.default_catalog(),
        datasets={"default": dataset},
        ui_dir=Path(ui_dir) if ui_dir else None,
    )
    uvicorn.run(app, host=args.bind, port=args.port)
    return 0


def _default_ui_dir() -> str | None:
    candidate = Path.cwd() / "frontend" / "dist"
    return str(candidate) if candidate.is_dir() else None


if __name__ == "__main__":
    sys.exit(main())
