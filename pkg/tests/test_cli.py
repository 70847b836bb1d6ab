import json

import pytest

from rangematch import CSV_HEADER

FIVE_ROW_CSV = "\n".join(
    [
        CSV_HEADER,
        "teaming,red_blue,4,2,3,4,3,2,5",
        "fidelity,high,5,5,3,3,2,2,4",
        "budget,low,3,1,2,1,4,3,2",
        "latency,strict,2,5,4,3,1,2,4",
        "scalability,high,1,0,2,3,5,4,4",
        "",
    ]
)
FIVE_SELECTIONS = {
    "teaming": "red_blue",
    "fidelity": "high",
    "budget": "low",
    "latency": "strict",
    "scalability": "high",
}

EXAMPLE_TOTALS = {
    "pure_physical": 126.5,
    "centrally_virtualized": 138.0,
    "on_premise_cloud": 156.0,
    "public_cloud": 121.0,
    "distributed_virtualization": 92.0,
    "hybrid": 188.5,
}


def stderr_records(err):
    lines = [line for line in err.splitlines() if line.strip()]
    return [json.loads(line) for line in lines]


def example_profile_path(tmp_path):
    from rangematch import example_profile

    path = tmp_path / "example.json"
    path.write_text(json.dumps(example_profile().to_json_dict()))
    return path


def test_list_attributes_prints_22_grouped_lines(run_cli):
    code, out, err = run_cli("list-attributes", "--format", "table")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert len(lines) == 22
    assert all(line.startswith("purpose") for line in lines[:5])
    assert all(line.startswith("scope") for line in lines[5:16])
    assert all(line.startswith("constraints") for line in lines[16:])


def test_list_attributes_json_matches_registry(run_cli, registry):
    code, out, _ = run_cli("list-attributes", "--format", "json")
    assert code == 0
    assert json.loads(out) == registry.to_json_dict()


def test_list_architectures_table_and_csv(run_cli):
    code, out, _ = run_cli("list-architectures", "--format", "table")
    assert code == 0 and len(out.splitlines()) == 6
    code, out, _ = run_cli("list-architectures", "--format", "csv")
    rows = out.splitlines()
    assert code == 0 and rows[0] == "id,display_name" and len(rows) == 7


def test_validate_default_dataset_is_ok(run_cli):
    code, out, err = run_cli("validate", "--format", "table")
    assert code == 0 and err == ""
    assert out.startswith("ok: 80 rows, coverage complete")


def test_validate_accepts_partial_dataset_without_strict(run_cli, write_csv):
    path = write_csv(FIVE_ROW_CSV)
    code, out, err = run_cli("validate", "--dataset", str(path), "--format", "table")
    assert code == 0
    assert "coverage incomplete" in out


def test_validate_strict_rejects_partial_dataset(run_cli, write_csv):
    path = write_csv(FIVE_ROW_CSV)
    code, out, err = run_cli("validate", "--dataset", str(path), "--strict", "--format", "table")
    assert code == 1
    assert any(r["code"] == "IncompleteCoverage" for r in stderr_records(err))


def test_match_defaults_to_json_when_not_a_terminal(run_cli, tmp_path):
    code, out, _ = run_cli("match", "--profile", str(example_profile_path(tmp_path)))
    assert code == 0
    assert json.loads(out)["totals"] == EXAMPLE_TOTALS


def test_match_table_uses_six_significant_digits(run_cli, tmp_path):
    profile = example_profile_path(tmp_path)
    code, table_out, _ = run_cli("match", "--profile", str(profile), "--format", "table")
    assert code == 0
    code, json_out, _ = run_cli("match", "--profile", str(profile), "--format", "json")
    totals = json.loads(json_out)["totals"]
    lines = table_out.splitlines()
    assert lines[0].split() == ["rank", "architecture", "total"]
    assert len(lines) == 7
    for line in lines[1:]:
        rank, arch, shown = line.split()
        assert shown == f"{totals[arch]:.6g}"
    assert lines[1].split() == ["1", "hybrid", f"{totals['hybrid']:.6g}"]


def test_match_csv_output(run_cli, tmp_path):
    code, out, _ = run_cli(
        "match", "--profile", str(example_profile_path(tmp_path)), "--format", "csv"
    )
    rows = out.splitlines()
    assert code == 0 and rows[0] == "architecture,total,rank" and len(rows) == 7
    by_arch = {line.split(",")[0]: line.split(",") for line in rows[1:]}
    assert by_arch["hybrid"][2] == "1"


def test_match_writes_output_and_heatmap_files(run_cli, tmp_path):
    out_json = tmp_path / "result.json"
    out_svg = tmp_path / "heat.svg"
    code, _, _ = run_cli(
        "match",
        "--profile", str(example_profile_path(tmp_path)),
        "--output", str(out_json),
        "--heatmap", str(out_svg),
        "--format", "table",
    )
    assert code == 0
    assert json.loads(out_json.read_text())["totals"] == EXAMPLE_TOTALS
    svg = out_svg.read_bytes()
    assert svg.startswith(b"<svg ") and svg.rstrip().endswith(b"</svg>")
    assert not list(tmp_path.glob("*.tmp*"))


def test_failed_match_leaves_no_output_files(run_cli, tmp_path, write_profile):
    bad = write_profile({"budget": "infinite"})
    out_json = tmp_path / "never.json"
    out_svg = tmp_path / "never.svg"
    code, out, err = run_cli(
        "match",
        "--profile", str(bad),
        "--output", str(out_json),
        "--heatmap", str(out_svg),
    )
    assert code == 1 and out == ""
    assert not out_json.exists() and not out_svg.exists()
    assert not list(tmp_path.glob("*.tmp*"))
    records = stderr_records(err)
    assert records[0]["code"] == "UnknownValue"
    assert str(bad) in records[0]["location"]


def test_dataset_env_var_supplies_the_default(run_cli, tmp_path, write_csv, write_profile, monkeypatch):
    dataset = write_csv(FIVE_ROW_CSV)
    profile = write_profile({"budget": "low"})
    monkeypatch.setenv("RANGEMATCH_DATASET", str(dataset))
    code, out, _ = run_cli("match", "--profile", str(profile), "--format", "json")
    assert code == 0
    assert json.loads(out)["totals"]["hybrid"] == 6.0
    assert json.loads(out)["dataset_source"] == str(dataset)


def test_dataset_flag_overrides_env_var(run_cli, tmp_path, write_csv, write_profile, monkeypatch):
    env_dataset = write_csv(FIVE_ROW_CSV, name="env.csv")
    flag_dataset = write_csv(
        FIVE_ROW_CSV.replace("budget,low,3", "budget,low,1"), name="flag.csv"
    )
    profile = write_profile({"budget": "low"})
    monkeypatch.setenv("RANGEMATCH_DATASET", str(env_dataset))
    code, out, _ = run_cli(
        "match", "--profile", str(profile), "--dataset", str(flag_dataset), "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["totals"]["hybrid"] == 2.0


def test_compare_prints_side_by_side_columns(run_cli, tmp_path, write_profile):
    first = write_profile({"budget": "low"}, label="lean", name="a.json")
    second = write_profile({"budget": "very_high"}, label="rich", name="b.json")
    code, out, err = run_cli(
        "compare", "--profile", str(first), "--profile", str(second), "--format", "table"
    )
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert "lean" in lines[0] and "rich" in lines[0]
    assert len(lines) == 7


def test_compare_reports_failures_positionally_and_exits_nonzero(
    run_cli, tmp_path, write_profile
):
    good = write_profile({"budget": "low"}, label="ok", name="good.json")
    bad = write_profile({"budget": "bogus"}, name="bad.json")
    code, out, err = run_cli(
        "compare", "--profile", str(good), "--profile", str(bad), "--format", "json"
    )
    assert code == 1
    document = json.loads(out)
    assert "totals" in document["results"][0]
    assert document["results"][1]["error"]["code"] == "UnknownValue"
    assert any(r["code"] == "UnknownValue" for r in stderr_records(err))


def test_compare_json_csv_and_output_file(run_cli, tmp_path, write_profile):
    profile = write_profile({"budget": "low"}, label="only")
    out_file = tmp_path / "cmp.json"
    code, out, _ = run_cli(
        "compare", "--profile", str(profile), "--format", "csv", "--output", str(out_file)
    )
    assert code == 0
    assert out.splitlines()[0] == "architecture,only"
    assert json.loads(out_file.read_text())["results"][0]["ranking"]


def test_export_defaults_writes_the_four_bundled_files(run_cli, tmp_path):
    target = tmp_path / "defaults"
    code, out, _ = run_cli("export-defaults", "--out-dir", str(target))
    assert code == 0
    names = sorted(p.name for p in target.iterdir())
    assert names == [
        "catalog.json",
        "example_profile.json",
        "matching_dataset.csv",
        "schema.json",
    ]
    # idempotent: a second export overwrites cleanly
    code, _, _ = run_cli("export-defaults", "--out-dir", str(target))
    assert code == 0


def test_exported_defaults_reproduce_the_bundled_behavior(run_cli, tmp_path):
    target = tmp_path / "defaults"
    run_cli("export-defaults", "--out-dir", str(target))
    code, out, _ = run_cli(
        "match",
        "--schema", str(target / "schema.json"),
        "--dataset", str(target / "matching_dataset.csv"),
        "--profile", str(target / "example_profile.json"),
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["totals"] == EXAMPLE_TOTALS


def test_missing_subcommand_is_a_usage_error(run_cli):
    code, _, err = run_cli()
    assert code == 2


def test_unknown_flag_is_a_usage_error(run_cli):
    code, _, _ = run_cli("match", "--frobnicate")
    assert code == 2


def test_match_requires_a_profile(run_cli):
    code, _, _ = run_cli("match")
    assert code == 2


def test_nonexistent_profile_file_is_an_io_error(run_cli, tmp_path):
    code, out, err = run_cli("match", "--profile", str(tmp_path / "absent.json"))
    assert code == 1
    assert stderr_records(err)[0]["code"] == "IoError"


def test_serve_help_mentions_bind_and_port(run_cli):
    code, out, _ = run_cli("serve", "--help")
    assert code == 0
    assert "--port" in out and "--bind" in out


# Every documented failure mode, each through a dedicated fixture file.

def test_error_unknown_attribute(run_cli, write_csv):
    path = write_csv(f"{CSV_HEADER}\nwarp_drive,training,3,1,2,3,4,5,0\n")
    code, _, err = run_cli("validate", "--dataset", str(path))
    assert code == 1
    assert any(r["code"] == "UnknownAttribute" for r in stderr_records(err))


def test_error_unknown_value(run_cli, write_csv):
    path = write_csv(f"{CSV_HEADER}\nemployment,jousting,3,1,2,3,4,5,0\n")
    code, _, err = run_cli("validate", "--dataset", str(path))
    assert code == 1
    assert any(r["code"] == "UnknownValue" for r in stderr_records(err))


def test_error_duplicate_row(run_cli, write_csv):
    row = "employment,training,3,1,2,3,4,5,0"
    path = write_csv(f"{CSV_HEADER}\n{row}\n{row}\n")
    code, _, err = run_cli("validate", "--dataset", str(path))
    assert code == 1
    assert any(r["code"] == "DuplicateRow" for r in stderr_records(err))


def test_error_weight_out_of_range(run_cli, write_csv):
    path = write_csv(f"{CSV_HEADER}\nemployment,training,-2,1,2,3,4,5,0\n")
    code, _, err = run_cli("validate", "--dataset", str(path))
    assert code == 1
    assert any(r["code"] == "WeightOutOfRange" for r in stderr_records(err))


def test_error_score_out_of_range(run_cli, write_csv):
    path = write_csv(f"{CSV_HEADER}\nemployment,training,3,9,2,3,4,5,0\n")
    code, _, err = run_cli("validate", "--dataset", str(path))
    assert code == 1
    assert any(r["code"] == "ScoreOutOfRange" for r in stderr_records(err))


def test_error_malformed_csv(run_cli, write_csv):
    path = write_csv(f"{CSV_HEADER}\nemployment,training,3\n")
    code, _, err = run_cli("validate", "--dataset", str(path))
    assert code == 1
    assert any(r["code"] == "MalformedCsv" for r in stderr_records(err))


def test_error_missing_row(run_cli, write_csv, write_profile):
    dataset = write_csv(FIVE_ROW_CSV)
    profile = write_profile({"budget": "high"})
    code, _, err = run_cli("match", "--dataset", str(dataset), "--profile", str(profile))
    assert code == 1
    assert any(r["code"] == "MissingRow" for r in stderr_records(err))


def test_error_schema_mismatch(run_cli, write_profile):
    profile = write_profile({"budget": "low"}, schema_version="0")
    code, _, err = run_cli("match", "--profile", str(profile))
    assert code == 1
    assert any(r["code"] == "SchemaMismatch" for r in stderr_records(err))


def test_every_stderr_line_is_machine_parsable(run_cli, write_csv):
    text = "\n".join(
        [
            CSV_HEADER,
            "employment,training,-1,1,2,3,4,5,0",
            "warp_drive,training,3,1,2,3,4,5,0",
            "employment,jousting,3,9,2,3,4,5,0",
            "",
        ]
    )
    path = write_csv(text)
    code, out, err = run_cli("validate", "--dataset", str(path))
    assert code == 1
    records = stderr_records(err)
    assert len(records) >= 3
    for record in records:
        assert set(record) >= {"code", "message", "location"}
        assert record["location"].startswith(str(path))
