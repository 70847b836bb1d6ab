"""Release gate: every required behavior checked end to end.

Each test prints one `[acceptance] <name>: PASS|FAIL` line on the real stdout
so the verdicts survive pytest's output capture.
"""

import contextlib
import json
import math
import random
import subprocess
import sys
import time
from importlib import resources

import helpers
import oracle
from rangematch import (
    ARCHITECTURE_ORDER,
    CSV_HEADER,
    RequirementProfile,
    RequirementSet,
    match,
    parse_dataset,
    serialize_dataset,
)
from rangematch.cli import main as cli_main


@contextlib.contextmanager
def criterion(name, capsys):
    """Print one verdict line per criterion past pytest's output capture."""
    verdict = "FAIL"
    try:
        yield
        verdict = "PASS"
    finally:
        with capsys.disabled():
            sys.stdout.write(f"[acceptance] {name}: {verdict}\n")
            sys.stdout.flush()


def random_scenario(seed):
    """Rows plus selections; odd seeds use widened synthetic value domains."""
    rng = random.Random(seed)
    if seed % 2:
        registry = helpers.synthetic_registry(rng)
    else:
        from rangematch import default_registry

        registry = default_registry()
    rows = helpers.random_rows(rng, registry, min_rows=10, max_rows=110)
    selections = helpers.random_selections(rng, rows)
    return registry, rows, selections


def engine_and_oracle_totals(registry, rows, selections, rng):
    dataset = parse_dataset(helpers.rows_to_csv(rows, rng), registry, source="<generated>")
    profile = RequirementProfile.validated(selections, registry)
    result = match(profile, dataset, registry)
    expected = oracle.totals(selections, rows)
    return result, expected


def test_randomized_totals_match_independent_summation(capsys):
    with criterion("oracle equivalence over 1000 randomized matches", capsys):
        started = time.perf_counter()
        for seed in range(1000):
            registry, rows, selections = random_scenario(seed)
            result, expected = engine_and_oracle_totals(
                registry, rows, selections, random.Random(seed ^ 0xFFFF)
            )
            assert 10 <= len(rows) <= 110
            for arch in ARCHITECTURE_ORDER:
                assert oracle.close(result.totals[arch], expected[arch]), (
                    seed,
                    arch.value,
                    result.totals[arch],
                    expected[arch],
                )
        elapsed = time.perf_counter() - started
        assert elapsed < 5.0, f"randomized sweep took {elapsed:.2f}s"


def test_scoring_algebra_holds(capsys):
    with criterion("algebraic properties of the scoring function", capsys):
        for seed in range(160):
            rng = random.Random(10_000 + seed)
            rows = helpers.random_rows(rng, min_rows=4, step=0.5 if seed % 2 else None)
            selections = helpers.random_selections(rng, rows)
            dataset = helpers.dataset_from_rows(rows)
            profile = RequirementProfile.validated(selections)
            base = match(profile, dataset)

            # additivity over disjoint selection halves
            names = sorted(selections)
            half_a = RequirementProfile.validated({n: selections[n] for n in names[0::2]})
            half_b = RequirementProfile.validated({n: selections[n] for n in names[1::2]})
            sum_a = match(half_a, dataset).totals
            sum_b = match(half_b, dataset).totals
            for arch in ARCHITECTURE_ORDER:
                assert math.isclose(
                    sum_a[arch] + sum_b[arch], base.totals[arch], rel_tol=1e-9, abs_tol=1e-12
                )

            # a zero-weight selection contributes nothing
            victim = rng.choice(names)
            zeroed = dict(rows)
            zeroed[(victim, selections[victim])] = (0.0, rows[(victim, selections[victim])][1])
            zero_dataset = helpers.dataset_from_rows(zeroed)
            with_zero = match(profile, zero_dataset).totals
            dropped = RequirementProfile.validated(
                {k: v for k, v in selections.items() if k != victim}
            )
            without = match(dropped, zero_dataset).totals
            assert with_zero == without

            # raising one architecture's score never lowers its total
            arch_name = rng.choice(helpers.ARCH_NAMES)
            weight, scores = rows[(victim, selections[victim])]
            raised = dict(rows)
            raised[(victim, selections[victim])] = (
                weight,
                {**scores, arch_name: min(5.0, scores[arch_name] + 1.0)},
            )
            after = match(profile, helpers.dataset_from_rows(raised)).totals
            for arch in ARCHITECTURE_ORDER:
                if arch.value == arch_name:
                    assert after[arch] >= base.totals[arch]
                else:
                    assert after[arch] == base.totals[arch]

            # row order in the file never matters
            shuffled = helpers.dataset_from_rows(rows, rng=random.Random(seed + 1))
            assert match(profile, shuffled).totals == base.totals

            # uniform weight scaling preserves the rank groups (exact grid)
            if seed % 2:
                for scale in (0.5, 2.0, 10.0):
                    scaled_rows = {
                        pair: (w * scale, s) for pair, (w, s) in rows.items()
                    }
                    scaled = match(profile, helpers.dataset_from_rows(scaled_rows))
                    assert scaled.ranking == base.ranking


def test_shipped_shapes_are_fixed(registry, catalog, dataset, capsys):
    with criterion("structural conformance of registry, catalog, and dataset", capsys):
        assert len(registry.attributes) == 22
        counts = {s: 0 for s in RequirementSet}
        for attribute in registry.attributes:
            counts[attribute.requirement_set] += 1
        assert (
            counts[RequirementSet.PURPOSE],
            counts[RequirementSet.SCOPE],
            counts[RequirementSet.CONSTRAINTS],
        ) == (5, 11, 6)
        assert len(catalog.architectures()) == 6
        assert CSV_HEADER == (
            "attribute_name,attribute_value,attribute_weight,"
            "pure_physical,centrally_virtualized,on_premise_cloud,"
            "public_cloud,distributed_virtualization,hybrid"
        )
        bundled = resources.files("rangematch.data").joinpath("matching_dataset.csv").read_bytes()
        assert bundled.startswith((CSV_HEADER + "\n").encode("utf-8"))
        assert serialize_dataset(parse_dataset(bundled)) == bundled


def test_contribution_columns_sum_to_totals(capsys):
    with criterion("contribution matrix columns sum to the totals", capsys):
        for seed in range(100):
            registry, rows, selections = random_scenario(seed * 31 + 7)
            dataset = parse_dataset(helpers.rows_to_csv(rows), registry, source="<generated>")
            profile = RequirementProfile.validated(selections, registry)
            result = match(profile, dataset, registry)
            for arch in ARCHITECTURE_ORDER:
                column = sum(result.matrix.entry(a, arch) for a in result.matrix.attributes)
                assert math.isclose(column, result.totals[arch], rel_tol=1e-9, abs_tol=1e-12)


def test_bundled_example_recommends_hybrid(example, dataset, capsys):
    with criterion("bundled example profile puts hybrid in the top rank group", capsys):
        result = match(example, dataset)
        assert example.label == "high-fidelity mixed-domain"
        top_names = [arch.value for arch in result.top_group]
        assert "hybrid" in top_names


def test_cli_match_is_fast_and_deterministic(tmp_path, example, capsys):
    with criterion("one-command match is correct, fast, and byte-deterministic", capsys):
        profile_path = tmp_path / "example.json"
        profile_path.write_text(json.dumps(example.to_json_dict()))

        def run(tag):
            json_path = tmp_path / f"result-{tag}.json"
            svg_path = tmp_path / f"heatmap-{tag}.svg"
            started = time.perf_counter()
            completed = subprocess.run(
                [
                    sys.executable, "-m", "rangematch", "match",
                    "--profile", str(profile_path),
                    "--output", str(json_path),
                    "--heatmap", str(svg_path),
                    "--format", "table",
                ],
                capture_output=True,
                text=True,
            )
            elapsed = time.perf_counter() - started
            assert completed.returncode == 0, completed.stderr
            assert elapsed < 1.0, f"CLI run took {elapsed:.2f}s"
            return completed.stdout, json_path.read_text(), svg_path.read_bytes()

        table_one, json_one, svg_one = run("one")
        table_two, json_two, svg_two = run("two")
        assert svg_one == svg_two
        assert table_one == table_two and json_one == json_two

        lines = table_one.splitlines()
        assert lines[0].split() == ["rank", "architecture", "total"]
        assert len(lines) == 7 and lines[1].split()[1] == "hybrid"

        bundled = resources.files("rangematch.data").joinpath("matching_dataset.csv").read_bytes()
        rows = oracle.rows_from_csv_bytes(bundled)
        selections = json.loads(profile_path.read_text())["selections"]
        expected = oracle.totals(selections, rows)
        reported = json.loads(json_one)["totals"]
        for arch, total in reported.items():
            assert oracle.close(total, expected[arch])


def test_documented_error_codes_surface(tmp_path, capsys):
    with criterion("every documented failure yields its stable code and exit 1", capsys):
        bad_row = {
            "UnknownAttribute": "warp_drive,training,3,1,2,3,4,5,0",
            "UnknownValue": "employment,jousting,3,1,2,3,4,5,0",
            "DuplicateRow": "employment,training,3,1,2,3,4,5,0\nemployment,training,3,1,2,3,4,5,0",
            "WeightOutOfRange": "employment,training,-2,1,2,3,4,5,0",
            "ScoreOutOfRange": "employment,training,3,9,2,3,4,5,0",
            "MalformedCsv": "employment,training,3",
        }
        for code, rows_text in bad_row.items():
            dataset_path = tmp_path / f"{code}.csv"
            dataset_path.write_text(f"{CSV_HEADER}\n{rows_text}\n")
            exit_code = cli_main(["validate", "--dataset", str(dataset_path)])
            err = capsys.readouterr().err
            assert exit_code == 1, code
            produced = [json.loads(line)["code"] for line in err.splitlines() if line.strip()]
            assert code in produced, (code, produced)

        sparse = tmp_path / "sparse.csv"
        sparse.write_text(f"{CSV_HEADER}\nemployment,training,3,1,2,3,4,5,0\n")
        wanting = tmp_path / "wanting.json"
        wanting.write_text(json.dumps({"schema_version": "1", "selections": {"budget": "low"}}))
        exit_code = cli_main(
            ["match", "--dataset", str(sparse), "--profile", str(wanting)]
        )
        err = capsys.readouterr().err
        assert exit_code == 1
        assert any(json.loads(l)["code"] == "MissingRow" for l in err.splitlines() if l.strip())

        stale = tmp_path / "stale.json"
        stale.write_text(json.dumps({"schema_version": "0", "selections": {"budget": "low"}}))
        exit_code = cli_main(["match", "--profile", str(stale)])
        err = capsys.readouterr().err
        assert exit_code == 1
        assert any(
            json.loads(l)["code"] == "SchemaMismatch" for l in err.splitlines() if l.strip()
        )
