import json

import pytest

from rangematch import default_catalog, default_dataset, default_registry, example_profile


@pytest.fixture(scope="session")
def registry():
    return default_registry()


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def dataset():
    return default_dataset()


@pytest.fixture(scope="session")
def example():
    return example_profile()


@pytest.fixture
def write_profile(tmp_path):
    """Write a profile JSON file and return its path."""

    def write(selections, label=None, schema_version="1", name="profile.json"):
        doc = {"schema_version": schema_version, "selections": selections}
        if label is not None:
            doc["label"] = label
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return path

    return write


@pytest.fixture
def write_csv(tmp_path):
    """Write dataset CSV text and return its path."""

    def write(text, name="dataset.csv"):
        path = tmp_path / name
        if isinstance(text, bytes):
            path.write_bytes(text)
        else:
            path.write_text(text)
        return path

    return write


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in process; returns (exit_code, stdout, stderr)."""

    def run(*argv):
        from rangematch.cli import main

        try:
            code = main(list(argv))
        except SystemExit as exc:  # argparse usage errors
            code = exc.code if isinstance(exc.code, int) else 2
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
