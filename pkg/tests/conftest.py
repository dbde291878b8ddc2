from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from forge.model import Model
from forge.parser import parse_model
from forge.project import load_template

CORPUS_DIR = Path(__file__).parent / "corpus"
FIXTURE_DIR = Path(__file__).parent / "fixtures"
GOLDEN_DIR = Path(__file__).parent / "goldens"


@pytest.fixture(scope="session")
def library_model() -> Model:
    model = parse_model(load_template("library.buml"))
    assert isinstance(model, Model)
    return model


@pytest.fixture(scope="session")
def corpus_sources() -> dict[str, str]:
    files = sorted(CORPUS_DIR.glob("*.buml"))
    assert len(files) >= 20
    return {f.name: f.read_text(encoding="utf-8") for f in files}


@pytest.fixture(scope="session")
def corpus_models(corpus_sources) -> dict[str, Model]:
    models = {}
    for name, text in corpus_sources.items():
        parsed = parse_model(text)
        assert isinstance(parsed, Model), f"{name}: {parsed}"
        models[name] = parsed
    return models


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    outcome = "PASS" if report.passed else "FAIL"
    print(f"\n[acceptance] {name}: {outcome}", file=sys.stderr)
