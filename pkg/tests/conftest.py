import json
from pathlib import Path

import pytest

from ulat.hermlat import lattice_from_json

PKG = Path(__file__).resolve().parents[1] / "src" / "ulat"
LATTICE_DIR = PKG / "fixtures" / "lattices"
TABLE_DIR = PKG / "fixtures" / "tables"
TAYLOR_DIR = PKG / "fixtures" / "taylor"

LATTICE_FILES = sorted(LATTICE_DIR.glob("*.json"))


def load_lattice(name):
    return lattice_from_json(json.loads((LATTICE_DIR / f"{name}.json").read_text()))


@pytest.fixture(scope="session")
def lattice():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_lattice(name)
        return cache[name]
    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
