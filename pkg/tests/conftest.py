from pathlib import Path

import pytest

from prvass.formats import parse_minsky

CORPUS_DIR = Path(__file__).resolve().parents[1] / "corpus"

# expected coverability per corpus machine; big-counter is excluded because
# its compiled side deliberately blows the default bounds (inconclusive demo)
CORPUS_EXPECTED = {
    "trivial-loop": True,
    "inc-dec": True,
    "inc-only": False,
    "zero-gate-pass": True,
    "zero-gate-blocked": False,
    "dead": False,
    "swap": True,
    "inc-both": True,
    "unbalanced": False,
    "branch": True,
    "tall": True,
    "toggle": False,
}


def corpus_path(name: str) -> Path:
    return CORPUS_DIR / f"{name}.minsky"


def load_machine(name: str):
    return parse_minsky(corpus_path(name).read_text())


@pytest.fixture(scope="session")
def corpus_machines():
    return {name: load_machine(name) for name in CORPUS_EXPECTED}
