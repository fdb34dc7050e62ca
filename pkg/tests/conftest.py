from functools import lru_cache
from pathlib import Path

import pytest

from gradedquiver.algebra import build_algebra
from gradedquiver.lemma import load_manifest, shipped_manifest
from gradedquiver.presentation import load_presentation, parse_presentation

CORPUS = shipped_manifest().parent
CORPUS_NAMES = [c.name for c in load_manifest(shipped_manifest())]


@lru_cache(maxsize=None)
def corpus_algebra(name):
    return build_algebra(load_presentation(CORPUS / f"{name}.yaml"))


def algebra_from_text(text):
    return build_algebra(parse_presentation(text))


SEMISIMPLE_2 = """
field: Q
vertices: ["1", "2"]
arrows: []
relations: []
"""

TRUNCATED_CUBIC_Q = """
field: Q
vertices: ["1"]
arrows: [{name: x, source: "1", target: "1"}]
relations: [[{coeff: 1, path: [x, x, x]}]]
"""


@pytest.fixture(params=CORPUS_NAMES)
def corpus_alg(request):
    return corpus_algebra(request.param)


@pytest.fixture
def dual():
    return corpus_algebra("dual_numbers")


@pytest.fixture
def a2():
    return corpus_algebra("a2")


@pytest.fixture
def cubic():
    return algebra_from_text(TRUNCATED_CUBIC_Q)


@pytest.fixture
def semisimple():
    return algebra_from_text(SEMISIMPLE_2)


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS


# acceptance criteria register their verdicts here; printed once at the end
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
