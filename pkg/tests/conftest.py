from __future__ import annotations

import pytest

from biasrep.graph import Graph
from biasrep.harness import CorpusSpec, generate_corpus

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance criterion outcome; printed again in the summary."""

    def record(number: int, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE[number] = (ok, detail)
        print(f"acceptance criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def mixed_corpus():
    return generate_corpus(CorpusSpec(seed=7, count=40))


def graph(nodes, links=(), halves=()) -> Graph:
    return Graph.build(list(nodes), list(links), list(halves))
