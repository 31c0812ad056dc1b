import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from twisted_sections.corpus import corpus, planted_torsion_pairs  # noqa: E402
from twisted_sections.rings import BaseRing, Field, RingContext  # noqa: E402
from twisted_sections.sections import cross_verify  # noqa: E402

CORPUS_SEED = 20240611
CORPUS_PRIME = 32003

# criterion number -> (ok, seconds, detail), filled by tests/test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, secs, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({secs:.2f}s) {detail}")


@pytest.fixture(scope="session")
def fp_corpus():
    return corpus(25, CORPUS_SEED, BaseRing(Field(CORPUS_PRIME)))


class CrossRun:
    def __init__(self, reports, seconds):
        self.reports = reports
        self.seconds = seconds


@pytest.fixture(scope="session")
def corpus_runs(fp_corpus):
    """cross_verify on every corpus module, computed once per session."""
    t0 = time.perf_counter()
    reps = [cross_verify(M, 0) for M in fp_corpus]
    return CrossRun(reps, time.perf_counter() - t0)


@pytest.fixture(scope="session")
def planted_pairs():
    return planted_torsion_pairs(5, 7)


@pytest.fixture(scope="session")
def q1():
    return RingContext.over("Q", 1)


@pytest.fixture(scope="session")
def q2():
    return RingContext.over("Q", 2)


@pytest.fixture(scope="session")
def qy1():
    """B = Q[y], n = 1."""
    return RingContext.over("Q", 1, ["y"])
