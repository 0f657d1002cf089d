from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from almost_toric.corpus import corpus, scramble, GENERATORS
from almost_toric.lattice import LatticeVector

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

CORPUS_SEED = 20240611
CORPUS_SIZE = 500

small = st.integers(-50, 50)
vectors = st.builds(LatticeVector, small, small)
nonzero_vectors = vectors.filter(lambda v: not v.is_zero())
primitive_vectors = vectors.filter(lambda v: v.is_primitive())


@st.composite
def scrambled(draw, max_branch: int = 12):
    """A scrambled disk base drawn through the seeded corpus generator."""
    seed = draw(st.integers(0, 2**32 - 1))
    name = draw(st.sampled_from(sorted(GENERATORS)))
    return scramble(random.Random(seed), name, max_branch=max_branch)


@pytest.fixture(scope="session")
def full_corpus():
    return corpus(CORPUS_SEED, CORPUS_SIZE)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    n, title = crit
    ok = _CRITERIA.get(n, (title, True))[1] and report.passed
    _CRITERIA[n] = (title, ok)


_CRITERIA: dict[int, tuple[str, bool]] = {}


@pytest.fixture(autouse=True)
def _tag_criterion(request, record_property):
    mark = request.node.get_closest_marker("criterion")
    if mark is not None:
        record_property("criterion", tuple(mark.args))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
