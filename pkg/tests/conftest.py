import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from wfunion.graphio import FIXTURES
from wfunion.relation import Relation, TriGraph

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pair_sets(n, max_size=None):
    pairs = [(u, v) for u in range(n) for v in range(n)]
    return st.sets(st.sampled_from(pairs), max_size=max_size) if pairs else st.just(set())


@st.composite
def relations(draw, n=None, max_n=6):
    n = draw(st.integers(1, max_n)) if n is None else n
    return Relation.from_pairs(n, draw(pair_sets(n)))


@st.composite
def relation_triples(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    return tuple(Relation.from_pairs(n, draw(pair_sets(n))) for _ in range(3))


@st.composite
def trigraphs(draw, max_n=4, min_n=1, loops=True):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    pick = st.sets(st.sampled_from(pairs)) if pairs else st.just(set())
    return TriGraph.from_edges(n, draw(pick), draw(pick), draw(pick))


@pytest.fixture
def g1():
    return FIXTURES["G1"]


@pytest.fixture
def g2():
    return FIXTURES["G2"]


@pytest.fixture
def g3():
    return FIXTURES["G3"]


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and rep.failed:
        item._crashed = True
