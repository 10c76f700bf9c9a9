import pytest

from hubdetect.generate import cycle, er_random, star
from hubdetect.sdg import Corpus, Sdg

# ---------------------------------------------------------------------------
# acceptance-criterion reporting: tests marked @pytest.mark.acceptance("...")
# contribute to one PASS/FAIL/SKIP line per criterion, printed at the end.

_STATUS_RANK = {"SKIP": 0, "PASS": 1, "FAIL": 2}
_results: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(criterion): test backing one acceptance criterion"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    criterion = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.skipped):
        status = {"passed": "PASS", "failed": "FAILED", "skipped": "SKIP"}[report.outcome]
        status = "FAIL" if status == "FAILED" else status
        prev = _results.get(criterion)
        if prev is None or _STATUS_RANK[status] > _STATUS_RANK[prev]:
            _results[criterion] = status


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for criterion in sorted(_results):
        terminalreporter.write_line(f"ACCEPTANCE {criterion}: {_results[criterion]}")


# ---------------------------------------------------------------------------
# shared graphs


@pytest.fixture
def path3() -> Sdg:
    return Sdg.from_parts("path3", ["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def triangle() -> Sdg:
    return Sdg.from_parts("tri", ["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])


@pytest.fixture
def clique3() -> Sdg:
    nodes = ["a", "b", "c"]
    edges = [(u, v) for u in nodes for v in nodes if u != v]
    return Sdg.from_parts("clique3", nodes, edges)


@pytest.fixture
def star5() -> Sdg:
    return star(4, direction="out", system_id="star5")


@pytest.fixture
def two_cycle() -> Sdg:
    return Sdg.from_parts("two", ["a", "b"], [("a", "b"), ("b", "a")])


@pytest.fixture
def er_corpus() -> Corpus:
    graphs = [er_random(30, 0.15, seed=s, system_id=f"er{s}") for s in range(3)]
    return Corpus(graphs)


@pytest.fixture
def mixed_corpus() -> Corpus:
    return Corpus(
        [
            star(6, direction="out", system_id="m_star"),
            cycle(5, system_id="m_cycle"),
            er_random(20, 0.2, seed=5, system_id="m_er"),
        ]
    )
