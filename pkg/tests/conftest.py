import pytest

from rwsat.graph import SimpleGraph, cycle_graph
from rwsat.extremal import named_pattern
from rwsat.rainbow import ColoredGraph

K3 = named_pattern("K3")
P3 = named_pattern("P3")
C4 = cycle_graph(4)
C5 = named_pattern("C5")

_criteria = {}


def restricted_growth(length, max_colors=None):
    """Colour sequences up to renaming: each new colour is the next unused one."""
    limit = length if max_colors is None else max_colors

    def grow(prefix, used):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for c in range(1, min(used + 1, limit) + 1):
            yield from grow(prefix + [c], max(used, c))

    yield from grow([], 0)


def colorings(g: SimpleGraph, max_colors=None):
    edges = g.edges()
    for seq in restricted_growth(len(edges), max_colors):
        yield ColoredGraph.from_mapping(g, dict(zip(edges, seq)))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    failed = report.failed or (report.when == "call" and report.outcome != "passed")
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}")
