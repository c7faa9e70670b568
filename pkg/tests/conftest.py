import pytest

from doubledimer.graph_core import make_graph
from doubledimer.instances import example_grid_graph

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def example8x8():
    return example_grid_graph()


@pytest.fixture
def single_edge():
    return make_graph([(1, "B", 0, 0), (2, "W", 1, 0)], [(1, 2, "3/2")], [1, 2], (1, 1, 0))


@pytest.fixture
def square():
    return make_graph([(1, "B", 0, 0), (2, "W", 1, 0), (3, "B", 1, 1), (4, "W", 0, 1)],
                      [(1, 2), (2, 3), (3, 4), (4, 1)], [1, 2, 3, 4])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
