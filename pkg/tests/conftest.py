
from hypothesis import strategies as st

from kmatching.core import BipartiteGraph, Matching


@st.composite
def graphs(draw, max_m=4, max_n=4, min_side=1):
    m = draw(st.integers(min_side, max_m))
    n = draw(st.integers(min_side, max_n))
    cells = [(i, j) for i in range(m) for j in range(n)]
    edges = draw(st.sets(st.sampled_from(cells))) if cells else set()
    return BipartiteGraph(m, n, frozenset(edges))


@st.composite
def matchings(draw, m=4, n=4):
    rows = draw(st.permutations(range(m)))
    cols = draw(st.permutations(range(n)))
    size = draw(st.integers(0, min(m, n)))
    return Matching(frozenset(zip(rows[:size], cols[:size])))


fractions = st.fractions(min_value=0, max_value=10, max_denominator=10**6)
signed_fractions = st.fractions(max_denominator=10**6)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
