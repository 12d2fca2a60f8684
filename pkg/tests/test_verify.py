
import pytest

from kmatching.core import BipartiteGraph, RationalPoint
from kmatching.errors import TooLarge
from kmatching.verify import SuiteResult, all_graphs, certificate_chain, check_bounds, run_all


def test_suite_result_records_first_examples():
    res = SuiteResult("demo")
    for i in range(8):
        res.record(i % 2 == 0, i)
    assert (res.checked, res.failures, res.examples) == (8, 4, [1, 3, 5, 7])
    assert not res.passed and str(res) == "demo: checked 8, failures 4"


def test_all_graphs_count():
    assert sum(1 for _ in all_graphs(2, 2)) == 16
    assert len({g.edges for g in all_graphs(1, 3)}) == 8


def test_check_bounds():
    check_bounds(3, 3, 3, 3)
    with pytest.raises(TooLarge):
        check_bounds(4, 3, 3, 3)
    with pytest.raises(TooLarge):
        check_bounds(2, 2, 2, 4)
    with pytest.raises(ValueError):
        check_bounds(2, 2, 0, 2)


def test_run_all_without_trials_still_checks_exhaustively():
    lines = []
    results = run_all(2, 2, 2, 2, trials=0, report=lines.append)
    assert all(r.passed for r in results)
    assert sum(r.checked for r in results) > 0
    assert lines[-1].startswith("total: checked ") and lines[-1].endswith("failures 0")


def test_run_all_small_randomized():
    results = run_all(2, 3, 2, 2, trials=20, seed=3, report=lambda _: None)
    names = [r.name for r in results]
    assert "non-member rejection" in names and all(r.passed for r in results)


def test_certificate_chain_from_the_all_halves_point():
    from fractions import Fraction as F

    half = F(1, 2)
    x = RationalPoint([[half, half, 0], [0, half, half], [half, 0, half]])
    assert certificate_chain(x, BipartiteGraph.complete(3, 3), 3) is None
