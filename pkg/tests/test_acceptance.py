"""The eight acceptance criteria at their stated scales and time budgets.

Each test prints (and records for the terminal summary) a single line
``criterion N: PASS|FAIL ...``.  A criterion fails on any counterexample or
when it overruns its time budget.
"""

import random
import time


from conftest import ACCEPTANCE_LINES
from kmatching.oracle import brute_decompose, enumerate_integer_points
from kmatching.verify import (
    SuiteResult,
    all_graphs,
    birkhoff_suite,
    certificate_suite,
    extract_suite,
    fractional_suite,
    normality_suite,
    rejection_suite,
    triple_suite,
    union_cover_suite,
    vertex_suite,
)

SEED = 0


def report(number, results, elapsed, budget):
    checked = sum(r.checked for r in results)
    failures = sum(r.failures for r in results)
    ok = failures == 0 and (budget is None or elapsed < budget)
    limit = "" if budget is None else f" (budget {budget:g} s)"
    line = (
        f"criterion {number}: {'PASS' if ok else 'FAIL'} "
        f"checked {checked}, failures {failures}, {elapsed:.1f} s{limit}"
    )
    ACCEPTANCE_LINES.append(line)
    print(line)
    for res in results:
        for example in res.examples:
            print(f"  {res.name}: {example}")
    return ok, failures


def timed(fn):
    start = time.perf_counter()
    results = fn()
    return results, time.perf_counter() - start


def test_criterion_1_vertices_are_k_matchings():
    results, elapsed = timed(lambda: [vertex_suite(3, 3, range(4))])
    assert results[0].checked == 512 * 4
    ok, failures = report(1, results, elapsed, 60)
    assert failures == 0 and ok


def test_criterion_2_normality_exhaustive():
    results, elapsed = timed(lambda: [normality_suite(3, 3, (1, 2, 3), (1, 2, 3), brute=False)])
    ok, failures = report(2, results, elapsed, 600)
    assert failures == 0 and ok


def test_criterion_3_k_extract_on_k44():
    rng = random.Random(SEED)
    results, elapsed = timed(
        lambda: [extract_suite(4, k, t, 500, rng) for k in (1, 2, 3) for t in (2, 3)]
    )
    assert sum(r.checked for r in results) == 3000
    ok, failures = report(3, results, elapsed, 60)
    assert failures == 0 and ok


def test_criterion_4_birkhoff():
    results, elapsed = timed(lambda: [birkhoff_suite(4, 5, 500, random.Random(SEED))])
    ok, failures = report(4, results, elapsed, 30)
    assert failures == 0 and ok


def test_criterion_5_fractional_decomposition():
    results, elapsed = timed(lambda: [fractional_suite(5, 5, 60, 1000, random.Random(SEED))])
    ok, failures = report(5, results, elapsed, 120)
    assert failures == 0 and ok


def test_criterion_6_midpoint_certificates():
    results, elapsed = timed(lambda: [certificate_suite(5, 5, 60, 1000, random.Random(SEED))])
    assert results[0].checked == 1000
    ok, failures = report(6, results, elapsed, 60)
    assert failures == 0 and ok


def test_criterion_7_union_cover_and_triple_combine():
    rng = random.Random(SEED)
    results, elapsed = timed(lambda: [union_cover_suite(4, 4, 1000, rng), triple_suite(4, 4, 1000, rng)])
    ok, failures = report(7, results, elapsed, 60)
    assert failures == 0 and ok


def _brute_agreement() -> SuiteResult:
    result = SuiteResult("brute_decompose on every lattice point")
    for graph in all_graphs(3, 3):
        for k in (1, 2, 3):
            for t in (1, 2, 3):
                for point in enumerate_integer_points(graph, k, t):
                    dec = brute_decompose(point, graph, t, k)
                    ok = dec is not None and dec.reconstruct(3, 3) == point.to_rational()
                    result.record(ok, (sorted(graph.edges), k, t, point.rows))
    return result


def test_criterion_8_oracle_agreement():
    results, elapsed = timed(
        lambda: [_brute_agreement(), rejection_suite(3, 3, 3, 3, 200, random.Random(SEED))]
    )
    assert results[1].checked == 200
    ok, failures = report(8, results, elapsed, None)
    assert failures == 0 and ok
