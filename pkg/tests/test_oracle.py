import random
from fractions import Fraction as F
from itertools import product

import pytest

from kmatching.core import BipartiteGraph, IntegerPoint, Matching
from kmatching.errors import NoKMatching, TooLarge
from kmatching.oracle import (
    InstanceSeed,
    brute_decompose,
    enumerate_integer_points,
    enumerate_k_matchings,
    perturb,
    random_combination,
    random_composition,
    random_dilate_point,
    random_k_matching,
    random_member,
)
from kmatching.polytope import membership

K = BipartiteGraph.complete


def M(*edges):
    return Matching(frozenset(edges))


def test_enumerate_k_matchings_counts():
    assert len(enumerate_k_matchings(K(2, 2), 1)) == 4
    assert enumerate_k_matchings(K(2, 2), 2) == [M((0, 0), (1, 1)), M((0, 1), (1, 0))]
    assert len(enumerate_k_matchings(K(3, 3), 2)) == 18
    assert enumerate_k_matchings(K(3, 3), 0) == [M()]
    assert enumerate_k_matchings(K(2, 3), 3) == []


def test_enumerate_k_matchings_is_sorted_and_distinct():
    found = enumerate_k_matchings(K(3, 4), 2)
    keys = [mt.sort_key() for mt in found]
    assert keys == sorted(keys) and len(set(keys)) == len(keys) == 3 * 4 * 2 * 3 // 2


def test_enumerate_integer_points_examples():
    assert [p.rows for p in enumerate_integer_points(K(1, 1), 1, 2)] == [((2,),)]
    assert len(enumerate_integer_points(K(2, 2), 2, 1)) == 2
    assert len(enumerate_integer_points(K(2, 2), 1, 2)) == 10


def _naive_points(graph, k, t):
    cells = [(i, j) for i in range(graph.m) for j in range(graph.n)]
    out = set()
    for values in product(range(t + 1), repeat=len(cells)):
        rows = [[0] * graph.n for _ in range(graph.m)]
        for (i, j), v in zip(cells, values):
            if v and (i, j) not in graph.edges:
                break
            rows[i][j] = v
        else:
            if membership(rows, graph, k, "exact", t):
                out.add(tuple(map(tuple, rows)))
    return out


@pytest.mark.parametrize("k,t", [(1, 1), (1, 2), (2, 2), (2, 3)])
def test_enumerate_integer_points_matches_naive_loop(k, t):
    graph = BipartiteGraph(2, 3, frozenset({(0, 0), (0, 1), (1, 1), (1, 2), (0, 2)}))
    found = enumerate_integer_points(graph, k, t)
    assert {p.rows for p in found} == _naive_points(graph, k, t)
    assert [p.rows for p in found] == sorted(p.rows for p in found)


def test_enumeration_guards():
    with pytest.raises(TooLarge):
        enumerate_k_matchings(K(5, 5), 2)
    with pytest.raises(TooLarge):
        enumerate_integer_points(K(4, 4), 2, 3)


def test_brute_decompose_examples():
    dec = brute_decompose([[1, 1], [1, 1]], K(2, 2), 2, 2)
    assert dec.form == "dilate"
    assert dec.matchings == [M((0, 0), (1, 1)), M((0, 1), (1, 0))]
    assert brute_decompose([[2, 0], [0, 0]], K(2, 2), 2, 1).matchings == [M((0, 0)), M((0, 0))]
    # row total 3 exceeds t = 2
    assert brute_decompose([[2, 1], [0, 1]], K(2, 2), 2, 2) is None
    # support outside the graph
    assert brute_decompose([[0, 1], [0, 0]], BipartiteGraph(2, 2, frozenset({(0, 0)})), 1, 1) is None
    assert brute_decompose([[1, 0]], K(2, 2), 1, 1) is None


def test_brute_decompose_agrees_with_enumeration_on_k22():
    graph = K(2, 2)
    members = {p.rows for p in enumerate_integer_points(graph, 1, 2)}
    for values in product(range(3), repeat=4):
        rows = [list(values[:2]), list(values[2:])]
        dec = brute_decompose(rows, graph, 2, 1)
        assert (dec is not None) == (tuple(map(tuple, rows)) in members)
        if dec is not None:
            assert dec.reconstruct(2, 2) == IntegerPoint(rows).to_rational()


def test_instance_seed_validation():
    with pytest.raises(ValueError):
        InstanceSeed(-1)
    with pytest.raises(ValueError):
        InstanceSeed(2**64)
    with pytest.raises(ValueError):
        InstanceSeed(0, max_denominator=0)


def test_random_k_matching_is_a_k_matching():
    rng = random.Random(4)
    g = BipartiteGraph(3, 3, frozenset({(0, 0), (0, 1), (1, 1), (2, 2)}))
    for _ in range(50):
        mt = random_k_matching(g, 3, rng)
        assert len(mt) == 3 and mt.edges <= g.edges
    with pytest.raises(NoKMatching):
        random_k_matching(BipartiteGraph(2, 2, frozenset({(0, 0), (1, 0)})), 2, rng)


def test_random_composition():
    rng = random.Random(0)
    for _ in range(100):
        total = rng.randint(3, 40)
        parts = rng.randint(1, total)
        comp = random_composition(total, parts, rng)
        assert len(comp) == parts and sum(comp) == total and min(comp) >= 1


def test_random_member_is_deterministic_and_a_member():
    graph = K(4, 4)
    for seed in range(1000):
        x = random_member(graph, 2, InstanceSeed(seed, 60))
        assert membership(x, graph, 2)
        assert all(v.denominator <= 60 for row in x.rows for v in row)
    assert random_member(graph, 2, InstanceSeed(7)) == random_member(graph, 2, InstanceSeed(7))
    assert random_member(graph, 2, 7) == random_member(graph, 2, InstanceSeed(7))


def test_random_combination_uses_distinct_matchings():
    terms = random_combination(K(3, 3), 2, InstanceSeed(11, 60))
    assert 2 <= len(terms) <= 6
    assert sum(w for w, _ in terms) == 1
    assert len({mt for _, mt in terms}) == len(terms)


def test_random_member_on_a_graph_with_one_k_matching():
    graph = BipartiteGraph(2, 2, frozenset({(0, 0), (1, 1)}))
    assert random_member(graph, 2, 3).rows == ((F(1), F(0)), (F(0), F(1)))


def test_perturb_produces_non_members():
    rng = random.Random(5)
    for _ in range(200):
        graph = BipartiteGraph(3, 3, frozenset({(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)}))
        k, t = rng.randint(1, 3), rng.randint(1, 3)
        point = random_dilate_point(graph, k, t, rng)
        bad = perturb(point, graph, t, rng)
        assert not membership(bad.to_rational(), graph, k, "exact", t)
        assert brute_decompose(bad, graph, t, k) is None
