"""Brute-force references and seeded instance generators.

Everything here is exponential and guarded; it exists to cross-check the
constructive algorithms on small inputs.

Randomness comes from :class:`random.Random` (MT19937, seeded with the
integer ``seed``), so a seed reproduces the same instance on every CPython
3.x build.  The sampling helpers (``randint``, ``sample``, ``shuffle``) are the
stdlib ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .core import BipartiteGraph, Decomposition, IntegerPoint, Matching, RationalPoint
from .errors import NoKMatching, TooLarge
from .matching import max_matching

MAX_ENUM_EDGES = 24
MAX_POINT_SEARCH = 10**7


@dataclass(frozen=True)
class InstanceSeed:
    """Seed plus the size bounds of the instances it generates."""

    seed: int
    max_denominator: int = 60
    max_m: int = 5
    max_n: int = 5
    max_k: Optional[int] = None
    max_t: int = 3

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.max_denominator < 1:
            raise ValueError("max_denominator must be positive")

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def _rng(seed) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    if isinstance(seed, InstanceSeed):
        return seed.rng()
    return random.Random(seed)


# ---------------------------------------------------------------- enumeration


def enumerate_k_matchings(graph: BipartiteGraph, k: int) -> list[Matching]:
    """Every matching of ``graph`` with exactly ``k`` edges, in lexicographic order."""
    edges = graph.sorted_edges
    if len(edges) > MAX_ENUM_EDGES:
        raise TooLarge(f"{len(edges)} edges exceed the enumeration guard of {MAX_ENUM_EDGES}")
    out: list[Matching] = []
    chosen: list = []
    used_a: set = set()
    used_b: set = set()

    def extend(start):
        if len(chosen) == k:
            out.append(Matching(frozenset(chosen)))
            return
        for idx in range(start, len(edges) - (k - len(chosen)) + 1):
            i, j = edges[idx]
            if i in used_a or j in used_b:
                continue
            chosen.append((i, j))
            used_a.add(i)
            used_b.add(j)
            extend(idx + 1)
            chosen.pop()
            used_a.discard(i)
            used_b.discard(j)

    if k >= 0:
        extend(0)
    return out


def enumerate_integer_points(graph: BipartiteGraph, k: int, t: int) -> list[IntegerPoint]:
    """All integer matrices on ``graph`` with line sums ``<= t`` and total ``t*k``.

    Sorted lexicographically by rows.
    """
    edges = graph.sorted_edges
    if (t + 1) ** len(edges) > MAX_POINT_SEARCH:
        raise TooLarge(f"search space ({t}+1)^{len(edges)} exceeds {MAX_POINT_SEARCH}")
    target = t * k
    row_left = [t] * graph.m
    col_left = [t] * graph.n
    values = [0] * len(edges)
    out: list[IntegerPoint] = []

    def extend(idx, remaining):
        if idx == len(edges):
            if remaining == 0:
                rows = [[0] * graph.n for _ in range(graph.m)]
                for (i, j), v in zip(edges, values):
                    rows[i][j] = v
                out.append(IntegerPoint(rows))
            return
        i, j = edges[idx]
        for v in range(min(row_left[i], col_left[j], remaining) + 1):
            values[idx] = v
            row_left[i] -= v
            col_left[j] -= v
            extend(idx + 1, remaining - v)
            row_left[i] += v
            col_left[j] += v
        values[idx] = 0

    if k >= 0 and t >= 0:
        extend(0, target)
    out.sort(key=lambda p: p.rows)
    return out


def brute_decompose(point, graph: BipartiteGraph, t: int, k: int) -> Optional[Decomposition]:
    """``t`` ``k``-matchings of ``graph`` summing to ``point``, by exhaustive search.

    Matchings are tried in lexicographic order with nondecreasing index, so
    the first decomposition found is the lexicographically smallest multiset.
    """
    rows = [list(r) for r in (point.rows if isinstance(point, (IntegerPoint, RationalPoint)) else point)]
    if t < 1:
        raise ValueError("t must be positive")
    if len(rows) != graph.m or any(len(r) != graph.n for r in rows):
        return None
    if any(v < 0 or (v != 0 and (i, j) not in graph.edges) for i, r in enumerate(rows) for j, v in enumerate(r)):
        return None
    candidates = [mt for mt in enumerate_k_matchings(graph, k) if all(rows[i][j] > 0 for i, j in mt)]
    failed: set = set()
    picked: list = []

    def feasible(left):
        if sum(map(sum, rows)) != left * k:
            return False
        return all(sum(r) <= left for r in rows) and all(
            sum(r[j] for r in rows) <= left for j in range(graph.n)
        )

    def search(left, start):
        if left == 0:
            return True
        key = (tuple(map(tuple, rows)), start)
        if key in failed or not feasible(left):
            return False
        for idx in range(start, len(candidates)):
            mt = candidates[idx]
            if any(rows[i][j] == 0 for i, j in mt):
                continue
            for i, j in mt:
                rows[i][j] -= 1
            picked.append(mt)
            if search(left - 1, idx):
                return True
            picked.pop()
            for i, j in mt:
                rows[i][j] += 1
        failed.add(key)
        return False

    if not search(t, 0):
        return None
    return Decomposition("dilate", tuple((1, mt) for mt in picked))


# ------------------------------------------------------------------ sampling


def random_graph(m: int, n: int, rng, density: float = 0.5) -> BipartiteGraph:
    rng = _rng(rng)
    return BipartiteGraph(m, n, frozenset((i, j) for i in range(m) for j in range(n) if rng.random() < density))


def random_k_matching(graph: BipartiteGraph, k: int, rng) -> Matching:
    """A random ``k``-matching of ``graph`` (not uniform).

    Relabels both sides at random, takes a maximum matching of the relabelled
    graph, maps it back and keeps a random ``k``-subset.
    """
    rng = _rng(rng)
    perm_a = list(range(graph.m))
    perm_b = list(range(graph.n))
    rng.shuffle(perm_a)
    rng.shuffle(perm_b)
    inv_a = {v: i for i, v in enumerate(perm_a)}
    inv_b = {v: j for j, v in enumerate(perm_b)}
    relabelled = BipartiteGraph(graph.m, graph.n, frozenset((inv_a[i], inv_b[j]) for i, j in graph.edges))
    best = [(perm_a[i], perm_b[j]) for i, j in max_matching(relabelled)]
    if len(best) < k:
        raise NoKMatching(f"graph has no {k}-matching (maximum size {len(best)})")
    return Matching(frozenset(rng.sample(best, k)))


def random_composition(total: int, parts: int, rng) -> list[int]:
    """Uniform composition of ``total`` into ``parts`` positive integers."""
    rng = _rng(rng)
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_combination(graph: BipartiteGraph, k: int, seed, max_denominator: Optional[int] = None):
    """The weighted matchings behind :func:`random_member`: ``[(weight, matching), ...]``."""
    if max_denominator is None:
        max_denominator = seed.max_denominator if isinstance(seed, InstanceSeed) else 60
    rng = _rng(seed)
    want = rng.randint(2, 6)
    found: list[Matching] = []
    for _ in range(8 * want):
        mt = random_k_matching(graph, k, rng)
        if mt not in found:
            found.append(mt)
            if len(found) == want:
                break
    count = min(len(found), max_denominator)
    found = found[:count]
    denom = rng.randint(count, max_denominator)
    weights = random_composition(denom, count, rng)
    return [(Fraction(w, denom), mt) for w, mt in zip(weights, found)]


def random_member(graph: BipartiteGraph, k: int, seed: Union[InstanceSeed, int, random.Random]) -> RationalPoint:
    """A random convex combination of 2 to 6 distinct ``k``-matchings of ``graph``.

    Fewer matchings are used when the graph does not have enough distinct
    ones.  Weights have denominator at most ``seed.max_denominator``.
    """
    terms = random_combination(graph, k, seed)
    return Decomposition("convex", tuple(terms)).reconstruct(graph.m, graph.n)


def random_dilate_point(graph: BipartiteGraph, k: int, t: int, rng) -> IntegerPoint:
    """Sum of ``t`` random ``k``-matchings of ``graph``."""
    rng = _rng(rng)
    rows = [[0] * graph.n for _ in range(graph.m)]
    for _ in range(t):
        for i, j in random_k_matching(graph, k, rng):
            rows[i][j] += 1
    return IntegerPoint(rows)


def random_permutation_sum(n: int, t: int, rng) -> IntegerPoint:
    return random_dilate_point(BipartiteGraph.complete(n, n), n, t, rng)


def perturb(point: IntegerPoint, graph: BipartiteGraph, t: int, rng) -> IntegerPoint:
    """A nearby integer matrix that is not in ``t`` times the polytope (retries until so).

    Perturbations: change one entry by one (wrong total), move a unit into an
    already-full row or column, or place a unit on a non-edge.
    """
    from .polytope import membership

    rng = _rng(rng)
    k = point.total() // t if t else 0
    cells = [(i, j) for i in range(graph.m) for j in range(graph.n)]
    while True:
        rows = point.to_lists()
        kind = rng.choice(("total", "move", "non_edge"))
        if kind == "total":
            i, j = rng.choice(cells)
            if rows[i][j] > 0 and rng.random() < 0.5:
                rows[i][j] -= 1
            else:
                rows[i][j] += 1
        elif kind == "move":
            src = [c for c in cells if rows[c[0]][c[1]] > 0]
            if not src:
                continue
            i, j = rng.choice(src)
            rows[i][j] -= 1
            a, b = rng.choice(sorted(graph.edges))
            rows[a][b] += 1
        else:
            outside = [c for c in cells if c not in graph.edges]
            if not outside:
                continue
            i, j = rng.choice(outside)
            src = [c for c in cells if rows[c[0]][c[1]] > 0]
            if src:
                a, b = rng.choice(src)
                rows[a][b] -= 1
            rows[i][j] += 1
        candidate = IntegerPoint(rows)
        if not membership([[Fraction(v) for v in r] for r in rows], graph, k, "exact", t):
            return candidate


def random_union_cover_instance(rng, m: int = 4, n: int = 4):
    """``(M1, M2, V1, V2)`` with ``V1`` inside the A-side of ``M1`` and ``V2`` inside the B-side of ``M2``."""
    rng = _rng(rng)
    full = BipartiteGraph.complete(m, n)
    m1 = random_k_matching(full, rng.randint(0, min(m, n)), rng)
    m2 = random_k_matching(full, rng.randint(0, min(m, n)), rng)
    v1 = frozenset(i for i in m1.a_vertices if rng.random() < 0.6)
    v2 = frozenset(j for j in m2.b_vertices if rng.random() < 0.6)
    return m1, m2, v1, v2


def _random_covering(rng, m, n, k, a_req, b_req) -> Optional[Matching]:
    """A random ``k``-matching of ``K_{m,n}`` covering ``a_req`` and ``b_req``, or ``None``."""
    edges, used_a, used_b = set(), set(), set()
    for a in a_req:
        b = rng.choice([x for x in range(n) if x not in used_b])
        edges.add((a, b))
        used_a.add(a)
        used_b.add(b)
    for b in b_req:
        if b in used_b:
            continue
        free = [x for x in range(m) if x not in used_a]
        if not free:
            return None
        a = rng.choice(free)
        edges.add((a, b))
        used_a.add(a)
        used_b.add(b)
    while len(edges) < k:
        a = rng.choice([x for x in range(m) if x not in used_a])
        b = rng.choice([x for x in range(n) if x not in used_b])
        edges.add((a, b))
        used_a.add(a)
        used_b.add(b)
    return Matching(frozenset(edges)) if len(edges) == k else None


def random_triple_instance(rng, m: int = 4, n: int = 4):
    """``(M1, M2, M3, A_p, B_p, k)`` satisfying every precondition of ``triple_combine``."""
    rng = _rng(rng)
    while True:
        k = rng.randint(1, min(m, n))
        r = rng.randint(0, k)
        c = rng.randint(max(0, k - r), k)
        a_p = frozenset(rng.sample(range(m), r))
        b_p = frozenset(rng.sample(range(n), c))
        surplus = r + c - k
        m3 = Matching(frozenset(zip(rng.sample(sorted(a_p), surplus), rng.sample(sorted(b_p), surplus))))
        m1 = _random_covering(rng, m, n, k, sorted(a_p), ())
        m2 = _random_covering(rng, m, n, k, (), sorted(b_p))
        if m1 is not None and m2 is not None:
            return m1, m2, m3, a_p, b_p, k
