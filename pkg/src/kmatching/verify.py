"""Self-verification suites: constructive algorithms against brute force.

Each suite returns a :class:`SuiteResult`.  ``run_all`` drives the exhaustive
suites over every graph within the size bounds and the randomized suites for
a given number of trials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Optional

from .core import BipartiteGraph, Matching, RationalPoint
from .errors import KMatchingError, NoKMatching, TooLarge
from .matching import brute_force_submatchings, triple_combine, union_cover
from .normality import birkhoff_decompose, fractional_decompose, k_extract, normality_decompose
from .oracle import (
    InstanceSeed,
    brute_decompose,
    enumerate_integer_points,
    enumerate_k_matchings,
    perturb,
    random_dilate_point,
    random_graph,
    random_member,
    random_permutation_sum,
    random_triple_instance,
    random_union_cover_instance,
)
from .polytope import midpoint_certificate, membership


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: int = 0
    examples: list = field(default_factory=list)

    def record(self, ok: bool, detail=None):
        self.checked += 1
        if not ok:
            self.failures += 1
            if len(self.examples) < 5:
                self.examples.append(detail)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def __str__(self) -> str:
        return f"{self.name}: checked {self.checked}, failures {self.failures}"


def all_graphs(m: int, n: int) -> Iterator[BipartiteGraph]:
    """Every bipartite graph on ``m + n`` labelled vertices."""
    cells = [(i, j) for i in range(m) for j in range(n)]
    for mask in range(1 << len(cells)):
        yield BipartiteGraph(m, n, frozenset(c for b, c in enumerate(cells) if mask >> b & 1))


def _zero_one_points(m: int, n: int) -> list[RationalPoint]:
    return [RationalPoint([list(bits[i * n:(i + 1) * n]) for i in range(m)]) for bits in product((0, 1), repeat=m * n)]


def _is_k_matching_of(matching: Matching, graph: BipartiteGraph, k: int) -> bool:
    return len(matching) == k and matching.edges <= graph.edges


def _sums_to(terms, point) -> bool:
    m, n = point.shape
    acc = [[0] * n for _ in range(m)]
    for mt in terms:
        for i, j in mt:
            acc[i][j] += 1
    return [tuple(r) for r in acc] == [tuple(r) for r in point.rows]


# ---------------------------------------------------------------- exhaustive


def vertex_suite(m: int, n: int, ks) -> SuiteResult:
    """0/1 members of the polytope coincide with the ``k``-matchings, for every graph."""
    result = SuiteResult(f"vertices {m}x{n}")
    points = _zero_one_points(m, n)
    for graph in all_graphs(m, n):
        for k in ks:
            members = {p.support() for p in points if membership(p, graph, k)}
            expected = {mt.edges for mt in enumerate_k_matchings(graph, k)}
            result.record(members == expected, (sorted(graph.edges), k))
    return result


def normality_suite(m: int, n: int, ks, ts, brute: bool = True, graphs=None) -> SuiteResult:
    """Every lattice point of every dilate decomposes, both constructively and by search."""
    result = SuiteResult(f"normality {m}x{n}")
    for graph in graphs if graphs is not None else all_graphs(m, n):
        for k in ks:
            for t in ts:
                for point in enumerate_integer_points(graph, k, t):
                    ok = True
                    try:
                        dec = normality_decompose(point, graph, t, k)
                        ok = len(dec) == t and all(_is_k_matching_of(mt, graph, k) for mt in dec.matchings)
                        ok = ok and _sums_to(dec.matchings, point)
                    except KMatchingError:
                        ok = False
                    if brute:
                        ok = ok and brute_decompose(point, graph, t, k) is not None
                    result.record(ok, (sorted(graph.edges), k, t, point.rows))
    return result


# ---------------------------------------------------------------- randomized


def extract_suite(n: int, k: int, t: int, trials: int, rng) -> SuiteResult:
    """One ``k_extract`` step on random sums of ``t`` ``k``-matchings of ``K_{n,n}``."""
    result = SuiteResult(f"k_extract n={n} k={k} t={t}")
    full = BipartiteGraph.complete(n, n)
    for _ in range(trials):
        point = random_dilate_point(full, k, t, rng)
        try:
            mt = k_extract(point, t, k)
            rest = [[v - (1 if (i, j) in mt.edges else 0) for j, v in enumerate(row)] for i, row in enumerate(point.rows)]
            ok = len(mt) == k and all(v >= 0 for row in rest for v in row)
            ok = ok and bool(membership(rest, full, k, "exact", t - 1))
        except KMatchingError:
            ok = False
        result.record(ok, point.rows)
    return result


def birkhoff_suite(max_n: int, max_t: int, trials: int, rng) -> SuiteResult:
    result = SuiteResult(f"birkhoff n<={max_n} t<={max_t}")
    for _ in range(trials):
        n, t = rng.randint(1, max_n), rng.randint(1, max_t)
        point = random_permutation_sum(n, t, rng)
        try:
            dec = birkhoff_decompose(point, t)
            ok = len(dec) == t and all(len(mt) == n for mt in dec.matchings) and _sums_to(dec.matchings, point)
        except KMatchingError:
            ok = False
        result.record(ok, (t, point.rows))
    return result


def _random_member_instance(rng, max_m, max_n, max_denominator, density=0.7):
    """``(graph, k, x)`` for a random graph with at least one edge."""
    while True:
        m, n = rng.randint(1, max_m), rng.randint(1, max_n)
        graph = random_graph(m, n, rng, density)
        if not graph.edges:
            continue
        k = rng.randint(1, min(m, n))
        try:
            x = random_member(graph, k, InstanceSeed(rng.getrandbits(64), max_denominator))
        except NoKMatching:
            continue
        return graph, k, x


def fractional_suite(max_m: int, max_n: int, max_denominator: int, trials: int, rng) -> SuiteResult:
    result = SuiteResult(f"fractional m,n<={max_m},{max_n}")
    for _ in range(trials):
        graph, k, x = _random_member_instance(rng, max_m, max_n, max_denominator)
        try:
            dec = fractional_decompose(x, graph, k)
            ok = sum(dec.weights) == 1 and all(w > 0 for w in dec.weights)
            ok = ok and all(_is_k_matching_of(mt, graph, k) for mt in dec.matchings)
            ok = ok and dec.reconstruct(graph.m, graph.n) == x
        except KMatchingError:
            ok = False
        result.record(ok, (sorted(graph.edges), k, x.rows))
    return result


def certificate_chain(x: RationalPoint, graph: BipartiteGraph, k: int) -> Optional[str]:
    """Follow certificates down to an integral point; name the first failure, if any.

    At each step the next point is whichever of ``x'``, ``x''`` has fewer
    fractional entries (``x'`` on ties); its count must be strictly smaller.
    """
    while not x.is_integral():
        cert = midpoint_certificate(x, graph, k)
        failed = cert.check(x, graph, k)
        if failed:
            return f"{'/'.join(failed)} at {x.rows}"
        a, b = cert.x_prime, cert.x_double_prime
        nxt = a if a.fractional_count() <= b.fractional_count() else b
        if nxt.fractional_count() >= x.fractional_count():
            return f"no strict decrease at {x.rows} ({cert.case_tag.value})"
        x = nxt
    return None


def certificate_suite(max_m: int, max_n: int, max_denominator: int, trials: int, rng) -> SuiteResult:
    """Certificate invariants and the strict-decrease witness along full chains."""
    result = SuiteResult(f"certificates m,n<={max_m},{max_n}")
    done = 0
    while done < trials:
        graph, k, x = _random_member_instance(rng, max_m, max_n, max_denominator)
        if x.is_integral():
            continue
        done += 1
        try:
            problem = certificate_chain(x, graph, k)
        except KMatchingError as exc:
            problem = repr(exc)
        result.record(problem is None, problem)
    return result


def union_cover_suite(m: int, n: int, trials: int, rng) -> SuiteResult:
    result = SuiteResult(f"union_cover {m}x{n}")
    for _ in range(trials):
        m1, m2, v1, v2 = random_union_cover_instance(rng, m, n)
        try:
            out = union_cover(m1, m2, v1, v2)
            union = m1.edges | m2.edges
            ok = out in brute_force_submatchings(union, len(out), v1, v2)
        except KMatchingError:
            ok = False
        result.record(ok, (m1, m2, sorted(v1), sorted(v2)))
    return result


def triple_suite(m: int, n: int, trials: int, rng) -> SuiteResult:
    result = SuiteResult(f"triple_combine {m}x{n}")
    for _ in range(trials):
        m1, m2, m3, a_p, b_p, k = random_triple_instance(rng, m, n)
        try:
            out = triple_combine(m1, m2, m3, a_p, b_p, k)
            valid = brute_force_submatchings(m1.edges | m2.edges | m3.edges, k, a_p, b_p)
            ok = out in valid
        except KMatchingError:
            ok = False
        result.record(ok, (m1, m2, m3, sorted(a_p), sorted(b_p), k))
    return result


def rejection_suite(max_m: int, max_n: int, max_k: int, max_t: int, trials: int, rng) -> SuiteResult:
    """Perturbed sums of matchings must be rejected by both decomposers."""
    result = SuiteResult("non-member rejection")
    done = 0
    while done < trials:
        m, n = rng.randint(1, max_m), rng.randint(1, max_n)
        graph = random_graph(m, n, rng, 0.7)
        k = rng.randint(1, min(m, n, max_k))
        t = rng.randint(1, max_t)
        try:
            base = random_dilate_point(graph, k, t, rng)
        except NoKMatching:
            continue
        done += 1
        bad = perturb(base, graph, t, rng)
        try:
            normality_decompose(bad, graph, t, k)
            constructive_rejects = False
        except (KMatchingError, ValueError):
            constructive_rejects = True
        brute_rejects = brute_decompose(bad, graph, t, k) is None
        result.record(constructive_rejects and brute_rejects, (sorted(graph.edges), k, t, bad.rows))
    return result


# ---------------------------------------------------------------- driver


def check_bounds(max_m: int, max_n: int, max_k: int, max_t: int) -> None:
    """Raise :class:`TooLarge` when the exhaustive suites would exceed the oracle guards."""
    if max_m * max_n > 9 or max_t > 3:
        raise TooLarge(f"exhaustive bounds m={max_m}, n={max_n}, t={max_t} exceed m*n <= 9, t <= 3")
    if min(max_m, max_n, max_k, max_t) < 1:
        raise ValueError("bounds must be positive")


def run_all(
    max_m: int = 3,
    max_n: int = 3,
    max_k: int = 3,
    max_t: int = 3,
    trials: int = 100,
    seed: int = 0,
    max_denominator: int = 60,
    report: Callable[[str], None] = print,
) -> list[SuiteResult]:
    check_bounds(max_m, max_n, max_k, max_t)
    results = []

    def emit(res):
        results.append(res)
        report(str(res))

    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            top = min(m, n, max_k)
            emit(vertex_suite(m, n, range(top + 1)))
            emit(normality_suite(m, n, range(1, top + 1), range(1, max_t + 1)))
    if trials > 0:
        rng = random.Random(seed)
        size = max(max_m, max_n)
        emit(birkhoff_suite(size, max_t, trials, rng))
        for k in range(1, min(size, max_k) + 1):
            emit(extract_suite(size, k, max(max_t, 2), trials, rng))
        emit(fractional_suite(max_m, max_n, max_denominator, trials, rng))
        emit(certificate_suite(max_m, max_n, max_denominator, trials, rng))
        emit(union_cover_suite(max_m, max_n, trials, rng))
        emit(triple_suite(max_m, max_n, trials, rng))
        emit(rejection_suite(max_m, max_n, max_k, max_t, trials, rng))
    checked = sum(r.checked for r in results)
    failures = sum(r.failures for r in results)
    report(f"total: checked {checked}, failures {failures}")
    return results
