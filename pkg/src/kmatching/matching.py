"""Bipartite matching machinery.

Augmenting-path searches are breadth-first and visit neighbours in increasing
index order, so every function here is deterministic.  ``union_cover`` and
``triple_combine`` are the two combination steps used by the normality
construction: the first merges a matching covering some A-vertices with one
covering some B-vertices, the second builds a ``k``-matching covering prescribed
vertex sets out of three given matchings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .core import BipartiteGraph, Edge, Matching
from .errors import InternalError, NoSuchMatching, PreconditionViolated


@dataclass(frozen=True)
class HallViolator:
    """A set ``subset`` on one side with fewer neighbours than members."""

    side: str
    subset: frozenset
    neighborhood: frozenset

    def check(self, graph: BipartiteGraph) -> bool:
        adj = graph.adj_a if self.side == "A" else graph.adj_b
        nbhd = {v for u in self.subset for v in adj[u]}
        return nbhd == set(self.neighborhood) and len(nbhd) < len(self.subset)


def _search(adj, mate_self, mate_other, root):
    """BFS for an augmenting path from the exposed vertex ``root``.

    ``adj`` lists neighbours of the root's side.  On success the path is
    flipped in place and ``None`` is returned; on failure the alternating tree
    ``(reached_self, reached_other)`` is returned.
    """
    parent = {}
    reached = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in parent:
                continue
            parent[v] = u
            w = mate_other[v]
            if w is None:
                while True:
                    u = parent[v]
                    nxt = mate_self[u]
                    mate_self[u] = v
                    mate_other[v] = u
                    if u == root:
                        return None
                    v = nxt
            reached.append(w)
            queue.append(w)
    return reached, list(parent)


def _to_matching(mate_a) -> Matching:
    return Matching(frozenset((i, j) for i, j in enumerate(mate_a) if j is not None))


def max_matching(graph: BipartiteGraph) -> Matching:
    """Maximum-cardinality matching by shortest augmenting paths from each A-vertex in turn."""
    mate_a = [None] * graph.m
    mate_b = [None] * graph.n
    adj = graph.adj_a
    for a in range(graph.m):
        if adj[a]:
            _search(adj, mate_a, mate_b, a)
    return _to_matching(mate_a)


def hall_violator(graph: BipartiteGraph, subset: Iterable[int], side: str = "A") -> Optional[HallViolator]:
    """A Hall obstruction inside ``subset``, or ``None`` if some matching covers it."""
    subset = sorted(set(subset))
    size = graph.m if side == "A" else graph.n
    if any(not 0 <= v < size for v in subset):
        raise ValueError(f"vertex out of range on side {side}")
    if side == "A":
        adj, mate_self, mate_other = graph.adj_a, [None] * graph.m, [None] * graph.n
    else:
        adj, mate_self, mate_other = graph.adj_b, [None] * graph.n, [None] * graph.m
    for v in subset:
        tree = _search(adj, mate_self, mate_other, v)
        if tree is not None:
            reached_self, reached_other = tree
            return HallViolator(side, frozenset(reached_self), frozenset(reached_other))
    return None


def covering_matching(graph: BipartiteGraph, a_req: Iterable[int], b_req: Iterable[int], k: int) -> Matching:
    """A matching of exactly ``k`` edges covering every vertex of ``a_req`` and ``b_req``.

    Required vertices are covered first by augmenting from them, then the
    matching is grown by plain augmentation (which never uncovers a vertex)
    and, if it overshoots, trimmed of the largest edges avoiding required
    vertices.  When both sides carry requirements the greedy phase can paint
    itself into a corner; the request is then solved exactly as a perfect
    matching problem on an auxiliary graph.
    """
    a_req = sorted(set(a_req))
    b_req = sorted(set(b_req))
    if any(not 0 <= a < graph.m for a in a_req) or any(not 0 <= b < graph.n for b in b_req):
        raise ValueError("required vertex out of range")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > min(graph.m, graph.n) or len(a_req) > k or len(b_req) > k:
        raise NoSuchMatching(f"no {k}-matching can cover {len(a_req)}+{len(b_req)} vertices here")

    mate_a = [None] * graph.m
    mate_b = [None] * graph.n
    for a in a_req:
        if mate_a[a] is None and _search(graph.adj_a, mate_a, mate_b, a) is not None:
            return _covering_fallback(graph, a_req, b_req, k, stuck=("A", a))
    for b in b_req:
        if mate_b[b] is None and _search(graph.adj_b, mate_b, mate_a, b) is not None:
            return _covering_fallback(graph, a_req, b_req, k, stuck=("B", b))

    size = sum(1 for j in mate_a if j is not None)
    for a in range(graph.m):
        if size >= k:
            break
        if mate_a[a] is None and graph.adj_a[a] and _search(graph.adj_a, mate_a, mate_b, a) is None:
            size += 1
    if size < k:
        raise NoSuchMatching(f"graph has no {k}-matching covering the required vertices")

    edges = set((i, j) for i, j in enumerate(mate_a) if j is not None)
    if size > k:
        req_a, req_b = set(a_req), set(b_req)
        free = sorted((e for e in edges if e[0] not in req_a and e[1] not in req_b), reverse=True)
        if len(free) < size - k:
            return _covering_fallback(graph, a_req, b_req, k, stuck=None)
        edges.difference_update(free[: size - k])
    return Matching(frozenset(edges))


def _covering_fallback(graph, a_req, b_req, k, stuck):
    if stuck is not None and not (a_req and b_req):
        side, _ = stuck
        violator = hall_violator(graph, a_req if side == "A" else b_req, side)
        raise NoSuchMatching(f"required {side}-vertices cannot all be covered", violator)
    # k-matchings covering the requirements are exactly the perfect matchings
    # of: left = A + (n-k) dummies adjacent to free B-vertices,
    #     right = B + (m-k) dummies adjacent to free A-vertices.
    m, n = graph.m, graph.n
    req_a, req_b = set(a_req), set(b_req)
    left = m + (n - k)
    edges = set(graph.edges)
    for a in range(m):
        if a not in req_a:
            edges.update((a, n + d) for d in range(m - k))
    for b in range(n):
        if b not in req_b:
            edges.update((m + d, b) for d in range(n - k))
    aux = BipartiteGraph(left, left, frozenset(edges))
    perfect = max_matching(aux)
    if len(perfect) < left:
        raise NoSuchMatching(f"graph has no {k}-matching covering the required vertices")
    return Matching(frozenset((i, j) for i, j in perfect if i < m and j < n))


def _vertex_paths(m1: Matching, m2: Matching):
    """Components of ``m1 + m2`` with m1 oriented A->B and m2 oriented B->A.

    Yields ``(kind, start, steps)`` where kind is ``"path"`` or ``"cycle"`` and
    steps is the list of ``(edge, source_matching_index)`` in traversal order;
    a path is traversed from its vertex of indegree zero.
    """
    out = {}
    indeg = set()
    for i, j in m1:
        out[("A", i)] = (("B", j), (i, j), 1)
        indeg.add(("B", j))
    for i, j in m2:
        out[("B", j)] = (("A", i), (i, j), 2)
        indeg.add(("A", i))
    seen = set()
    starts = sorted(v for v in out if v not in indeg)
    for start in starts:
        steps, v = [], start
        while v in out:
            seen.add(v)
            nxt, edge, src = out[v]
            steps.append((edge, src))
            v = nxt
        seen.add(v)
        yield "path", start, steps
    for start in sorted(out):
        if start in seen:
            continue
        steps, v = [], start
        while v not in seen:
            seen.add(v)
            nxt, edge, src = out[v]
            steps.append((edge, src))
            v = nxt
        yield "cycle", start, steps


def union_cover(m1: Matching, m2: Matching, v1: Iterable[int], v2: Iterable[int]) -> Matching:
    """A matching inside ``m1 | m2`` covering A-vertices ``v1`` and B-vertices ``v2``."""
    v1, v2 = set(v1), set(v2)
    if not v1 <= m1.a_vertices:
        raise PreconditionViolated("M1 does not cover V1")
    if not v2 <= m2.b_vertices:
        raise PreconditionViolated("M2 does not cover V2")
    required = {("A", a) for a in v1} | {("B", b) for b in v2}
    keep = set()
    for kind, start, steps in _vertex_paths(m1, m2):
        touched = {("A", e[0]) for e, _ in steps} | {("B", e[1]) for e, _ in steps}
        if not touched & required:
            continue
        if kind == "cycle":
            keep.update(e for e, src in steps if src == 1)
        else:
            # Every required vertex has an outgoing edge, so only the start
            # vertex decides the parity of the kept alternation.
            offset = 0 if start in required else 1
            keep.update(e for idx, (e, _) in enumerate(steps) if idx % 2 == offset)
    return Matching(frozenset(keep))


def _triple_problem(m1, m2, m3, a_p, b_p, k) -> Optional[str]:
    """Name of the first violated precondition of ``triple_combine``, or ``None``."""
    r, c = len(a_p), len(b_p)
    if not (r <= k and c <= k and k <= r + c):
        return f"need r <= k, c <= k, k <= r + c (r={r}, c={c}, k={k})"
    if len(m1) != k or len(m2) != k:
        return f"M1 and M2 must have exactly k={k} edges"
    if not a_p <= m1.a_vertices:
        return "M1 does not cover A'"
    if not b_p <= m2.b_vertices:
        return "M2 does not cover B'"
    if len(m3) != r + c - k:
        return f"M3 must have r + c - k = {r + c - k} edges"
    if any(i not in a_p or j not in b_p for i, j in m3):
        return "M3 has an edge outside A' x B'"
    return None


def _covers_all(matching: Matching, a_p, b_p) -> bool:
    return a_p <= matching.a_vertices and b_p <= matching.b_vertices


def triple_combine(m1: Matching, m2: Matching, m3: Matching, a_p: Iterable[int], b_p: Iterable[int], k: int) -> Matching:
    """A ``k``-matching inside ``m1 | m2 | m3`` covering ``a_p`` and ``b_p``.

    ``m1`` and ``m2`` are ``k``-matchings covering ``a_p`` and ``b_p``
    respectively and ``m3`` is a matching of size ``|a_p| + |b_p| - k`` inside
    ``a_p x b_p``.  Recurses on ``|a_p| + |b_p| - k`` by peeling off an edge of
    ``m1`` or ``m2`` joining the two prescribed sets.
    """
    a_p, b_p = frozenset(a_p), frozenset(b_p)
    problem = _triple_problem(m1, m2, m3, a_p, b_p, k)
    if problem is not None:
        raise PreconditionViolated(problem)
    result = _combine(m1, m2, m3, a_p, b_p, k)
    union = m1.edges | m2.edges | m3.edges
    if len(result) != k or not result.edges <= union or not _covers_all(result, a_p, b_p):
        raise InternalError(f"triple_combine produced {result}, violating its postcondition")
    return result


def _combine(m1, m2, m3, a_p, b_p, k) -> Matching:
    surplus = len(a_p) + len(b_p) - k
    if surplus == 0:
        return _combine_base(m1, m2, a_p, b_p, k)

    crossing = [(e, 1) for e in m1 if e[0] in a_p and e[1] in b_p]
    crossing += [(e, 2) for e in m2 if e[0] in a_p and e[1] in b_p]
    if not crossing:
        return _combine_disjoint(m1, m2, m3, a_p, b_p, k)

    for edge, src in crossing:
        (s1, s2, s3, sa, sb, sk), added = _peel(m1, m2, m3, edge, src, a_p, b_p, k)
        inner = _combine(s1, s2, s3, sa, sb, sk)
        fixed_a = {i for i, _ in added}
        fixed_b = {j for _, j in added}
        # The reduced M2 (or M1) may still touch a fixed vertex, in which case
        # the inner answer cannot be extended; try the next crossing edge.
        if not (inner.a_vertices & fixed_a or inner.b_vertices & fixed_b):
            return Matching(inner.edges | added)
    return _combine_by_exchange(m1, m2, m3, a_p, b_p, k)


def _combine_base(m1, m2, a_p, b_p, k) -> Matching:
    covering = union_cover(m1, m2, m1.a_vertices, m2.b_vertices)
    edges = set(covering.edges)
    if len(edges) < k:
        raise InternalError("union of M1 and M2 yielded fewer than k covering edges")
    spare = sorted((e for e in edges if e[0] not in a_p and e[1] not in b_p), reverse=True)
    excess = len(edges) - k
    if excess > len(spare):
        raise InternalError("base case cannot be trimmed to k edges")
    edges.difference_update(spare[:excess])
    return Matching(frozenset(edges))


def _combine_disjoint(m1, m2, m3, a_p, b_p, k) -> Matching:
    a_in3, b_in3 = m3.a_vertices, m3.b_vertices
    part1 = {e for e in m1 if e[0] in a_p and e[0] not in a_in3}
    part2 = {e for e in m2 if e[1] in b_p and e[1] not in b_in3}
    edges = part1 | part2 | set(m3.edges)
    if len(edges) != len(part1) + len(part2) + len(m3):
        raise InternalError("disjoint case produced overlapping parts")
    return Matching(frozenset(edges))


def _peel(m1, m2, m3, edge, src, a_p, b_p, k):
    """Reduced instance after fixing the crossing ``edge`` taken from matching ``src``.

    Returns ``((m1', m2', m3', a_p', b_p', k'), added_edges)`` where the
    answer for the reduced instance plus ``added_edges`` answers the original
    one, provided the two do not share a vertex.
    """
    a, b = edge
    if src == 1:
        r1 = m1.edges - {edge}
        r2 = m2.edges - {m2.edge_at_b(b)}
    else:
        r2 = m2.edges - {edge}
        r1 = m1.edges - {m1.edge_at_a(a)}
    at_ab = sorted(e for e in m3 if e[0] == a or e[1] == b)
    if len(at_ab) == 2:
        e1 = next(e for e in at_ab if e[0] == a)
        e2 = next(e for e in at_ab if e[1] == b)
        r1 = r1 - {m1.edge_at_a(e2[0])}
        r2 = r2 - {m2.edge_at_b(e1[1])}
        r3 = m3.edges - {e1, e2}
        gone_a, gone_b = {a, e2[0]}, {b, e1[1]}
        added = frozenset((e1, e2))
    else:
        r3 = m3.edges - set(at_ab) if at_ab else m3.edges - {min(m3.edges)}
        gone_a, gone_b = {a}, {b}
        added = frozenset((edge,))
    sub = (Matching(r1), Matching(r2), Matching(r3), a_p - gone_a, b_p - gone_b, k - len(gone_a))
    problem = _triple_problem(*sub)
    if problem is not None:
        raise InternalError(f"reduced instance is invalid: {problem}")
    return sub, added


def _combine_by_exchange(m1, m2, m3, a_p, b_p, k) -> Matching:
    """Direct construction used when no crossing edge can be peeled cleanly.

    Start from a matching of ``m1 | m2`` covering the prescribed vertices,
    then swap in ``m3`` edges along alternating paths whose ends avoid the
    prescribed vertices until at most ``k`` edges are needed, and finally
    augment inside the union up to exactly ``k`` edges.
    """
    req = {("A", a) for a in a_p} | {("B", b) for b in b_p}
    cur = {e for e in union_cover(m1, m2, a_p, b_p) if e[0] in a_p or e[1] in b_p}
    need = len(a_p) + len(b_p) - k
    m3_edges = set(m3.edges)

    def internal(edges):
        return sum(1 for i, j in edges if i in a_p and j in b_p)

    while internal(cur) < need:
        path = _exchange_path(cur, m3_edges, req)
        if path is None:
            raise InternalError("no exchange path although M3 is larger than the internal part")
        cur = (cur - path) | (path & m3_edges)
    union = m1.edges | m2.edges | m3.edges
    graph = BipartiteGraph(max(i for i, _ in union) + 1, max(j for _, j in union) + 1, frozenset(union))
    mate_a = [None] * graph.m
    mate_b = [None] * graph.n
    for i, j in cur:
        mate_a[i], mate_b[j] = j, i
    size = len(cur)
    for a in range(graph.m):
        if size >= k:
            break
        if mate_a[a] is None and graph.adj_a[a] and _search(graph.adj_a, mate_a, mate_b, a) is None:
            size += 1
    if size != k:
        raise InternalError("could not grow the exchanged matching to k edges")
    return _to_matching(mate_a)


def _exchange_path(cur, m3_edges, req):
    """An alternating cur/M3 path with both ends outside ``req`` (edge set), or ``None``."""
    nbr = {}
    for i, j in (cur ^ m3_edges):
        nbr.setdefault(("A", i), []).append((("B", j), (i, j)))
        nbr.setdefault(("B", j), []).append((("A", i), (i, j)))
    seen = set()
    for start in sorted(nbr):
        if start in seen or len(nbr[start]) != 1:
            continue
        path, prev, v = set(), None, start
        while True:
            seen.add(v)
            step = [(w, e) for w, e in nbr[v] if e != prev]
            if not step:
                break
            w, e = step[0]
            path.add(e)
            prev, v = e, w
        # Ends outside req means the path starts and ends with cur edges, so
        # swapping trades j+1 edges for j internal ones.
        if start not in req and v not in req:
            return path
    return None


def brute_force_submatchings(edges: Iterable[Edge], k: int, a_req=(), b_req=()) -> list[Matching]:
    """Every ``k``-subset of ``edges`` that is a matching covering the requirements."""
    pool = sorted(set(edges))
    a_req, b_req = set(a_req), set(b_req)
    found = []
    for combo in combinations(pool, k):
        rows = {i for i, _ in combo}
        cols = {j for _, j in combo}
        if len(rows) == k and len(cols) == k and a_req <= rows and b_req <= cols:
            found.append(Matching(frozenset(combo)))
    return found
