"""Inequality description of the (dilated) k-matching polytope.

A point ``x`` lies in ``t`` times the polytope of ``k``-matchings of ``G`` iff
``x >= 0``, ``x`` vanishes off the edges of ``G``, every row and column sums
to at most ``t`` and the entries total ``t*k``.  ``midpoint_certificate``
exhibits any non-integral member as the midpoint of two other members, which
is the constructive content of integrality of this description.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import BipartiteGraph, RationalPoint, _Matrix
from .errors import AlreadyIntegral, DimensionMismatch, InternalError, NotAMember

MODES = ("exact", "at_most", "at_least")


@dataclass(frozen=True)
class Violation:
    """First failed constraint.

    ``kind`` is one of ``negative``, ``support``, ``row``, ``column``,
    ``total``; ``index`` is a cell, a row/column number or ``None``.
    """

    kind: str
    index: object
    value: Fraction
    bound: Optional[Fraction] = None

    def __str__(self) -> str:
        where = "" if self.index is None else f" {self.index}"
        bound = "" if self.bound is None else f" (bound {self.bound})"
        return f"{self.kind}{where}: {self.value}{bound}"


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    violation: Optional[Violation] = None

    def __bool__(self) -> bool:
        return self.member


def _rows_of(x) -> tuple:
    if isinstance(x, _Matrix):
        return x.rows
    return tuple(tuple(Fraction(v) for v in row) for row in x)


def membership(
    x: Union[_Matrix, Sequence[Sequence]],
    graph: BipartiteGraph,
    k: int,
    mode: str = "exact",
    t: int = 1,
) -> MembershipVerdict:
    """Check ``x`` against ``t`` times the k-matching polytope of ``graph``.

    ``mode`` relaxes the total-sum equation to ``<=`` or ``>=``.  Constraints
    are tested in the order negativity, support, rows, columns, total and the
    first failure is reported.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if t < 0:
        raise ValueError("dilation factor must be nonnegative")
    rows = _rows_of(x)
    shape = (len(rows), len(rows[0]) if rows else graph.n)
    if shape != (graph.m, graph.n):
        raise DimensionMismatch(shape, (graph.m, graph.n))
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v < 0:
                return MembershipVerdict(False, Violation("negative", (i, j), Fraction(v), Fraction(0)))
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v != 0 and (i, j) not in graph.edges:
                return MembershipVerdict(False, Violation("support", (i, j), Fraction(v)))
    bound = Fraction(t)
    for i, row in enumerate(rows):
        s = sum(row, Fraction(0))
        if s > bound:
            return MembershipVerdict(False, Violation("row", i, s, bound))
    for j in range(graph.n):
        s = sum((row[j] for row in rows), Fraction(0))
        if s > bound:
            return MembershipVerdict(False, Violation("column", j, s, bound))
    total = sum((sum(row, Fraction(0)) for row in rows), Fraction(0))
    target = Fraction(t * k)
    ok = {"exact": total == target, "at_most": total <= target, "at_least": total >= target}[mode]
    if not ok:
        return MembershipVerdict(False, Violation("total", None, total, target))
    return MembershipVerdict(True)


def is_vertex(x, graph: BipartiteGraph, k: int) -> bool:
    """True iff ``x`` is the indicator of a k-matching of ``graph``."""
    if not membership(x, graph, k):
        return False
    return all(v in (0, 1) for row in _rows_of(x) for v in row)


class CaseTag(str, Enum):
    EVEN_CYCLE = "EvenCycle"
    EVEN_MAXIMAL_PATH = "EvenMaximalPath"
    ODD_PATH_INTERIOR_SLACK = "OddPathInteriorSlack"
    TWO_ODD_PATHS = "TwoOddPaths"


@dataclass(frozen=True)
class MidpointCertificate:
    x_prime: RationalPoint
    x_double_prime: RationalPoint
    epsilon: Fraction
    case_tag: CaseTag

    def check(self, x, graph: BipartiteGraph, k: int) -> list[str]:
        """Names of the certificate invariants that fail for ``x`` (empty if valid)."""
        rows = _rows_of(x)
        failures = []
        mid = [[(p + q) / 2 for p, q in zip(r1, r2)] for r1, r2 in zip(self.x_prime.rows, self.x_double_prime.rows)]
        if [list(r) for r in rows] != mid:
            failures.append("midpoint")
        if self.x_prime.rows == rows or self.x_double_prime.rows == rows:
            failures.append("distinct")
        if not membership(self.x_prime, graph, k) or not membership(self.x_double_prime, graph, k):
            failures.append("membership")
        if self.epsilon <= 0:
            failures.append("epsilon")
        return failures


# Vertices of the fractional-support subgraph are (0, i) for A and (1, j) for B.

def _edge(u, v) -> tuple[int, int]:
    return (u[1], v[1]) if u[0] == 0 else (v[1], u[1])


def _fractional_adjacency(rows) -> dict:
    adj: dict = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v.denominator != 1:
                adj.setdefault((0, i), []).append((1, j))
                adj.setdefault((1, j), []).append((0, i))
    for nbrs in adj.values():
        nbrs.sort()
    return adj


def _find_cycle(adj) -> Optional[list]:
    """Edges of the first cycle met by a DFS in vertex order, or ``None``."""
    state: dict = {}
    parent: dict = {}

    def dfs(u):
        state[u] = 1
        for v in adj[u]:
            if v == parent.get(u):
                continue
            if state.get(v) == 1:
                chain = [u]
                while chain[-1] != v:
                    chain.append(parent[chain[-1]])
                chain.reverse()
                return [_edge(chain[i], chain[(i + 1) % len(chain)]) for i in range(len(chain))]
            if v not in state:
                parent[v] = u
                found = dfs(v)
                if found:
                    return found
        state[u] = 2
        return None

    for root in sorted(adj):
        if root not in state:
            found = dfs(root)
            if found:
                return found
    return None


def _walk(adj, start, blocked) -> list:
    """Greedy walk from ``start`` to the smallest unvisited neighbour until stuck."""
    path = [start]
    seen = set(blocked) | {start}
    while True:
        nxt = [v for v in adj[path[-1]] if v not in seen]
        if not nxt:
            return path
        path.append(nxt[0])
        seen.add(nxt[0])


def _maximal_path(adj, start) -> list:
    """Vertex sequence of a maximal path of the forest through ``start``'s component."""
    leaf = _walk(adj, start, ())[-1]
    return _walk(adj, leaf, ())


def _component(adj, start) -> set:
    comp, stack = {start}, [start]
    while stack:
        for v in adj[stack.pop()]:
            if v not in comp:
                comp.add(v)
                stack.append(v)
    return comp


def _path_edges(vertices) -> list:
    return [_edge(vertices[i], vertices[i + 1]) for i in range(len(vertices) - 1)]


def _vertex_load(rows, v) -> Fraction:
    side, idx = v
    if side == 0:
        return sum(rows[idx], Fraction(0))
    return sum((row[idx] for row in rows), Fraction(0))


def _alternate(rows, signed_edges, eps) -> tuple[RationalPoint, RationalPoint]:
    plus = [list(r) for r in rows]
    minus = [list(r) for r in rows]
    for (i, j), sign in signed_edges:
        plus[i][j] += sign * eps
        minus[i][j] -= sign * eps
    return RationalPoint(plus), RationalPoint(minus)


def _alternating_signs(edges, first=1) -> list:
    return [(e, first if idx % 2 == 0 else -first) for idx, e in enumerate(edges)]


def _standard_eps(rows, edges) -> Fraction:
    return min(min(rows[i][j], 1 - rows[i][j]) for i, j in edges)


def midpoint_certificate(x, graph: BipartiteGraph, k: int) -> MidpointCertificate:
    """Write a non-integral member ``x`` as the midpoint of two other members.

    The fractional entries of ``x`` form a subgraph ``H``.  A cycle of ``H``,
    or an even leaf-to-leaf path, is perturbed by alternating ``+eps/-eps``.
    If ``H`` is a single odd path, some interior vertex has slack and the
    even piece cut off by it is perturbed instead.  A branching tree yields an
    even leaf-to-leaf path, and two odd paths in different components are
    perturbed with opposite phases so the total is preserved.
    """
    verdict = membership(x, graph, k)
    if not verdict:
        raise NotAMember(verdict.violation)
    rows = _rows_of(x)
    adj = _fractional_adjacency(rows)
    if not adj:
        raise AlreadyIntegral("point is integral, hence a vertex")

    cycle = _find_cycle(adj)
    if cycle is not None:
        eps = _standard_eps(rows, cycle)
        xp, xpp = _alternate(rows, _alternating_signs(cycle), eps)
        return MidpointCertificate(xp, xpp, eps, CaseTag.EVEN_CYCLE)

    start = min(adj)
    path = _maximal_path(adj, start)
    edges = _path_edges(path)
    if len(edges) % 2 == 0:
        return _even_path_certificate(rows, edges)

    comp = _component(adj, start)
    if len(comp) == len(adj):
        if len(comp) == len(path):
            cert = _slack_certificate(rows, path)
            if not _reduces_fractional_count(cert, x if isinstance(x, RationalPoint) else RationalPoint(rows)):
                cert = _extreme_certificate(rows, CaseTag.ODD_PATH_INTERIOR_SLACK)
            return cert
        return _branch_certificate(rows, adj, path)

    other = min(v for v in adj if v not in comp)
    path2 = _maximal_path(adj, other)
    edges2 = _path_edges(path2)
    if len(edges2) % 2 == 0:
        return _even_path_certificate(rows, edges2)
    eps = _standard_eps(rows, edges + edges2)
    signed = _alternating_signs(edges, 1) + _alternating_signs(edges2, -1)
    xp, xpp = _alternate(rows, signed, eps)
    return MidpointCertificate(xp, xpp, eps, CaseTag.TWO_ODD_PATHS)


def _even_path_certificate(rows, edges) -> MidpointCertificate:
    eps = _standard_eps(rows, edges)
    xp, xpp = _alternate(rows, _alternating_signs(edges), eps)
    return MidpointCertificate(xp, xpp, eps, CaseTag.EVEN_MAXIMAL_PATH)


def _branch_certificate(rows, adj, path) -> MidpointCertificate:
    on_path = set(path)
    for pos in range(1, len(path) - 1):
        extra = [v for v in adj[path[pos]] if v not in on_path]
        if extra:
            break
    else:
        raise InternalError("tree that is not a path must branch at an interior vertex")
    branch = _walk(adj, extra[0], on_path)
    head = path[: pos + 1] + branch
    tail = path[pos:][::-1] + branch
    chosen = head if (len(head) - 1) % 2 == 0 else tail
    return _even_path_certificate(rows, _path_edges(chosen))


def _slack_certificate(rows, path) -> MidpointCertificate:
    """``H`` is one odd path: cut it at an interior vertex with slack.

    Among slack vertices, prefer one whose step size is attained by an entry
    bound (so a perturbed entry becomes integral); ties go to the smallest
    vertex.
    """
    edges = _path_edges(path)
    options = []
    for pos in range(1, len(path) - 1):
        v = path[pos]
        if _vertex_load(rows, v) >= 1:
            continue
        if pos % 2 == 0:
            piece, beyond = edges[:pos], edges[pos]
        else:
            piece, beyond = edges[pos:][::-1], edges[pos - 1]
        entry_terms = [rows[i][j] for i, j in piece] + [1 - rows[i][j] for i, j in piece[:-1]]
        i, j = piece[-1]
        bi, bj = beyond
        joint = 1 - rows[i][j] - rows[bi][bj]
        eps = min(min(entry_terms), joint)
        hits_entry = min(entry_terms) <= joint
        options.append((not hits_entry, v, piece, eps))
    if not options:
        raise InternalError("an odd fractional path always has an interior vertex with slack")
    _, _, piece, eps = min(options, key=lambda o: (o[0], o[1]))
    xp, xpp = _alternate(rows, _alternating_signs(piece), eps)
    return MidpointCertificate(xp, xpp, eps, CaseTag.ODD_PATH_INTERIOR_SLACK)


def _reduces_fractional_count(cert: MidpointCertificate, x: RationalPoint) -> bool:
    return min(cert.x_prime.fractional_count(), cert.x_double_prime.fractional_count()) < x.fractional_count()


def _maximize(objective, matrix, bounds) -> tuple[Fraction, list[Fraction]]:
    """Maximise ``objective . y`` subject to ``matrix y <= bounds`` with ``y`` free.

    Requires ``bounds >= 0`` so the origin is a feasible start and a bounded
    feasible region.  Exact tableau simplex with Bland's rule, which cannot
    cycle on the degenerate rows produced by zero slack.
    """
    nv, nc = len(objective), len(bounds)
    width = 2 * nv + nc
    # columns: y+ (nv), y- (nv), slack (nc), rhs
    tab = []
    for r, (row, rhs) in enumerate(zip(matrix, bounds)):
        line = [Fraction(a) for a in row] + [-Fraction(a) for a in row] + [Fraction(0)] * nc + [Fraction(rhs)]
        line[2 * nv + r] = Fraction(1)
        tab.append(line)
    reduced = [Fraction(c) for c in objective] + [-Fraction(c) for c in objective] + [Fraction(0)] * (nc + 1)
    basis = [2 * nv + r for r in range(nc)]
    while True:
        enter = next((j for j in range(width) if reduced[j] > 0), None)
        if enter is None:
            break
        best = None
        for r in range(nc):
            a = tab[r][enter]
            if a > 0:
                key = (tab[r][-1] / a, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            raise InternalError("linear program is unbounded")
        r = best[1]
        pivot = tab[r][enter]
        tab[r] = [v / pivot for v in tab[r]]
        for other in range(nc):
            if other != r and tab[other][enter] != 0:
                f = tab[other][enter]
                tab[other] = [v - f * w for v, w in zip(tab[other], tab[r])]
        f = reduced[enter]
        reduced = [v - f * w for v, w in zip(reduced, tab[r])]
        basis[r] = enter
    values = [Fraction(0)] * width
    for r, col in enumerate(basis):
        values[col] = tab[r][-1]
    y = [values[j] - values[nv + j] for j in range(nv)]
    return sum((c * v for c, v in zip(objective, y)), Fraction(0)), y


def _extreme_certificate(rows, tag: CaseTag) -> MidpointCertificate:
    """Symmetric perturbation that drives some fractional entry to 0 or 1.

    The uniform step on an odd path can stop at a vertex whose load reaches 1
    before any entry becomes integral.  Here the perturbation ``y`` may vary
    along the fractional edges: for each edge in order we maximise ``y_e``
    subject to ``x +/- y`` staying in the polytope, and take the first edge
    whose maximum reaches ``min(x_e, 1 - x_e)``.
    """
    edges = sorted((i, j) for i, row in enumerate(rows) for j, v in enumerate(row) if v.denominator != 1)
    cap = [min(rows[i][j], 1 - rows[i][j]) for i, j in edges]
    matrix, bounds = [], []

    def both_ways(coeffs, bound):
        matrix.append(coeffs)
        matrix.append([-c for c in coeffs])
        bounds.extend((bound, bound))

    for idx in range(len(edges)):
        both_ways([int(idx == p) for p in range(len(edges))], cap[idx])
    for side in (0, 1):
        for v in sorted({e[side] for e in edges}):
            load = sum((rows[v] if side == 0 else [row[v] for row in rows]), Fraction(0))
            both_ways([int(e[side] == v) for e in edges], 1 - load)
    both_ways([1] * len(edges), Fraction(0))
    for idx in range(len(edges)):
        best, y = _maximize([int(idx == p) for p in range(len(edges))], matrix, bounds)
        if best == cap[idx]:
            xp = [list(r) for r in rows]
            xpp = [list(r) for r in rows]
            for (i, j), d in zip(edges, y):
                xp[i][j] += d
                xpp[i][j] -= d
            return MidpointCertificate(RationalPoint(xp), RationalPoint(xpp), cap[idx], tag)
    raise InternalError("no symmetric perturbation reaches an integral entry")
