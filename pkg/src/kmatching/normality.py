"""Normality decompositions.

Every lattice point ``N`` of ``t`` times the k-matching polytope of a
bipartite graph is a sum of ``t`` indicator matrices of ``k``-matchings.  The
construction peels one ``k``-matching at a time (``k_extract``) so that the
remainder stays in the ``(t-1)``-dilate; for ``k = n`` this is the classical
perfect-matching peeling of doubly stochastic integer matrices.

Internally matrices are plain ``list[list[int]]``; public functions accept
:class:`~kmatching.core.IntegerPoint` or nested sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator

from .core import (
    BipartiteGraph,
    Decomposition,
    IntegerPoint,
    Matching,
    RationalPoint,
    _Matrix,
    embed,
    pad_square,
    support_graph,
)
from .errors import (
    InternalError,
    NoSuchMatching,
    NotAMember,
    NotInDilatedBirkhoff,
    NotInDilatedPolytope,
)
from .matching import covering_matching, max_matching, triple_combine
from .polytope import membership


@dataclass(frozen=True)
class TightProfile:
    tight_rows: frozenset
    tight_cols: frozenset

    @property
    def r(self) -> int:
        return len(self.tight_rows)

    @property
    def c(self) -> int:
        return len(self.tight_cols)


@dataclass(frozen=True)
class PaddedMatrix:
    """``black`` is the original point, ``red`` the units added to reach the Birkhoff dilate."""

    black: IntegerPoint
    red: IntegerPoint
    t: int

    def combined(self) -> list[list[int]]:
        return [[b + r for b, r in zip(br, rr)] for br, rr in zip(self.black.rows, self.red.rows)]


def _int_rows(point) -> list[list[int]]:
    rows = point.rows if isinstance(point, _Matrix) else point
    out = []
    for row in rows:
        new = []
        for v in row:
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"entry {v} is not an integer")
                v = int(v)
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"entry {v!r} is not an integer")
            new.append(v)
        out.append(new)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("matrix rows have different lengths")
    return out


def _square_size(rows) -> int:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError(f"expected a square matrix, got {n}x{len(rows[0]) if rows else 0}")
    return n


def tight_profile(point, t: int) -> TightProfile:
    rows = _int_rows(point)
    n_cols = len(rows[0]) if rows else 0
    tight_rows = frozenset(i for i, row in enumerate(rows) if sum(row) == t)
    tight_cols = frozenset(j for j in range(n_cols) if sum(row[j] for row in rows) == t)
    return TightProfile(tight_rows, tight_cols)


def _support(rows) -> BipartiteGraph:
    return BipartiteGraph(
        len(rows),
        len(rows[0]) if rows else 0,
        frozenset((i, j) for i, row in enumerate(rows) for j, v in enumerate(row) if v),
    )


def _check_birkhoff(rows, t):
    for i, row in enumerate(rows):
        if any(v < 0 for v in row):
            raise NotInDilatedBirkhoff("row", i, "a negative entry", t)
        if sum(row) != t:
            raise NotInDilatedBirkhoff("row", i, sum(row), t)
    for j in range(len(rows)):
        s = sum(row[j] for row in rows)
        if s != t:
            raise NotInDilatedBirkhoff("column", j, s, t)


def birkhoff_extract(point, t: int) -> Matching:
    """A perfect matching of the support of ``point``, which has all line sums ``t``."""
    rows = _int_rows(point)
    _square_size(rows)
    if t < 1:
        raise ValueError("t must be positive")
    _check_birkhoff(rows, t)
    perfect = max_matching(_support(rows))
    if len(perfect) != len(rows):
        raise InternalError("support of a Birkhoff lattice point has no perfect matching")
    return perfect


def _subtract(rows, matching) -> list[list[int]]:
    out = [list(r) for r in rows]
    for i, j in matching:
        out[i][j] -= 1
    return out


def _iter_birkhoff(rows, t) -> Iterator[Matching]:
    rows = [list(r) for r in rows]
    for step in range(t, 0, -1):
        perfect = birkhoff_extract(rows, step)
        rows = _subtract(rows, perfect)
        yield perfect


def birkhoff_decompose(point, t: int) -> Decomposition:
    """``t`` perfect matchings whose indicator matrices sum to ``point``."""
    rows = _int_rows(point)
    _square_size(rows)
    if t < 1:
        raise ValueError("t must be positive")
    _check_birkhoff(rows, t)
    return Decomposition("dilate", tuple((1, p) for p in _iter_birkhoff(rows, t)))


def pad_to_birkhoff(point, t: int, k: int) -> PaddedMatrix:
    """Add ``t(n-k)`` red units, each in the first deficient row and first deficient column."""
    rows = _int_rows(point)
    n = _square_size(rows)
    row_sum = [sum(r) for r in rows]
    col_sum = [sum(r[j] for r in rows) for j in range(n)]
    red = [[0] * n for _ in range(n)]
    for _ in range(t * (n - k)):
        i = next(i for i in range(n) if row_sum[i] < t)
        j = next(j for j in range(n) if col_sum[j] < t)
        red[i][j] += 1
        row_sum[i] += 1
        col_sum[j] += 1
    return PaddedMatrix(IntegerPoint(rows), IntegerPoint(red), t)


def _black_heavy_matching(padded: PaddedMatrix, k: int) -> tuple[Matching, set]:
    """First perfect matching of the padded decomposition carrying ``>= k`` black units.

    Each cell's first ``black[i][j]`` appearances (in decomposition order) are
    black, the rest red.  Returns the matching and its set of black cells.
    """
    black = padded.black.rows
    used: dict = {}
    for perfect in _iter_birkhoff(padded.combined(), padded.t):
        cells = set()
        for cell in perfect:
            i, j = cell
            if used.get(cell, 0) < black[i][j]:
                cells.add(cell)
            used[cell] = used.get(cell, 0) + 1
        if len(cells) >= k:
            return perfect, cells
    raise InternalError("no perfect matching carries k black units, contradicting the averaging bound")


def _reduce_block(rows, a_rows, b_cols, target) -> list[list[int]]:
    """``n x n`` copy of ``rows`` restricted to the block, lowered in row-major order to total ``target``."""
    n = len(rows)
    out = [[0] * n for _ in range(n)]
    for i in a_rows:
        for j in b_cols:
            out[i][j] = rows[i][j]
    excess = sum(out[i][j] for i in a_rows for j in b_cols) - target
    if excess < 0:
        raise InternalError("tight block carries less than t(r + c - k)")
    for i in a_rows:
        for j in b_cols:
            cut = min(out[i][j], excess)
            out[i][j] -= cut
            excess -= cut
    return out


def _dilate_check(rows, t, k) -> bool:
    """``rows`` lies in ``t`` times the k-matching polytope of ``K_{n,n}`` (``t = 0`` allowed)."""
    n = len(rows)
    if any(v < 0 for row in rows for v in row):
        return False
    if any(sum(row) > t for row in rows):
        return False
    if any(sum(row[j] for row in rows) > t for j in range(n)):
        return False
    return sum(map(sum, rows)) == t * k


def k_extract(point, t: int, k: int) -> Matching:
    """A ``k``-matching ``M`` in the support of ``point`` with ``point - M`` in the ``(t-1)``-dilate.

    ``point`` is a square lattice point of ``t`` times the k-matching polytope
    of ``K_{n,n}``.
    """
    rows = _int_rows(point)
    n = _square_size(rows)
    if t < 1:
        raise ValueError("t must be positive")
    verdict = membership([[Fraction(v) for v in r] for r in rows], BipartiteGraph.complete(n, n), k, "exact", t)
    if not verdict:
        raise NotInDilatedPolytope(verdict.violation)
    return _extract(rows, t, k, depth=0, limit=k)


def _extract(rows, t, k, depth, limit) -> Matching:
    result = _extract_step(rows, t, k, depth, limit)
    if len(result) != k or any(rows[i][j] < 1 for i, j in result) or not _dilate_check(_subtract(rows, result), t - 1, k):
        raise InternalError(f"k_extract produced {result}, violating its postcondition")
    return result


def _extract_step(rows, t, k, depth, limit) -> Matching:
    n = len(rows)
    # k strictly decreases on every recursive call
    if depth > limit:
        raise InternalError(f"recursion depth {depth} exceeds k = {limit}")
    if k == n:
        return birkhoff_extract(rows, t)
    if k == 0:
        return Matching()

    profile = tight_profile(rows, t)
    r, c = profile.r, profile.c
    a_tight, b_tight = sorted(profile.tight_rows), sorted(profile.tight_cols)

    if r + c <= k:
        padded = pad_to_birkhoff(rows, t, k)
        heavy, black_cells = _black_heavy_matching(padded, k)
        forced = {e for e in heavy if e[0] in profile.tight_rows or e[1] in profile.tight_cols}
        if not forced <= black_cells:
            raise InternalError("a tight row or column received a red unit")
        chosen = set(forced)
        for cell in sorted(black_cells - forced):
            if len(chosen) == k:
                break
            chosen.add(cell)
        return Matching(frozenset(chosen))

    if r == k and c == k:
        block = [[rows[i][j] for j in b_tight] for i in a_tight]
        inner = birkhoff_extract(block, t)
        return Matching(frozenset((a_tight[i], b_tight[j]) for i, j in inner))

    surplus = r + c - k
    if not 0 < surplus < k:
        raise InternalError(f"unexpected tight profile r={r}, c={c}, k={k}")
    reduced = _reduce_block(rows, a_tight, b_tight, t * surplus)
    m3 = _extract(reduced, t, surplus, depth + 1, limit)
    if any(i not in profile.tight_rows or j not in profile.tight_cols for i, j in m3):
        raise InternalError("inner matching left the tight block")
    support = _support(rows)
    try:
        m1 = covering_matching(support, a_tight, (), k)
        m2 = covering_matching(support, (), b_tight, k)
    except NoSuchMatching as exc:
        raise InternalError(f"no k-matching covers the tight rows or columns: {exc}") from exc
    return triple_combine(m1, m2, m3, a_tight, b_tight, k)


def normality_decompose(point, graph: BipartiteGraph, t: int, k: int) -> Decomposition:
    """``t`` ``k``-matchings of ``graph`` whose indicator matrices sum to ``point``."""
    rows = _int_rows(point)
    if t < 1:
        raise ValueError("t must be positive")
    support_graph(rows, graph)
    verdict = membership([[Fraction(v) for v in r] for r in rows], graph, k, "exact", t)
    if not verdict:
        raise NotInDilatedPolytope(verdict.violation)
    _, size = embed(graph)
    current = pad_square(rows, size)
    terms = []
    for remaining in range(t, 0, -1):
        matching = k_extract(current, remaining, k)
        current = _subtract(current, matching)
        terms.append((1, matching))
    if any(v for row in current for v in row):
        raise InternalError("extracted matchings do not sum to the point")
    if any(e not in graph.edges for _, mt in terms for e in mt):
        raise InternalError("an extracted matching uses an edge outside the graph")
    return Decomposition("dilate", tuple(terms))


def fractional_decompose(point, graph: BipartiteGraph, k: int) -> Decomposition:
    """Convex combination of ``k``-matching indicators equal to the rational point.

    Scales by the least common denominator ``q``, decomposes the resulting
    lattice point of the ``q``-dilate and merges repeated matchings.
    """
    x = point if isinstance(point, RationalPoint) else RationalPoint(point)
    verdict = membership(x, graph, k)
    if not verdict:
        raise NotAMember(verdict.violation)
    q = lcm(*(v.denominator for row in x.rows for v in row)) if x.rows and x.rows[0] else 1
    scaled = [[int(v * q) for v in row] for row in x.rows]
    dilate = normality_decompose(scaled, graph, q, k)
    counts: dict = {}
    order = []
    for _, matching in dilate.terms:
        if matching not in counts:
            order.append(matching)
            counts[matching] = 0
        counts[matching] += 1
    result = Decomposition("convex", tuple((Fraction(counts[mt], q), mt) for mt in order))
    if result.reconstruct(x.m, x.n) != x:
        raise InternalError("weighted matchings do not reproduce the point")
    return result


def remainder(point, matching: Matching) -> IntegerPoint:
    """``point`` minus the indicator of ``matching``."""
    return IntegerPoint(_subtract(_int_rows(point), matching))

