"""Exact data types: bipartite graphs, matchings, rational/integer points.

Vertices are 0-based indices on each side.  An edge ``(i, j)`` joins A-vertex
``i`` to B-vertex ``j``, so a point of the polytope is an ``m x n`` matrix
indexed the same way.  Edges are always iterated in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidMatching,
    SupportOutsideGraph,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class BipartiteGraph:
    m: int
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("vertex counts must be nonnegative")
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            if not (0 <= i < self.m and 0 <= j < self.n):
                raise IndexOutOfRange((i, j), self.m, self.n)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def complete(cls, m: int, n: int) -> "BipartiteGraph":
        return cls(m, n, frozenset((i, j) for i in range(m) for j in range(n)))

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adj_a(self) -> tuple[tuple[int, ...], ...]:
        """Sorted B-neighbours of every A-vertex."""
        adj = [[] for _ in range(self.m)]
        for i, j in self.sorted_edges:
            adj[i].append(j)
        return tuple(tuple(row) for row in adj)

    @cached_property
    def adj_b(self) -> tuple[tuple[int, ...], ...]:
        """Sorted A-neighbours of every B-vertex."""
        adj = [[] for _ in range(self.n)]
        for i, j in self.sorted_edges:
            adj[j].append(i)
        return tuple(tuple(col) for col in adj)

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges

    def neighbors(self, side: str, v: int) -> tuple[int, ...]:
        return self.adj_a[v] if side == "A" else self.adj_b[v]

    def is_subgraph_of(self, other: "BipartiteGraph") -> bool:
        return self.m == other.m and self.n == other.n and self.edges <= other.edges


@dataclass(frozen=True)
class Matching:
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        rows = [i for i, _ in edges]
        cols = [j for _, j in edges]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise InvalidMatching(f"edges {sorted(edges)} share a vertex")
        object.__setattr__(self, "edges", edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.sorted_edges)

    def __contains__(self, edge) -> bool:
        return tuple(edge) in self.edges

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def a_vertices(self) -> frozenset:
        return frozenset(i for i, _ in self.edges)

    @cached_property
    def b_vertices(self) -> frozenset:
        return frozenset(j for _, j in self.edges)

    @cached_property
    def _at_a(self) -> dict:
        return {i: (i, j) for i, j in self.edges}

    @cached_property
    def _at_b(self) -> dict:
        return {j: (i, j) for i, j in self.edges}

    def edge_at_a(self, i: int):
        return self._at_a.get(i)

    def edge_at_b(self, j: int):
        return self._at_b.get(j)

    def covers(self, a_set: Iterable[int] = (), b_set: Iterable[int] = ()) -> bool:
        return set(a_set) <= self.a_vertices and set(b_set) <= self.b_vertices

    def sort_key(self) -> tuple[Edge, ...]:
        return self.sorted_edges

    def __repr__(self) -> str:
        return f"Matching({list(self.sorted_edges)})"


Number = Union[int, Fraction]


class _Matrix:
    """Shared behaviour of the two point types: a rectangular, immutable grid."""

    rows: tuple

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @property
    def m(self) -> int:
        return self.shape[0]

    @property
    def n(self) -> int:
        return self.shape[1]

    def __getitem__(self, i):
        return self.rows[i]

    def __iter__(self):
        return iter(self.rows)

    def row_sums(self) -> list:
        return [sum(row, 0) for row in self.rows]

    def col_sums(self) -> list:
        m, n = self.shape
        return [sum((self.rows[i][j] for i in range(m)), 0) for j in range(n)]

    def total(self):
        return sum((sum(row, 0) for row in self.rows), 0)

    def support(self) -> frozenset:
        return frozenset(
            (i, j) for i, row in enumerate(self.rows) for j, v in enumerate(row) if v != 0
        )

    def to_lists(self) -> list[list]:
        return [list(row) for row in self.rows]


def _rectangular(rows) -> tuple:
    rows = tuple(tuple(row) for row in rows)
    if rows and any(len(row) != len(rows[0]) for row in rows):
        raise ValueError("matrix rows have different lengths")
    return rows


@dataclass(frozen=True)
class RationalPoint(_Matrix):
    """An ``m x n`` matrix of nonnegative exact rationals."""

    rows: tuple

    def __post_init__(self):
        rows = _rectangular(_to_fraction_rows(self.rows))
        if any(v < 0 for row in rows for v in row):
            raise ValueError("point entries must be nonnegative")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def zeros(cls, m: int, n: int) -> "RationalPoint":
        return cls(tuple((Fraction(0),) * n for _ in range(m)))

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.rows for v in row)

    def to_integer(self) -> "IntegerPoint":
        if not self.is_integral():
            raise ValueError("point has non-integer entries")
        return IntegerPoint(tuple(tuple(int(v) for v in row) for row in self.rows))

    def fractional_count(self) -> int:
        return sum(1 for row in self.rows for v in row if v.denominator != 1)


@dataclass(frozen=True)
class IntegerPoint(_Matrix):
    """An ``m x n`` matrix of nonnegative integers (a lattice point of a dilate)."""

    rows: tuple

    def __post_init__(self):
        rows = _rectangular(self.rows)
        out = []
        for row in rows:
            new = []
            for v in row:
                if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
                    raise TypeError(f"integer point entry {v!r} is not an integer")
                if isinstance(v, Fraction):
                    if v.denominator != 1:
                        raise ValueError(f"integer point entry {v} is not an integer")
                    v = int(v)
                if v < 0:
                    raise ValueError("point entries must be nonnegative")
                new.append(int(v))
            out.append(tuple(new))
        object.__setattr__(self, "rows", tuple(out))

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntegerPoint":
        return cls(tuple((0,) * n for _ in range(m)))

    def to_rational(self) -> RationalPoint:
        return RationalPoint(self.rows)


def _to_fraction_rows(rows) -> list:
    out = []
    for row in rows:
        new = []
        for v in row:
            if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
                raise TypeError(f"entry {v!r} is not an exact rational")
            new.append(Fraction(v))
        out.append(new)
    return out


@dataclass(frozen=True)
class Decomposition:
    """A list of weighted matchings.

    ``form == "convex"``: positive weights summing to exactly 1.
    ``form == "dilate"``: every weight is 1 and there are exactly ``t`` terms.
    """

    form: str
    terms: tuple

    def __post_init__(self):
        if self.form not in ("convex", "dilate"):
            raise ValueError(f"unknown decomposition form {self.form!r}")
        terms = tuple((Fraction(w), m if isinstance(m, Matching) else Matching(m)) for w, m in self.terms)
        if not terms:
            raise ValueError("a decomposition needs at least one term")
        if len({len(m) for _, m in terms}) > 1:
            raise ValueError("all matchings of a decomposition must have the same size")
        if self.form == "dilate":
            if any(w != 1 for w, _ in terms):
                raise ValueError("dilate-form weights must all be 1")
        else:
            if any(w <= 0 for w, _ in terms):
                raise ValueError("convex-form weights must be positive")
            if sum(w for w, _ in terms) != 1:
                raise ValueError("convex-form weights must sum to 1")
        object.__setattr__(self, "terms", terms)

    @property
    def matchings(self) -> list[Matching]:
        return [m for _, m in self.terms]

    @property
    def weights(self) -> list[Fraction]:
        return [w for w, _ in self.terms]

    @property
    def k(self) -> int:
        return len(self.terms[0][1])

    def __len__(self) -> int:
        return len(self.terms)

    def reconstruct(self, m: int, n: int) -> RationalPoint:
        """Weighted sum of the indicator matrices."""
        acc = [[Fraction(0)] * n for _ in range(m)]
        for w, matching in self.terms:
            for i, j in matching:
                acc[i][j] += w
        return RationalPoint(acc)


def support_graph(point: Union[_Matrix, Sequence[Sequence[Number]]], graph: BipartiteGraph) -> BipartiteGraph:
    """The induced graph of a point: edge ``(i, j)`` iff the entry is nonzero."""
    rows = point.rows if isinstance(point, _Matrix) else _rectangular(point)
    shape = (len(rows), len(rows[0]) if rows else graph.n)
    if shape != (graph.m, graph.n):
        raise DimensionMismatch(shape, (graph.m, graph.n))
    edges = []
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v != 0:
                if (i, j) not in graph.edges:
                    raise SupportOutsideGraph(i, j)
                edges.append((i, j))
    return BipartiteGraph(graph.m, graph.n, frozenset(edges))


def matching_to_matrix(matching: Matching, m: int, n: int) -> IntegerPoint:
    rows = [[0] * n for _ in range(m)]
    for i, j in matching:
        if not (0 <= i < m and 0 <= j < n):
            raise IndexOutOfRange((i, j), m, n)
        rows[i][j] = 1
    return IntegerPoint(rows)


def embed(graph: BipartiteGraph) -> tuple[BipartiteGraph, int]:
    """Complete bipartite graph ``K_{n,n}`` containing ``graph`` under identity indexing."""
    size = max(graph.m, graph.n)
    return BipartiteGraph.complete(size, size), size


def pad_square(rows: Sequence[Sequence[Number]], size: int) -> list[list]:
    """Copy of ``rows`` extended with zero rows/columns to ``size x size``."""
    out = [list(row) + [0] * (size - len(row)) for row in rows]
    width = size
    out.extend([0] * width for _ in range(size - len(out)))
    return out
