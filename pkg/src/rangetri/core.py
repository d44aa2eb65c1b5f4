"""Shared domain types and brute-force oracles.

The oracles here are the ground truth for every other solver in the
package.  They are intentionally simple (direct pair enumeration, direct
triple loops) so that trusting them requires reading only a few lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

Edge = tuple[int, int]
TriangleT = tuple[int, int, int]


class RangeError(ValueError):
    """A query range is outside the owning array or malformed."""


class ShapeError(ValueError):
    """Matrix dimensions do not agree."""


class CapabilityError(TypeError):
    """A solver was asked for a capability it does not provide."""


class InputError(ValueError):
    """Malformed input data (files, parameters, degenerate instances)."""


# ---------------------------------------------------------------------------
# Arrays and ranges


def normalize(values: Sequence[int]) -> list[int]:
    """Replace each value with its 0-based rank among distinct values.

    Order-preserving and idempotent: equal inputs map to equal outputs and
    the relative order of distinct values is kept.  The result lies in
    ``[0, d-1]`` where ``d`` is the number of distinct values.
    """
    if len(values) == 0:
        raise InputError("cannot normalize an empty array")
    rank = {v: i for i, v in enumerate(sorted(set(values)))}
    return [rank[v] for v in values]


@dataclass(frozen=True)
class IntArray:
    """Integer array A[1..n]; the substrate of all range problems.

    Values are capped in magnitude by ``cap`` (default n**3) to keep
    instances within the polynomially-bounded regime the solvers assume.
    """

    values: tuple[int, ...]
    cap: Optional[int] = None

    def __init__(self, values: Iterable[int], cap: Optional[int] = None):
        vals = tuple(int(v) for v in values)
        if len(vals) < 1:
            raise InputError("array length must be at least 1")
        limit = cap if cap is not None else max(len(vals) ** 3, 1)
        for v in vals:
            if abs(v) > limit:
                raise InputError(f"value {v} exceeds magnitude cap {limit}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "cap", limit)

    @property
    def n(self) -> int:
        return len(self.values)

    def normalized(self) -> "IntArray":
        return IntArray(normalize(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]


@dataclass(frozen=True, order=True)
class Range:
    """1-based inclusive index range [l, r]."""

    l: int
    r: int

    def __post_init__(self):
        if self.l < 1 or self.l > self.r:
            raise RangeError(f"invalid range [{self.l}, {self.r}]")

    def check(self, n: int) -> None:
        if self.r > n:
            raise RangeError(f"range [{self.l}, {self.r}] outside array of length {n}")

    @property
    def length(self) -> int:
        return self.r - self.l + 1


@dataclass(frozen=True, order=True)
class RangePair:
    """Two nonoverlapping ordered ranges: first.r < second.l."""

    first: Range
    second: Range

    def __post_init__(self):
        if self.first.r >= self.second.l:
            raise RangeError(
                f"ranges [{self.first.l},{self.first.r}] and "
                f"[{self.second.l},{self.second.r}] overlap or are out of order"
            )

    def check(self, n: int) -> None:
        self.first.check(n)
        self.second.check(n)


def pair(a: int, b: int, c: int, d: int) -> RangePair:
    return RangePair(Range(a, b), Range(c, d))


# ---------------------------------------------------------------------------
# Pair functions


def inv(x: int, y: int) -> int:
    return 1 if x > y else 0


def eqp(x: int, y: int) -> int:
    return 1 if x == y else 0


def mul(x: int, y: int) -> int:
    return x * y


@dataclass(frozen=True)
class PairFunction:
    """A binary integer function used to score index pairs.

    ``kind`` is one of ``inv`` (strict inversion indicator), ``eqp``
    (equality indicator), ``mul`` (product) or ``custom``.  Custom
    functions carry their own evaluator and, optionally, a decomposition
    into weighted equality terms (see :mod:`rangetri.reductions_range`).
    """

    kind: str
    evaluator: Callable[[int, int], int]
    decomposition: object = None

    @staticmethod
    def builtin(kind: str) -> "PairFunction":
        table = {"inv": inv, "eqp": eqp, "mul": mul}
        if kind not in table:
            raise InputError(f"unknown pair function kind {kind!r}")
        return PairFunction(kind, table[kind])

    @staticmethod
    def custom(evaluator: Callable[[int, int], int], decomposition=None) -> "PairFunction":
        return PairFunction("custom", evaluator, decomposition)

    def __call__(self, x: int, y: int) -> int:
        return self.evaluator(x, y)


INV = PairFunction.builtin("inv")
EQP = PairFunction.builtin("eqp")
MUL = PairFunction.builtin("mul")


# ---------------------------------------------------------------------------
# Graphs


class Graph:
    """Undirected simple graph on vertices 1..n with no isolated vertices."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[Edge]):
        norm = [(u, v) if u < v else (v, u) for u, v in edges]
        edge_set = set(norm)
        if len(edge_set) != len(norm):
            seen: set[Edge] = set()
            for e in norm:
                if e in seen:
                    raise InputError(f"parallel edge {e}")
                seen.add(e)
        adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
        for u, v in edge_set:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if u < 1 or v > n:
                raise InputError(f"edge ({u}, {v}) outside vertex range 1..{n}")
            adj[u].add(v)
            adj[v].add(u)
        for v in range(1, n + 1):
            if not adj[v]:
                raise InputError(f"isolated vertex {v}")
        self.n = n
        self.edges = edge_set
        self.adj = adj

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges


def canonical_triangle(a: int, b: int, c: int) -> TriangleT:
    """Three distinct vertex ids in sorted order."""
    t = tuple(sorted((a, b, c)))
    if len(set(t)) != 3:
        raise InputError(f"degenerate triangle {t}")
    return t  # type: ignore[return-value]


@dataclass
class TripartiteMultigraph:
    """Tripartite multigraph used by the range-to-triangle reductions.

    ``e_uv`` and ``e_uw`` map (u, v) / (u, w) pairs to positive
    multiplicities; ``e_vw`` is a plain set of simple edges.  Vertex ids
    across the three parts are globally distinct integers.
    """

    part_u: set[int]
    part_v: set[int]
    part_w: set[int]
    e_uv: dict[Edge, int] = field(default_factory=dict)
    e_uw: dict[Edge, int] = field(default_factory=dict)
    e_vw: set[Edge] = field(default_factory=set)

    def validate(self) -> None:
        if self.part_u & self.part_v or self.part_u & self.part_w or self.part_v & self.part_w:
            raise InputError("parts are not disjoint")
        for (u, v), mult in self.e_uv.items():
            if mult < 1 or u not in self.part_u or v not in self.part_v:
                raise InputError(f"bad UV edge ({u}, {v}) x{mult}")
        for (u, w), mult in self.e_uw.items():
            if mult < 1 or u not in self.part_u or w not in self.part_w:
                raise InputError(f"bad UW edge ({u}, {w}) x{mult}")
        for v, w in self.e_vw:
            if v not in self.part_v or w not in self.part_w:
                raise InputError(f"bad VW edge ({v}, {w})")

    def triangle_count_through(self, v: int, w: int) -> int:
        """Multiplicity-weighted triangle count through a VW edge."""
        total = 0
        for u in self.part_u:
            muv = self.e_uv.get((u, v), 0)
            if muv:
                total += muv * self.e_uw.get((u, w), 0)
        return total


# ---------------------------------------------------------------------------
# Matrices


class DenseMatrix:
    """Integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[int]):
        if rows < 1 or cols < 1:
            raise ShapeError("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = [int(x) for x in entries]

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "DenseMatrix":
        r = len(rows)
        c = len(rows[0])
        flat: list[int] = []
        for row in rows:
            if len(row) != c:
                raise ShapeError("ragged rows")
            flat.extend(row)
        return DenseMatrix(r, c, flat)

    @staticmethod
    def zeros(rows: int, cols: int) -> "DenseMatrix":
        return DenseMatrix(rows, cols, [0] * (rows * cols))

    @staticmethod
    def identity(n: int) -> "DenseMatrix":
        m = DenseMatrix.zeros(n, n)
        for i in range(n):
            m[i, i] = 1
        return m

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij: tuple[int, int], value: int) -> None:
        i, j = ij
        self.entries[i * self.cols + j] = int(value)

    def row(self, i: int) -> list[int]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> list[int]:
        return self.entries[j :: self.cols]

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DenseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"DenseMatrix({self.rows}x{self.cols})"


# ---------------------------------------------------------------------------
# Oracles


def oracle_pairs_query(f: PairFunction, a: IntArray, q: Range | RangePair) -> int:
    """Brute-force pair sum over a single range or a range pair.

    Single range: sum of f(a[i], a[j]) over l <= i < j <= r.  Range pair:
    sum over the full cross product of the two ranges.  The inv/eqp kinds
    use a vectorized all-pairs comparison; the enumeration is still the
    literal definition, evaluated exhaustively.
    """
    vals = a.values
    if isinstance(q, RangePair):
        q.check(a.n)
        xs = np.asarray(vals[q.first.l - 1 : q.first.r], dtype=np.int64)
        ys = np.asarray(vals[q.second.l - 1 : q.second.r], dtype=np.int64)
        if f.kind == "inv":
            return int(np.sum(xs[:, None] > ys[None, :]))
        if f.kind == "eqp":
            return int(np.sum(xs[:, None] == ys[None, :]))
        return sum(f(x, y) for x in vals[q.first.l - 1 : q.first.r]
                   for y in vals[q.second.l - 1 : q.second.r])
    q.check(a.n)
    seg = vals[q.l - 1 : q.r]
    if f.kind in ("inv", "eqp"):
        xs = np.asarray(seg, dtype=np.int64)
        comp = xs[:, None] > xs[None, :] if f.kind == "inv" else xs[:, None] == xs[None, :]
        return int(np.sum(np.triu(comp, k=1)))
    total = 0
    for i in range(len(seg)):
        for j in range(i + 1, len(seg)):
            total += f(seg[i], seg[j])
    return total


def oracle_disjoint_query(a: IntArray, q: RangePair) -> bool:
    """True iff the value sets of the two ranges are disjoint."""
    return oracle_pairs_query(EQP, a, q) == 0


_BYTE_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def oracle_edge_triangle_counts(g: Graph) -> dict[Edge, int]:
    """Per-edge triangle count: |N(u) ∩ N(v)| for every edge (u, v)."""
    if g.n * g.m >= 50_000:
        # packed-bitset path: popcount of the AND of adjacency rows
        edges = g.sorted_edges()
        earr = np.array(edges, dtype=np.int64)
        bits = np.zeros((g.n + 1, g.n + 1), dtype=bool)
        bits[earr[:, 0], earr[:, 1]] = True
        bits[earr[:, 1], earr[:, 0]] = True
        packed = np.packbits(bits, axis=1)
        common = _BYTE_POPCOUNT[packed[earr[:, 0]] & packed[earr[:, 1]]].sum(axis=1)
        return {e: int(c) for e, c in zip(edges, common.tolist())}
    return {(u, v): len(g.adj[u] & g.adj[v]) for u, v in g.edges}


def oracle_edge_triangle_detect(g: Graph) -> dict[Edge, bool]:
    """Per-edge triangle existence, derived from the counting oracle."""
    return {e: c > 0 for e, c in oracle_edge_triangle_counts(g).items()}


def oracle_triangle_list(g: Graph) -> set[TriangleT]:
    """Exact set of all triangles, canonicalized."""
    out: set[TriangleT] = set()
    for u, v in g.edges:
        for w in g.adj[u] & g.adj[v]:
            if w > v:
                out.add((u, v, w))
    return out


def oracle_minmax(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Exact (min, max)-product by the defining triple loop."""
    if a.cols != b.rows:
        raise ShapeError(f"inner dimensions differ: {a.cols} vs {b.rows}")
    out = DenseMatrix.zeros(a.rows, b.cols)
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            best = None
            for k in range(a.cols):
                cand = max(arow[k], b[k, j])
                if best is None or cand < best:
                    best = cand
            out[i, j] = best
    return out
