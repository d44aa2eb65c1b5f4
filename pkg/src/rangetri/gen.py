"""Deterministic instance generators.

Every generator is a pure function of its parameters and seed; the CLI
writes the results through the file formats in ``files``.
"""

from __future__ import annotations

import random
from typing import Optional

from .core import DenseMatrix, Graph, InputError, IntArray, Range, RangePair

GRAPH_KINDS = ("gnp", "powerlaw", "complete", "cycle", "bipartite")


def gen_array(n: int, vmin: int, vmax: int, seed: int = 0) -> IntArray:
    if n < 1 or vmin > vmax:
        raise InputError("need n >= 1 and vmin <= vmax")
    rng = random.Random(seed)
    return IntArray([rng.randint(vmin, vmax) for _ in range(n)])


def gen_range(n: int, rng: random.Random) -> Range:
    """A range with mixed length distribution: short, medium, or long."""
    bucket = rng.randrange(3)
    if bucket == 0:
        length = rng.randint(1, max(1, n // 8))
    elif bucket == 1:
        length = rng.randint(1, max(1, n // 2))
    else:
        length = rng.randint(1, n)
    l = rng.randint(1, n - length + 1)
    return Range(l, l + length - 1)


def gen_range_pair(n: int, rng: random.Random) -> RangePair:
    """Two nonoverlapping ranges; needs n >= 2."""
    if n < 2:
        raise InputError("range pairs need n >= 2")
    while True:
        pts = sorted(rng.randint(1, n) for _ in range(4))
        if pts[1] < pts[2]:
            return RangePair(Range(pts[0], pts[1]), Range(pts[2], pts[3]))


def gen_queries(n: int, q: int, kind: str = "single", seed: int = 0) -> list:
    """q queries of the given kind: single, pair, or an even mix."""
    if q < 0 or n < 1:
        raise InputError("need q >= 0 and n >= 1")
    rng = random.Random(seed)
    out = []
    for i in range(q):
        pick = kind
        if kind == "mixed":
            pick = "single" if i % 2 == 0 else "pair"
        if pick == "single":
            out.append(gen_range(n, rng))
        elif pick == "pair":
            out.append(gen_range_pair(n, rng))
        else:
            raise InputError(f"unknown query kind {kind!r}")
    return out


def _repair_isolated(n: int, edges: set[tuple[int, int]], rng: random.Random) -> None:
    """Attach every isolated vertex to a random other vertex."""
    touched = {x for e in edges for x in e}
    for v in range(1, n + 1):
        if v not in touched:
            w = rng.randint(1, n - 1)
            if w >= v:
                w += 1
            edges.add((min(v, w), max(v, w)))
            touched.add(v)
            touched.add(w)


def gen_graph(kind: str, n: int, p: float = 0.2, seed: int = 0) -> Graph:
    if n < 2:
        raise InputError("graphs need n >= 2")
    rng = random.Random(seed)
    edges: set[tuple[int, int]] = set()
    if kind == "complete":
        edges = {(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)}
    elif kind == "cycle":
        if n < 3:
            raise InputError("cycles need n >= 3")
        edges = {(v, v + 1) for v in range(1, n)} | {(1, n)}
    elif kind == "gnp":
        edges = {
            (u, v)
            for u in range(1, n + 1)
            for v in range(u + 1, n + 1)
            if rng.random() < p
        }
        _repair_isolated(n, edges, rng)
    elif kind == "bipartite":
        half = n // 2
        edges = {
            (u, v)
            for u in range(1, half + 1)
            for v in range(half + 1, n + 1)
            if rng.random() < p
        }
        _repair_isolated(n, edges, rng)
    elif kind == "powerlaw":
        # endpoint weights ~ 1/rank: a few hubs, many low-degree vertices
        weights = [1.0 / (v**0.8) for v in range(1, n + 1)]
        target = max(n, int(p * n * (n - 1) / 2))
        attempts = 0
        while len(edges) < target and attempts < 20 * target:
            attempts += 1
            u = rng.choices(range(1, n + 1), weights=weights)[0]
            v = rng.choices(range(1, n + 1), weights=weights)[0]
            if u != v:
                edges.add((min(u, v), max(u, v)))
        _repair_isolated(n, edges, rng)
    else:
        raise InputError(f"unknown graph kind {kind!r}")
    return Graph(n, sorted(edges))


def gen_matrix(
    rows: int, cols: int, lo: int, hi: int, seed: int = 0, boolean: bool = False
) -> DenseMatrix:
    if rows < 1 or cols < 1 or lo > hi:
        raise InputError("need positive dimensions and lo <= hi")
    rng = random.Random(seed)
    if boolean:
        entries = [rng.randint(0, 1) for _ in range(rows * cols)]
    else:
        entries = [rng.randint(lo, hi) for _ in range(rows * cols)]
    return DenseMatrix(rows, cols, entries)
