"""Shared helpers for the test suite."""

import random

import pytest

from rangetri.core import Graph, IntArray, Range, RangePair


def rand_array(rng: random.Random, n: int, lo: int = None, hi: int = None) -> IntArray:
    if lo is None:
        lo, hi = 0, max(0, n - 1)
    # stay inside the default magnitude cap of n**3
    cap = n**3
    lo, hi = max(lo, -cap), min(hi, cap)
    return IntArray([rng.randint(lo, hi) for _ in range(n)])


def rand_range(rng: random.Random, n: int) -> Range:
    l = rng.randint(1, n)
    return Range(l, rng.randint(l, n))


def rand_pair(rng: random.Random, n: int) -> RangePair:
    assert n >= 2
    while True:
        pts = sorted(rng.randint(1, n) for _ in range(4))
        if pts[1] < pts[2]:
            return RangePair(Range(pts[0], pts[1]), Range(pts[2], pts[3]))


def rand_graph(rng: random.Random, n: int, p: float) -> Graph:
    """Random graph with no isolated vertices (resampled until valid)."""
    while True:
        edges = [
            (u, v)
            for u in range(1, n + 1)
            for v in range(u + 1, n + 1)
            if rng.random() < p
        ]
        if edges and len({x for e in edges for x in e}) == n:
            return Graph(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(v, v + 1) for v in range(1, n)] + [(1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(v, v + 1) for v in range(1, n)])
