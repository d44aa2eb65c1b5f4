"""Composition of range-query solvers from algorithms and reductions.

``range_solver(problem, algo)`` returns a batch solver callable as
``solver(array, queries)``; problems riq/req take single ranges, the
2-prefixed problems take range pairs, and 2rdq returns booleans.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from .core import (
    EQP,
    INV,
    CapabilityError,
    IntArray,
    PairFunction,
    oracle_disjoint_query,
    oracle_edge_triangle_counts,
    oracle_edge_triangle_detect,
    oracle_pairs_query,
)
from .instrument import OpCounters
from .rangequery import MoOnline, mo_offline, online_eq_build, online_eq_query
from .reductions_range import (
    reduce_1r_to_2r,
    reduce_2r_to_1r,
    reduce_inv_to_eqp,
)
from .reductions_triangle import reduce_2rdq_to_etd, reduce_2req_to_etc
from .triangle import ayz_edge_counts

PROBLEMS = ("riq", "req", "2riq", "2req", "2rdq")
ALGOS = ("oracle", "mo", "mo-online", "online-eq", "via-triangle")

_PROBLEM_FN = {"riq": INV, "req": EQP, "2riq": INV, "2req": EQP}


def problem_is_pair(problem: str) -> bool:
    return problem in ("2riq", "2req", "2rdq")


def _oracle_single(f: PairFunction):
    def solver(a: IntArray, queries) -> list[int]:
        return [oracle_pairs_query(f, a, q) for q in queries]

    return solver


def _mo_single(f: PairFunction, counters: Optional[OpCounters]):
    def solver(a: IntArray, queries) -> list[int]:
        return mo_offline(f, a, queries, counters=counters)

    return solver


def _mo_online_single(f: PairFunction, counters: Optional[OpCounters]):
    def solver(a: IntArray, queries) -> list[int]:
        structure = MoOnline(f, a, counters=counters)
        return [structure.query(q) for q in queries]

    return solver


def _online_eq_single(omega: float, matmul_algo: str, counters: Optional[OpCounters]):
    def solver(a: IntArray, queries) -> list[int]:
        # batch interface: the query count is known, so build once with
        # the exact hint instead of paying the adaptive doubling rebuilds
        structure = online_eq_build(
            a, max(1, len(queries)), omega_eff=omega, matmul_algo=matmul_algo, counters=counters
        )
        return [online_eq_query(structure, q) for q in queries]

    return solver


def _triangle_counting_solver(inner: str):
    if inner == "oracle":
        return oracle_edge_triangle_counts
    if inner == "ayz":
        return lambda g: ayz_edge_counts(g)
    raise CapabilityError(f"unknown inner triangle solver {inner!r}")


def _triangle_detection_solver(inner: str):
    if inner == "oracle":
        return oracle_edge_triangle_detect
    if inner == "ayz":
        return lambda g: {e: c > 0 for e, c in ayz_edge_counts(g).items()}
    raise CapabilityError(f"unknown inner triangle solver {inner!r}")


def range_solver(
    problem: str,
    algo: str,
    omega: float = 3.0,
    matmul_algo: str = "naive",
    inner: str = "oracle",
    counters: Optional[OpCounters] = None,
) -> Callable[[IntArray, Sequence], list]:
    """Batch solver for a range problem, built from the chosen algorithm
    plus whatever reductions are needed to reach it."""
    if problem not in PROBLEMS:
        raise CapabilityError(f"unknown problem {problem!r}")
    if algo not in ALGOS:
        raise CapabilityError(f"unknown algo {algo!r}")

    if algo == "oracle":
        if problem == "2rdq":
            return lambda a, qs: [oracle_disjoint_query(a, q) for q in qs]
        f = _PROBLEM_FN[problem]
        return _oracle_single(f)

    if algo in ("mo", "mo-online"):
        make = _mo_single if algo == "mo" else _mo_online_single
        if problem == "2rdq":
            pair_eqp = reduce_2r_to_1r(EQP, make(EQP, counters))
            return lambda a, qs: [ans == 0 for ans in pair_eqp(a, qs)]
        f = _PROBLEM_FN[problem]
        single = make(f, counters)
        if problem_is_pair(problem):
            return reduce_2r_to_1r(f, single)
        return single

    if algo == "online-eq":
        single_eqp = _online_eq_single(omega, matmul_algo, counters)
        pair_eqp = reduce_2r_to_1r(EQP, single_eqp)
        if problem == "req":
            return single_eqp
        if problem == "2req":
            return pair_eqp
        if problem == "2rdq":
            return lambda a, qs: [ans == 0 for ans in pair_eqp(a, qs)]
        pair_inv = reduce_inv_to_eqp(pair_eqp)
        if problem == "2riq":
            return pair_inv
        return reduce_1r_to_2r(INV, pair_inv)

    # via-triangle
    if problem == "2rdq":
        detector = _triangle_detection_solver(inner)
        return lambda a, qs: reduce_2rdq_to_etd(a, qs, detector)
    counter = _triangle_counting_solver(inner)
    pair_eqp = lambda a, qs: reduce_2req_to_etc(a, qs, counter)
    if problem == "2req":
        return pair_eqp
    if problem == "req":
        return reduce_1r_to_2r(EQP, pair_eqp)
    pair_inv = reduce_inv_to_eqp(pair_eqp)
    if problem == "2riq":
        return pair_inv
    return reduce_1r_to_2r(INV, pair_inv)
