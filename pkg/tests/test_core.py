"""Core types, normalization, and the brute-force oracles."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complete_graph, cycle_graph, path_graph, rand_array, rand_graph, rand_pair, rand_range
from rangetri.core import (
    EQP,
    INV,
    MUL,
    DenseMatrix,
    Graph,
    InputError,
    IntArray,
    PairFunction,
    Range,
    RangeError,
    RangePair,
    ShapeError,
    canonical_triangle,
    normalize,
    oracle_disjoint_query,
    oracle_edge_triangle_counts,
    oracle_edge_triangle_detect,
    oracle_minmax,
    oracle_pairs_query,
    oracle_triangle_list,
    pair,
)

short_int_lists = st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=40)


class TestNormalize:
    def test_examples(self):
        assert normalize([30, -5, 30, 7]) == [2, 0, 2, 1]
        assert normalize([4]) == [0]
        assert normalize([1, 2, 3]) == [0, 1, 2]

    @given(short_int_lists)
    def test_idempotent(self, values):
        once = normalize(values)
        assert normalize(once) == once

    @given(short_int_lists)
    def test_order_preserving(self, values):
        ranks = normalize(values)
        for i in range(len(values)):
            for j in range(len(values)):
                assert (values[i] < values[j]) == (ranks[i] < ranks[j])

    def test_empty_rejected(self):
        with pytest.raises(InputError):
            normalize([])


class TestTypes:
    def test_array_validation(self):
        with pytest.raises(InputError):
            IntArray([])
        with pytest.raises(InputError):
            IntArray([10**9], cap=100)
        a = IntArray([3, 1, 2])
        assert a.n == 3 and a.cap == 27
        assert a.normalized().values == (2, 0, 1)

    def test_range_validation(self):
        with pytest.raises(RangeError):
            Range(0, 3)
        with pytest.raises(RangeError):
            Range(4, 3)
        with pytest.raises(RangeError):
            Range(1, 5).check(4)
        assert Range(2, 4).length == 3

    def test_pair_nonoverlap(self):
        with pytest.raises(RangeError):
            pair(1, 3, 3, 5)
        with pytest.raises(RangeError):
            pair(4, 5, 1, 2)
        p = pair(1, 2, 4, 5)
        assert p.first.r < p.second.l

    def test_pair_function(self):
        assert INV(3, 1) == 1 and INV(1, 3) == 0 and INV(2, 2) == 0
        assert EQP(5, 5) == 1 and EQP(5, 6) == 0
        assert MUL(3, -4) == -12
        with pytest.raises(InputError):
            PairFunction.builtin("nope")

    def test_graph_validation(self):
        with pytest.raises(InputError):
            Graph(2, [(1, 1)])
        with pytest.raises(InputError):
            Graph(2, [(1, 2), (2, 1)])
        with pytest.raises(InputError):
            Graph(3, [(1, 2)])  # vertex 3 isolated
        with pytest.raises(InputError):
            Graph(2, [(1, 3)])
        g = Graph(3, [(3, 1), (2, 3)])
        assert g.m == 2 and g.neighbors(3) == [1, 2]
        assert g.has_edge(1, 3) and not g.has_edge(1, 2)

    def test_canonical_triangle(self):
        assert canonical_triangle(3, 1, 2) == (1, 2, 3)
        with pytest.raises(InputError):
            canonical_triangle(1, 1, 2)

    def test_matrix(self):
        m = DenseMatrix.from_rows([[1, 2], [3, 4]])
        assert m[1, 0] == 3
        assert m.col(1) == [2, 4]
        with pytest.raises(ShapeError):
            DenseMatrix(2, 2, [1, 2, 3])
        with pytest.raises(ShapeError):
            DenseMatrix.from_rows([[1, 2], [3]])


class TestPairsOracle:
    def test_examples(self):
        assert oracle_pairs_query(INV, IntArray([3, 1, 2]), Range(1, 3)) == 2
        assert oracle_pairs_query(INV, IntArray([1, 2, 3, 4]), Range(1, 4)) == 0
        assert oracle_pairs_query(EQP, IntArray([7, 7, 7]), Range(1, 3)) == 3
        assert oracle_pairs_query(EQP, IntArray([5, 5, 6]), pair(1, 1, 2, 3)) == 1

    def test_bounds_checked(self):
        with pytest.raises(RangeError):
            oracle_pairs_query(INV, IntArray([1, 2]), Range(1, 3))

    def test_fast_path_matches_pure_loop(self):
        # custom kind forces the double loop; built-ins use numpy
        rng = random.Random(0)
        slow_inv = PairFunction.custom(lambda x, y: 1 if x > y else 0)
        slow_eqp = PairFunction.custom(lambda x, y: 1 if x == y else 0)
        for _ in range(50):
            n = rng.randint(2, 30)
            a = rand_array(rng, n, -4, 4)
            queries = [rand_range(rng, n), rand_pair(rng, n)]
            for q in queries:
                assert oracle_pairs_query(INV, a, q) == oracle_pairs_query(slow_inv, a, q)
                assert oracle_pairs_query(EQP, a, q) == oracle_pairs_query(slow_eqp, a, q)

    def test_inversion_complement_identity(self):
        rng = random.Random(1)
        for _ in range(100):
            n = rng.randint(2, 40)
            a = rand_array(rng, n, -5, 5)
            neg = IntArray([-v for v in a.values])
            p = rand_pair(rng, n)
            total = p.first.length * p.second.length
            assert (
                oracle_pairs_query(INV, a, p)
                + oracle_pairs_query(INV, neg, p)
                + oracle_pairs_query(EQP, a, p)
                == total
            )

    def test_disjoint_oracle(self):
        a = IntArray([1, 2, 1, 3])
        assert not oracle_disjoint_query(a, pair(1, 1, 3, 4))
        assert oracle_disjoint_query(a, pair(1, 1, 2, 2))


class TestTriangleOracles:
    def test_counts_examples(self):
        assert set(oracle_edge_triangle_counts(complete_graph(4)).values()) == {2}
        assert set(oracle_edge_triangle_counts(cycle_graph(3)).values()) == {1}
        assert set(oracle_edge_triangle_counts(path_graph(3)).values()) == {0}

    def test_detect(self):
        g = Graph(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
        det = oracle_edge_triangle_detect(g)
        assert det[(1, 2)] and det[(2, 3)] and det[(1, 3)]
        assert not det[(3, 4)]

    def test_list_examples(self):
        assert oracle_triangle_list(cycle_graph(3)) == {(1, 2, 3)}
        assert len(oracle_triangle_list(complete_graph(4))) == 4
        bip = Graph(4, [(1, 3), (1, 4), (2, 3), (2, 4)])
        assert oracle_triangle_list(bip) == set()

    def test_handshake_identity(self):
        rng = random.Random(2)
        for _ in range(40):
            g = rand_graph(rng, rng.randint(3, 15), 0.4)
            counts = oracle_edge_triangle_counts(g)
            assert sum(counts.values()) == 3 * len(oracle_triangle_list(g))


class TestMinmaxOracle:
    def test_examples(self):
        a = DenseMatrix.from_rows([[1, 2], [3, 4]])
        b = DenseMatrix.from_rows([[5, 6], [7, 8]])
        assert oracle_minmax(a, b).to_rows() == [[5, 6], [5, 6]]
        one = oracle_minmax(DenseMatrix.from_rows([[3]]), DenseMatrix.from_rows([[7]]))
        assert one.to_rows() == [[7]]

    def test_zero_row(self):
        a = DenseMatrix.from_rows([[0, 0, 0], [1, 1, 1]])
        b = DenseMatrix.from_rows([[4, 9, 2], [6, 1, 8], [5, 3, 7]])
        out = oracle_minmax(a, b)
        assert out.row(0) == [min(b.col(j)) for j in range(3)]

    def test_shape_error(self):
        with pytest.raises(ShapeError):
            oracle_minmax(DenseMatrix.zeros(2, 3), DenseMatrix.zeros(2, 2))

    def test_entry_bounds(self):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.randint(1, 6)
            a = DenseMatrix(n, n, [rng.randint(-9, 9) for _ in range(n * n)])
            b = DenseMatrix(n, n, [rng.randint(-9, 9) for _ in range(n * n)])
            out = oracle_minmax(a, b)
            lo = min(a.entries + b.entries)
            hi = max(a.entries + b.entries)
            assert all(lo <= e <= hi for e in out.entries)
