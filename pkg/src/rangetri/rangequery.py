"""Direct solvers for range-pair query problems.

Three families live here:

* the offline square-root-decomposition solver (``mo_offline``), which
  sorts queries into blocks and walks a stateful extender across them;
* its online variant (``MoOnline``), which precomputes persistent
  snapshots of the extender state for every block start and answers
  arbitrary queries by extending a snapshot at the front;
* the online block/matrix equal-pairs structure (``online_eq_build`` /
  ``online_eq_query``), which splits the array into blocks, counts equal
  pairs between blocks with a matrix product for frequent values and
  direct enumeration for rare ones, and answers queries from a 2-D prefix
  table plus per-value index lists for the range tails.

``matmul`` (naive and Strassen) is also defined here since the block
structure is its main consumer.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    CapabilityError,
    DenseMatrix,
    InputError,
    IntArray,
    PairFunction,
    Range,
    ShapeError,
    normalize,
)
from .instrument import OpCounters


# ---------------------------------------------------------------------------
# Mutable extenders (offline Mo)


class Fenwick:
    """Binary indexed tree over value counts, 0-based value domain."""

    __slots__ = ("n", "tree", "total")

    def __init__(self, n: int):
        self.n = n
        self.tree = [0] * (n + 1)
        self.total = 0

    def add(self, v: int, delta: int) -> None:
        self.total += delta
        i = v + 1
        while i <= self.n:
            self.tree[i] += delta
            i += i & (-i)

    def prefix(self, v: int) -> int:
        """Count of stored values <= v."""
        i = v + 1
        res = 0
        while i > 0:
            res += self.tree[i]
            i -= i & (-i)
        return res


class Extender:
    """Stateful accumulator over a current range.

    After any sequence of extend/shrink calls producing range [l, r], the
    ``answer`` equals the brute-force pair sum for [l, r].  Values passed
    in must come from the normalized domain the extender was built for.
    """

    def add_left(self, v: int) -> None:
        raise NotImplementedError

    def add_right(self, v: int) -> None:
        raise NotImplementedError

    def remove_left(self, v: int) -> None:
        raise NotImplementedError

    def remove_right(self, v: int) -> None:
        raise NotImplementedError

    @property
    def answer(self) -> int:
        raise NotImplementedError


class EqExtender(Extender):
    """Equal-pairs extender: a value-count table, O(1) per step."""

    def __init__(self, domain: int):
        self.count = [0] * domain
        self._answer = 0

    def _add(self, v: int) -> None:
        self._answer += self.count[v]
        self.count[v] += 1

    def _remove(self, v: int) -> None:
        self.count[v] -= 1
        self._answer -= self.count[v]

    add_left = _add
    add_right = _add
    remove_left = _remove
    remove_right = _remove

    @property
    def answer(self) -> int:
        return self._answer


class InvExtender(Extender):
    """Inversion extender backed by an order-statistic count structure."""

    def __init__(self, domain: int):
        self.fen = Fenwick(domain)
        self._answer = 0

    def add_left(self, v: int) -> None:
        # new pairs (v, existing): inversion iff existing < v
        self._answer += self.fen.prefix(v - 1) if v > 0 else 0
        self.fen.add(v, 1)

    def add_right(self, v: int) -> None:
        # new pairs (existing, v): inversion iff existing > v
        self._answer += self.fen.total - self.fen.prefix(v)
        self.fen.add(v, 1)

    def remove_left(self, v: int) -> None:
        self.fen.add(v, -1)
        self._answer -= self.fen.prefix(v - 1) if v > 0 else 0

    def remove_right(self, v: int) -> None:
        self.fen.add(v, -1)
        self._answer -= self.fen.total - self.fen.prefix(v)

    @property
    def answer(self) -> int:
        return self._answer


def make_extender(f: PairFunction, domain: int) -> Extender:
    if f.kind == "eqp":
        return EqExtender(domain)
    if f.kind == "inv":
        return InvExtender(domain)
    raise CapabilityError(f"no incremental extender for pair function {f.kind!r}")


# ---------------------------------------------------------------------------
# Offline Mo


def mo_block_size(n: int, q: int) -> int:
    return max(1, int(n / math.sqrt(q)))


def mo_offline(
    f: PairFunction,
    a: IntArray,
    queries: Sequence[Range],
    counters: Optional[OpCounters] = None,
) -> list[int]:
    """Answer offline single-range queries by the block-sorted extender walk.

    Queries are sorted by (l // B, r) with B = max(1, n / sqrt(q)); the
    extender is dragged from one query range to the next.  When q > n**2
    every possible range is cheaper to precompute, so we do that instead.
    """
    n = a.n
    q = len(queries)
    if q == 0:
        return []
    for rng in queries:
        rng.check(n)
    vals = normalize(a.values)
    domain = n

    if q > n * n:
        return _mo_precompute_all(f, vals, queries, counters)

    block = mo_block_size(n, q)
    order = sorted(range(q), key=lambda i: ((queries[i].l - 1) // block, queries[i].r))
    ext = make_extender(f, domain)
    answers = [0] * q
    cur_l, cur_r = 1, 0
    steps = 0
    for i in order:
        l, r = queries[i].l, queries[i].r
        while cur_r < r:
            ext.add_right(vals[cur_r])
            cur_r += 1
            steps += 1
        while cur_l > l:
            cur_l -= 1
            ext.add_left(vals[cur_l - 1])
            steps += 1
        while cur_r > r:
            cur_r -= 1
            ext.remove_right(vals[cur_r])
            steps += 1
        while cur_l < l:
            ext.remove_left(vals[cur_l - 1])
            cur_l += 1
            steps += 1
        answers[i] = ext.answer
    if counters is not None:
        counters.extender_steps += steps
    return answers


def _mo_precompute_all(f, vals, queries, counters) -> list[int]:
    n = len(vals)
    table = [[0] * (n + 1) for _ in range(n + 2)]  # table[l][r], 1-based
    steps = 0
    for l in range(1, n + 1):
        ext = make_extender(f, n)
        for r in range(l, n + 1):
            ext.add_right(vals[r - 1])
            steps += 1
            table[l][r] = ext.answer
    if counters is not None:
        counters.extender_steps += steps
    return [table[q.l][q.r] for q in queries]


# ---------------------------------------------------------------------------
# Persistent value counter (online Mo)

# A node is (size, left, right); leaves are (size, None, None).  Inserting
# path-copies O(log domain) nodes, so old roots remain valid snapshots.

_EMPTY = None


def _pst_insert(node, lo: int, hi: int, v: int):
    if lo == hi:
        return ((node[0] if node else 0) + 1, None, None)
    mid = (lo + hi) // 2
    left = node[1] if node else None
    right = node[2] if node else None
    if v <= mid:
        left = _pst_insert(left, lo, mid, v)
    else:
        right = _pst_insert(right, mid + 1, hi, v)
    return ((left[0] if left else 0) + (right[0] if right else 0), left, right)


def _pst_count_leq(node, lo: int, hi: int, v: int) -> int:
    if node is None or v < lo:
        return 0
    if hi <= v:
        return node[0]
    mid = (lo + hi) // 2
    return _pst_count_leq(node[1], lo, mid, v) + _pst_count_leq(node[2], mid + 1, hi, v)


class PersistentCounter:
    """Fully persistent multiset of values from [0, domain)."""

    __slots__ = ("domain", "root", "size")

    def __init__(self, domain: int, root=_EMPTY, size: int = 0):
        self.domain = max(domain, 1)
        self.root = root
        self.size = size

    def insert(self, v: int) -> "PersistentCounter":
        root = _pst_insert(self.root, 0, self.domain - 1, v)
        return PersistentCounter(self.domain, root, self.size + 1)

    def count_leq(self, v: int) -> int:
        return _pst_count_leq(self.root, 0, self.domain - 1, v)

    def count_less(self, v: int) -> int:
        return self.count_leq(v - 1) if v > 0 else 0

    def count_eq(self, v: int) -> int:
        return self.count_leq(v) - self.count_less(v)

    def count_greater(self, v: int) -> int:
        return self.size - self.count_leq(v)


class MoOnline:
    """Online variant of the block walk, via persistent snapshots.

    For every block start s the answers and counter snapshots for ranges
    [s, k], k = s..n, are precomputed with extend-right steps only.  An
    arriving query [l, r] picks the snapshot for the nearest block start
    inside the range and extends it at the front.  The number-of-queries
    guess doubles (and preprocessing reruns) whenever exceeded; rebuilds
    never change any answer.
    """

    def __init__(
        self,
        f: PairFunction,
        a: IntArray,
        counters: Optional[OpCounters] = None,
        q_guess: int = 1,
    ):
        if f.kind not in ("inv", "eqp"):
            raise CapabilityError(f"no persistent extender for pair function {f.kind!r}")
        self.kind = f.kind
        self.vals = normalize(a.values)
        self.n = a.n
        self.domain = max(self.vals) + 1
        self.counters = counters
        self.q_guess = max(1, q_guess)
        self.q_seen = 0
        self._prepare()

    # number of equal/inversion pairs gained by appending v at the back
    def _back_delta(self, counter: PersistentCounter, v: int) -> int:
        if self.kind == "eqp":
            return counter.count_eq(v)
        return counter.count_greater(v)

    # ... and by prepending v at the front
    def _front_delta(self, counter: PersistentCounter, v: int) -> int:
        if self.kind == "eqp":
            return counter.count_eq(v)
        return counter.count_less(v)

    def _prepare(self) -> None:
        n = self.n
        self.block = mo_block_size(n, self.q_guess)
        self.snaps: list[list[tuple[PersistentCounter, int]]] = []
        steps = 0
        start = 1
        while start <= n:
            counter = PersistentCounter(self.domain)
            ans = 0
            row: list[tuple[PersistentCounter, int]] = []
            for k in range(start, n + 1):
                v = self.vals[k - 1]
                ans += self._back_delta(counter, v)
                counter = counter.insert(v)
                row.append((counter, ans))
                steps += 1
            self.snaps.append(row)
            start += self.block
        if self.counters is not None:
            self.counters.extender_steps += steps

    def query(self, rng: Range) -> int:
        rng.check(self.n)
        self.q_seen += 1
        if self.q_seen > self.q_guess:
            while self.q_seen > self.q_guess:
                self.q_guess *= 2
            self._prepare()
        l, r = rng.l, rng.r
        j = (l - 1 + self.block - 1) // self.block  # first block start >= l
        start = j * self.block + 1
        steps = 0
        if start > r:
            counter = PersistentCounter(self.domain)
            ans = 0
            for p in range(r, l - 1, -1):
                ans += self._front_delta(counter, self.vals[p - 1])
                counter = counter.insert(self.vals[p - 1])
                steps += 1
        else:
            counter, ans = self.snaps[j][r - start]
            for p in range(start - 1, l - 1, -1):
                ans += self._front_delta(counter, self.vals[p - 1])
                counter = counter.insert(self.vals[p - 1])
                steps += 1
        if self.counters is not None:
            self.counters.extender_steps += steps
        return ans


def mo_online(
    f: PairFunction, a: IntArray, counters: Optional[OpCounters] = None
) -> MoOnline:
    return MoOnline(f, a, counters=counters)


# ---------------------------------------------------------------------------
# Matrix multiplication

_STRASSEN_CUTOFF = 32


def _naive_mult(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0])
    peak_a = max((abs(x) for row in a for x in row), default=0)
    peak_b = max((abs(x) for row in b for x in row), default=0)
    # numpy int64 path whenever the exact product provably fits
    if peak_a * peak_b * max(1, inner) < 2**62:
        product = np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)
        return [[int(x) for x in row] for row in product]
    bt = [[b[k][j] for k in range(inner)] for j in range(cols)]
    out = []
    for i in range(rows):
        arow = a[i]
        out.append([sum(x * y for x, y in zip(arow, bcol)) for bcol in bt])
    return out


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _strassen(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    if n <= _STRASSEN_CUTOFF:
        return _naive_mult(a, b)
    h = n // 2
    a11 = [row[:h] for row in a[:h]]
    a12 = [row[h:] for row in a[:h]]
    a21 = [row[:h] for row in a[h:]]
    a22 = [row[h:] for row in a[h:]]
    b11 = [row[:h] for row in b[:h]]
    b12 = [row[h:] for row in b[:h]]
    b21 = [row[:h] for row in b[h:]]
    b22 = [row[h:] for row in b[h:]]
    m1 = _strassen(_mat_add(a11, a22), _mat_add(b11, b22))
    m2 = _strassen(_mat_add(a21, a22), b11)
    m3 = _strassen(a11, _mat_sub(b12, b22))
    m4 = _strassen(a22, _mat_sub(b21, b11))
    m5 = _strassen(_mat_add(a11, a12), b22)
    m6 = _strassen(_mat_sub(a21, a11), _mat_add(b11, b12))
    m7 = _strassen(_mat_sub(a12, a22), _mat_add(b21, b22))
    c11 = _mat_add(_mat_sub(_mat_add(m1, m4), m5), m7)
    c12 = _mat_add(m3, m5)
    c21 = _mat_add(m2, m4)
    c22 = _mat_add(_mat_add(_mat_sub(m1, m2), m3), m6)
    out = []
    for i in range(h):
        out.append(c11[i] + c12[i])
    for i in range(h):
        out.append(c21[i] + c22[i])
    return out


def matmul(
    a: DenseMatrix,
    b: DenseMatrix,
    algo: str = "naive",
    counters: Optional[OpCounters] = None,
) -> DenseMatrix:
    """Exact integer matrix product, plain or Strassen.

    Strassen pads both operands to a common power-of-two square and strips
    the padding afterwards; results are identical to the naive product.
    """
    if a.cols != b.rows:
        raise ShapeError(f"inner dimensions differ: {a.cols} vs {b.rows}")
    if counters is not None:
        counters.matmul_calls += 1
    ra = a.to_rows()
    rb = b.to_rows()
    if algo == "naive":
        return DenseMatrix.from_rows(_naive_mult(ra, rb))
    if algo != "strassen":
        raise InputError(f"unknown matmul algo {algo!r}")
    size = 1
    while size < max(a.rows, a.cols, b.cols):
        size *= 2
    pa = [[ra[i][j] if i < a.rows and j < a.cols else 0 for j in range(size)] for i in range(size)]
    pb = [[rb[i][j] if i < b.rows and j < b.cols else 0 for j in range(size)] for i in range(size)]
    full = _strassen(pa, pb)
    return DenseMatrix.from_rows([row[: b.cols] for row in full[: a.rows]])


# ---------------------------------------------------------------------------
# Online equal-pairs block/matrix structure


@dataclass
class OnlineEqStructure:
    """Preprocessed block structure for online equal-pairs queries.

    ``mat_b[i][j]`` counts ordered position pairs (p, p') with p in block
    i, p' in block j and equal values; the diagonal includes the trivial
    p = p' pairs, which query time corrects for.  ``prefix`` is the 2-D
    prefix-sum table over ``mat_b``.
    """

    n: int
    values: list[int]
    beta: float
    gamma: float
    omega_eff: float
    b_len: int
    b_cnt: int
    tau: float
    mat_bf: DenseMatrix
    mat_br: DenseMatrix
    mat_b: DenseMatrix
    prefix: DenseMatrix
    index_lists: dict[int, list[int]]


def _block_parameters(n: int, q_hint: int, omega_eff: float) -> tuple[float, float]:
    if n < 2:
        return 0.5, 0.5
    alpha = math.log(max(q_hint, 1)) / math.log(n)
    if q_hint <= n:
        beta = 2.0 * alpha / (omega_eff + 1.0)
    else:
        beta = (3.0 - alpha + omega_eff * (alpha + 1.0)) / (omega_eff + 1.0)
    beta = min(max(beta, 0.01), 0.99)
    gamma = min(max(1.0 + beta - alpha, 0.01), 0.99)
    return beta, gamma


def online_eq_build(
    a: IntArray,
    q_hint: int,
    omega_eff: float = 3.0,
    matmul_algo: str = "naive",
    counters: Optional[OpCounters] = None,
) -> OnlineEqStructure:
    """Build the block/matrix structure for equal-pairs range queries.

    Frequent values (appearing at least tau = n**(1-gamma) times) are
    counted per block into a matrix M and contribute M @ M.T; rare values
    are enumerated directly.  The prefix table over the summed block
    matrix answers any block-aligned query with four lookups.
    """
    if a.n < 1:
        raise InputError("empty array")
    if not (2.0 <= omega_eff <= 3.0):
        raise InputError("effective exponent must lie in [2, 3]")
    if q_hint < 1:
        raise InputError("query hint must be at least 1")
    n = a.n
    vals = normalize(a.values)
    beta, gamma = _block_parameters(n, q_hint, omega_eff)
    b_len = max(1, math.ceil(n ** (1.0 - beta)))
    b_cnt = (n + b_len - 1) // b_len
    tau = n ** (1.0 - gamma)

    index_lists: dict[int, list[int]] = {}
    for pos, v in enumerate(vals, start=1):
        index_lists.setdefault(v, []).append(pos)

    frequent = sorted(v for v, lst in index_lists.items() if len(lst) >= tau)
    rare = sorted(v for v, lst in index_lists.items() if len(lst) < tau)

    def block_counts(v: int) -> dict[int, int]:
        counts: dict[int, int] = {}
        for pos in index_lists[v]:
            blk = (pos - 1) // b_len
            counts[blk] = counts.get(blk, 0) + 1
        return counts

    if frequent:
        m = DenseMatrix.zeros(b_cnt, len(frequent))
        for col, v in enumerate(frequent):
            for blk, c in block_counts(v).items():
                m[blk, col] = c
        mt = DenseMatrix.zeros(len(frequent), b_cnt)
        for i in range(b_cnt):
            for j in range(len(frequent)):
                mt[j, i] = m[i, j]
        mat_bf = matmul(m, mt, algo=matmul_algo, counters=counters)
    else:
        mat_bf = DenseMatrix.zeros(b_cnt, b_cnt)

    mat_br = DenseMatrix.zeros(b_cnt, b_cnt)
    for v in rare:
        counts = block_counts(v)
        items = sorted(counts.items())
        for b1, c1 in items:
            for b2, c2 in items:
                mat_br[b1, b2] += c1 * c2

    mat_b = DenseMatrix.zeros(b_cnt, b_cnt)
    for i in range(b_cnt):
        for j in range(b_cnt):
            mat_b[i, j] = mat_bf[i, j] + mat_br[i, j]

    prefix = DenseMatrix.zeros(b_cnt + 1, b_cnt + 1)
    for i in range(b_cnt):
        for j in range(b_cnt):
            prefix[i + 1, j + 1] = (
                prefix[i + 1, j] + prefix[i, j + 1] - prefix[i, j] + mat_b[i, j]
            )

    return OnlineEqStructure(
        n=n,
        values=vals,
        beta=beta,
        gamma=gamma,
        omega_eff=omega_eff,
        b_len=b_len,
        b_cnt=b_cnt,
        tau=tau,
        mat_bf=mat_bf,
        mat_br=mat_br,
        mat_b=mat_b,
        prefix=prefix,
        index_lists=index_lists,
    )


def _count_in(lst: list[int], lo: int, hi: int) -> int:
    if lo > hi:
        return 0
    return bisect_right(lst, hi) - bisect_left(lst, lo)


def online_eq_query(s: OnlineEqStructure, rng: Range) -> int:
    """Answer one equal-pairs range query from the built structure."""
    rng.check(s.n)
    l, r = rng.l, rng.r
    b_len = s.b_len
    bs = (l - 1 + b_len - 1) // b_len  # first block starting at or after l
    if r == s.n:
        be = s.b_cnt - 1
    else:
        be = r // b_len - 1
    vals = s.values
    if bs > be:
        ans = 0
        for p in range(l, r + 1):
            ans += _count_in(s.index_lists[vals[p - 1]], p + 1, r)
        return ans
    big_l = bs * b_len + 1
    big_r = min((be + 1) * b_len, s.n)
    ordered = (
        s.prefix[be + 1, be + 1]
        - s.prefix[bs, be + 1]
        - s.prefix[be + 1, bs]
        + s.prefix[bs, bs]
    )
    ans = (ordered - (big_r - big_l + 1)) // 2
    for p in range(l, big_l):
        ans += _count_in(s.index_lists[vals[p - 1]], p + 1, r)
    for p in range(big_r + 1, r + 1):
        ans += _count_in(s.index_lists[vals[p - 1]], big_l, p - 1)
    return ans


class OnlineEqSolver:
    """Adaptive wrapper: doubles the query-count guess and rebuilds."""

    def __init__(
        self,
        a: IntArray,
        omega_eff: float = 3.0,
        matmul_algo: str = "naive",
        counters: Optional[OpCounters] = None,
    ):
        self.array = a
        self.omega_eff = omega_eff
        self.matmul_algo = matmul_algo
        self.counters = counters
        self.q_guess = 1
        self.q_seen = 0
        self.structure = online_eq_build(
            a, self.q_guess, omega_eff, matmul_algo, counters
        )

    def query(self, rng: Range) -> int:
        self.q_seen += 1
        if self.q_seen > self.q_guess:
            while self.q_seen > self.q_guess:
                self.q_guess *= 2
            self.structure = online_eq_build(
                self.array, self.q_guess, self.omega_eff, self.matmul_algo, self.counters
            )
        return online_eq_query(self.structure, rng)
