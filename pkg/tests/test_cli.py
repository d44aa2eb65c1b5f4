"""Command-line interface end to end."""

import random

import pytest

from conftest import rand_array, rand_pair, rand_range
from rangetri import files
from rangetri.cli import main
from rangetri.core import (
    EQP,
    INV,
    IntArray,
    Range,
    oracle_disjoint_query,
    oracle_edge_triangle_counts,
    oracle_minmax,
    oracle_pairs_query,
    oracle_triangle_list,
)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def instance(tmp_path):
    """A small array plus single-range and pair query files."""
    rng = random.Random(99)
    a = rand_array(rng, 20, 0, 6)
    files.write_array(tmp_path / "a.txt", a)
    singles = [rand_range(rng, 20) for _ in range(8)]
    pairs = [rand_pair(rng, 20) for _ in range(8)]
    files.write_queries(tmp_path / "singles.txt", singles)
    files.write_queries(tmp_path / "pairs.txt", pairs)
    return tmp_path, a, singles, pairs


class TestGen:
    def test_deterministic(self, capsys):
        code1, out1 = run(capsys, "gen", "array", "--n", "12", "--seed", "5")
        code2, out2 = run(capsys, "gen", "array", "--n", "12", "--seed", "5")
        assert code1 == code2 == 0 and out1 == out2
        _, other = run(capsys, "gen", "array", "--n", "12", "--seed", "6")
        assert other != out1

    def test_graph_file_loads(self, capsys, tmp_path):
        path = tmp_path / "g.txt"
        code, _ = run(capsys, "gen", "graph", "--kind", "complete", "--n", "4", "--out", str(path))
        assert code == 0
        g = files.read_graph(path)
        assert g.n == 4 and g.m == 6

    def test_zero_queries(self, capsys):
        code, out = run(capsys, "gen", "queries", "--n", "8", "--q", "0")
        assert code == 0 and out == ""

    def test_matrix(self, capsys):
        code, out = run(capsys, "gen", "matrix", "--rows", "2", "--cols", "3")
        assert code == 0
        assert out.splitlines()[0] == "2 3"


class TestSolve:
    @pytest.mark.parametrize("algo", ["oracle", "mo", "mo-online", "online-eq", "via-triangle"])
    def test_all_algorithms_match_oracle(self, capsys, instance, algo):
        tmp, a, singles, pairs = instance
        for problem, qfile, queries in (
            ("riq", "singles.txt", singles),
            ("req", "singles.txt", singles),
            ("2riq", "pairs.txt", pairs),
            ("2req", "pairs.txt", pairs),
        ):
            code, out = run(
                capsys,
                "solve", "--problem", problem, "--algo", algo,
                "--array", str(tmp / "a.txt"), "--queries", str(tmp / qfile),
            )
            assert code == 0
            f = INV if problem in ("riq", "2riq") else EQP
            expected = [oracle_pairs_query(f, a, q) for q in queries]
            assert [int(x) for x in out.split()] == expected

    def test_disjointness(self, capsys, instance):
        tmp, a, _, pairs = instance
        code, out = run(
            capsys,
            "solve", "--problem", "2rdq", "--algo", "oracle",
            "--array", str(tmp / "a.txt"), "--queries", str(tmp / "pairs.txt"),
        )
        assert code == 0
        expected = [int(oracle_disjoint_query(a, q)) for q in pairs]
        assert [int(x) for x in out.split()] == expected

    def test_arity_mismatch_is_usage_error(self, capsys, instance):
        tmp, _, _, _ = instance
        code, _ = run(
            capsys,
            "solve", "--problem", "riq", "--algo", "oracle",
            "--array", str(tmp / "a.txt"), "--queries", str(tmp / "pairs.txt"),
        )
        assert code == 2

    def test_missing_file_is_usage_error(self, capsys, instance):
        tmp, _, _, _ = instance
        code, _ = run(
            capsys,
            "solve", "--problem", "riq", "--algo", "oracle",
            "--array", str(tmp / "nope.txt"), "--queries", str(tmp / "singles.txt"),
        )
        assert code == 2


class TestReduce:
    @pytest.mark.parametrize(
        "src,dst,qfile",
        [
            ("2riq", "riq", "pairs.txt"),
            ("2req", "req", "pairs.txt"),
            ("riq", "2riq", "singles.txt"),
            ("req", "2req", "singles.txt"),
            ("2req", "2riq", "pairs.txt"),
            ("2riq", "2req", "pairs.txt"),
        ],
    )
    def test_verify_passes(self, capsys, instance, src, dst, qfile):
        tmp, _, _, _ = instance
        code, out = run(
            capsys,
            "reduce", "--from", src, "--to", dst,
            "--array", str(tmp / "a.txt"), "--queries", str(tmp / qfile), "--verify",
        )
        assert code == 0
        assert out.strip().splitlines()[-1] == "PASS"

    def test_unsupported_arrow(self, capsys, instance):
        tmp, _, _, _ = instance
        code, _ = run(
            capsys,
            "reduce", "--from", "riq", "--to", "req",
            "--array", str(tmp / "a.txt"), "--queries", str(tmp / "singles.txt"),
        )
        assert code == 2


class TestGraphCommands:
    @pytest.fixture
    def graph_file(self, tmp_path):
        rng = random.Random(7)
        from conftest import rand_graph

        g = rand_graph(rng, 10, 0.4)
        files.write_graph(tmp_path / "g.txt", g)
        return tmp_path / "g.txt", g

    @pytest.mark.parametrize("algo", ["oracle", "ayz", "via-2req"])
    def test_count(self, capsys, graph_file, algo):
        path, g = graph_file
        code, out = run(capsys, "count", "--graph", str(path), "--algo", algo)
        assert code == 0
        counts = oracle_edge_triangle_counts(g)
        got = {}
        for line in out.splitlines():
            u, v, c = map(int, line.split())
            got[(u, v)] = c
        assert got == counts

    @pytest.mark.parametrize("algo", ["oracle", "ayz", "via-listing"])
    def test_detect(self, capsys, graph_file, algo):
        path, g = graph_file
        code, out = run(capsys, "detect", "--graph", str(path), "--algo", algo)
        assert code == 0
        counts = oracle_edge_triangle_counts(g)
        for line in out.splitlines():
            u, v, b = map(int, line.split())
            assert b == int(counts[(u, v)] > 0)

    @pytest.mark.parametrize("algo", ["baseline", "via-detection", "main"])
    def test_list(self, capsys, graph_file, algo):
        path, g = graph_file
        truth = oracle_triangle_list(g)
        code, out = run(
            capsys, "list", "--graph", str(path), "--algo", algo, "--t", str(10 * g.m)
        )
        assert code == 0
        got = {tuple(map(int, line.split())) for line in out.splitlines()}
        if algo == "via-detection":
            assert got <= truth and len(got) == min(g.m, len(truth))
        else:
            assert got == truth


class TestMinmax:
    @pytest.mark.parametrize("solver", ["oracle", "via-2rdq", "via-etd"])
    def test_matches_oracle(self, capsys, tmp_path, solver):
        rng = random.Random(3)
        from rangetri.core import DenseMatrix

        a = DenseMatrix(4, 4, [rng.randint(-9, 9) for _ in range(16)])
        b = DenseMatrix(4, 4, [rng.randint(-9, 9) for _ in range(16)])
        files.write_matrix(tmp_path / "a.txt", a)
        files.write_matrix(tmp_path / "b.txt", b)
        code, out = run(
            capsys,
            "minmax", "--a", str(tmp_path / "a.txt"), "--b", str(tmp_path / "b.txt"),
            "--solver", solver,
        )
        assert code == 0
        rows = [list(map(int, line.split())) for line in out.splitlines()[1:] if line.strip()]
        assert rows == oracle_minmax(a, b).to_rows()


class TestVerify:
    def test_algorithm_pass(self, capsys, instance):
        tmp, _, _, _ = instance
        code, out = run(
            capsys,
            "verify", "--problem", "req", "--algo", "mo",
            "--array", str(tmp / "a.txt"), "--queries", str(tmp / "singles.txt"),
        )
        assert code == 0 and out.strip() == "PASS"

    def test_answer_file_negative_control(self, capsys, instance):
        tmp, a, singles, _ = instance
        good = [oracle_pairs_query(EQP, a, q) for q in singles]
        bad = list(good)
        bad[3] += 1
        (tmp / "good.txt").write_text("".join(f"{x}\n" for x in good))
        (tmp / "bad.txt").write_text("".join(f"{x}\n" for x in bad))
        code, out = run(
            capsys,
            "verify", "--problem", "req",
            "--array", str(tmp / "a.txt"), "--queries", str(tmp / "singles.txt"),
            "--answers", str(tmp / "good.txt"),
        )
        assert code == 0 and out.strip() == "PASS"
        code, out = run(
            capsys,
            "verify", "--problem", "req",
            "--array", str(tmp / "a.txt"), "--queries", str(tmp / "singles.txt"),
            "--answers", str(tmp / "bad.txt"),
        )
        assert code == 1 and out.strip() == "FAIL at query 4"


class TestBench:
    def test_csv_shape(self, capsys, tmp_path):
        out_path = tmp_path / "bench.csv"
        code, _ = run(
            capsys,
            "bench", "--problems", "req", "--algos", "mo", "--sizes", "64",
            "--reps", "3", "--out", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text().strip().splitlines()
        header = lines[0].split(",")
        assert header[:4] == ["problem", "algorithm", "n", "m"]
        assert len(lines) == 1 + 3
        for line in lines[1:]:
            row = dict(zip(header, line.split(",")))
            assert row["problem"] == "req" and row["algorithm"] == "mo"
            assert int(row["wall_ns"]) > 0
            assert int(row["extender_steps"]) > 0


class TestExitCodes:
    def test_bad_flag(self, capsys):
        assert main(["solve", "--nope"]) == 2

    def test_reproducible_stdout(self, capsys, tmp_path):
        path = tmp_path / "g.txt"
        run(capsys, "gen", "graph", "--n", "12", "--p", "0.4", "--seed", "3", "--out", str(path))
        _, out1 = run(capsys, "list", "--graph", str(path), "--algo", "main", "--seed", "4")
        _, out2 = run(capsys, "list", "--graph", str(path), "--algo", "main", "--seed", "4")
        assert out1 == out2
