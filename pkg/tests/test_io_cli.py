import io as stdio
import subprocess
import sys

import numpy as np
import pytest

from h2seg.cli import main
from h2seg.core import H2SInstance
from h2seg.io import FormatError, load_graph, load_instance, save_instance
from h2seg.maxcut import Graph
from h2seg.reduction import orient_edges, reduce_graph

TRIANGLE_TEXT = "3 3\n0 1\n0 2\n1 2\n"


def run_cli(argv):
    buf = stdio.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.g"
    path.write_text(TRIANGLE_TEXT)
    return str(path)


class TestGraphFiles:
    def test_load_triangle(self, triangle_file):
        g = load_graph(triangle_file)
        assert g.n == 3 and g.edges == ((0, 1), (0, 2), (1, 2))

    def test_comments_ignored(self, tmp_path):
        p = tmp_path / "g"
        p.write_text("# a graph\n2 1\n0 1\n")
        assert load_graph(p).m == 1

    def test_self_loop_reports_line(self, tmp_path):
        p = tmp_path / "g"
        p.write_text("3 2\n0 1\n2 2\n")
        with pytest.raises(FormatError, match=r"g:3.*self-loop"):
            load_graph(p)

    def test_duplicate_reports_line(self, tmp_path):
        p = tmp_path / "g"
        p.write_text("3 2\n0 1\n1 0\n")
        with pytest.raises(FormatError, match=r"g:3.*duplicate"):
            load_graph(p)

    def test_wrong_edge_count(self, tmp_path):
        p = tmp_path / "g"
        p.write_text("3 3\n0 1\n")
        with pytest.raises(FormatError, match="promises 3 edges"):
            load_graph(p)


class TestInstanceFiles:
    def test_load_sign_format(self, tmp_path):
        p = tmp_path / "i.h2s"
        p.write_text("2 2\n++\n--\n")
        inst = load_instance(p)
        assert inst.k == 2 and inst.d == 2
        assert inst.vectors.tolist() == [[1, 1], [-1, -1]]

    def test_load_binary_format(self, tmp_path):
        p = tmp_path / "i.h2s"
        p.write_text("2 3 binary\n101\n010\n")
        inst = load_instance(p)
        assert inst.vectors.tolist() == [[1, -1, 1], [-1, 1, -1]]

    def test_wrong_row_length_reports_line(self, tmp_path):
        p = tmp_path / "i.h2s"
        p.write_text("2 2\n+-\n+\n")
        with pytest.raises(FormatError, match=r"i\.h2s:3.*length 1"):
            load_instance(p)

    def test_bad_character_reports_line(self, tmp_path):
        p = tmp_path / "i.h2s"
        p.write_text("1 3\n+*-\n")
        with pytest.raises(FormatError, match=r"i\.h2s:2"):
            load_instance(p)

    def test_save_load_round_trip_bytes(self, tmp_path):
        rng = np.random.default_rng(1)
        inst = H2SInstance(rng.integers(0, 2, (5, 7)) * 2 - 1)
        a = tmp_path / "a.h2s"
        b = tmp_path / "b.h2s"
        save_instance(inst, a)
        save_instance(load_instance(a), b)
        assert a.read_bytes() == b.read_bytes()

    def test_binary_round_trip(self, tmp_path):
        rng = np.random.default_rng(2)
        inst = H2SInstance(rng.integers(0, 2, (4, 5)) * 2 - 1)
        p = tmp_path / "bin.h2s"
        save_instance(inst, p, binary=True)
        assert "binary" in p.read_text().splitlines()[0]
        assert load_instance(p) == inst

    def test_reduced_instance_round_trip_with_meta(self, tmp_path):
        g = Graph(3, ((0, 1), (0, 2), (1, 2)))
        inst = reduce_graph(orient_edges(g), 4)
        p = tmp_path / "red.h2s"
        save_instance(inst, p)
        loaded = load_instance(p)
        assert loaded == inst
        assert loaded.block_meta == inst.block_meta

    def test_meta_ignorable_by_plain_readers(self, tmp_path):
        g = Graph(2, ((0, 1),))
        inst = reduce_graph(orient_edges(g), 2)
        p = tmp_path / "red.h2s"
        save_instance(inst, p)
        stripped = tmp_path / "plain.h2s"
        stripped.write_text(
            "".join(l for l in p.read_text().splitlines(keepends=True) if not l.startswith("#"))
        )
        plain = load_instance(stripped)
        assert plain.block_meta is None
        assert np.array_equal(plain.vectors, inst.vectors)


class TestCliExitCodes:
    def test_hadamard_bad_order_is_usage_error(self):
        code, _ = run_cli(["hadamard", "--order", "3"])
        assert code == 2

    def test_unknown_flag_is_usage_error(self):
        code, _ = run_cli(["hadamard", "--order", "4", "--frobnicate"])
        assert code == 2

    def test_hadamard_verify(self):
        code, out = run_cli(["hadamard", "--order", "4", "--verify"])
        assert code == 0
        lines = out.splitlines()
        assert lines[:4] == ["++++", "+-+-", "++--", "+--+"]
        assert "orthogonal: true" in lines

    def test_missing_file_is_usage_error(self):
        code, _ = run_cli(["solve", "--method", "exact", "--input", "/nonexistent.h2s"])
        assert code == 2


class TestCliSolve:
    def test_exact_toy_instance(self, tmp_path):
        p = tmp_path / "toy.h2s"
        p.write_text("3 2\n++\n+-\n--\n")
        code, out = run_cli(["solve", "--method", "exact", "--input", str(p)])
        assert code == 0
        assert "l1_value: 4" in out
        assert "agreement_value: 5" in out

    def test_reports_are_deterministic(self, tmp_path):
        p = tmp_path / "toy.h2s"
        rng = np.random.default_rng(3)
        save_instance(H2SInstance(rng.integers(0, 2, (9, 6)) * 2 - 1), p)
        argv = ["solve", "--method", "local", "--input", str(p), "--seed", "5"]
        out1 = run_cli(argv)
        out2 = run_cli(argv)
        assert out1 == out2


class TestCliMaxcutReduceVerify:
    def test_maxcut_triangle(self, triangle_file):
        code, out = run_cli(["maxcut", "--input", triangle_file])
        assert code == 0
        assert "cut_value: 2" in out

    def test_reduce_then_load(self, tmp_path, triangle_file):
        out_path = tmp_path / "reduced.h2s"
        code, _ = run_cli(
            ["reduce", "--graph", triangle_file, "--block-size", "4", "--out", str(out_path)]
        )
        assert code == 0
        loaded = load_instance(out_path)
        direct = reduce_graph(orient_edges(load_graph(triangle_file)), 4)
        assert loaded == direct

    def test_verify_exact_m4(self, triangle_file):
        code, out = run_cli(
            ["verify", "--graph", triangle_file, "--block-size", "4", "--solver", "exact"]
        )
        assert code == 0
        assert out.count(": true") >= 3
        assert "status: ok" in out

    def test_verify_reports_byte_identical(self, triangle_file):
        argv = ["verify", "--graph", triangle_file, "--block-size", "8",
                "--solver", "pairs", "--samples", "200", "--seed", "7"]
        assert run_cli(argv) == run_cli(argv)

    def test_verify_auto_m(self, triangle_file):
        code, out = run_cli(
            ["verify", "--graph", triangle_file, "--auto-M", "--solver", "local"]
        )
        assert code == 0
        assert "M: 16" in out
        assert "gap_applicable: true" in out


class TestConsoleEntry:
    def test_module_invocation(self, triangle_file):
        proc = subprocess.run(
            [sys.executable, "-m", "h2seg", "maxcut", "--input", triangle_file],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "cut_value: 2" in proc.stdout
        assert "elapsed" in proc.stderr
