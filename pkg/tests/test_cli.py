import csv
import io
import json
import subprocess
import sys

import pytest

from lossycvc.cli import main
from lossycvc.graph import is_connected_vertex_cover, parse_dimacs, parse_vertex_list

TRIANGLE = "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n"
K4_PENDANT = "c K4 plus a pendant on vertex 4\np edge 5 7\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\ne 4 5\n"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def last_json(out):
    return json.loads(out.strip().splitlines()[-1])


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p

    return write


def test_solve_cluster_triangle(capsys, files):
    g, s = files("t.dimacs", TRIANGLE), files("s.txt", "1\n")
    code, out = run(capsys, "solve", "--param", "cluster", "--graph", g, "--modulator", s)
    doc = last_json(out)
    assert code == 0 and doc["size"] == 2 and doc["feasible"] and doc["schema"] == 1
    assert set(doc["stats"]) == {"branch_nodes", "leaves", "steiner_calls", "elapsed_ms"}
    assert doc["vertices"] == [1, 2]


def test_solve_wrong_modulator_is_kind_mismatch(capsys, files):
    g = files("g.dimacs", "p edge 4 2\ne 1 2\ne 3 4\n")
    s = files("s.txt", "")
    code, out = run(capsys, "solve", "--param", "split", "--graph", g, "--modulator", s)
    assert code == 1 and last_json(out)["error"] == "kind_mismatch"


def test_solve_infeasible_budget(capsys, files):
    g, s = files("k2.dimacs", "p edge 2 1\ne 1 2\n"), files("s.txt", "")
    code, out = run(capsys, "solve", "--param", "clique", "--graph", g, "--modulator", s, "--ell", 0)
    assert code == 2 and last_json(out)["feasible"] is False


@pytest.mark.parametrize("param", ["split", "clique", "cluster", "degree1", "degree2", "chordal", "cliquecover", "modcc"])
def test_solve_every_param_with_found_modulator(capsys, files, param):
    g = files("k4p.dimacs", K4_PENDANT)
    extra = [] if param == "cliquecover" else ["--find-modulator", 5]
    code, out = run(capsys, "solve", "--param", param, "--graph", g, *extra)
    assert code == 0 and last_json(out)["size"] == 3


def test_input_errors(capsys, files, tmp_path):
    bad = files("bad.dimacs", "p edge 2 1\ne 1 9\n")
    code, out = run(capsys, "solve", "--param", "split", "--graph", bad, "--find-modulator", 1)
    assert code == 1 and "line 2" in last_json(out)["message"]
    code, out = run(capsys, "solve", "--param", "split", "--graph", tmp_path / "missing", "--find-modulator", 1)
    assert code == 1 and last_json(out)["error"] == "input_error"
    g = files("t.dimacs", TRIANGLE)
    code, out = run(capsys, "solve", "--param", "split", "--graph", g)
    assert code == 1
    code, out = run(capsys, "kernelize", "--param", "split", "--graph", g, "--find-modulator", 1,
                    "--alpha", "1", "--out-graph", tmp_path / "o", "--out-chain", tmp_path / "c")
    assert code == 1


def test_kernelize_lift_round_trip(capsys, files, tmp_path):
    g, s = files("k4p.dimacs", K4_PENDANT), files("s.txt", "5\n")
    out_graph, out_chain, out_mod = tmp_path / "r.dimacs", tmp_path / "chain.json", tmp_path / "r.mod"
    code, out = run(capsys, "kernelize", "--param", "clique", "--graph", g, "--modulator", s, "--alpha", "2",
                    "--out-graph", out_graph, "--out-chain", out_chain, "--out-modulator", out_mod)
    doc = last_json(out)
    assert code == 0 and doc["vertices_after"] == 2 and doc["certificate"]["holds"]
    assert doc["steps"] == ["collapse_clique"]
    reduced = parse_dimacs(out_graph.read_text())
    assert reduced.n == 2
    sol = files("sol.txt", "2\n")  # u_C in the reduced graph
    lifted_path = tmp_path / "lifted.txt"
    code, out = run(capsys, "lift", "--chain", out_chain, "--solution", sol, "--out", lifted_path)
    doc = last_json(out)
    assert code == 0 and doc["size"] == 4 and doc["feasible"]
    original = parse_dimacs(K4_PENDANT)
    assert is_connected_vertex_cover(original, parse_vertex_list(lifted_path.read_text()))


def test_kernelize_cluster_constant_branch(capsys, files, tmp_path):
    edges = [(1, v) for v in range(2, 14)] + [(2 * i + 2, 2 * i + 3) for i in range(6)]
    text = f"p edge 13 {len(edges)}\n" + "".join(f"e {a} {b}\n" for a, b in edges)
    g, s = files("hub.dimacs", text), files("s.txt", "1\n")
    code, out = run(capsys, "kernelize", "--param", "cluster", "--graph", g, "--modulator", s, "--alpha", "2",
                    "--out-graph", tmp_path / "r", "--out-chain", tmp_path / "c.json")
    assert code == 0 and last_json(out)["steps"] == ["constant"]


def test_lift_rejects_malformed_chain(capsys, files):
    chain, sol = files("c.json", "{}"), files("s.txt", "1\n")
    code, out = run(capsys, "lift", "--chain", chain, "--solution", sol)
    assert code == 1 and last_json(out)["error"] == "input_error"


@pytest.mark.parametrize("mode, nmax", [("vcsum", 5), ("gadget", 3), ("oracle", 4), ("kernel", 4)])
def test_verify_modes(capsys, mode, nmax):
    code, out = run(capsys, "verify", "--mode", mode, "--nmax", nmax, "--trials", 5, "--quiet")
    assert code == 0 and out.strip().endswith(f"{mode}: ok")


def test_gen_models_are_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "gen", "--model", "gnp", "--n", 10, "--p", 0.3, "--seed", 1, "--out", a)
    run(capsys, "gen", "--model", "gnp", "--n", 10, "--p", 0.3, "--seed", 1, "--out", b)
    assert a.read_text() == b.read_text()
    mod = tmp_path / "m"
    code, out = run(capsys, "gen", "--model", "cluster", "--k", 2, "--seed", 3, "--out", a, "--out-modulator", mod)
    assert code == 0
    code, out = run(capsys, "solve", "--param", "cluster", "--graph", a, "--modulator", mod)
    assert code == 0
    cover = tmp_path / "cover"
    code, out = run(capsys, "gen", "--model", "gadget", "--n", 3, "--k", 2, "--seed", 2, "--out", a, "--out-cover", cover)
    assert code == 0 and last_json(out)["cover_size"] == 3
    code, out = run(capsys, "solve", "--param", "cliquecover", "--graph", a, "--cover", cover)
    assert code == 0


@pytest.mark.parametrize("suite", ["split-scaling", "kernel-sizes"])
def test_bench_rows_within_bounds(capsys, suite):
    code, out = run(capsys, "bench", "--suite", suite, "--reps", 1)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows and all(r["ok"] == "True" for r in rows)
    assert {"k", "n", "measured", "bound", "elapsed_ms"} <= set(rows[0])


def test_bench_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--suite", ""])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lossycvc", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "lossycvc" in proc.stdout
