import json
import subprocess
import sys

import pytest

from lcllab.cli import main
from lcllab.graph import Graph, cycle_graph, path_graph, star_graph, write_edge_list
from lcllab.labelings import Labeling, read_labeling, write_labeling

TRIANGLE_TAIL = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return put


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def strip_times(d):
    if isinstance(d, dict):
        return {k: strip_times(v) for k, v in d.items() if k != "wall_time"}
    if isinstance(d, list):
        return [strip_times(x) for x in d]
    return d


def test_label_then_verify(files, capsys, tmp_path):
    g = files("g.txt", write_edge_list(TRIANGLE_TAIL))
    lab = str(tmp_path / "l.txt")
    assert main(["label", "--graph", g, "--scheme", "CYCLE_N", "--out", lab]) == 0
    assert read_labeling(open(lab).read()).labels == (0, 0, 0, 1, 2)
    code, rep = run_json(capsys, ["verify", "--graph", g, "--labels", lab, "--scheme", "CYCLE_N"])
    assert code == 0 and rep["verdicts"] == [True] * 5 and rep["version"] == 1
    assert rep["config"]["scheme_id"] == "CYCLE_N"


def test_verify_rejects(files, capsys):
    g = files("g.txt", write_edge_list(path_graph(3)))
    lab = files("l.txt", write_labeling(Labeling((0, 0, 0), 2)))
    code, rep = run_json(capsys, ["verify", "--graph", g, "--labels", lab, "--scheme", "BIPARTITE2"])
    assert code == 1 and rep["summary"]["rejecting"] == [0, 1, 2]


def test_verify_text(files, capsys):
    g = files("g.txt", write_edge_list(path_graph(2)))
    lab = files("l.txt", write_labeling(Labeling((0, 1), 2)))
    assert main(["verify", "--graph", g, "--labels", lab, "--scheme", "BIPARTITE2", "--format", "text"]) == 0
    assert capsys.readouterr().out == "0 accept\n1 accept\n"


def test_verify_refix(files, capsys):
    g = files("g.txt", write_edge_list(TRIANGLE_TAIL))
    lab = files("l.txt", write_labeling(Labeling((0, 0, 0, 1, 4), 6)))
    code, rep = run_json(capsys, ["verify", "--graph", g, "--labels", lab, "--scheme", "CYCLE_N"])
    assert code == 1
    code, rep = run_json(capsys, ["verify", "--graph", g, "--labels", lab, "--scheme", "CYCLE_N", "--refix", "1"])
    assert code == 0
    assert rep["imagined_patches"]["4"] == [[4, 2]]


def test_label_not_in_property(files, capsys):
    g = files("g.txt", write_edge_list(path_graph(3)))
    assert main(["label", "--graph", g, "--scheme", "CYCLE3"]) == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["verify", "--scheme", "CYCLE3"],
    ["verify", "--graph", "/nonexistent", "--labels", "/nonexistent", "--scheme", "CYCLE3"],
    ["check-scheme", "--scheme", "CYCLE_N", "--nmax", "9"],
    ["check-scheme", "--scheme", "CYCLE3"],
    ["thm36", "--lam", "2", "--n", "5"],
    ["thm61", "--i", "0"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("lcllab: error:")


def test_malformed_graph(files, capsys):
    g = files("g.txt", "3 1\n0 1\n")
    lab = files("l.txt", write_labeling(Labeling((0, 1, 0), 2)))
    assert main(["verify", "--graph", g, "--labels", lab, "--scheme", "BIPARTITE2"]) == 2


def test_labeling_size_mismatch(files):
    g = files("g.txt", write_edge_list(path_graph(3)))
    lab = files("l.txt", write_labeling(Labeling((0, 1), 2)))
    assert main(["verify", "--graph", g, "--labels", lab, "--scheme", "BIPARTITE2"]) == 2


def test_sweep_text_table(capsys):
    assert main(["sweep", "--scheme", "BIPARTITE2", "--nmax", "5", "--format", "text", "--jobs", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [c.strip() for c in lines[0].split(" | ")] == ["Problem", "View dist.", "# Labels", "Result"]
    assert lines[2].startswith("Bipartiteness | 1")
    assert "pass (n<=5, 31 graphs)" in lines[2]


def test_sweep_reports_failure(capsys):
    assert main(["check-scheme", "--scheme", "CYCLE3", "--nmax", "6", "--jobs", "1"]) == 1
    rep = json.loads(capsys.readouterr().out)["report"]
    assert len(rep["completeness_failures"]) == 1 and not rep["soundness_failures"]
    assert main(["check-scheme", "--scheme", "CYCLE3", "--nmax", "6", "--jobs", "1", "--repaired-3labels"]) == 0


def test_sweep_deterministic(capsys):
    _, a = run_json(capsys, ["check-scheme", "--scheme", "CYCLE2V3", "--nmax", "5", "--jobs", "1"])
    _, b = run_json(capsys, ["check-scheme", "--scheme", "CYCLE2V3", "--nmax", "5", "--jobs", "1"])
    assert strip_times(a) == strip_times(b)
    assert a["report"]["passed"]


def test_thm32(capsys):
    code, rep = run_json(capsys, ["thm32"])
    assert code == 0 and rep["certificates"] == rep["valid"] == 128
    assert rep["notes"] == ["case i", "case ii", "case iii"]


def test_thm36(capsys, files):
    code, rep = run_json(capsys, ["thm36", "--lam", "2", "--d", "1"])
    assert code == 0 and rep["valid"] == 2048
    lab = files("l.txt", write_labeling(Labeling((0, 1, 1, 0, 1, 1, 0), 2)))
    code, rep = run_json(capsys, ["thm36", "--labels", lab])
    assert code == 0 and rep["witnesses"][0]["valid"]


@pytest.mark.parametrize("extra", [[], ["--absence"]])
def test_thm61(capsys, extra):
    code, rep = run_json(capsys, ["thm61", "--i", "1", *extra])
    assert code == 0 and rep["valid"] == rep["certificates"] > 0


def test_congest(files, capsys):
    g = files("g.txt", write_edge_list(star_graph(4)))
    lab = files("l.txt", write_labeling(Labeling((0, 1, 1, 1, 1), 2)))
    plan = files("p.txt", "0 0 1\n")
    code, rep = run_json(capsys, ["congest-bipartite", "--graph", g, "--labels", lab, "--trace"])
    assert code == 0 and rep["rounds"] == 2 and rep["max_bits"] <= 2 and len(rep["trace"]) == 16
    # flipping the centre: its leaves have nobody to outvote it
    code, rep = run_json(capsys, ["congest-bipartite", "--graph", g, "--labels", lab, "--plan", plan])
    assert code == 1 and rep["within_half"] is False and rep["neighborhood"] == "closed"


def test_congest_open_reading(files, capsys):
    g = files("g.txt", write_edge_list(path_graph(3)))
    lab = files("l.txt", write_labeling(Labeling((0, 1, 0), 2)))
    plan = files("p.txt", "0 0 1\n")
    code, rep = run_json(capsys, ["congest-bipartite", "--graph", g, "--labels", lab, "--plan", plan,
                                  "--open-neighborhood"])
    assert rep["within_half"] is True and rep["neighborhood"] == "open" and code == 1


def test_congest_stale_plan(files, capsys):
    g = files("g.txt", write_edge_list(path_graph(2)))
    lab = files("l.txt", write_labeling(Labeling((0, 1), 2)))
    plan = files("p.txt", "0 1 0\n")
    assert main(["congest-bipartite", "--graph", g, "--labels", lab, "--plan", plan]) == 2


def test_corrupt_random(files, capsys, tmp_path):
    g = files("g.txt", write_edge_list(cycle_graph(9)))
    lab = files("l.txt", write_labeling(Labeling((0,) * 9, 10)))
    out = str(tmp_path / "bad.txt")
    code, a = run_json(capsys, ["corrupt", "--graph", g, "--labels", lab, "--i", "2", "--seed", "5",
                                "--labels-out", out])
    _, b = run_json(capsys, ["corrupt", "--graph", g, "--labels", lab, "--i", "2", "--seed", "5"])
    assert code == 0 and a["plan"] == b["plan"] and a["labels"] == b["labels"]
    assert list(read_labeling(open(out).read()).labels) == a["labels"]


def test_corrupt_worst_case(files, capsys):
    g = files("g.txt", write_edge_list(TRIANGLE_TAIL))
    lab = files("l.txt", write_labeling(Labeling((0, 0, 0, 1, 2), 6)))
    base = ["corrupt", "--graph", g, "--labels", lab, "--scheme", "CYCLE_N", "--i", "1", "--worst-case"]
    code, rep = run_json(capsys, base)
    assert code == 0 and rep["found"] is False
    code, rep = run_json(capsys, base + ["--no-refix"])
    assert code == 1 and rep["found"] is True


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lcllab", "thm32", "--format", "text"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "thm32: 128/128 certificates valid\n"
