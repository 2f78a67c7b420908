import json
import subprocess
import sys

import pytest

from cliquefam import __version__, graph6
from cliquefam import graph as gc
from cliquefam.cli import run


def record(capsys, argv, code=0):
    assert run(argv) == code
    out = json.loads(capsys.readouterr().out)
    assert set(out) == {"tool_version", "subcommand", "params", "result"}
    assert out["tool_version"] == __version__ and out["subcommand"] == argv[0]
    return out["result"]


def test_construct_g6_round_trips(capsys):
    assert run(["construct", "--kind", "ap", "--n", "8", "--r", "4", "--L", "0,2", "--format", "g6"]) == 0
    text = capsys.readouterr().out.strip()
    assert graph6.decode(text) == gc.extremal_ap(8, 4, (0, 2))


@pytest.mark.parametrize("argv,expect", [
    (["--kind", "hm", "--n", "9", "--r", "3", "--t", "1"], gc.hm_extremal(9, 3, 1)),
    (["--kind", "ekr", "--n", "9", "--r", "4", "--t", "2"], gc.ekr_extremal(9, 4, 2)),
    (["--kind", "turan", "--n", "7", "--t", "3"], gc.turan(7, 3)),
    (["--kind", "blown", "--m", "4", "--s", "2", "--d", "2"], gc.blown_turan(4, 2, 2)),
    (["--kind", "complete", "--n", "5"], gc.complete(5)),
    (["--kind", "l1", "--n", "10", "--r", "4", "--L", "1"], gc.single_intersection_construction(10, 4, 1)),
])
def test_construct_json(capsys, argv, expect):
    res = record(capsys, ["construct", *argv])
    assert graph6.decode(res["graph6"]) == expect
    assert [tuple(e) for e in res["edges"]] == expect.edges()


def test_construct_frankl(capsys):
    res = record(capsys, ["construct", "--kind", "frankl", "--n", "6", "--r", "3", "--t", "1"])
    assert res["m"] == 10
    assert run(["construct", "--kind", "frankl", "--n", "6", "--r", "3", "--t", "1", "--format", "g6"]) == 2


def test_bounds_def_value(capsys):
    res = record(capsys, ["bounds", "--n", "10", "--r", "3", "--L", "1,2"])
    rows = {row["name"]: row for row in res["bounds"]}
    assert rows["def_bound"]["value"] == "36"


def test_verify_violating_graph(capsys, tmp_path):
    path = tmp_path / "g.g6"
    graph6.write_file(path, [gc.complete(5)])
    res = record(capsys, ["verify", "--property", "L-intersecting", "--r", "4", "--L", "0,2", "--in", str(path)])
    assert res["holds"] is False
    assert len(res["witness"]) == 2 and res["spectrum"] == [3]


def test_verify_setfamily_input(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text(gc.frankl_family(9, 3, 1, "ii").to_text())
    res = record(capsys, ["verify", "--property", "nontrivial-t-intersecting", "--t", "1", "--in", str(path)])
    assert res["holds"] is True and res["common_intersection"] == []
    res = record(capsys, ["verify", "--property", "cover-free", "--t", "2", "--in", str(path)])
    assert res["holds"] is False and "witness" in res


def test_count_and_analyze(capsys):
    g6 = graph6.encode(gc.hm_extremal(9, 3, 1)).decode()
    assert record(capsys, ["count", "--r", "3", "--g6", g6])["count"] == 19
    res = record(capsys, ["analyze", "--r", "3", "--g6", g6, "--cover-t", "1", "--cover-threshold", "3",
                          "--hm-core", "0,1,2", "--sunflower-core", "0,1"])
    assert res["cover_families"]["T_heavy"] == [[0, 1], [0, 2], [1, 2]]
    assert res["hm_decomposition"]["equality"] is True
    assert len(res["sunflower"]["petals"]) == 7
    g6 = graph6.encode(gc.extremal_ap(8, 4, (0, 2))).decode()
    res = record(capsys, ["analyze", "--r", "4", "--g6", g6, "--atoms-d", "2", "--prune-threshold", "2"])
    q = res["atoms"]["quotient"]
    assert (q["a_cliques_are_unions_of_cells"], q["b_counts_equal"], q["c_quotient_01_intersecting"]) == (True,) * 3
    assert res["prune"]["deleted"] == []


def test_search_records(capsys, tmp_path):
    out = tmp_path / "w.g6"
    res = record(capsys, ["search", "--mode", "psi", "--n", "8", "--r", "4", "--L", "0,2", "--emit-witness", str(out)])
    assert res["exhaustive"] and res["value"] >= 4
    assert res["gap"] == res["value"] - 4 and res["def_bound"]["value"] == "6"  # (8/4)(6/2)
    assert graph6.read_file(out)[0] == graph6.decode(res["witness"]["graph6"])
    res = record(capsys, ["search", "--mode", "phi", "--n", "7", "--r", "3", "--L", "1,2"])
    assert res["value"] == 15
    res = record(capsys, ["search", "--mode", "coverfree", "--n", "6", "--r", "3", "--t", "1"])
    assert res["value"] == 20


def test_budget_exhaustion_exit_code(capsys):
    res = record(capsys, ["search", "--mode", "psi", "--n", "8", "--r", "4", "--L", "1,2,3", "--budget", "10"], code=3)
    assert res["exhaustive"] is False


@pytest.mark.parametrize("argv", [
    ["bounds", "--n", "10", "--r", "3", "--L", "2,1"],
    ["bounds", "--n", "10", "--r", "3", "--L", "1,x"],
    ["bounds", "--n", "10", "--r", "3", "--L", "3"],
    ["bounds", "--n", "10", "--r", "3"],
    ["count", "--r", "3", "--in", "/nonexistent/file.g6"],
    ["search", "--mode", "psi", "--n", "8", "--r", "4", "--L", "0,2", "--threads", "0"],
    ["search", "--mode", "psi", "--n", "8", "--r", "4", "--L", "0,2", "--budget", "-1"],
    ["construct", "--kind", "ap", "--n", "8", "--bogus"],
    ["nosuchcommand"],
])
def test_validation_errors(capsys, argv):
    assert run(argv) == 2
    assert capsys.readouterr().err


def test_repro_only_bounds(capsys):
    assert run(["repro", "--only", "bounds"]) == 0
    lines = [ln for ln in capsys.readouterr().out.splitlines() if ln.startswith("[")]
    assert len(lines) == 1 and lines[0].startswith("[PASS] #9")


def test_threads_env_default(monkeypatch):
    from cliquefam.cli import build_parser
    monkeypatch.setenv("CLIQUEFAM_THREADS", "3")
    args = build_parser().parse_args(["bounds", "--n", "5", "--r", "3", "--L", "1"])
    assert args.threads == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cliquefam", "bounds", "--n", "10", "--r", "3", "--L", "1,2"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["subcommand"] == "bounds"
