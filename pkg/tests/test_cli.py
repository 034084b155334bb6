import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from homtile import cli
from homtile.constructions import complete_graph, complete_multipartite, cycle_graph
from homtile.graphs import parse_graph, write_graph


@pytest.fixture
def graph_file(tmp_path):
    def make(g, name="g.txt", fmt="text"):
        p = tmp_path / name
        p.write_text(write_graph(g, fmt))
        return str(p)
    return make


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_homs(capsys, graph_file):
    code, out, _ = run(capsys, "homs", "--pattern", "K2", "--graph", graph_file(complete_graph(3)))
    assert code == 0 and out.strip() == "6"
    code, out, _ = run(capsys, "homs", "--pattern", "P3", "--graph", graph_file(complete_graph(3)),
                       "--format", "json", "--columns")
    payload = json.loads(out)
    assert payload["count"] == 12 and sum(c["class_size"] for c in payload["columns"]) == 12


def test_pattern_from_file(capsys, graph_file):
    pat = graph_file(complete_graph(3), "h.json", "json")
    code, out, _ = run(capsys, "homs", "--pattern", pat, "--graph", graph_file(complete_graph(4)))
    assert out.strip() == "24"


def test_tile_cover_duality_on_c5(capsys, graph_file):
    g = graph_file(cycle_graph(5))
    assert run(capsys, "tile", "--pattern", "K2", "--graph", g)[1].strip() == "5/2"
    assert run(capsys, "tile", "--pattern", "K2", "--graph", g, "--integral")[1].strip() == "2"
    assert run(capsys, "cover", "--pattern", "K2", "--graph", g)[1].strip() == "5/2"
    code, out, _ = run(capsys, "duality", "--pattern", "K2", "--graph", g)
    assert code == 0 and out.strip() == "5/2 = 5/2"


def test_json_certificates_are_exact(capsys, graph_file):
    code, out, _ = run(capsys, "cover", "--pattern", "K2", "--graph", graph_file(cycle_graph(5)),
                       "--format", "json")
    payload = json.loads(out)
    assert payload["certificate_ok"] and payload["fractional_cover_number"] == "5/2"
    assert set(payload["certificate"]["cover"].values()) == {"1/2"}


def test_extremal_audit(capsys):
    code, out, _ = run(capsys, "extremal", "--r", "3", "--H", "K3", "--x", "1/6", "--n", "12", "--audit")
    assert code == 0
    assert out.splitlines() == ["parts 2 2 5 3", "tiling 2 = xn = 2", "audit ok"]


def test_extremal_writes_parts(capsys, tmp_path):
    out_file = tmp_path / "ext.json"
    code, _, _ = run(capsys, "extremal", "--H", "K2", "--x", "1/5", "--n", "10", "--out", str(out_file))
    g = parse_graph(out_file.read_text())
    assert code == 0 and g.parts["S"] == (4, 5, 6, 7, 8, 9)


def test_extremal_bad_parameters_suggest(capsys):
    code, _, err = run(capsys, "extremal", "--r", "3", "--H", "K3", "--x", "1/7", "--n", "12")
    assert code == 2 and "try x=" in err


@pytest.mark.parametrize("x", ["0.1", "1e-1", "abc"])
def test_decimal_input_rejected(capsys, x):
    code, _, _ = run(capsys, "extremal", "--H", "K3", "--x", x, "--n", "12")
    assert code == 2


def test_k333_audit(capsys):
    code, out, _ = run(capsys, "k333", "--x", "1/10", "--n", "20", "--audit")
    assert code == 0
    assert "high-degree vertices 19" in out and "integer tiling 1 vs xn = 2" in out


def test_blowup(capsys, graph_file):
    code, out, _ = run(capsys, "blowup", "--graph", graph_file(complete_graph(2)), "--s", "3")
    assert code == 0 and parse_graph(out) == complete_multipartite([3, 3])


def test_gen_random_is_byte_identical(capsys):
    a = run(capsys, "gen-random", "--n", "9", "--p", "1/2", "--seed", "7")[1]
    b = run(capsys, "gen-random", "--n", "9", "--p", "1/2", "--seed", "7")[1]
    c = run(capsys, "gen-random", "--n", "9", "--p", "1/2", "--seed", "8")[1]
    assert a == b and a != c


def _rows(out):
    lines = out.splitlines()
    assert lines[0] == f"# {cli.CSV_VERSION}"
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def test_verify_csv(capsys, graph_file, tmp_path):
    code, _, _ = run(capsys, "extremal", "--r", "3", "--H", "K3", "--x", "1/6", "--n", "12",
                     "--out", str(tmp_path / "ext.json"))
    empty = graph_file(parse_graph("12\n"), "empty.txt")
    code, out, _ = run(capsys, "verify", "--pattern", "K3", "--x", "1/6",
                       "--graph", str(tmp_path / "ext.json"), "--graph", empty)
    assert code == 0
    rows = {r["instance"]: r for r in _rows(out)}
    assert rows["ext.json"]["slack"] == "0" and rows["ext.json"]["bound"] == "ok"
    assert rows["empty.txt"]["hypothesis"] == "no" and rows["empty.txt"]["bound"] == "skipped"
    assert all(r["duality"] == "ok" for r in rows.values())


def test_verify_random_is_deterministic(capsys):
    args = ["verify", "--pattern", "K2", "--x", "1/4", "--random", "6", "--n", "7", "--seed", "3"]
    a = run(capsys, *args)
    b = run(capsys, *args)
    assert a == b and a[0] == 0
    rows = _rows(a[1])
    assert [r["instance"] for r in rows] == sorted(r["instance"] for r in rows)
    assert len(rows) == 6


def test_verify_corpus(capsys, graph_file, tmp_path):
    graph_file(cycle_graph(5), "a.txt")
    graph_file(complete_graph(5), "b.json", "json")
    code, out, _ = run(capsys, "verify", "--pattern", "K2", "--x", "1/4", "--corpus", str(tmp_path),
                       "--format", "json")
    assert code == 0 and [r["instance"] for r in json.loads(out)] == ["a.txt", "b.json"]


def test_verify_reports_check_failure(capsys, graph_file, monkeypatch):
    from homtile.tiling import DualityReport, verify_duality

    def broken(g, h, cols):
        rep = verify_duality(g, h, cols)
        return DualityReport(rep.tiling_value + 1, rep.cover_value, rep.tiling, rep.cover)

    monkeypatch.setattr(cli, "verify_duality", broken)
    code, out, _ = run(capsys, "verify", "--pattern", "K2", "--x", "1/4",
                       "--graph", graph_file(cycle_graph(5)))
    assert code == 1 and _rows(out)[0]["duality"] == "FAIL"


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n0 7\n")
    assert run(capsys, "homs", "--pattern", "K2", "--graph", str(bad))[0] == 2
    assert run(capsys, "homs", "--pattern", "K2", "--graph", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "homs", "--pattern", "Q9", "--graph", str(bad))[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "verify", "--pattern", "K2")[0] == 2


def test_resource_caps(capsys, graph_file):
    k9 = graph_file(complete_graph(9))
    assert run(capsys, "tile", "--pattern", "K2", "--graph", k9, "--max-columns", "3")[0] == 3
    code = run(capsys, "tile", "--pattern", "K3", "--graph", k9, "--integral", "--max-nodes", "1")[0]
    assert code == 3


def test_fraction_arg():
    assert cli.fraction_arg("3/9") == Fraction(1, 3)
    assert cli.fraction_arg("4") == 4
    with pytest.raises(Exception):
        cli.fraction_arg("0.5")


def test_module_entry_point(graph_file):
    proc = subprocess.run([sys.executable, "-m", "homtile.cli", "homs", "--pattern", "K2",
                           "--graph", graph_file(cycle_graph(5))], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "10"
