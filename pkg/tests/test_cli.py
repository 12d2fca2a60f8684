import json
import subprocess
import sys

import pytest

from kmatching.cli import main


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return _write


K22 = {"m": 2, "n": 2, "edges": [[0, 0], [0, 1], [1, 0], [1, 1]]}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_membership(write, capsys):
    g = write("g.json", K22)
    p = write("p.json", {"rows": [["1/2", "1/2"], ["1/2", "1/2"]]})
    code, doc, _ = run(capsys, "membership", "--graph", g, "--point", p, "--k", "2")
    assert code == 0 and doc == {"member": True, "violation": None}
    code, doc, err = run(capsys, "membership", "--graph", g, "--point", p, "--k", "1")
    assert code == 1 and doc["violation"]["kind"] == "total" and doc["violation"]["bound"] == 1
    code, doc, _ = run(capsys, "membership", "--graph", g, "--point", p, "--k", "1", "--mode", "at-least")
    assert code == 0


def test_membership_dilate(write, capsys):
    g = write("g.json", K22)
    p = write("p.json", {"rows": [[2, 0], [0, 2]]})
    assert run(capsys, "membership", "--graph", g, "--point", p, "--k", "2", "--t", "2")[0] == 0
    assert run(capsys, "membership", "--graph", g, "--point", p, "--k", "2")[0] == 1


def test_decompose_dilate_and_fractional(write, capsys):
    g = write("g.json", K22)
    p = write("p.json", {"rows": [[1, 1], [1, 1]]})
    code, doc, _ = run(capsys, "decompose", "--graph", g, "--point", p, "--k", "2", "--t", "2")
    assert code == 0 and doc["form"] == "dilate" and len(doc["terms"]) == 2
    assert all(term["weight"] == 1 for term in doc["terms"])
    h = write("h.json", {"rows": [["1/2", "1/2"], ["1/2", "1/2"]]})
    code, doc, _ = run(capsys, "decompose", "--graph", g, "--point", h, "--k", "2", "--fractional")
    assert code == 0 and doc["form"] == "convex"
    assert [t["weight"] for t in doc["terms"]] == ["1/2", "1/2"]


def test_decompose_negatives(write, capsys):
    g = write("g.json", {"m": 2, "n": 2, "edges": [[0, 0], [1, 1]]})
    off = write("off.json", {"rows": [[0, 1], [0, 0]]})
    code, doc, err = run(capsys, "decompose", "--graph", g, "--point", off, "--k", "1", "--t", "1")
    assert code == 1 and doc["violation"]["kind"] == "support" and doc["violation"]["index"] == [0, 1]
    assert err
    big = write("big.json", {"rows": [[2, 0], [0, 0]]})
    code, doc, _ = run(capsys, "decompose", "--graph", g, "--point", big, "--k", "1", "--t", "1")
    assert code == 1 and doc["member"] is False


def test_decompose_needs_integer_point_for_dilates(write, capsys):
    g = write("g.json", K22)
    p = write("p.json", {"rows": [["1/2", "1/2"], ["1/2", "1/2"]]})
    assert run(capsys, "decompose", "--graph", g, "--point", p, "--k", "2", "--t", "1")[0] == 2


def test_certificate(write, capsys):
    g = write("g.json", K22)
    p = write("p.json", {"rows": [["1/2", "1/2"], ["1/2", "1/2"]]})
    code, doc, _ = run(capsys, "certificate", "--graph", g, "--point", p, "--k", "2")
    assert code == 0 and doc["case_tag"] == "EvenCycle" and doc["epsilon"] == "1/2"
    integral = write("i.json", {"rows": [[1, 0], [0, 1]]})
    code, doc, _ = run(capsys, "certificate", "--graph", g, "--point", integral, "--k", "2")
    assert code == 1 and doc == {"integral": True}
    code, doc, _ = run(capsys, "certificate", "--graph", g, "--point", p, "--k", "1")
    assert code == 1 and doc["member"] is False


def test_extract_and_birkhoff(write, capsys):
    p = write("p.json", {"rows": [[2, 0], [0, 0]]})
    code, doc, _ = run(capsys, "extract", "--point", p, "--t", "2", "--k", "1")
    assert code == 0 and doc == {"matching": [[0, 0]], "remainder": {"rows": [[1, 0], [0, 0]]}}
    q = write("q.json", {"rows": [[1, 1], [1, 1]]})
    code, doc, _ = run(capsys, "birkhoff", "--point", q, "--t", "2")
    assert code == 0 and [t["matching"] for t in doc["terms"]] == [[[0, 0], [1, 1]], [[0, 1], [1, 0]]]
    r = write("r.json", {"rows": [[2, 0], [0, 1]]})
    code, doc, _ = run(capsys, "birkhoff", "--point", r, "--t", "2")
    assert code == 1 and doc["violation"]["kind"] == "row"
    rect = write("rect.json", {"rows": [[1, 0, 0]]})
    assert run(capsys, "extract", "--point", rect, "--t", "1", "--k", "1")[0] == 2


def test_oracle_enumerate(write, capsys):
    g = write("g.json", K22)
    code, doc, _ = run(capsys, "oracle-enumerate", "--graph", g, "--k", "1")
    assert code == 0 and len(doc["matchings"]) == 4
    code, doc, _ = run(capsys, "oracle-enumerate", "--graph", g, "--k", "1", "--t", "2")
    assert code == 0 and len(doc["points"]) == 10
    big = write("big.json", {"m": 5, "n": 5, "edges": [[i, j] for i in range(5) for j in range(5)]})
    code, _, err = run(capsys, "oracle-enumerate", "--graph", big, "--k", "2")
    assert code == 2 and "too large" in err


@pytest.mark.parametrize(
    "graph_doc,point_doc",
    [
        ({"m": 2, "n": 2, "edges": [[0, 0], [0, 0]]}, {"rows": [[0, 0], [0, 0]]}),
        (K22, {"rows": [["2/4", 0], [0, 0]]}),
        (K22, {"rows": [[0.5, 0], [0, 0]]}),
        (K22, {"rows": [[0, 0, 0], [0, 0, 0]]}),
        ({"m": 1, "n": 1, "edges": [[0, 2]]}, {"rows": [[0]]}),
    ],
)
def test_malformed_input_exits_2(write, capsys, graph_doc, point_doc):
    g, p = write("g.json", graph_doc), write("p.json", point_doc)
    code, _, err = run(capsys, "membership", "--graph", g, "--point", p, "--k", "1")
    assert code == 2 and err


def test_missing_and_unreadable_files(tmp_path, write, capsys):
    g = write("g.json", K22)
    assert run(capsys, "membership", "--graph", g, "--k", "1")[0] == 2
    assert run(capsys, "membership", "--graph", str(tmp_path / "nope.json"), "--point", g, "--k", "1")[0] == 2
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run(capsys, "membership", "--graph", str(junk), "--point", g, "--k", "1")[0] == 2


def test_verify_small(capsys):
    code = main(["verify", "--max-m", "2", "--max-n", "2", "--max-k", "2", "--max-t", "2", "--trials", "5"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("failures 0")


def test_verify_rejects_large_bounds(capsys):
    assert main(["verify", "--max-m", "4", "--max-n", "4"]) == 2
    assert "too large" in capsys.readouterr().err


def test_module_entry_point(write):
    g = write("g.json", K22)
    proc = subprocess.run(
        [sys.executable, "-m", "kmatching", "oracle-enumerate", "--graph", g, "--k", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"matchings": [[[0, 0], [1, 1]], [[0, 1], [1, 0]]]}
