import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from monoext.cli import main
from monoext.linrel import adjoint
from monoext.numerics import Subspace, subspace_equal
from monoext.relfile import FIXTURES, dump_relation, fixture_path, load_fixture, load_json, parse_relation

GOLDEN = Path(__file__).parent / "golden"
RELATIONS = ("fix_id", "e61", "e62", "e63")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


def _close(got, want, path=""):
    # witness rows are eigenvectors, so compare them up to sign
    if isinstance(want, dict):
        assert set(got) == set(want), path
        for k in want:
            if path.endswith("witness") and k == "display":
                continue
            _close(got[k], want[k], f"{path}/{k}")
    elif isinstance(want, list) and path.endswith("witness/values"):
        g, w = np.array(got), np.array(want)
        for gr, wr in zip(g, w):
            assert np.allclose(gr, wr, atol=1e-9) or np.allclose(gr, -wr, atol=1e-9), path
    elif isinstance(want, list):
        assert len(got) == len(want), path
        for i, (g, w) in enumerate(zip(got, want)):
            _close(g, w, f"{path}[{i}]")
    elif isinstance(want, float) and not isinstance(want, bool):
        assert got == pytest.approx(want, abs=1e-9), path
    else:
        assert got == want, path


GOLDEN_CASES = [
    ("e62_check", ["check", "e62"]),
    ("e63_check", ["check", "e63"]),
    *[(f"{f}_extend_{m}", ["extend", f, "--method", m]) for f in ("e62", "e63") for m in ("vg", "e1", "e2", "hat")],
    ("e62_extend_n_back2", ["extend", "e62", "--method", "n-matrix", "--witness", "n_back2"]),
    ("e63_extend_m_second", ["extend", "e63", "--method", "m-matrix", "--witness", "n_second"]),
]


@pytest.mark.parametrize("name, argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden_reports(capsys, name, argv):
    code, got = report(capsys, *argv)
    assert code == 0
    want = json.loads((GOLDEN / f"{name}.json").read_text())
    _close(got, want)


def test_check_examples(capsys):
    code, r = report(capsys, "check", "e62")
    assert code == 0
    assert r["verdict"]["monotone"] and not r["verdict"]["maximal"] and r["verdict"]["k"] == 1
    assert r["tolerance"] == {"rel": 1e-10, "abs": 1e-12}
    code, r = report(capsys, "check", "fix_id")
    assert code == 0 and r["verdict"]["maximal"]


def test_check_not_monotone(capsys, tmp_path):
    f = write(tmp_path, "neg.json", {"form": "kernel", "n": 1, "A": [[1]], "B": [[1]]})
    code, r = report(capsys, "check", f)
    assert code == 1 and not r["verdict"]["monotone"]


def test_check_duplicate_row_and_reduce(capsys, tmp_path):
    doc = load_json(fixture_path("e62"))
    doc["A"].append(doc["A"][0])
    doc["B"].append(doc["B"][0])
    f = write(tmp_path, "dup.json", doc)
    code, out, err = run(capsys, "check", f)
    assert code == 2 and "RankDeficient" in err and out == ""
    code, r = report(capsys, "check", f, "--reduce")
    assert code == 0 and r["verdict"]["p"] == 3


@pytest.mark.parametrize("doc", [
    {"form": "kernel", "n": 2, "A": [[1, 0], [0]], "B": [[1, 0], [0, 1]]},
    {"form": "kernel", "n": 2, "A": [[1, "x"]], "B": [[1, 0]]},
    {"form": "kernel", "n": 2, "A": [[1, 0]], "B": [[1, 0], [0, 1]]},
    {"form": "kernel", "n": 2, "A": [[1, 0, 0]], "B": [[1, 0, 0]]},
    {"form": "polar", "n": 2},
    {"form": "range", "n": 2, "C": [[1]], "D": [[1]]},
    {"form": "kernel", "n": 0, "A": [], "B": []},
])
def test_input_errors(capsys, tmp_path, doc):
    code, out, err = run(capsys, "check", write(tmp_path, "bad.json", doc))
    assert code == 2 and err and out == ""


def test_missing_and_malformed_files(capsys, tmp_path):
    assert run(capsys, "check", tmp_path / "nope.json")[0] == 2
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    assert run(capsys, "check", p)[0] == 2


def test_extend_examples(capsys):
    code, r = report(capsys, "extend", "e62", "--method", "vg")
    m = np.array(r["extension"]["result"]["matrix"]["values"])
    assert np.allclose(m, [[1, 0], [0, np.sqrt(2) / 2]], atol=1e-9)
    assert r["extension"]["result"]["matrix"]["display"] == [["1", "0"], ["0", "0.7071067812"]]
    code, r = report(capsys, "extend", "e63", "--method", "e2")
    res = r["extension"]["result"]
    assert res["matrix"] is not None
    gens = np.vstack([np.array(res["range"]["C"]), np.array(res["range"]["D"])])
    assert subspace_equal(Subspace(np.linalg.qr(gens)[0]), Subspace.span([-1, 1, -5, 1], [1, 5, 0, 0]))
    code, out, err = run(capsys, "extend", "e62", "--method", "n-matrix", "--witness", "n_identity")
    assert code == 3 and "rank" in err


def test_extend_errors(capsys, tmp_path):
    assert run(capsys, "extend", "e62", "--method", "n-matrix")[0] == 2
    f = write(tmp_path, "neg.json", {"form": "kernel", "n": 1, "A": [[1]], "B": [[1]]})
    assert run(capsys, "extend", f)[0] == 1
    w = write(tmp_path, "w.json", {"N": [[1, 0], [0, 1]]})
    assert run(capsys, "extend", "e62", "--method", "n-matrix", "--witness", w)[0] == 3
    assert run(capsys, "extend", "e62", "--method", "m-matrix", "--witness", "n_identity")[0] == 2
    bad = write(tmp_path, "b.json", {"N": [[0, -1, 1], [0, 2, -1], [0, 1, 1]],
                                      "basis": {"eigenvalues": [1, 2, 3], "vectors": np.eye(3).tolist()}})
    assert run(capsys, "extend", "e62", "--method", "n-matrix", "--witness", bad)[0] == 3


def test_every_exit_code_is_known(capsys, tmp_path):
    neg = write(tmp_path, "neg.json", {"form": "kernel", "n": 1, "A": [[1]], "B": [[1]]})
    cases = [["check", "e63"], ["check", neg], ["extend", neg], ["minty", "e62", "--y", "0,1"],
             ["adjoint", "e62"], ["convert", "e63", "--to", "range"], ["audit", "e62", "--samples", "50"],
             ["audit", neg, "--samples", "50"], ["fixtures"], ["fixtures", "nope"]]
    for argv in cases:
        assert run(capsys, *argv)[0] in (0, 1, 2, 3)


def test_minty_examples(capsys):
    code, r = report(capsys, "minty", "fix_id", "--y", "2,2")
    assert code == 0
    assert r["x"]["values"] == [1.0, 1.0] and r["x_star"]["values"] == [1.0, 1.0]
    code, out, err = run(capsys, "minty", "e62", "--y", "0,1")
    assert code == 1 and "y outside ran(Id+G)" in err
    code, r = report(capsys, "minty", "e62", "--y", "3,1", "--project")
    assert code == 0
    assert r["y"]["values"] == pytest.approx([3, 0])
    assert r["residual_norm"] == pytest.approx(1.0)
    assert run(capsys, "minty", "e62", "--y", "1,2,3")[0] == 2
    assert run(capsys, "minty", "e62", "--y", "a,b")[0] == 2


def test_adjoint_round_trip(capsys, tmp_path):
    code, doc = report(capsys, "adjoint", "e63")
    assert code == 0 and doc["form"] == "kernel"
    f = write(tmp_path, "adj.json", doc)
    code, doc2 = report(capsys, "adjoint", f)
    assert subspace_equal(parse_relation(doc2).graph, load_fixture("e63").graph)
    assert subspace_equal(parse_relation(doc).graph, adjoint(load_fixture("e63")).graph)


@pytest.mark.parametrize("name", RELATIONS)
@pytest.mark.parametrize("form", ["kernel", "range"])
def test_fixture_round_trip(capsys, tmp_path, name, form):
    code, doc = report(capsys, "convert", name, "--to", form)
    assert code == 0 and doc["form"] == form
    G = load_fixture(name)
    assert subspace_equal(parse_relation(doc).graph, G.graph)
    again = dump_relation(parse_relation(doc), form)
    for key in ("A", "B") if form == "kernel" else ("C", "D"):
        assert np.allclose(again[key], doc[key], atol=1e-12)


@pytest.mark.parametrize("name", RELATIONS)
def test_fixtures_check_exit_codes(capsys, name):
    assert run(capsys, "check", name)[0] == 0


def test_fixture_listing(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0 and out.split() == list(FIXTURES)
    code, out, _ = run(capsys, "fixtures", "e62")
    assert json.loads(out)["form"] == "kernel"


def test_audit(capsys):
    code, r = report(capsys, "audit", "e63", "--samples", "200", "--seed", "1")
    assert code == 0 and r["consistent"]
    assert set(r["extensions"]) == {"vg", "e1", "e2"}


def test_tolerance_flags(capsys):
    code, r = report(capsys, "check", "e62", "--tol-rel", "1e-6", "--tol-abs", "1e-9")
    assert r["tolerance"] == {"rel": 1e-6, "abs": 1e-9}
    assert run(capsys, "check", "e62", "--tol-rel", "-1")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "monoext", "check", "fix_id"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"]["maximal"]
