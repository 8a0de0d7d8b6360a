import io
import json

import pytest

from ybsets.cli import main
from ybsets.constructions import dihedral_quandle, shift_solution, three_element
from ybsets.io import parse_solution, read_solution, write_solution


def run(*argv):
    buf = io.StringIO()
    code = main([str(a) for a in argv], out=buf)
    return code, buf.getvalue()


def fields(text):
    return dict(line.split(": ", 1) for line in text.splitlines())


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, qs in [("d5", dihedral_quandle(5)), ("t", three_element()), ("s4", shift_solution(4))]:
        paths[name] = tmp_path / f"{name}.json"
        write_solution(qs, paths[name])
    return paths


def test_construct_then_orbits(tmp_path):
    out = tmp_path / "d5.json"
    assert run("construct", "dihedral", "--n", 5, "-o", out)[0] == 0
    assert read_solution(out) == dihedral_quandle(5)
    code, text = run("orbits", out, "--m", 2)
    assert code == 0
    assert "orbit_count: 9" in text.splitlines()


def test_construct_to_stdout():
    code, text = run("construct", "three-element")
    assert code == 0
    assert parse_solution(text) == three_element()
    assert run("construct", "three-element", "--n", 4)[0] == 2
    assert run("construct", "dihedral")[0] == 2


def test_cycle_extension_files(tmp_path):
    code, text = run("construct", "cycle-ext", "--n", 6, "-o", tmp_path / "ce.json")
    assert code == 0
    assert fields(text)["solutions"] == "1"
    assert (tmp_path / "ce-0.json").exists()


def test_check_three_element(files):
    code, text = run("check", files["t"])
    assert code == 0
    f = fields(text)
    assert f["square_free"] == "true" and f["braided"] == "true"
    assert f["two_cancellative"] == "false"
    assert list(f) == ["n", "non_degenerate", "involutive", "square_free", "sd", "braided",
                       "two_cancellative", "maximality", "indecomposable"]


def test_check_require(files):
    assert run("check", files["d5"], "--require", "braided")[0] == 0
    assert run("check", files["d5"], "--require", "involutive")[0] == 1
    assert run("check", files["d5"], "--require", "nonsense")[0] == 1


def test_orbit_listing(files):
    code, text = run("orbits", files["t"], "--m", 2, "--list")
    assert code == 0
    orbits = [line for line in text.splitlines() if line.startswith("orbit: ")]
    assert orbits[2] == "orbit: (0,2) (1,2) (2,0) (2,1)"
    code, text = run("orbits", files["t"], "--m", 2, "--list", "--json")
    doc = json.loads(text)
    assert doc["orbits"][1] == [[0, 1], [1, 0]]


def test_budget(files, monkeypatch):
    assert run("orbits", files["d5"], "--m", 4, "--budget", 100)[0] == 3
    monkeypatch.setenv("YBSETS_BUDGET", "100")
    assert run("orbits", files["d5"], "--m", 4)[0] == 3
    assert run("orbits", files["d5"], "--m", 4, "--budget", 625)[0] == 0
    monkeypatch.setenv("YBSETS_BUDGET", "lots")
    assert run("orbits", files["d5"], "--m", 2)[0] == 2


def test_growth(files):
    code, text = run("growth", files["d5"], "--max", 6)
    f = fields(text)
    assert f["dims"] == "[1,5,9,10,10,10,10]"
    assert f["gk_estimate"] == "1"
    code, text = run("growth", files["s4"], "--max", 2)
    assert fields(text)["gk_estimate"] == "inconclusive"


def test_derived_is_idempotent(tmp_path):
    run("construct", "skew-shift", "--n", 5, "-o", tmp_path / "k.json")
    run("derived", tmp_path / "k.json", "-o", tmp_path / "d1.json")
    run("derived", tmp_path / "d1.json", "-o", tmp_path / "d2.json")
    assert (tmp_path / "d1.json").read_text() == (tmp_path / "d2.json").read_text()
    assert read_solution(tmp_path / "d1.json") == shift_solution(5)
    assert '"sd_sigma"' in (tmp_path / "d1.json").read_text()


def test_retract(files, tmp_path):
    code, text = run("retract", files["t"], "--tower")
    assert code == 0
    assert fields(text) == {"n": "3", "tower": "[3,2,1]", "multipermutation_level": "2"}
    code, text = run("retract", files["d5"], "--tower")
    assert fields(text)["multipermutation_level"] == "not-multipermutation"
    code, text = run("retract", files["t"], "-o", tmp_path / "r.json")
    assert fields(text)["class_map"] == "[0,0,1]"
    assert read_solution(tmp_path / "r.json").n == 2


def test_isomorphic(files, tmp_path):
    code, text = run("isomorphic", files["d5"], files["d5"])
    assert fields(text) == {"isomorphic": "true", "witness": "[0,1,2,3,4]"}
    run("construct", "shift", "--n", 5, "-o", tmp_path / "s5.json")
    code, text = run("isomorphic", files["d5"], tmp_path / "s5.json")
    assert code == 0
    assert fields(text)["witness"] == "not-isomorphic"


def test_classify(tmp_path):
    cat = tmp_path / "q3.jsonl"
    code, text = run("classify", "--n", 3, "--family", "quandle", "--min-orbits", "--catalog", cat)
    assert code == 0
    f = text.splitlines()
    assert f[:4] == ["n: 3", "family: quandle", "classes: 3", "selected: 2"]
    records = [json.loads(line) for line in cat.read_text().splitlines()]
    assert [r["orbit_count"] for r in records] == [5, 5]
    code, text = run("classify", "--n", 4, "--family", "rack", "--min-orbits", "--json")
    doc = json.loads(text)
    assert doc["classes"] == 19 and doc["selected"] == 1


def test_classify_limits():
    assert run("classify", "--n", 7, "--family", "quandle")[0] == 3
    assert run("classify", "--n", 5, "--family", "rack")[0] == 3
    assert run("classify", "--n", 3, "--family", "loop")[0] == 2


@pytest.mark.parametrize("theorem, n", [
    ("min-dim", 4), ("sf-min-dim", 5), ("minimal-classification", 3), ("prime-dihedral", 7),
    ("prime-dihedral", 9),
])
def test_verify_passes(theorem, n):
    code, text = run("verify", "--theorem", theorem, "--n", n)
    assert code == 0
    assert text.splitlines()[-1] == "result: PASS"


def test_verify_evidence():
    code, text = run("verify", "--theorem", "prime-dihedral", "--n", 9)
    assert fields(text)["evidence"] == "orbit_count 2·9−1 violated as predicted: count > 17"


def test_invalid_inputs(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n":2,"r":[[0,0],[0,0],[1,1],[1,0]]}')
    assert run("check", bad)[0] == 2
    assert "r(0,1)" in capsys.readouterr().err
    assert run("check", tmp_path / "missing.json")[0] == 2
    assert run("orbits", bad, "--m", 0)[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("derived", tmp_path / "missing.json")[0] == 2


def test_non_braided_retraction_is_invalid(tmp_path):
    run("construct", "cyclic-perm", "--n", 4, "-o", tmp_path / "c.json")
    assert run("retract", tmp_path / "c.json")[0] == 2


def test_reports_are_deterministic(files):
    for argv in (("check", files["t"]), ("orbits", files["d5"], "--m", 3, "--list"),
                 ("classify", "--n", 4, "--family", "quandle")):
        assert run(*argv) == run(*argv)


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "ybsets", "construct", "trivial", "--n", "2"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout) == {"n": 2, "sd_sigma": [[0, 1], [0, 1]]}
