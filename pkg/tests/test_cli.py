import json

import pytest

from hypermatch import shg
from hypermatch.bounds import gen_cover_construction
from hypermatch.cli import main
from hypermatch.family import ColoredFamilies, complete_family, enumerate_ksubsets, make_family


@pytest.fixture
def k4(tmp_path):
    path = tmp_path / "k4.shg"
    shg.write(path, complete_family(4, 2))
    return str(path)


@pytest.fixture
def star25(tmp_path):
    edges = [e for e in enumerate_ksubsets(25, 2) if 1 in e] + [(2, 3)]
    path = tmp_path / "star25.shg"
    shg.write(path, make_family(25, 2, edges))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound_text(capsys):
    code, out, _ = run(capsys, "bound", "--n", "9", "--k", "3", "--t", "2")
    assert code == 0 and "erdos_bound=28" in out and "regime=CoverDominant" in out


def test_bound_json(capsys):
    code, out, _ = run(capsys, "bound", "--n", "6", "--k", "2", "--t", "3", "--json")
    data = json.loads(out)
    assert data["schema"] == 1 and data["erdos_bound"] == 10 and data["regime"] == "CliqueDominant"


def test_nu(capsys, k4):
    code, out, _ = run(capsys, "nu", k4)
    assert code == 0 and out.splitlines()[0] == "nu=2"
    assert len(out.splitlines()) == 3


def test_nu_json(capsys, k4):
    _, out, _ = run(capsys, "nu", k4, "--json")
    data = json.loads(out)
    assert data["size"] == 2 and len(data["edges"]) == 2 and data["nodes"] >= 1


def test_rainbow(capsys, tmp_path):
    path = tmp_path / "r.shgm"
    shg.write(path, ColoredFamilies(4, (make_family(4, 2, [(1, 2)]), make_family(4, 2, [(3, 4)]))))
    code, out, _ = run(capsys, "rainbow", str(path))
    assert code == 0 and out.splitlines() == ["found=yes size=2", "F1: 1 2", "F2: 3 4"]


def test_gen_and_shift_compress(capsys, tmp_path):
    out_file = tmp_path / "cover.shg"
    assert run(capsys, "gen", "cover", "--n", "6", "--k", "2", "--t", "3", "-o", str(out_file))[0] == 0
    assert shg.read(out_file) == gen_cover_construction(6, 2, 3)

    single = tmp_path / "one.shg"
    shg.write(single, make_family(3, 2, [(2, 3)]))
    _, out, _ = run(capsys, "shift", str(single), "--i", "2", "--j", "1")
    assert shg.parse_shg(out).edges == ((1, 3),)
    _, out, err = run(capsys, "compress", str(single))
    assert shg.parse_shg(out).edges == ((1, 2),) and "effective shifts" in err


def test_compress_json(capsys, tmp_path):
    single = tmp_path / "one.shg"
    shg.write(single, make_family(3, 2, [(2, 3)]))
    _, out, _ = run(capsys, "compress", str(single), "--json")
    data = json.loads(out)
    assert data["trace"]["steps"][0] == {"i": 3, "j": 1, "sizes": [1]}


def test_witness_thm1(capsys, star25):
    code, out, _ = run(capsys, "witness", star25, "--t", "2", "--mode", "thm1")
    lines = out.splitlines()
    assert code == 0 and lines[:3] == ["mode=thm1", "1 4", "2 3"]
    assert lines[3].startswith("case_trace=HighDegreeVertex")


def test_witness_json(capsys, star25):
    _, out, _ = run(capsys, "witness", star25, "--t", "2", "--json")
    data = json.loads(out)
    assert data["mode"] == "thm1" and data["case_trace"]
    assert [m["edge"] for m in data["matching"]] == [[1, 4], [2, 3]]


def test_witness_auto_falls_back(capsys, k4):
    code, out, _ = run(capsys, "witness", k4, "--t", "2")
    assert code == 0 and out.startswith("mode=solver (fallback:")


def test_witness_solver_none(capsys, tmp_path):
    path = tmp_path / "stars.shgm"
    assert run(capsys, "gen", "stars", "--n", "5", "--k", "2", "--t", "2", "-o", str(path))[0] == 0
    code, out, _ = run(capsys, "witness", str(path), "--mode", "solver")
    assert code == 1 and "found=no" in out


def test_precondition_is_domain_error(capsys, k4):
    code, _, err = run(capsys, "witness", k4, "--t", "2", "--mode", "thm1")
    assert code == 1 and "3k^2 t < n" in err


def test_parse_error_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.shg"
    bad.write_text("SHG 1\nn=3 k=2\n1 4\n")
    code, _, err = run(capsys, "nu", str(bad))
    assert code == 1 and "line 3" in err


def test_usage_errors_exit_2(capsys, k4):
    with pytest.raises(SystemExit) as info:
        main(["bound", "--n", "9"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["nu", "/nonexistent/file.shg"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["witness", k4])
    assert info.value.code == 2
    capsys.readouterr()


def test_verify(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--suite", "lemma1", "--cases", "20", "-o", str(report))
    assert code == 0 and "0 failures" in out
    data = json.loads(report.read_text())
    assert data["schema"] == 1 and data["suite"] == "lemma1" and data["failures"] == []
