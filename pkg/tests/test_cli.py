import json

import pytest

from polydom.cli import main

P3 = "p tw 3 2\n1 2\n2 3\n"
K3 = "p tw 3 3\n1 2\n2 3\n1 3\n"
P3_TD = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {"p3.gr": P3, "k3.gr": K3, "p3.td": P3_TD, "bad.gr": "p tw 2\n"}.items():
        (tmp_path / name).write_text(text)
        paths[name] = str(tmp_path / name)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_json(files, capsys):
    code, out, _ = run(capsys, "solve", "--graph", files["p3.gr"], "--mode", "zeta", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["min_dominating_set_size"] == 1
    assert set(data) >= {"min_dominating_set_size", "width", "depth", "peak_slots", "evaluations", "wall_time"}


@pytest.mark.parametrize("mode", ["zeta", "table", "brute"])
def test_solve_modes_agree(files, capsys, mode):
    code, out, _ = run(capsys, "solve", "--graph", files["k3.gr"], "--mode", mode, "--json")
    assert code == 0 and json.loads(out)["min_dominating_set_size"] == 1


def test_solve_text_with_meter(files, capsys):
    code, out, _ = run(capsys, "solve", "--graph", files["p3.gr"], "--meter")
    assert code == 0
    assert "min dominating set size: 1" in out and "peak slots" in out


def test_solve_with_td(files, capsys):
    code, out, _ = run(capsys, "solve", "--graph", files["p3.gr"], "--td", files["p3.td"], "--json")
    assert code == 0 and json.loads(out)["width"] == 1


def test_modular_solve_and_env(files, capsys, monkeypatch):
    monkeypatch.setenv("POLYDOM_RING", "modular")
    code, out, _ = run(capsys, "solve", "--graph", files["k3.gr"], "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ring"] == "modular" and data["min_dominating_set_size"] == 1
    monkeypatch.setenv("POLYDOM_RING", "tropical")
    assert run(capsys, "solve", "--graph", files["k3.gr"])[0] == 2


@pytest.mark.parametrize("mode", ["zeta", "table", "brute"])
def test_count(files, capsys, mode):
    code, out, _ = run(capsys, "count", "--graph", files["k3.gr"], "--mode", mode, "--json")
    assert code == 0 and json.loads(out)["counts"] == [0, 3, 3, 1]


def test_count_text(files, capsys):
    code, out, _ = run(capsys, "count", "--graph", files["p3.gr"])
    assert out == "0 0\n1 1\n2 3\n3 1\n"


def test_count_modular_is_usage_error(files, capsys):
    code, _, err = run(capsys, "count", "--graph", files["k3.gr"], "--ring", "modular")
    assert code == 2 and "exact ring" in err


def test_witness(files, capsys):
    code, out, _ = run(capsys, "witness", "--graph", files["p3.gr"])
    assert code == 0 and out == "2\n"
    code, out, _ = run(capsys, "witness", "--graph", files["k3.gr"], "--json")
    assert json.loads(out)["size"] == 1


def test_decompose_round_trip(files, capsys, tmp_path):
    code, out, _ = run(capsys, "decompose", "--graph", files["k3.gr"])
    assert code == 0 and out.startswith("s td ")
    (tmp_path / "k3.td").write_text(out)
    code, out, _ = run(capsys, "validate", "--graph", files["k3.gr"], "--td", str(tmp_path / "k3.td"))
    assert code == 0 and out.startswith("valid")


def test_decompose_exact(files, capsys):
    code, out, _ = run(capsys, "decompose", "--graph", files["k3.gr"], "--exact", "--json")
    assert code == 0 and json.loads(out)["width"] == 2


def test_normalize(files, capsys):
    code, out, _ = run(capsys, "normalize", "--graph", files["p3.gr"], "--td", files["p3.td"])
    assert code == 0
    assert sum(" aux(" in line for line in out.splitlines()) == 2


def test_validate_reports_uncovered_edge(files, capsys):
    code, out, _ = run(capsys, "validate", "--graph", files["k3.gr"], "--td", files["p3.td"])
    assert code == 1
    assert "edge {0, 2} lies in no bag" in out
    code, out, _ = run(capsys, "validate", "--graph", files["k3.gr"], "--td", files["p3.td"], "--json")
    data = json.loads(out)
    assert not data["ok"] and data["violations"][0]["kind"] == "edge-uncovered"


def test_oracle(files, capsys):
    code, out, _ = run(capsys, "oracle", "--graph", files["k3.gr"], "--json")
    assert code == 0 and json.loads(out) == {"counts": [0, 3, 3, 1], "min_dominating_set_size": 1, "n": 3}


def test_errors_exit_one(files, capsys, tmp_path):
    assert run(capsys, "solve", "--graph", str(tmp_path / "missing.gr"))[0] == 1
    code, _, err = run(capsys, "solve", "--graph", files["bad.gr"])
    assert code == 1 and "malformed header" in err
    assert run(capsys, "solve", "--graph", files["k3.gr"], "--td", files["p3.td"])[0] == 1
    big = tmp_path / "big.gr"
    big.write_text("p tw 30 0\n")
    assert run(capsys, "oracle", "--graph", str(big))[0] == 1


def test_usage_errors_exit_two(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "solve")[0] == 2
    assert run(capsys, "solve", "--graph", "x", "--mode", "quantum")[0] == 2


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--family", "path", "--sizes", "10..20:10", "--modes", "zeta,table,brute")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family,n,m,k,d,mode,answer,peak_slots,wall_time_ms"
    assert len(lines) == 1 + 2 * 3


def test_bench_bad_parameters(capsys):
    assert run(capsys, "bench", "--family", "pktree", "--sizes", "3", "--k", "5")[0] == 1
    assert run(capsys, "bench", "--family", "path", "--sizes", "10", "--modes", "zeta,magic")[0] == 1
