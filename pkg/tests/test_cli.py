import json

import pytest

from hyperzeros.cli import main


@pytest.fixture
def edge_file(tmp_path):
    p = tmp_path / "edge.json"
    p.write_text('{"n":2,"edges":[[0,1]]}')
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exact_ly(capsys, edge_file):
    code, out, _ = run(capsys, "exact", "--ly", "--input", edge_file, "--lambda", "1")
    assert code == 0 and out.strip() == "3+0i"


def test_exact_sizes_and_fs(capsys, edge_file):
    code, out, _ = run(capsys, "exact", "--sizes", "--input", edge_file)
    assert code == 0 and "2" in out
    code, out, _ = run(capsys, "exact", "--fs", "--input", edge_file, "--beta", "0.5")
    assert code == 0 and out.strip().startswith("3.5")


def test_certify_fails_on_alpha(capsys, tmp_path):
    p = tmp_path / "h.json"
    p.write_text(json.dumps({"n": 6, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [4, 5]]}))
    code, out, _ = run(capsys, "certify", "--input", str(p), "--lambda", "1")
    assert code == 6 and "alpha condition" in out


def test_certify_passes_at_zero(capsys, edge_file):
    code, out, _ = run(capsys, "certify", "--input", edge_file, "--lambda", "0")
    assert code == 0 and json.loads(out)["passed"]


def test_bench_deterministic(capsys):
    args = ["bench", "--seed", "7", "--count", "3", "--n-min", "4", "--n-max", "6", "--no-timing"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second and first.count("\n") == 4


def test_bench_to_file(capsys, tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--seed", "1", "--count", "2", "--n-max", "6", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0].startswith("instance,n,m")


def test_malformed_input(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"n":2,"edges":[[0,0]]}')
    code, _, err = run(capsys, "exact", "--ly", "--input", str(p))
    assert code == 3 and "input error" in err
    assert main(["exact", "--ly", "--input", str(tmp_path / "missing.json")]) == 3


def test_guard_exit(capsys, tmp_path):
    p = tmp_path / "big.json"
    p.write_text(json.dumps({"n": 30, "edges": [[0, 1]]}))
    code, _, err = run(capsys, "exact", "--ly", "--input", str(p), "--lambda", "1")
    assert code == 4 and "guard" in err


def test_generation_failure(capsys):
    code, _, err = run(capsys, "gen", "--n", "3", "--m", "10", "--k", "3", "--delta-cap", "1")
    assert code == 7 and "search failed" in err


def test_usage_error(capsys):
    code, _, _ = run(capsys, "exact", "--ly")
    assert code == 2
    code, _, _ = run(capsys, "no-such-command")
    assert code == 2


def test_other_commands(capsys, edge_file):
    assert run(capsys, "reduce", "--input", edge_file, "--beta", "0.5")[0] == 0
    code, out, _ = run(capsys, "approx-count", "--input", edge_file, "--lambda", "0.01")
    assert code == 0 and "Z_hat" in out
    assert run(capsys, "interpolate", "--input", edge_file, "--lambda", "0.2")[0] == 0
    code, out, _ = run(capsys, "dynamics", "--input", edge_file, "--lambda", "0.3+0.1i", "--T", "8")
    assert code == 0 and out.splitlines()[0] == "sweep,gap"
    code, out, err = run(capsys, "clt", "--input", edge_file, "--lambda", "1")
    assert code == 0 and out.startswith("t,") and "kolmogorov" in err.lower()
    # expected size 2/3 < t = 1 at the cap, so t is out of range
    assert run(capsys, "count-size-t", "--input", edge_file, "--t", "1", "--lambda-cap", "1")[0] == 2


def test_count_size_t(capsys, tmp_path):
    p = tmp_path / "free.json"
    p.write_text('{"n":4,"edges":[]}')
    code, out, _ = run(capsys, "count-size-t", "--input", str(p), "--t", "2", "--lambda-cap", "1")
    assert code == 0 and json.loads(out)["exact"] == 6
