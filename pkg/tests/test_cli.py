import json
import subprocess
import sys

import pytest

from factlab.cli import main

EXAMPLE_N = "193933249"


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_factor_triangular(capsys):
    rc, out, _ = run(capsys, "factor", "--method", "triangular", "--n", EXAMPLE_N)
    obj = json.loads(out)
    assert rc == 0
    assert (obj["p"], obj["q"], obj["steps"]) == ("9521", "20369", 9)
    assert obj["params"]["n"] == EXAMPLE_N


def test_factor_text_format(capsys):
    rc, out, _ = run(capsys, "factor", "--method", "fermat", "--n", EXAMPLE_N, "--format", "text")
    assert rc == 0 and out.strip() == f"{EXAMPLE_N} = 9521 * 20369"


def test_factor_failure_exit_code(capsys):
    rc, out, _ = run(capsys, "factor", "--method", "fermat", "--n", "13")
    assert rc == 1 and json.loads(out)["status"] == "failure"


def test_malformed_input_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["factor", "--method", "fermat", "--n", "abc"])
    assert exc.value.code == 2


def test_lowbits(capsys):
    from factlab.arith import gen_balanced_semiprime

    sp = gen_balanced_semiprime(64, 2, seed=2)
    rc, out, _ = run(capsys, "factor", "--method", "lowbits", "--n", str(sp.n),
                     "--plow", str(sp.p % 2 ** 26), "--t", "26")
    obj = json.loads(out)
    assert rc == 0 and {int(obj["p"]), int(obj["q"])} == {sp.p, sp.q}


def test_gen_and_seed_env(capsys, monkeypatch):
    rc, a, _ = run(capsys, "gen", "--bits", "32", "--seed", "3")
    monkeypatch.setenv("FACTLAB_SEED", "3")
    rc2, b, _ = run(capsys, "gen", "--bits", "32", "--seed", "99")
    assert rc == rc2 == 0
    assert json.loads(a)["n"] == json.loads(b)["n"]
    obj = json.loads(a)
    assert int(obj["p"]) * int(obj["q"]) == int(obj["n"])


def test_census_csv(capsys):
    rc, out, _ = run(capsys, "census", "--x", "100000", "--ratio", "2", "--format", "csv")
    lines = out.strip().splitlines()
    assert rc == 0 and lines[0] == "x,c,count,model,ratio"
    assert lines[1].split(",")[2] == "1128"


def test_lll_roundtrip(tmp_path, capsys):
    src = tmp_path / "b.txt"
    src.write_text("3 3\n1 1 1\n-1 0 2\n3 5 6\n")
    rc, out, _ = run(capsys, "lll", "--in", str(src))
    obj = json.loads(out)
    assert rc == 0 and obj["det_squared"] == "9"
    assert all(obj["thm10_bound_ok"])


def test_experiment_writes_jsonl(tmp_path, capsys):
    dest = tmp_path / "e.jsonl"
    rc, _, _ = run(capsys, "experiment", "trivariate", "--bits", "48", "--trials", "2",
                   "--preset", "planted", "--out", str(dest))
    assert rc == 0
    recs = [json.loads(line) for line in dest.read_text().splitlines()]
    assert len(recs) == 2 and all(r["outcome"] == "factors-found" for r in recs)


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "factlab.cli", "factor", "--method", "triangular",
                           "--n", EXAMPLE_N], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["steps"] == 9


def test_lll_writes_basis_file(tmp_path, capsys):
    src, dest = tmp_path / "b.txt", tmp_path / "r.txt"
    src.write_text("2 2\n1 0\n0 1\n")
    rc, out, _ = run(capsys, "lll", "--in", str(src), "--delta", "3/4", "--out", str(dest))
    assert rc == 0 and dest.read_text() == "2 2\n1 0\n0 1\n"
    assert json.loads(out)["delta"] == "3/4"


def test_lll_bad_file_is_usage_error(tmp_path, capsys):
    src = tmp_path / "b.txt"
    src.write_text("2 2\n1 2\n2 4\n")
    rc, _, err = run(capsys, "lll", "--in", str(src))
    assert rc == 2 and err


@pytest.mark.parametrize("argv", [
    ["gen", "--bits", "40", "--ratio", "3/2", "--seed", "5"],
    ["factor", "--method", "shifted", "--n", EXAMPLE_N, "--gamma", "53/50"],
    ["census", "--x", "5000", "--ratio", "2", "--format", "csv"],
])
def test_byte_identical_reruns(capsys, argv):
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and a
