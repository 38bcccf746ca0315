import csv
import io
import subprocess
import sys

import pytest

from exactbn import gen_random_instance, parse_scores, write_scores
from exactbn.cli import main
from exactbn.pairwise import lattice_entries


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def score_file(tmp_path):
    def make(n, k=2, seed=0):
        path = tmp_path / f"g{n}_{k}_{seed}.txt"
        path.write_text(write_scores(gen_random_instance(n, k, seed)))
        return str(path)

    return make


def test_single_node(tmp_path, capsys):
    f = tmp_path / "one.txt"
    f.write_text("1\nA 1\n-3.5 0\n")
    code, out, err = run(["solve", "--scores", str(f), "--algo", "full"], capsys)
    assert code == 0
    assert out == "A <- {}\nscore -3.5\n"
    assert "# algorithm=full" in err


def test_no_pairs_matches_full(score_file, capsys):
    f = score_file(7)
    _, full, _ = run(["solve", "--scores", f], capsys)
    _, pw, _ = run(["solve", "--scores", f, "--algo", "pairwise", "--p", "0"], capsys)
    assert full.splitlines()[-1] == pw.splitlines()[-1]
    assert full == pw


@pytest.mark.parametrize("algo", [["--algo", "part", "--s", "5"], ["--algo", "dnc", "--depth", "2"]])
def test_other_solvers_same_score(score_file, capsys, algo):
    f = score_file(8, 3, 4)
    _, full, _ = run(["solve", "--scores", f], capsys)
    _, other, _ = run(["solve", "--scores", f, *algo], capsys)
    assert float(full.split()[-1]) == pytest.approx(float(other.split()[-1]), abs=1e-9)


def test_thread_count_does_not_change_output(score_file, capsys):
    f = score_file(8, 2, 1)
    base = ["solve", "--scores", f, "--algo", "pairwise", "--p", "2"]
    _, one, _ = run(base + ["--threads", "1"], capsys)
    _, four, _ = run(base + ["--threads", "4"], capsys)
    assert one == four


def test_solve_writes_files(score_file, tmp_path, capsys):
    f = score_file(6)
    dag = tmp_path / "dag.txt"
    rep = tmp_path / "rep.csv"
    code, out, _ = run(["solve", "--scores", f, "--output", str(dag), "--csv", str(rep)], capsys)
    assert code == 0 and dag.read_text() == out
    rows = list(csv.DictReader(rep.open()))
    assert rows[0]["algorithm"] == "full"
    # f-hat only where v is outside Y, plus g
    assert rows[0]["peak_table_entries"] == str(6 * 2**5 + 2**6)
    assert rows[0]["predicted_entries"] == str(7 * 2**6)


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        assert run(["gen", "--n", "5", "--max-indegree", "2", "--seed", "7", "--output", str(path)], capsys)[0] == 0
    assert a.read_text() == b.read_text()
    assert parse_scores(a.read_text()) == gen_random_instance(5, 2, 7)


def test_oracle_refuses_nine_nodes(score_file, capsys):
    code, out, err = run(["oracle", "--scores", score_file(9, 1)], capsys)
    assert code == 3
    assert out == "" and "refused" in err


def test_oracle_agrees_with_solver(score_file, capsys):
    f = score_file(6, 2, 3)
    _, a, _ = run(["oracle", "--scores", f], capsys)
    _, b, _ = run(["solve", "--scores", f], capsys)
    assert float(a.split()[-1]) == pytest.approx(float(b.split()[-1]), abs=1e-9)


def test_tradeoff_last_row(tmp_path, capsys):
    code, out, _ = run(["tradeoff", "--n", "30", "--step", "0.01"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[-1]["r"] == "1"
    assert float(rows[-1]["a"]) == 1.0 and float(rows[-1]["b"]) == 1.0


def test_tradeoff_figure(tmp_path, capsys):
    png = tmp_path / "curve.png"
    out_csv = tmp_path / "curve.csv"
    code, _, _ = run(["tradeoff", "--n", "30", "--step", "0.05", "--csv", str(out_csv), "--figure", str(png)], capsys)
    assert code == 0
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert out_csv.read_text().startswith("r,a,b,")


def test_bench_p_grid(score_file, tmp_path, capsys):
    png = tmp_path / "bench.png"
    code, out, _ = run(["bench", "--n", "16", "--max-indegree", "2", "--seed", "3",
                        "--p-grid", "0,1,2", "--figure", str(png)], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["p"] for r in rows] == ["0", "1", "2"]
    for r in rows:
        assert int(r["peak_table_entries"]) == lattice_entries(16, int(r["p"])) == int(r["predicted_entries"])
        assert r["extrapolated"] == "false"
    scores = {r["score"] for r in rows}
    assert len(scores) == 1
    assert rows[0]["units"] == "1"
    assert png.exists()


def test_bench_extrapolation_flag(capsys):
    code, out, _ = run(["bench", "--n", "10", "--max-indegree", "2", "--p-grid", "3", "--extrapolate"], capsys)
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["extrapolated"] == "true"
    assert row["score_kind"] == "restricted"
    assert row["units"] == "1"
    assert float(row["total_seconds"]) == pytest.approx(8 * float(row["unit_seconds"]), abs=0.01)


def test_bench_cells(score_file, capsys):
    f = score_file(8, 2, 9)
    code, out, _ = run(["bench", "--scores", f, "--cell", "full", "--cell", "part:s=4",
                        "--cell", "dnc:depth=1", "--cell", "pairwise:p=4"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["algorithm"] for r in rows] == ["full", "part", "dnc", "pairwise"]
    vals = [float(r["score"]) for r in rows]
    assert max(vals) - min(vals) < 1e-9


def test_bic_command(tmp_path, capsys):
    data = tmp_path / "d.csv"
    data.write_text("a,b,c\n0,0,1\n1,1,0\n0,0,0\n1,1,1\n0,1,1\n")
    out = tmp_path / "s.txt"
    code, _, _ = run(["bic", "--data", str(data), "--max-indegree", "1", "--output", str(out)], capsys)
    assert code == 0
    t = parse_scores(out.read_text())
    assert t.names == ("a", "b", "c")
    assert t.family_size(0) == 3


def test_auto_p_picks_smallest_fitting(score_file, capsys):
    f = score_file(10)
    budget = lattice_entries(10, 2) * 8 / 2**30
    code, _, err = run(["solve", "--scores", f, "--algo", "pairwise", "--auto-p",
                        "--max-gib", repr(budget)], capsys)
    assert code == 0
    assert "# p=2" in err.splitlines()


def test_budget_refusal(score_file, capsys):
    code, out, err = run(["solve", "--scores", score_file(12), "--max-gib", "1e-6"], capsys)
    assert code == 3 and out == ""
    assert "GiB" in err


def test_input_errors(tmp_path, score_file, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2\nA 1\n0 0\nB 2\n0 0\n1 1 B\n")
    code, _, err = run(["solve", "--scores", str(bad)], capsys)
    assert code == 2 and "line 6" in err
    assert run(["solve", "--scores", str(tmp_path / "missing.txt")], capsys)[0] == 2
    assert run(["solve", "--scores", score_file(5), "--algo", "pairwise"], capsys)[0] == 2
    assert run(["solve", "--scores", score_file(5), "--algo", "pairwise", "--p", "3"], capsys)[0] == 2
    assert run(["bench", "--n", "5"], capsys)[0] == 2


@pytest.mark.parametrize("argv", [[], ["solve"], ["solve", "--scores", "x", "--algo", "nope"], ["frobnicate"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_module_entry_point(score_file):
    proc = subprocess.run([sys.executable, "-m", "exactbn.cli", "solve", "--scores", score_file(4)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1].startswith("score ")
