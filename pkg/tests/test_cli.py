import math
from pathlib import Path

import pytest

from kprobe.cli import loglog_slope, main, run_bench

DATA = Path(__file__).parent / "data"
P4 = str(DATA / "p4_labeled.txt")
P4_ZERO = str(DATA / "p4_zero.txt")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_recognize_worked_example(capsys):
    code, out, err = run(capsys, "recognize", P4)
    assert code == 0
    assert out == "(join (union 1 3) (union 2 4))\n"
    assert err == ""


def test_recognize_zero_labels_rejected(capsys):
    code, out, _ = run(capsys, "recognize", P4_ZERO)
    assert code == 1
    assert out == "rejected {1} {2} {3} {4}\n"


def test_recognize_counters_go_to_stderr(capsys):
    code, out, err = run(capsys, "recognize", P4, "--counters")
    assert code == 0 and out.startswith("(join")
    assert err.startswith("twin_tests=") and "pair_probes=" in err and "orth_tests=" in err


def test_recognize_dot(capsys):
    code, out, _ = run(capsys, "recognize", P4, "--format", "dot", "--ascii")
    assert code == 0 and out.startswith("digraph cotree {") and '"x"' in out


def test_recognize_invalid_instance(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    path = write(tmp_path, "bad.txt", "p kprobe 3 1 1\nl 1 1\nl 2 0\nl 3 1\ne 1 3\n")
    code, out, err = run(capsys, "recognize", path)
    assert code == 2 and out == ""
    assert "line 5" in err and "{1,3}" in err and "N_1" in err


def test_recognize_parse_error(tmp_path, capsys):
    path = write(tmp_path, "bad.txt", "p kprobe 2 0 1\nl 1 -\nl 2 -\ne 1 1\n")
    code, _, err = run(capsys, "recognize", path)
    assert code == 2 and "line 4" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "recognize", "/nonexistent/graph.txt")
    assert code == 2 and "error" in err


def test_verify(tmp_path, capsys):
    good = write(tmp_path, "good.cert", "(join (union 1 3) (union 2 4))\n")
    assert run(capsys, "verify", P4, good)[0] == 0
    bad = write(tmp_path, "bad.cert", "(union (join 1 2) (join 3 4))")
    code, out, _ = run(capsys, "verify", P4, bad)
    assert code == 1 and out == "mismatch missing edge {2,3}\n"
    fill = write(tmp_path, "fill.cert", "(join (join 1 3) (join 2 4))")
    code, out, _ = run(capsys, "verify", P4, fill)
    assert code == 1 and "illegal fill {1,3}" in out


def test_verify_malformed_certificate(tmp_path, capsys):
    trunc = write(tmp_path, "t.cert", "(join (union 1 3) (union 2")
    code, _, err = run(capsys, "verify", P4, trunc)
    assert code == 2 and "byte" in err
    wrong = write(tmp_path, "w.cert", "(join 1 2)")
    assert run(capsys, "verify", P4, wrong)[0] == 2


def test_oracle(capsys, tmp_path):
    code, out, _ = run(capsys, "oracle", P4)
    assert code == 0 and out == "fill: {1,4}\n"
    code, out, _ = run(capsys, "oracle", P4_ZERO)
    assert code == 1 and out == "rejected\n"
    # K2 plus 7 isolated vertices, all 9 in N_1 except the edge ends: many candidate pairs
    labels = "".join(f"l {v} 1\n" for v in range(1, 10))
    path = write(tmp_path, "big.txt", f"p kprobe 9 1 0\n{labels}")
    code, out, _ = run(capsys, "oracle", path)
    assert code == 3 and "candidates=36" in out
    assert run(capsys, "oracle", path, "--max-fill", "36")[0] == 0


def test_oracle_budget_thirty_pairs(tmp_path, capsys):
    # N_1 = {1..6} (15 pairs) and N_2 = {7..12} (15 pairs): 30 candidates
    labels = "".join(f"l {v} {'10' if v <= 6 else '01'}\n" for v in range(1, 13))
    path = write(tmp_path, "g.txt", f"p kprobe 12 2 0\n{labels}")
    code, out, _ = run(capsys, "oracle", path)
    assert code == 3 and "candidates=30" in out


def test_generate_one_vertex(capsys):
    code, out, _ = run(capsys, "generate", "--n", "1")
    assert code == 0 and out == "p kprobe 1 0 0\nl 1 -\n"


def test_generate_deterministic(capsys):
    args = ("generate", "--n", "50", "--k", "4", "--seed", "7")
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second and first.startswith("p kprobe 50 4 ")


def test_generate_golden(capsys):
    code, out, _ = run(
        capsys, "generate", "--n", "4", "--k", "1", "--membership-prob", "0.5",
        "--join-prob", "0.5", "--seed", "11", "--with-witness",
    )
    assert code == 0
    assert out == (DATA / "generate_n4_k1_seed11.txt").read_text()


def test_generate_files_then_recognize_and_verify(tmp_path, capsys):
    out = str(tmp_path / "g.txt")
    code = run(capsys, "generate", "--n", "30", "--k", "1", "--seed", "3", "--out", out, "--with-witness")[0]
    assert code == 0
    assert Path(out + ".cert").exists()
    assert run(capsys, "recognize", out)[0] == 0
    assert run(capsys, "verify", out, out + ".cert")[0] == 0
    cert = tmp_path / "mine.cert"
    cert.write_text(run(capsys, "recognize", out)[1])
    assert run(capsys, "verify", out, str(cert))[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ("generate", "--n", "0"),
        ("generate", "--n", "3", "--membership-prob", "2"),
        ("generate", "--n", "3", "--k", "-1"),
        ("bench", "--n-list", "a,b"),
        ("bench", "--reps", "0"),
        ("recognize",),
        ("frobnicate",),
    ],
)
def test_bad_parameters_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(list(argv))
    assert info.value.code == 2


def test_bench_single_size(capsys):
    code, out, _ = run(capsys, "bench", "--n-list", "10", "--reps", "2")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "n,k,rep,millis,twin_tests,pair_probes,orth_tests"
    assert len(lines) == 4
    assert lines[1].startswith("10,4,0,") and lines[2].startswith("10,4,1,")
    assert lines[-1] == "slope=nan"


def test_bench_rows_and_slope():
    rows, slope = run_bench([8, 16, 32], k=2, seed=1, reps=2)
    assert [r[0] for r in rows] == [8, 8, 16, 16, 32, 32]
    assert not math.isnan(slope)
    # counters grow with n at fixed k and seed family
    totals = {}
    for n, _, _, _, tt, pp, ot in rows:
        totals.setdefault(n, []).append(pp)
    assert max(totals[8]) < min(totals[32])


def test_loglog_slope():
    assert loglog_slope([10], [3.0]) != loglog_slope([10], [3.0])  # nan
    assert loglog_slope([1, 2, 4], [1.0, 8.0, 64.0]) == pytest.approx(3.0)
