from __future__ import annotations

import csv
import io
import json

import pytest

from abelia.cli import main


def run(*argv: str) -> tuple[int, list[dict] | str]:
    buf = io.StringIO()
    code = main(list(argv), stdout=buf)
    text = buf.getvalue()
    if "--format" in argv and "csv" in argv:
        return code, text
    return code, [json.loads(line) for line in text.splitlines() if line]


def test_coeffs_csv_tail():
    code, text = run("coeffs", "--limit", "10", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["n", "d"]
    assert rows[-4:] == [["7", "4"], ["8", "0"], ["9", "0"], ["10", "0"]]


def test_coeffs_jsonl():
    code, recs = run("coeffs", "--limit", "7")
    assert code == 0
    assert [r["d"] for r in recs] == [1, 0, 0, 1, 0, 0, 4]


def test_coeffs_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("ABELIA_CACHE_DIR", str(tmp_path))
    code, first = run("coeffs", "--limit", "50")
    assert code == 0
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    code, second = run("coeffs", "--limit", "50")
    assert second == first
    explicit = tmp_path / "x.bin"
    code, third = run("coeffs", "--limit", "50", "--cache", str(explicit))
    assert explicit.exists() and third == first


def test_param_cubic_example():
    code, [rec] = run("param", "--cubic", "-2,1")
    assert code == 0
    assert rec["g"] == "t^2 + t + 7"
    assert rec["elements"] == [["1", "3"], ["-2", "-3"]]
    assert rec["class"] == "C3Irreducible"


def test_param_round_trip():
    for a, b in [(-2, 1), (-2, 0), (-190, -800), (-196, 1109), (-5, -3)]:
        _, [rec] = run("param", "--cubic", f"{a},{b}")
        assert rec["elements"]
        for u, v in rec["elements"]:
            _, [back] = run("param", "--element", f"{u},{v}")
            assert (back["a"], back["b"]) == (str(a), str(b))
            assert back["integral"] is True


def test_param_exact_rationals():
    _, [rec] = run("param", "--cubic", "-2,0")
    assert rec["trace"] == "20/7"
    _, [rec] = run("param", "--element", "1/2,3")
    assert rec["integral"] is False and "/" in rec["a"]


def test_count_per_a():
    assert run("count", "--per-a", "-4") == (0, [{"a": -4, "c3_count": 1}])


def test_count_toric_and_root_height():
    _, [rec] = run("count", "--toric", "sqrt(7)")
    assert rec["c3_count"] == 1
    _, [rec] = run("count", "--toric", "30")
    assert rec["c3_count"] == 287
    _, [rec] = run("count", "--root-height", "2")
    assert rec["c3_count"] == 2


def test_reducible():
    _, [rec] = run("reducible", "--height", "10")
    assert (rec["count_disc_zero"], rec["count_disc_nonzero"]) == (7, 17)
    assert rec["stabilized_points"] == 21


def test_table():
    code, recs = run("table", "--heights", "1,4,7")
    assert code == 0
    assert [r["g"] for r in recs] == [
        "t^2 - 2 t + 1", "t^2 + 4 t + 4", "t^2 + t + 7", "t^2 - 20/7 t + 7",
    ]
    assert recs[3]["disc_g"] == "-972/49"


def test_sum_and_constants():
    code, [rec] = run("sum", "--limit", "100000", "--prime-cutoff", "100000")
    assert code == 0 and rec["X"] == 100000
    code, [rep] = run("constants", "--prime-cutoff", "10000")
    assert code == 0 and "route_deltas" in rep


def test_threads_do_not_change_output():
    for argv in (("coeffs", "--limit", "5000"), ("sum", "--limit", "200000"),
                 ("count", "--root-height", "6")):
        outs = {json.dumps(run("--threads", str(k), *argv)[1]) for k in (1, 2, 8)}
        assert len(outs) == 1


def test_flag_before_and_after_subcommand():
    a = run("--format", "csv", "coeffs", "--limit", "4")
    b = run("coeffs", "--limit", "4", "--format", "csv")
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ("bogus",),
        ("coeffs",),
        ("coeffs", "--limit", "0"),
        ("count", "--per-a", "3"),
        ("count", "--root-height", "60"),
        ("param", "--cubic", "1"),
        ("param", "--element", "0,0"),
        ("table", "--heights", "x"),
        ("reducible", "--height", "0.5"),
        ("verify", "--tolerance-profile", "loose"),
        ("--threads", "0", "coeffs", "--limit", "3"),
    ],
)
def test_bad_arguments_exit_2(argv):
    assert run(*argv)[0] == 2


def test_budget_exceeded_exits_2(tmp_path):
    assert run("count", "--toric", "40", "--memory-budget", "100")[0] == 2
    cache = tmp_path / "c.bin"
    assert run("coeffs", "--limit", "1000", "--cache", str(cache),
               "--memory-budget", "100")[0] == 2


def test_verify_passing_suite():
    code, recs = run("verify", "--suite", "cyclo")
    assert code == 0
    assert all(r["passed"] for r in recs)


def test_verify_reports_first_counterexample():
    code, recs = run("verify", "--suite", "thm12")
    assert code == 1
    assert "first_counterexample" in recs[-1]
    assert recs[-1]["first_counterexample"]["criterion"] == "5a"
