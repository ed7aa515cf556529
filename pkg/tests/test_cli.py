import json
import subprocess
import sys

import pytest

from lowmult.cli import main

PKG_ROOT = None


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_find_all_micro(capsys):
    code, out, err = run_cli(
        ["find-all", "--poly", "3,1,0", "--weight", "3", "--max-degree", "7"],
        capsys,
    )
    assert code == 0
    assert out.splitlines() == ["0,1,3", "0,4,5", "0,2,6"]
    assert "found: 3" in err


def test_find_all_json(capsys):
    code, out, _ = run_cli(
        ["find-all", "--poly", "3,1,0", "--weight", "3", "--max-degree", "7",
         "--json", "--algorithm", "logtmto"],
        capsys,
    )
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert {tuple(r["exponents"]) for r in recs} == {
        (0, 1, 3), (0, 2, 6), (0, 4, 5)
    }
    assert all(r["weight"] == 3 for r in recs)


def test_find_all_auto_prefers_log_for_even_weight(capsys):
    code, _, err = run_cli(
        ["find-all", "--poly", "4,1,0", "--weight", "4", "--max-degree", "12",
         "--algorithm", "auto"],
        capsys,
    )
    assert code == 0
    assert "auto-selected algorithm: logtmto" in err
    assert "algorithm: logtmto" in err
    code, _, err = run_cli(
        ["find-all", "--poly", "4,1,0", "--weight", "5", "--max-degree", "12",
         "--algorithm", "auto"],
        capsys,
    )
    assert code == 0
    assert "auto-selected algorithm: tmto" in err


def test_find_all_auto_falls_back_when_engine_budget_tight(capsys):
    # engine tables for 2^14 - 1 = 3 * 43 * 127 predict ~3.7 kB; a 2 kB
    # budget rules the log route out but still fits the tiny search
    code, _, err = run_cli(
        ["find-all", "--poly", "14,12,11,1,0", "--weight", "4",
         "--max-degree", "12", "--algorithm", "auto",
         "--budget-bytes", "2000"],
        capsys,
    )
    assert code == 0
    assert "auto-selected algorithm: tmto" in err


def test_wagner_advice_threshold():
    from lowmult.cli import _wagner_advice

    # huge weight, small degree: the k-list route wins clearly
    assert _wagner_advice(63, 17, 1024) is not None
    # ordinary parameters: no advice
    assert _wagner_advice(24, 5, 1024) is None


def test_find_all_not_primitive_exit_3(capsys):
    code, _, err = run_cli(
        ["find-all", "--poly", "2,0", "--weight", "3", "--max-degree", "7"],
        capsys,
    )
    assert code == 3
    assert "reducible" in err


def test_find_all_budget_exit_4(capsys):
    code, _, err = run_cli(
        ["find-all", "--poly", "4,1,0", "--weight", "5", "--max-degree", "15",
         "--algorithm", "tmto", "--budget-bytes", "64"],
        capsys,
    )
    assert code == 4
    assert "budget" in err


def test_bad_flags_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["find-all", "--poly", "3,1,0", "--weight", "3",
              "--max-degree", "7", "--algorithm", "bogus"])
    assert exc.value.code == 2


def test_bad_poly_spec_exit_2(capsys):
    code, _, err = run_cli(
        ["find-all", "--poly", "3;1;0", "--weight", "3", "--max-degree", "7"],
        capsys,
    )
    assert code == 2


def test_find_some_basic(capsys):
    code, out, err = run_cli(
        ["find-some", "--poly", "3,1,0", "--weight", "3", "--max-degree", "7",
         "--count", "1", "--seed", "1", "--verify"],
        capsys,
    )
    assert code == 0
    assert len(out.splitlines()) == 1
    assert "found: 1" in err


def test_find_some_exhausted_exit_5(capsys):
    code, out, err = run_cli(
        ["find-some", "--poly", "3,1,0", "--weight", "3", "--max-degree", "7",
         "--count", "1", "--max-iterations", "0"],
        capsys,
    )
    assert code == 5
    assert out == ""
    assert "exhausted" in err


def test_find_some_progress_csv(tmp_path, capsys):
    path = tmp_path / "progress.csv"
    code, _, _ = run_cli(
        ["find-some", "--poly", "3,1,0", "--weight", "3", "--max-degree", "7",
         "--count", "3", "--seed", "1", "--progress-csv", str(path)],
        capsys,
    )
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "iteration,found"
    assert all(len(line.split(",")) == 2 for line in lines[1:])


def test_find_some_methods(capsys):
    for method in ("logsample", "birthday", "birthday-log"):
        code, out, _ = run_cli(
            ["find-some", "--poly", "4,1,0", "--weight", "4",
             "--max-degree", "15", "--count", "2", "--seed", "7",
             "--method", method, "--max-iterations", "5000", "--verify"],
            capsys,
        )
        assert code == 0, method
        assert len(out.splitlines()) >= 2


def test_log_command(capsys):
    code, out, _ = run_cli(["log", "--poly", "3,1,0", "--element", "0x1"], capsys)
    assert code == 0 and out.strip() == "0"
    code, out, _ = run_cli(["log", "--poly", "3,1,0", "--element", "1,0"], capsys)
    assert code == 0 and out.strip() == "3"
    code, _, _ = run_cli(["log", "--poly", "3,1,0", "--element", "0x0"], capsys)
    assert code == 6


def test_zech_command(capsys):
    code, out, _ = run_cli(["zech", "--poly", "3,1,0", "--exponent", "1"], capsys)
    assert code == 0 and out.strip() == "3"
    code, _, _ = run_cli(["zech", "--poly", "3,1,0", "--exponent", "7"], capsys)
    assert code == 6


def test_estimate_command(capsys):
    code, out, _ = run_cli(
        ["estimate", "--n", "53", "--weight", "4", "--max-degree", "1048576"],
        capsys,
    )
    assert code == 0
    assert out.strip() == "≈21.3"


def test_engine_build_and_reuse(tmp_path, capsys):
    cache = tmp_path / "engine.bin"
    code, out, err = run_cli(
        ["engine-build", "--poly", "4,1,0", "--cache-out", str(cache)], capsys
    )
    assert code == 0
    assert cache.exists()
    assert "predicted table memory" in err
    code, out, _ = run_cli(
        ["zech", "--poly", "4,1,0", "--cache", str(cache), "--exponent", "1"],
        capsys,
    )
    assert code == 0 and out.strip() == "4"
    # cache built for a different modulus is refused
    code, _, err = run_cli(
        ["zech", "--poly", "3,1,0", "--cache", str(cache), "--exponent", "1"],
        capsys,
    )
    assert code == 2


def test_oracle_subcommand_hidden_but_works(capsys):
    code, out, _ = run_cli(
        ["oracle", "--poly", "3,1,0", "--weight", "3", "--max-degree", "7"],
        capsys,
    )
    assert code == 0
    assert out.splitlines() == ["0,1,3", "0,4,5", "0,2,6"]
    helptext = subprocess.run(
        [sys.executable, "-m", "lowmult.cli", "--help"],
        capture_output=True, text=True,
    ).stdout
    assert "oracle" not in helptext


def test_single_thread_runs_byte_identical():
    cmd = [sys.executable, "-m", "lowmult.cli", "find-some", "--poly",
           "4,1,0", "--weight", "4", "--max-degree", "15", "--count", "5",
           "--seed", "11", "--method", "birthday-log"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_threaded_cli_set_identical(capsys):
    base = ["find-all", "--poly", "11,2,0", "--weight", "4",
            "--max-degree", "64", "--algorithm", "tmto"]
    _, out1, _ = run_cli(base + ["--threads", "1"], capsys)
    _, out2, _ = run_cli(base + ["--threads", "3"], capsys)
    assert out1 == out2
