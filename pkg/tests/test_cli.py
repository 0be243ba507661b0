import json
import subprocess
from pathlib import Path

import pytest

from gamealg import load_board
from gamealg.cli import main

DATA = Path(__file__).parent / "data"

B0_DOC = {
    "states": ["s0", "s1"],
    "atoms": {
        "a": {"rho1": [["s0", ["s1"]]], "rho2": []},
        "b": {"rho1": [], "rho2": []},
    },
}

INCONSISTENT_DOC = {
    "states": ["s0", "s1"],
    "atoms": {"a": {"rho1": [["s0", ["s0"]]], "rho2": [["s0", ["s1"]]]}},
}


@pytest.fixture
def board_file(tmp_path):
    path = tmp_path / "board.json"
    path.write_text(json.dumps(B0_DOC))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_normalize_prints_normal_form(capsys):
    code, out, err = run(capsys, "normalize", "(a + b)^d")
    assert code == 0
    assert out == "a^d & b^d\n"


def test_normalize_golden_corpus(capsys):
    pairs = []
    for line in (DATA / "golden_corpus.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        source, expected = line.split("\t")
        pairs.append((source, expected))
    assert len(pairs) >= 30
    for source, expected in pairs:
        code, out, _ = run(capsys, "normalize", source)
        assert code == 0
        assert out == expected + "\n", source


def test_normalize_rejects_malformed_term(capsys):
    code, out, err = run(capsys, "normalize", "a +")
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_equiv_exit_codes(capsys):
    code, out, _ = run(capsys, "equiv", "a ; 1", "a")
    assert code == 0
    assert out.splitlines() == ["nf1: a", "nf2: a", "equivalent"]
    code, out, _ = run(capsys, "equiv", "a", "b")
    assert code == 1
    assert out.splitlines()[-1] == "not equivalent"


def test_leq_exit_codes(capsys):
    assert run(capsys, "leq", "a & b", "a")[0] == 0
    code, out, _ = run(capsys, "leq", "a", "a & b")
    assert code == 1
    assert out == "false\n"


def test_embeds_exit_codes(capsys):
    code, out, _ = run(capsys, "embeds", "a & b", "a")
    assert code == 0
    assert out == "embeds\n"
    assert run(capsys, "embeds", "a", "a & b")[0] == 1


def test_eval_prints_generator_pairs(capsys, board_file):
    code, out, _ = run(
        capsys, "eval", "--board", board_file, "--term", "a + 1", "--player", "1"
    )
    assert code == 0
    assert json.loads(out) == [["s0", ["s0"]], ["s0", ["s1"]], ["s1", ["s1"]]]


def test_eval_rejects_missing_board_file(capsys, tmp_path):
    code, _, err = run(
        capsys,
        "eval",
        "--board",
        str(tmp_path / "nope.json"),
        "--term",
        "a",
        "--player",
        "1",
    )
    assert code == 2
    assert err.startswith("error:")


def test_valid_identity_check(capsys, board_file):
    code, out, _ = run(capsys, "valid", "--board", board_file, "--check", "a ; 1 = a")
    assert code == 0
    assert out == "holds\n"
    code, out, _ = run(capsys, "valid", "--board", board_file, "--check", "a = b")
    assert code == 1
    assert out == "fails\n"
    code, _, err = run(capsys, "valid", "--board", board_file, "--check", "a")
    assert code == 2
    assert "T1 = T2" in err


def test_check_board_consistent(capsys, board_file):
    code, out, _ = run(capsys, "check-board", board_file)
    assert code == 0
    lines = out.splitlines()
    assert "mon: true" in lines
    assert "con: true" in lines


def test_check_board_inconsistent(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(INCONSISTENT_DOC))
    code, out, _ = run(capsys, "check-board", str(path))
    assert code == 1
    assert "con: false" in out.splitlines()
    assert any(line.lstrip().startswith("con a") for line in out.splitlines())


def test_check_board_malformed_json(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "check-board", str(path))
    assert code == 2
    assert err.startswith("error:")


def test_find_board_emits_loadable_board(capsys):
    code, out, _ = run(capsys, "find-board", "--distinguish", "a", "b")
    assert code == 1
    board = load_board(out.encode())
    assert board.states


def test_find_board_reports_none_for_equivalent_terms(capsys):
    code, out, _ = run(capsys, "find-board", "--distinguish", "a ; 1", "a")
    assert code == 0
    assert out == "none\n"


def test_find_board_rejects_parallel_terms(capsys):
    code, _, err = run(capsys, "find-board", "--distinguish", "a || b", "a")
    assert code == 2
    assert err.startswith("error:")


def test_check_axioms_small_run(capsys):
    code, out, err = run(
        capsys,
        "check-axioms",
        "--trials",
        "2",
        "--depth",
        "2",
        "--atoms",
        "2",
        "--seed",
        "3",
    )
    assert code == 1
    lines = out.splitlines()
    assert "total: 62 checked, 1 failed" in lines
    assert "CG7: 2 checked, 1 failed" in lines
    assert "elapsed:" in err
    payload = json.loads(lines[-1])
    assert payload["command"] == "check-axioms"
    assert payload["failed"] == 1


def test_check_axioms_stdout_is_byte_deterministic(capsys):
    argv = [
        "check-axioms",
        "--trials",
        "3",
        "--depth",
        "3",
        "--atoms",
        "2",
        "--seed",
        "5",
    ]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_fuzz_soundness_small_run(capsys):
    code, out, err = run(
        capsys,
        "fuzz-soundness",
        "--trials",
        "5",
        "--states",
        "2",
        "--boards",
        "2",
        "--seed",
        "11",
        "--depth",
        "3",
        "--atoms",
        "2",
    )
    assert code == 0
    payload = json.loads(out.splitlines()[-1])
    assert payload["command"] == "fuzz-soundness"
    assert payload["failed"] == 0
    assert "elapsed:" in err


def test_cg_semantics_report_exits_zero_and_is_deterministic(capsys):
    argv = ["cg-semantics-report", "--states", "1", "--boards", "2"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    code, second, _ = run(capsys, *argv)
    assert code == 0
    assert first == second
    payload = json.loads(first.splitlines()[-1])
    assert payload["command"] == "cg-semantics-report"
    assert set(payload["results"]) == {f"CG{i}" for i in range(1, 12)}


def test_report_dir_writes_table_and_figure(capsys, tmp_path):
    report_dir = tmp_path / "report"
    code, _, err = run(
        capsys,
        "check-axioms",
        "--trials",
        "2",
        "--depth",
        "2",
        "--atoms",
        "2",
        "--seed",
        "3",
        "--report-dir",
        str(report_dir),
    )
    assert code == 1
    csv_path = report_dir / "check-axioms.csv"
    png_path = report_dir / "check-axioms.png"
    assert csv_path.is_file()
    assert png_path.is_file()
    assert png_path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    header, *rows = csv_path.read_text().splitlines()
    assert header == "check,checked,failed"
    assert len(rows) == 23
    assert f"report written to {report_dir}" in err


def test_report_dir_for_cg_semantics_report(capsys, tmp_path):
    report_dir = tmp_path / "cgreport"
    code, _, _ = run(
        capsys,
        "cg-semantics-report",
        "--states",
        "1",
        "--boards",
        "2",
        "--report-dir",
        str(report_dir),
    )
    assert code == 0
    assert (report_dir / "cg-semantics-report.csv").is_file()
    assert (report_dir / "cg-semantics-report.png").is_file()


def test_missing_subcommand_is_usage_error(capsys):
    assert run(capsys, )[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_console_entry_point_subprocess():
    proc = subprocess.run(
        ["gamealg", "normalize", "(a + b)^d"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert proc.stdout == "a^d & b^d\n"
