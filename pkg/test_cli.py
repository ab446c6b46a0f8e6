# test_cli.py
"""
pytest suite for the command-line surface: outputs, JSON records and exit codes
"""

import pytest
import json
import sys
import os

# Add the app directory to the path for imports
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from constants import ExitCodes
from domlab_cli import main
from graph_core import product_instance, write_edge_list
from solvers import BudgetExceededError


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestSolveCommand:
    """solve"""

    def test_cycle_domination(self, capsys):
        status, out, _ = run(capsys, "solve", "--family", "cycle-clique", "--n", "6", "--m", "5", "--param", "dom")
        lines = out.splitlines()
        assert status == ExitCodes.SUCCESS
        assert lines[0] == "gamma = 4"
        assert len(lines) == 6
        assert all(len(line.split()) == 2 for line in lines[1:5])
        assert lines[5].startswith("nodes: ")

    def test_secure_domination_label(self, capsys):
        status, out, _ = run(capsys, "solve", "--family", "path-clique", "--n", "3", "--m", "3", "--param", "sdom")
        assert status == ExitCodes.SUCCESS
        assert out.splitlines()[0] == "gamma_s = 3"

    def test_canonical_output_is_deterministic(self, capsys):
        argv = ["solve", "--family", "cycle-clique", "--n", "6", "--m", "4", "--param", "dom", "--canonical"]
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        certificate = lambda text: text.splitlines()[:-1]
        assert certificate(first) == certificate(second)

    def test_json_record(self, capsys):
        status, out, _ = run(capsys, "--format", "json", "solve", "--family", "cycle-clique",
                             "--n", "6", "--m", "3", "--param", "idom")
        record = json.loads(out)
        assert status == ExitCodes.SUCCESS
        assert record["param"] == "idom"
        assert record["value"] == 4
        assert all(len(pair) == 2 for pair in record["certificate"])

    def test_edge_list_input(self, capsys, tmp_path):
        path = tmp_path / "triangle.txt"
        path.write_text("3\n0 1\n1 2\n0 2\n", encoding="utf-8")
        status, out, _ = run(capsys, "solve", "--graph", str(path), "--param", "2dom")
        assert status == ExitCodes.SUCCESS
        assert out.splitlines()[:3] == ["gamma_2 = 2", "0", "1"]

    def test_missing_file(self, capsys):
        status, _, err = run(capsys, "solve", "--graph", "missing.txt", "--param", "dom")
        assert status == ExitCodes.PARSE_ERROR
        assert "missing.txt" in err

    def test_malformed_edge_list(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3\n0 5\n", encoding="utf-8")
        status, _, err = run(capsys, "solve", "--graph", str(path), "--param", "dom")
        assert status == ExitCodes.PARSE_ERROR
        assert "line 2" in err

    def test_undecodable_edge_list(self, capsys, tmp_path):
        path = tmp_path / "binary.txt"
        path.write_bytes(b"3\n0 1\n\xff\xfe 2\n")
        status, out, err = run(capsys, "solve", "--graph", str(path), "--param", "dom")
        assert status == ExitCodes.PARSE_ERROR
        assert out == ""
        assert "input error" in err

    def test_needs_instance_or_file(self, capsys):
        status, _, _ = run(capsys, "solve", "--family", "cycle-clique", "--param", "dom")
        assert status == ExitCodes.USAGE

    def test_unknown_param_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["solve", "--family", "cycle-clique", "--n", "6", "--m", "3", "--param", "roman"])
        assert excinfo.value.code == ExitCodes.USAGE

    def test_invalid_size_is_guard_error(self, capsys):
        status, _, _ = run(capsys, "solve", "--family", "cycle-clique", "--n", "1", "--m", "3", "--param", "dom")
        assert status == ExitCodes.GUARD_ERROR

    def test_budget_flag(self, capsys):
        status, _, err = run(capsys, "solve", "--family", "cycle-clique", "--n", "6", "--m", "5",
                             "--param", "dom", "--budget", "1")
        assert status == ExitCodes.BUDGET_EXCEEDED
        assert "budget" in err

    def test_budget_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("DOMLAB_BUDGET", "1")
        status, _, _ = run(capsys, "solve", "--family", "cycle-clique", "--n", "6", "--m", "5", "--param", "dom")
        assert status == ExitCodes.BUDGET_EXCEEDED


class TestOtherCommands:
    """formula, construct, verify, gen"""

    def test_formula(self, capsys):
        status, out, _ = run(capsys, "formula", "--family", "cycle-clique", "--n", "6", "--m", "5", "--param", "dom")
        assert status == ExitCodes.SUCCESS
        assert out == "gamma = 4 (cycle-3k)\n"

    def test_formula_outside_guard(self, capsys):
        status, _, err = run(capsys, "formula", "--family", "cycle-clique", "--n", "5", "--m", "3", "--param", "idom")
        assert status == ExitCodes.GUARD_ERROR
        assert "UNCOVERED_CASE" in err

    def test_formula_json(self, capsys):
        _, out, _ = run(capsys, "--format", "json", "formula", "--family", "path-clique", "--n", "5", "--m", "4",
                        "--param", "sdom")
        assert json.loads(out) == {"family": "path-clique", "param": "sdom", "n": 5, "m": 4, "value": 7,
                                   "source": "secure-path-n-plus-2"}

    def test_construct_prints_parenthesized_pairs(self, capsys):
        status, out, _ = run(capsys, "construct", "--kind", "sdom-cycle-row", "--n", "6", "--m", "4")
        lines = out.splitlines()
        assert status == ExitCodes.SUCCESS
        assert lines[:6] == [f"({i} 1)" for i in range(1, 7)]
        assert "# secure dominating: ok" in lines
        assert "# 2-dominating: ok" in lines

    def test_construct_guard(self, capsys):
        status, _, _ = run(capsys, "construct", "--kind", "dom-cycle", "--n", "5", "--m", "3")
        assert status == ExitCodes.GUARD_ERROR

    def test_construct_output_verifies(self, capsys, tmp_path):
        _, out, _ = run(capsys, "construct", "--kind", "dom-path", "--n", "8", "--m", "4")
        path = tmp_path / "dom.cert"
        path.write_text(out, encoding="utf-8")
        status, out, _ = run(capsys, "verify", "--family", "path-clique", "--n", "8", "--m", "4",
                             "--param", "idom", "--set", str(path))
        assert status == ExitCodes.SUCCESS
        assert out == "OK (independent dominating)\n"

    def test_verify_first_row(self, capsys, tmp_path):
        path = tmp_path / "r1.cert"
        path.write_text("(1 1)\n(2 1)\n(3 1)\n(4 1)\n", encoding="utf-8")
        status, out, _ = run(capsys, "verify", "--family", "cycle-clique", "--n", "4", "--m", "3",
                             "--param", "dom", "--set", str(path))
        assert status == ExitCodes.SUCCESS
        assert out == "OK (dominating)\n"

    def test_verify_failure(self, capsys, tmp_path):
        path = tmp_path / "one.cert"
        path.write_text("1 1\n", encoding="utf-8")
        status, out, _ = run(capsys, "verify", "--family", "cycle-clique", "--n", "4", "--m", "3",
                             "--param", "dom", "--set", str(path))
        assert status == ExitCodes.VERIFICATION_FAILED
        assert out == "FAIL (dominating): vertex (1 2) UNDOMINATED\n"

    def test_verify_failure_json(self, capsys, tmp_path):
        path = tmp_path / "one.cert"
        path.write_text("1 1\n", encoding="utf-8")
        status, out, _ = run(capsys, "--format", "json", "verify", "--family", "cycle-clique", "--n", "4",
                             "--m", "3", "--param", "dom", "--set", str(path))
        assert status == ExitCodes.VERIFICATION_FAILED
        assert json.loads(out) == {"param": "dom", "ok": False, "witness": [1, 2], "reason": "UNDOMINATED"}

    def test_verify_bad_certificate(self, capsys, tmp_path):
        path = tmp_path / "bad.cert"
        path.write_text("1 9\n", encoding="utf-8")
        status, _, _ = run(capsys, "verify", "--family", "cycle-clique", "--n", "4", "--m", "3",
                           "--param", "dom", "--set", str(path))
        assert status == ExitCodes.PARSE_ERROR

    def test_undecodable_certificate(self, capsys, tmp_path):
        path = tmp_path / "binary.cert"
        path.write_bytes(b"1 1\n\x80\x81\n")
        status, _, err = run(capsys, "verify", "--family", "cycle-clique", "--n", "4", "--m", "3",
                             "--param", "dom", "--set", str(path))
        assert status == ExitCodes.PARSE_ERROR
        assert "input error" in err

    def test_gen_to_stdout_and_file(self, capsys, tmp_path):
        status, out, _ = run(capsys, "gen", "--family", "path-clique", "--n", "3", "--m", "3")
        assert status == ExitCodes.SUCCESS
        assert out == write_edge_list(product_instance("path-clique", 3, 3))
        target = tmp_path / "p33.txt"
        run(capsys, "gen", "--family", "path-clique", "--n", "3", "--m", "3", "--output", str(target))
        assert target.read_text(encoding="utf-8") == out


class TestTableCommand:
    """table"""

    def test_text_table(self, capsys):
        status, out, _ = run(capsys, "table", "--param", "dom", "--family", "cycle-clique",
                             "--n-range", "6..7", "--m-range", "3", "--with-solver", "--with-construction")
        assert status == ExitCodes.SUCCESS
        assert "AGREEMENTS 2/2, DISCREPANCIES listed" in out

    def test_discrepancy_is_listed(self, capsys):
        status, out, _ = run(capsys, "table", "--param", "sdom", "--family", "path-clique",
                             "--n-range", "3", "--m-range", "4", "--with-solver")
        assert status == ExitCodes.SUCCESS
        assert "AGREEMENTS 0/1" in out
        assert "DISCREPANCY path-clique sdom n=3 m=4: formula 5, solver 4" in out

    def test_json_rows(self, capsys):
        _, out, _ = run(capsys, "--format", "json", "table", "--param", "sdom", "--family", "cycle-clique",
                        "--n-range", "3..4", "--m-range", "3..4")
        rows = [json.loads(line) for line in out.splitlines()]
        assert [(row["n"], row["m"]) for row in rows] == [(3, 3), (3, 4), (4, 3), (4, 4)]
        assert list(rows[0]) == ["family", "param", "n", "m", "formula", "solver", "construction", "agree"]
        assert rows[0]["solver"] is None

    def test_bad_range(self, capsys):
        status, _, _ = run(capsys, "table", "--param", "dom", "--family", "cycle-clique",
                           "--n-range", "7..6", "--m-range", "3")
        assert status == ExitCodes.PARSE_ERROR

    def test_range_outside_domain(self, capsys):
        status, _, _ = run(capsys, "table", "--param", "dom", "--family", "cycle-clique",
                           "--n-range", "3..4", "--m-range", "1..2")
        assert status == ExitCodes.GUARD_ERROR


class TestErratumCommand:
    """erratum"""

    def test_single_claim(self, capsys):
        status, out, _ = run(capsys, "erratum", "--which", "gravier-bound", "--no-reference")
        assert status == ExitCodes.SUCCESS
        assert out == "gravier-bound: claimed 4, exact 5: REFUTED\n"

    def test_json(self, capsys):
        _, out, _ = run(capsys, "--format", "json", "erratum", "--which", "sitthiwirattham-cycle", "--no-reference")
        assert json.loads(out) == {"claim": "sitthiwirattham-cycle", "n": 6, "m": 8, "claimed": 6, "exact": 4,
                                   "verdict": "REFUTED"}

    def test_budget_exhaustion(self, capsys, mocker):
        solver = mocker.patch("domlab_cli.run_erratum", side_effect=BudgetExceededError(4, 100, 100))
        status, out, err = run(capsys, "erratum", "--which", "gravier-bound", "--budget", "100")
        assert status == ExitCodes.BUDGET_EXCEEDED
        assert out == ""
        assert "budget exceeded: node budget 100 exhausted" in err
        assert solver.call_count == 1

    @pytest.mark.slow
    def test_all_claims(self, capsys):
        status, out, _ = run(capsys, "erratum", "--which", "all")
        assert status == ExitCodes.SUCCESS
        assert out.splitlines() == [
            "sitthiwirattham-path: claimed 6, exact 5: REFUTED",
            "sitthiwirattham-cycle: claimed 6, exact 4: REFUTED",
            "gravier-bound: claimed 4, exact 5: REFUTED",
        ]


class TestLoggingFlags:
    """--log-dir and --log-level"""

    def test_log_directory(self, capsys, tmp_path):
        status, _, _ = run(capsys, "--log-dir", str(tmp_path), "--log-level", "INFO", "formula",
                           "--family", "cycle-clique", "--n", "6", "--m", "3", "--param", "dom")
        assert status == ExitCodes.SUCCESS
        assert "Run Start: formula" in (tmp_path / "cli.log").read_text(encoding="utf-8")

    def test_errors_are_logged(self, capsys, tmp_path):
        run(capsys, "--log-dir", str(tmp_path), "solve", "--graph", "missing.txt", "--param", "dom")
        assert "input error" in (tmp_path / "cli.log").read_text(encoding="utf-8")


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
