from __future__ import annotations

import csv
import io
import json
import math
import subprocess
import sys

import pytest
from gmpy2 import mpq

from rigiditykit.cli import main
from rigiditykit.report import Report, render


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out else None, err


class TestCertify:
    def test_hand_example(self, capsys):
        code, doc, _ = run_json(capsys, "certify", "--lambdas", "0,1,2", "--r", "1")
        assert code == 0
        assert doc["schema_version"] == 1 and doc["command"] == "certify"
        assert doc["L"] == doc["L_direct"] == doc["L_factored"] == "-1/2"
        assert doc["b"] == ["1", "1/2"] and doc["d"] == ["2", "-1/2"] and doc["B"] == "3/2"
        assert all(doc["identity_flags"].values())
        assert doc["bound_chain"]["branch"] == "max"
        assert [row["p"] for row in doc["rows"]] == [2, 3]

    def test_negative_values_need_equals_syntax(self, capsys):
        code, doc, _ = run_json(capsys, "certify", "--lambdas=-1,0,1", "--r", "2")
        assert code == 0 and doc["B"] == "0" and doc["bound_chain"]["branch"] == "min"

    @pytest.mark.parametrize(
        "lambdas, r, code",
        [("0,1,1", "1", 3), ("0,1", "1", 3), ("0,x,2", "1", 2), ("0,1,2", "7", 2), ("0,1/0,2", "1", 2)],
    )
    def test_exit_codes(self, capsys, lambdas, r, code):
        got, out, err = run(capsys, "certify", "--lambdas", lambdas, "--r", r)
        assert got == code and out == "" and err.startswith("error:")


class TestScan:
    def test_small_scan(self, capsys):
        code, doc, err = run_json(capsys, "scan", "--n", "3..4", "--trials", "5", "--seed", "7")
        assert code == 0 and doc["violations"] == 0
        assert doc["certificates"] == 5 * 3 + 5 * 4
        assert [row["n"] for row in doc["rows"]] == [3, 4]
        assert "wall time" in err
        for row in doc["rows"]:
            assert mpq(row["L_min"]) <= mpq(row["L_max"]) < 0

    def test_deterministic(self, capsys):
        first = run(capsys, "scan", "--n", "3..5", "--trials", "10", "--seed", "42")
        second = run(capsys, "scan", "--n", "3..5", "--trials", "10", "--seed", "42")
        assert first[0] == second[0] == 0 and first[1] == second[1]

    def test_seed_changes_output(self, capsys):
        a = run(capsys, "scan", "--n", "3", "--trials", "5", "--seed", "1")[1]
        b = run(capsys, "scan", "--n", "3", "--trials", "5", "--seed", "2")[1]
        assert a != b

    def test_env_seed_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("RIGIDITYKIT_SEED", "9")
        _, doc, _ = run_json(capsys, "scan", "--n", "3", "--trials", "2")
        assert doc["seed"] == 9
        monkeypatch.delenv("RIGIDITYKIT_SEED")
        _, doc, _ = run_json(capsys, "scan", "--n", "3", "--trials", "2")
        assert doc["seed"] == 0

    @pytest.mark.parametrize(
        "argv",
        [
            ["--trials", "0"],
            ["--n", "2..4"],
            ["--n", "5..4"],
            ["--n", "abc"],
            ["--seed", "-1"],
            ["--seed", "x"],
            ["--bound", "0"],
        ],
    )
    def test_bad_arguments(self, capsys, argv):
        assert run(capsys, "scan", *argv)[0] == 2

    def test_violation_exit_code(self, capsys, monkeypatch):
        import rigiditykit.cli as cli
        from rigiditykit.errors import InequalityViolation

        def broken(s, r, tol):
            raise InequalityViolation("forced")

        monkeypatch.setattr(cli, "certify", broken)
        code, doc, err = run_json(capsys, "scan", "--n", "3", "--trials", "1")
        assert code == 1 and doc["violations"] == 3 and "violation" in err


class TestDerivatives:
    def test_exact_example(self, capsys):
        code, doc, _ = run_json(capsys, "derivatives", "--lambdas", "0,1,2", "--fj", "6")
        assert code == 0
        assert doc["generic"] == doc["closed_form"] == ["1", "-2", "1"]
        assert doc["max_discrepancy"] == "0" and doc["moments_hold"] and doc["det"] == "2"

    def test_float_path(self, capsys):
        code, doc, _ = run_json(capsys, "derivatives", "--lambdas", "0,1,2", "--fj", "6", "--float")
        assert code == 0 and doc["kind"] == "float64"
        assert doc["closed_form"] == pytest.approx([1.0, -2.0, 1.0])
        assert doc["residual_generic"] < 1e-12

    def test_single_fj(self, capsys):
        assert run(capsys, "derivatives", "--lambdas", "0,1,2", "--fj", "1,2")[0] == 2


class TestStokes:
    @pytest.mark.parametrize("f, A, rigid", [("6,0,0", "-2", False), ("6,6,6", "-6", False), ("0,0,0", "0", True)])
    def test_examples(self, capsys, f, A, rigid):
        code, doc, _ = run_json(capsys, "stokes", "--lambdas", "0,1,2", "--f", f)
        assert code == 0 and doc["A"] == doc["A_via_L"] == doc["A_via_triple_sum"] == A
        assert doc["is_rigid"] is rigid

    def test_errors(self, capsys):
        assert run(capsys, "stokes", "--lambdas", "0,1", "--f", "1,1")[0] == 3
        assert run(capsys, "stokes", "--lambdas", "0,1,2", "--f", "1,1")[0] == 2


class TestIsoparametric:
    def test_minimal_g3(self, capsys):
        code, doc, _ = run_json(capsys, "isoparametric", "--n", "3", "--g", "3", "--minimal")
        assert code == 0
        assert abs(doc["theta_star"] - math.pi / 6) <= 1e-10 and abs(doc["S"] - 6) <= 1e-10

    def test_sweep_csv(self, capsys):
        code, out, _ = run(capsys, "isoparametric", "--n", "4", "--g", "4", "--samples", "10", "--output", "csv")
        assert code == 0 and "\r" not in out
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["theta", "l1", "l2", "l3", "l4", "H", "S", "R"]
        assert len(rows) == 11
        assert max(abs(float(r[-1])) for r in rows[1:]) <= 1e-9

    def test_control_family_does_not_fail(self, capsys):
        code, doc, _ = run_json(
            capsys, "isoparametric", "--n", "4", "--g", "2", "--multiplicities", "1,3", "--samples", "5"
        )
        assert code == 0 and doc["passed"] is False and doc["simple"] is False

    @pytest.mark.parametrize("argv", [["--n", "5", "--g", "5"], ["--n", "4", "--g", "4", "--samples", "0"]])
    def test_bad_input(self, capsys, argv):
        assert run(capsys, "isoparametric", *argv)[0] == 2


class TestClifford:
    def test_example(self, capsys):
        code, doc, _ = run_json(capsys, "clifford", "--n", "4", "--r", "1")
        assert code == 0 and doc["multiplicities"] == [1, 3]
        assert abs(doc["p1"]) <= 1e-12 and abs(doc["p2"] - 4) <= 1e-12

    def test_range(self, capsys):
        assert run(capsys, "clifford", "--n", "4", "--r", "4")[0] == 2


def test_missing_subcommand(capsys):
    assert run(capsys)[0] == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "certify", "--lambdas", "0,1,2", "--r", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["L"] == "-1/2"


def test_text_output(capsys):
    code, out, _ = run(capsys, "certify", "--lambdas", "0,1,2", "--r", "1", "--output", "text")
    assert code == 0 and out.startswith("command: certify\n") and "L: -1/2" in out


def test_module_entry_point():
    argv = [sys.executable, "-m", "rigiditykit", "scan", "--n", "3..4", "--trials", "3", "--seed", "42"]
    first = subprocess.run(argv, capture_output=True, check=True)
    second = subprocess.run(argv, capture_output=True, check=True)
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["violations"] == 0


class TestReport:
    def test_json_scalars(self):
        rep = Report("x", {"q": mpq(-3, 4), "f": 1.0, "g": 0.1, "flag": True, "xs": [mpq(1, 2), 2]})
        doc = json.loads(render(rep, "json"))
        assert doc == {"schema_version": 1, "command": "x", "q": "-3/4", "f": 1.0, "g": 0.1, "flag": True,
                       "xs": ["1/2", 2]}
        assert '"f": 1.0' in render(rep, "json")
        assert '"g": 0.10000000000000001' in render(rep, "json")

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            render(Report("x", {"bad": math.nan}), "json")

    def test_csv_key_value_fallback(self):
        out = render(Report("x", {"a": 1, "nested": {"b": mpq(1, 3)}}), "csv")
        assert out == "key,value\na,1\nnested.b,1/3\n"
