"""Tests for the command-line front-end: reports, verdicts, exit codes.

Exit-code contract: 0 when no verdict fails, 1 when any verdict fails,
2 on input errors or unknown subcommands.  Reports are byte-stable
unless ``--timing`` is passed.
"""

import json
import shutil
from pathlib import Path

import pytest

from knotcocycle.cli import main
from knotcocycle.morse import gramain, load_knot_fixture, path_to_json
from knotcocycle.relations import relator_set_from_json
from knotcocycle.vassiliev import fixture_root


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture(scope="module")
def quad_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("quad") / "quad.json"
    p.write_text(json.dumps({"order": 8, "maxRefine": 4, "tol": 1e-6}))
    return str(p)


@pytest.fixture(scope="module")
def loop_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("paths") / "hump_loop.json"
    p.write_text(json.dumps(path_to_json(gramain(load_knot_fixture("hump")))))
    return str(p)


class TestExitCodes:
    def test_unknown_subcommand(self, capsys):
        # [TRIVIAL]
        assert run(capsys, "bogus")[0] == 2

    def test_missing_input(self, capsys):
        code, out, err = run(capsys, "z", "--knot", "no_such_knot")
        assert code == 2
        assert out == ""
        assert "no such knot" in err

    def test_family_degree_conflict(self, capsys):
        code, _, err = run(capsys, "relations", "--family", "16T", "--degree", "2")
        assert code == 2
        assert "degree 3" in err

    def test_degree_required(self, capsys):
        assert run(capsys, "relations", "--family", "2T")[0] == 2

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0

    def test_failed_verdict_exits_one(self, capsys, tmp_path):
        # corrupting one printed fixture entry makes the structured match
        # fail, which must surface as exit status 1, not an exception
        fixture_src = Path(str(fixture_root()))
        bad = tmp_path / "appendixC"
        shutil.copytree(fixture_src / "appendixC", bad)
        data = json.loads((bad / "m1.json").read_text())
        row, col, val = data["entries"][0]
        data["entries"][0] = [row, col, "7"]
        (bad / "m1.json").write_text(json.dumps(data))
        code, report = run_json(capsys, "verify-appendix", "--fixture-dir", str(tmp_path))
        assert code == 1
        assert report["verdicts"]["m1MatchesPrinted"] == "fail"


class TestReports:
    def test_verify_appendix_rank_ten(self, capsys):
        # [PAPER] the tree-configuration matrix has rank 10; all structured
        # checks against the printed fixtures pass
        code, report = run_json(capsys, "verify-appendix")
        assert code == 0
        assert report["command"] == "verify-appendix"
        assert report["outputs"]["ranks"]["m1"] == 10
        assert set(report["verdicts"].values()) == {"pass"}

    def test_byte_stability(self, capsys):
        # identical inputs give identical bytes; wall time is opt-in
        _, first, _ = run(capsys, "verify-appendix")
        _, second, _ = run(capsys, "verify-appendix")
        assert first == second
        assert "wallTimeSeconds" not in first
        _, timed, _ = run(capsys, "verify-appendix", "--timing")
        assert "wallTimeSeconds" in timed

    def test_out_file(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        code, stdout, _ = run(capsys, "weights", "--degree", "2", "--out", str(out))
        assert code == 0
        assert stdout == ""
        report = json.loads(out.read_text())
        assert report["outputs"]["dimension"] == 1

    def test_digest_depends_on_inputs(self, capsys):
        _, r2 = run_json(capsys, "weights", "--degree", "2")
        _, r3 = run_json(capsys, "weights", "--degree", "3")
        assert r2["inputs"]["digest"] != r3["inputs"]["digest"]


class TestRelationCommands:
    def test_relations_2t_two_terms(self, capsys):
        # [PAPER] every two-term relator has exactly two terms
        code, report = run_json(capsys, "relations", "--family", "2T", "--degree", "3")
        assert code == 0
        assert report["verdicts"]["relatorTermCounts"] == "pass"
        assert set(report["outputs"]["termCounts"]) == {2}
        rs = relator_set_from_json(report["outputs"]["relatorSet"])
        assert rs.family == "2T" and rs.degree == 3
        assert len(rs.relators) == report["outputs"]["count"]

    def test_relations_16t(self, capsys):
        # [PAPER] three relators of 16 slotted terms
        code, report = run_json(capsys, "relations", "--family", "16T")
        assert code == 0
        assert report["outputs"]["termCounts"] == [16, 16, 16]

    def test_weights_degree_three(self, capsys):
        # [PAPER] the degree-three weight space is 11-dimensional
        code, report = run_json(capsys, "weights", "--degree", "3")
        assert code == 0
        assert report["outputs"]["dimension"] == 11
        assert report["verdicts"]["annihilatesRelators"] == "pass"

    def test_curvature(self, capsys):
        # [PAPER] rank 6, three flips, derived row space equals curvature
        code, report = run_json(capsys, "curvature", "--strands", "4")
        assert code == 0
        assert set(report["verdicts"].values()) == {"pass"}
        assert report["outputs"]["rank"] == 6
        assert report["outputs"]["flips"] == [6, 10, 11]

    def test_curvature_wrong_strands(self, capsys):
        assert run(capsys, "curvature", "--strands", "3")[0] == 2

    def test_tree_lemma(self, capsys):
        # [PAPER] all labelled trees up to four points, 16 of them at p=4
        code, report = run_json(capsys, "tree-lemma", "--max-p", "4")
        assert code == 0
        assert report["verdicts"]["proportionalAllTrees"] == "pass"
        assert report["outputs"]["treeCounts"] == {"2": 1, "3": 3, "4": 16}


class TestIntegralCommands:
    def test_z_on_fixture(self, capsys, quad_file):
        code, report = run_json(capsys, "z", "--knot", "hump", "--quad", quad_file)
        assert code == 0
        assert report["verdicts"]["imagWithinError"] == "pass"
        assert {"raw", "corrected"} <= set(report["outputs"])

    def test_z_on_file(self, capsys, tmp_path, quad_file):
        from knotcocycle.morse import knot_to_json

        knot_file = tmp_path / "hump.json"
        knot_file.write_text(json.dumps(knot_to_json(load_knot_fixture("hump"))))
        code, report = run_json(capsys, "z", "--knot", str(knot_file), "--quad", quad_file)
        assert code == 0
        assert report["inputs"]["knotSha256"]

    def test_z1_path_file(self, capsys, loop_file, quad_file):
        code, report = run_json(capsys, "z1", "--path", loop_file, "--quad", quad_file)
        assert code == 0
        assert report["verdicts"]["relatorsAnnihilated"] == "pass"
        assert report["outputs"]["vector"]["degree"] == 3

    def test_z1_gramain_mode(self, capsys, quad_file):
        code, report = run_json(
            capsys, "z1", "gramain", "--knot", "hump", "--quad", quad_file
        )
        assert code == 0
        assert report["inputs"]["loop"] == "gramain"

    def test_z1_gramain_requires_knot(self, capsys):
        assert run(capsys, "z1", "gramain")[0] == 2

    def test_z1_requires_path(self, capsys):
        assert run(capsys, "z1")[0] == 2

    def test_consistency_gramain(self, capsys, quad_file):
        code, report = run_json(
            capsys, "consistency", "gramain", "--knot", "hump", "--quad", quad_file
        )
        assert code == 0
        assert report["verdicts"]["oracleAgreement"] == "pass"
        assert len(report["outputs"]["functionals"]) == 11

    def test_experiment_commute_reports_skip(self, capsys, loop_file, quad_file):
        # the commutation question is open: the verdict is a skip (which
        # does not fail the run) and the numbers are reported as-is
        code, report = run_json(
            capsys, "experiment", "commute", "--path", loop_file, "--quad", quad_file
        )
        assert code == 0
        assert report["verdicts"]["commuteWithinError"] == "skip"
        assert "maxCoeffDiff" in report["outputs"]
