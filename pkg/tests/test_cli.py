import json
import math
import subprocess
import sys

import pytest

from specmon.continuation import PathSpec

CMD = [sys.executable, "-m", "specmon"]


def run(*args, expect=0):
    proc = subprocess.run(
        CMD + list(args), capture_output=True, text=True, timeout=300
    )
    assert proc.returncode == expect, (proc.returncode, proc.stdout, proc.stderr)
    return proc


def run_json(*args, expect=0):
    proc = run("--format", "structured", *args, expect=expect)
    return json.loads(proc.stdout)


class TestEigen:
    def test_sheet_values_human(self):
        proc = run("eigen", "--family", "dirac-conv", "--m", "1", "--n", "1",
                   "--omega", "1.5,0")
        assert "sheet 0: 2.0" in proc.stdout
        assert "sheet 1: -2.0" in proc.stdout

    def test_structured_matches_human_precision(self):
        doc = run_json("eigen", "--omega", "0.3,0.7", "--family", "dirac-nested")
        human = run("eigen", "--omega", "0.3,0.7", "--family", "dirac-nested").stdout
        for re_e, im_e in doc["sheets"]:
            assert repr(re_e) in human and repr(abs(im_e)) in human

    def test_signed_energy(self):
        doc = run_json("eigen", "--signs=-,+", "--omega", "1.5")
        assert doc["energy"] == [-2.0, -0.0] or doc["energy"] == [-2.0, 0.0]

    def test_branch_point_is_domain_error(self):
        proc = run("eigen", "--family", "harmonic", "--omega", "0,0", expect=1)
        assert "ValueError" in proc.stderr

    def test_bad_flag_usage_error(self):
        run("eigen", "--omega", "nope", expect=2)
        run("bogus-subcommand", expect=2)


class TestBranchPoints:
    def test_conventional(self):
        doc = run_json("branch-points", "--family", "dirac-conv")
        assert doc["branch_points"] == [{"location": [-0.5, 0.0], "multiplicity": 1}]

    def test_n0_empty(self):
        doc = run_json("branch-points", "--family", "dirac-conv", "--n", "0")
        assert doc["branch_points"] == []


class TestSpinor:
    def test_node_at_origin(self):
        doc = run_json("spinor", "--omega", "1.5", "--points", "3", "--x-max", "2")
        mid = doc["rows"][1]
        assert mid["x"] == 0.0
        assert mid["upper"] == [0.0, 0.0]
        assert mid["lower"][0] == pytest.approx(2 * math.sqrt(1.5))

    def test_vanishing_state_rejected(self):
        proc = run("spinor", "--n", "0", "--signs=-,+", expect=1)
        assert "vanishes" in proc.stderr


class TestContinue:
    def test_circle_path_file(self, tmp_path):
        path_file = tmp_path / "loop.json"
        path_file.write_text(PathSpec.circle(0, 1.0).to_json())
        doc = run_json("continue", "--family", "dirac-conv", "--path", str(path_file),
                       "--start-sheet", "0")
        assert doc["end_sheet"] == 1
        assert doc["final_value"][0] == pytest.approx(-math.sqrt(3.0))

    def test_invalid_path_reported(self, tmp_path):
        path_file = tmp_path / "bad.json"
        path_file.write_text('{"segments": [{"type": "line", "from": [1, 0], "to": [-2, 0]}]}')
        proc = run("continue", "--family", "dirac-conv", "--path", str(path_file), expect=1)
        assert "InvalidPath" in proc.stderr

    def test_missing_file(self):
        run("continue", "--path", "/nonexistent/p.json", expect=1)


class TestMonodromy:
    def test_transposition(self):
        proc = run("monodromy", "--family", "dirac-conv", "--m", "1", "--n", "1",
                   "--center", "0,0", "--radius", "1", "--turns", "1")
        assert "(0 1)" in proc.stdout

    def test_two_turns_identity(self):
        doc = run_json("monodromy", "--family", "dirac-conv", "--radius", "1",
                       "--turns", "2")
        assert doc["permutation"] == [0, 1]
        assert doc["cycles"] == "identity"

    def test_circle_through_branch_point(self):
        proc = run("monodromy", "--family", "dirac-conv", "--radius", "0.5", expect=1)
        assert "InvalidPath" in proc.stderr


class TestPT:
    def test_eigenvalues_and_flag(self):
        doc = run_json("pt", "--omega-abs", "1.0")
        assert doc["pt_broken"] is True
        vals = sorted(v[1] for v in doc["eigenvalues"])
        assert vals == pytest.approx([-1.0, 1.0])

    def test_unbroken(self):
        doc = run_json("pt", "--omega-abs", "0.3", "--transformed")
        assert doc["pt_broken"] is False
        assert all(v[1] == pytest.approx(0.0) for v in doc["eigenvalues"])

    def test_nonpositive_rejected(self):
        run("pt", "--omega-abs", "0", expect=1)


class TestSurface:
    def test_writes_mesh(self, tmp_path):
        dest = tmp_path / "mesh.csv"
        doc = run_json("surface", "--family", "dirac-conv", "--resolution", "11",
                       "--re-range=-1,1", "--im-range=-1,1",
                       "--output", str(dest))
        text = dest.read_text()
        assert text.splitlines()[0] == "re_omega,im_omega,sheet,re_E,im_E"
        assert doc["rows"] == len(text.splitlines()) - 1


class TestVerify:
    def test_fast_suites_pass(self):
        for suite in ("hermite", "pt", "monodromy"):
            doc = run_json("verify", "--suite", suite)
            assert doc["passed"] is True
            assert all(c["passed"] for c in doc["checks"])

    def test_unknown_suite_usage_error(self):
        run("verify", "--suite", "everything", expect=2)
