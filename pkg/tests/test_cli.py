import argparse
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from superport import (
    Report,
    c2l,
    canonical_network,
    dumps_circuit,
    dumps_network,
    electrical_response,
    load_network,
    loads_network,
    make_circuit,
    rat,
)
from superport.cli import _emit_reports, main

from conftest import FIXTURE_NAMES, fixture_path, w_network


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_network(tmp_path, net, name="net.json"):
    path = tmp_path / name
    path.write_text(dumps_network(net))
    return str(path)


class TestValidate:
    def test_text_summary(self, capsys):
        code, out, err = run_cli(capsys, "validate", str(fixture_path("w-network.json")))
        assert code == 0
        assert out == "valid: 5 vertices, 4 edges, 5 boundary in 2 superports\n"

    def test_json_round_trip(self, capsys):
        for name in FIXTURE_NAMES:
            code, out, _ = run_cli(
                capsys, "validate", str(fixture_path(name)), "--format", "json"
            )
            assert code == 0
            assert loads_network(out) == load_network(fixture_path(name))

    def test_relabeling_reported(self, capsys, tmp_path):
        raw = tmp_path / "messy.json"
        raw.write_text(json.dumps({
            "vertices": 2,
            "edges": [{"u": 7, "v": 9, "c": "1"}],
            "superports": [[9], [7]],
        }))
        code, out, _ = run_cli(capsys, "validate", str(raw))
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "valid: 2 vertices, 1 edges, 2 boundary in 2 superports"
        assert lines[1] == "relabeled: 7->2, 9->1"

    def test_merge_parallel_flag(self, capsys, tmp_path):
        raw = tmp_path / "doubled.json"
        raw.write_text(json.dumps({
            "vertices": 2,
            "edges": [{"u": 1, "v": 2, "c": "1"}, {"u": 1, "v": 2, "c": "2"}],
            "superports": [[1, 2]],
        }))
        code, _, err = run_cli(capsys, "validate", str(raw))
        assert code == 2
        assert "MultiEdge" in err
        code, out, _ = run_cli(capsys, "validate", str(raw), "--merge-parallel",
                               "--format", "json")
        assert code == 0
        assert loads_network(out).conductance(1, 2) == 3


class TestSolve:
    def test_text_output(self, capsys, tmp_path):
        net = canonical_network([(1, 3, 2), (2, 3, 3)], [[1, 2]])
        path = tmp_path / "circuit.json"
        path.write_text(dumps_circuit(make_circuit(net, {1: 1})))
        code, out, _ = run_cli(capsys, "solve", str(path))
        assert code == 0
        assert out.splitlines() == [
            "U[1] = 1",
            "U[2] = 0",
            "U[3] = 2/5",
            "I[1,3] = 6/5",
            "I[2,3] = -6/5",
            "in[1] = 6/5",
            "in[2] = -6/5",
        ]

    def test_json_output(self, capsys, tmp_path):
        net = w_network(2, 3, 5, 7)
        path = tmp_path / "circuit.json"
        path.write_text(dumps_circuit(make_circuit(net, {1: 1, 2: 0, 4: 2})))
        code, out, _ = run_cli(capsys, "solve", str(path), "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert set(data) == {"voltages", "currents", "incoming"}
        assert len(data["voltages"]) == net.n
        # conservation at every interior vertex is visible in the edge list
        incoming = [rat(x) for x in data["incoming"]]
        assert sum(incoming[:3]) == 0 and sum(incoming[3:]) == 0


class TestResponse:
    def test_default_is_superport_response(self, capsys):
        code, out, _ = run_cli(
            capsys, "response", str(fixture_path("w-network.json")), "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        net = load_network(fixture_path("w-network.json"))
        expected = c2l(electrical_response(net), net.superports)
        assert data["row_labels"] == list(expected.row_labels)
        assert data["col_labels"] == list(expected.col_labels)
        got = [[rat(x) for x in row] for row in data["entries"]]
        assert got == [list(row) for row in expected.entries]

    @pytest.mark.parametrize("show,size", [("K", 6), ("C", 4), ("Lext", 4)])
    def test_other_matrices(self, capsys, show, size):
        code, out, _ = run_cli(
            capsys, "response", str(fixture_path("fig1-twoport.json")),
            "--show", show, "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert len(data["entries"]) == size
        assert data["row_labels"] == list(range(1, size + 1))

    def test_text_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "response", str(fixture_path("k4.json")), "--show", "C"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "C rows [1, 2, 3, 4] cols [1, 2, 3, 4]"
        assert lines[1] == "  1: 3 -1 -1 -1"

    def test_all_roots_has_no_L(self, capsys, tmp_path):
        net = canonical_network([(1, 2, 1)], [[1], [2]])
        path = write_network(tmp_path, net)
        code, _, err = run_cli(capsys, "response", str(path))
        assert code == 2
        assert "no non-root vertices" in err


class TestForests:
    def triangle(self, tmp_path):
        net = canonical_network([(1, 2, 1), (1, 3, 1), (2, 3, 1)], [[1, 2, 3]])
        return write_network(tmp_path, net)

    def test_all_in_order(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "forests", self.triangle(tmp_path))
        assert code == 0
        assert out.splitlines() == ["", "0", "0 1", "0 2", "1", "1 2", "2"]

    def test_trees_and_valid(self, capsys, tmp_path):
        path = self.triangle(tmp_path)
        code, trees, _ = run_cli(capsys, "forests", path, "--kind", "trees")
        assert code == 0
        assert trees.splitlines() == ["0 1", "0 2", "1 2"]
        # every edge joins vertices of the one superport, so the only
        # forest whose contraction stays a tree is the empty one
        code, valid, _ = run_cli(capsys, "forests", path, "--kind", "valid")
        assert code == 0
        assert valid == "\n"

    def test_weights_column(self, capsys, tmp_path):
        net = canonical_network([(1, 2, "1/2"), (1, 3, 3), (2, 3, 1)], [[1, 2, 3]])
        path = write_network(tmp_path, net)
        code, out, _ = run_cli(capsys, "forests", path, "--kind", "trees", "--weights")
        assert code == 0
        assert out.splitlines() == ["0 1\t3/2", "0 2\t1/2", "1 2\t3"]

    def test_relative_kind(self, capsys):
        path = str(fixture_path("fig7-square.json"))
        code, out, _ = run_cli(capsys, "forests", path, "--kind", "relative:1")
        assert code == 0
        # each line is one forest with exactly two edges
        assert out and all(len(line.split()) == 2 for line in out.splitlines())

    def test_relative_requires_boundary(self, capsys, tmp_path):
        net = canonical_network([(1, 2, 1), (2, 3, 1)], [[1, 2]])
        path = write_network(tmp_path, net)
        code, _, err = run_cli(capsys, "forests", path, "--kind", "relative:3")
        assert code == 2
        assert "not a boundary vertex" in err

    def test_unknown_kind(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "forests", self.triangle(tmp_path), "--kind", "bogus"
        )
        assert code == 2
        assert "unknown kind" in err

    def test_cap_enforced(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "forests", self.triangle(tmp_path), "--cap", "2"
        )
        assert code == 2
        assert "CapExceeded" in err


class TestVerify:
    def test_detl_on_fixture(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", str(fixture_path("w-network.json")), "--theorem", "detl"
        )
        assert code == 0
        assert out.startswith("det-response: pass")

    def test_all_on_fixture_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", str(fixture_path("fig7-square.json")),
            "--seed", "3", "--format", "json",
        )
        assert code == 0
        reports = json.loads(out)
        assert reports and all(r["status"] == "pass" for r in reports)
        names = {r["theorem"] for r in reports}
        assert {"kirchhoff", "kenyon-wilson", "det-response", "signed-sum"} <= names

    def test_campaign_runs(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--campaign", "2", "--seed", "11", "--theorem", "detl"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines and all(line.startswith("det-response: pass") for line in lines)

    def test_campaign_is_reproducible(self, capsys):
        argv = ["verify", "--campaign", "3", "--seed", "5"]
        code1, out1, _ = run_cli(capsys, *argv)
        code2, out2, _ = run_cli(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_file_and_campaign_conflict(self, capsys):
        code, _, err = run_cli(
            capsys, "verify", str(fixture_path("k4.json")), "--campaign", "2"
        )
        assert code == 2
        assert "not both" in err
        code, _, err = run_cli(capsys, "verify")
        assert code == 2

    def test_inapplicable_theorem(self, capsys, tmp_path):
        net = canonical_network([(1, 2, 1)], [[1], [2]])
        path = write_network(tmp_path, net)
        code, _, err = run_cli(capsys, "verify", path, "--theorem", "detl")
        assert code == 2
        assert "does not apply" in err

    def test_unknown_theorem_rejected_by_parser(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--campaign", "1", "--theorem", "nope"])
        assert exc.value.code == 2


class TestCount:
    def test_cayley_text(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--cayley", "4")
        assert code == 0
        assert out == "16\n"

    def test_cayley_json(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--cayley", "5", "--format", "json")
        assert code == 0
        assert json.loads(out) == {
            "m": 5, "count": 125, "closed_form": 125, "status": "pass",
        }

    def test_gencayley(self, capsys, tmp_path):
        sizes_file = tmp_path / "sizes.json"
        sizes_file.write_text(json.dumps({"sizes": [2, 2]}))
        code, out, _ = run_cli(capsys, "count", "--gencayley", str(sizes_file))
        assert code == 0
        assert out.startswith("grouped-tree-count: pass")

    def test_gencayley_bad_file(self, capsys, tmp_path):
        sizes_file = tmp_path / "bad.json"
        sizes_file.write_text(json.dumps({"groups": [2, 2]}))
        code, _, err = run_cli(capsys, "count", "--gencayley", str(sizes_file))
        assert code == 2
        assert "sizes" in err

    def test_flags_are_exclusive(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["count", "--cayley", "3", "--gencayley", "x.json"])
        assert exc.value.code == 2


class TestBoxH:
    def test_unit_values(self, capsys):
        code, out, _ = run_cli(capsys, "boxh", "1", "1", "1", "1")
        assert code == 0
        assert out.splitlines() == [
            "A = 1/4", "B = 1/4", "C = 1/4", "D = 1/4", "E = 1/4",
            "responses equal",
        ]

    def test_rational_arguments(self, capsys):
        code, out, _ = run_cli(
            capsys, "boxh", "2", "1", "1", "2", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert data == {
            "A": "1/3", "B": "1/6", "C": "2/3", "D": "1/3", "E": "1/3",
            "status": "pass",
        }

    def test_bad_argument(self, capsys):
        code, _, err = run_cli(capsys, "boxh", "0", "1", "1", "1")
        assert code == 2


class TestErrorPaths:
    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "validate", "/nonexistent/net.json")
        assert code == 2
        assert "cannot read" in err

    def test_invalid_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _, err = run_cli(capsys, "validate", str(path))
        assert code == 2
        assert "JSON" in err or "SchemaError" in err

    def test_schema_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"edges": [], "superports": [[1]]}))
        code, _, err = run_cli(capsys, "validate", str(path))
        assert code == 2

    def test_failing_report_exits_one(self, capsys):
        # the plumbing for a failed check: witness printed, exit code 1;
        # exercised directly because the identities themselves never fail
        bad = Report(theorem="demo", status="fail", lhs="1", rhs="2",
                     checks=1, witness={"edge": 0})
        code = _emit_reports([bad], argparse.Namespace(format="text"))
        out = capsys.readouterr().out
        assert code == 1
        assert "demo: fail (1 checks, 1 vs 2)" in out
        assert '"edge": 0' in out

    def test_failing_report_json(self, capsys):
        bad = Report(theorem="demo", status="fail", lhs="1", rhs="2",
                     checks=1, witness={"k": "v"})
        code = _emit_reports([bad], argparse.Namespace(format="json"))
        out = capsys.readouterr().out
        assert code == 1
        assert json.loads(out)[0]["witness"] == {"k": "v"}


class TestEntryPoints:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "superport", "count", "--cayley", "3"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "3\n"

    def test_help_lists_subcommands(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--help"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        for name in ("validate", "solve", "response", "forests", "verify",
                     "count", "boxh"):
            assert name in out
