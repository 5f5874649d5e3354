"""Command-line contract: JSON in, one JSON document out, exit codes."""

import json
import subprocess
import sys

import pytest

from surfcob import InternalLogicError
from surfcob.cli import fixture_path, main

QUERY_FIXTURES = {
    "rp2-pair-closed.json": {"answer": "no", "obstructions": ["euler"]},
    "rp2-pair-boundary.json": {"answer": "yes"},
    "rp2-pair-concordant.json": {"answer": "no", "obstructions": ["euler"]},
    "balance-yes.json": {"answer": "yes"},
    "balance-no.json": {"answer": "no", "obstructions": ["euler_balance"]},
}

DIAGRAM_FIXTURES = [
    "p11-t00.json",
    "no-uniform-vector.json",
    "three-column-staged.json",
    "cross-disagreements.json",
    "parity-fail.json",
]

ALL_FIXTURES = sorted(
    list(QUERY_FIXTURES)
    + DIAGRAM_FIXTURES
    + ["hopf-seifert-framings.json", "massey-chi1.json", "z-mod-2.json"]
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


class TestDecide:
    @pytest.mark.parametrize("name", sorted(QUERY_FIXTURES))
    def test_fixture_verdicts(self, capsys, name):
        code, doc, _ = run_cli(capsys, "decide", fixture_path(name))
        assert code == 0
        want = QUERY_FIXTURES[name]
        assert doc["answer"] == want["answer"]
        if "obstructions" in want:
            assert doc["obstructions"] == want["obstructions"]
        else:
            assert "obstructions" not in doc

    def test_repeat_runs_are_byte_identical(self, capsys):
        path = fixture_path("rp2-pair-closed.json")
        _, _, first = run_cli(capsys, "decide", path)
        _, _, second = run_cli(capsys, "decide", path)
        assert first == second
        assert first.endswith("\n")

    def test_certificate_trace_flag(self, capsys, tmp_path):
        query = {
            "schema_version": "1",
            "kind": "query",
            "question": "almost_extendable",
            "ambient": {
                "orientable": True,
                "groups": {
                    "h2_abs_mod2": {"free_rank": 0, "invariant_factors": [2]}
                },
            },
            "surfaces": [
                {
                    "components": [
                        {
                            "orientable": False,
                            "euler_characteristic": 1,
                            "boundary": [],
                        }
                    ],
                    "euler": [3],
                    "class_mod2": {"group": "h2_abs_mod2", "coords": [0]},
                },
                {
                    "components": [
                        {
                            "orientable": False,
                            "euler_characteristic": 1,
                            "boundary": [],
                        }
                    ],
                    "euler": [3],
                    "class_mod2": {"group": "h2_abs_mod2", "coords": [0]},
                },
            ],
            "z": {"class": {"group": "h2_abs_mod2", "coords": [0]}, "e_a": 3, "e_b": 3},
        }
        qfile = tmp_path / "query.json"
        qfile.write_text(json.dumps(query))
        code, plain, _ = run_cli(capsys, "decide", str(qfile))
        assert code == 0
        assert plain["answer"] == "yes"
        assert "trace" not in plain["certificate"]
        code, traced, _ = run_cli(capsys, "decide", "--trace", str(qfile))
        assert code == 0
        trace = traced["certificate"]["trace"]
        assert set(trace) >= {"initial_hash", "seed", "moves", "final_hash"}


class TestDiagramCommands:
    @pytest.mark.parametrize("name", DIAGRAM_FIXTURES)
    def test_normalize_matches_expectations(self, capsys, name):
        with open(fixture_path(name)) as fh:
            expect = json.load(fh).get("expect", {})
        code, doc, _ = run_cli(capsys, "diagram-normalize", fixture_path(name))
        assert code == 0
        if expect.get("normalize_feasible", True):
            assert doc["feasible"] is True
            assert {"diagram", "table", "uniform", "moves"} <= set(doc)
            assert "trace" not in doc
        else:
            assert doc["feasible"] is False
            assert doc["reason"] == expect["reason"]

    @pytest.mark.parametrize("name", DIAGRAM_FIXTURES)
    def test_oracle_matches_expectations(self, capsys, name):
        with open(fixture_path(name)) as fh:
            expect = json.load(fh).get("expect", {})
        code, doc, _ = run_cli(capsys, "diagram-oracle", fixture_path(name))
        assert code == 0
        if "oracle_assignment" in expect:
            assert doc["assignment"] == expect["oracle_assignment"]

    def test_normalize_trace_replays(self, capsys):
        path = fixture_path("cross-disagreements.json")
        code, doc, _ = run_cli(capsys, "diagram-normalize", "--trace", path)
        assert code == 0
        assert doc["feasible"] is True
        assert doc["trace"]["moves"]
        assert len(doc["trace"]["hashes"]) == len(doc["trace"]["moves"])
        assert doc["moves"] == len(doc["trace"]["moves"])


class TestHomology:
    def test_fixture(self, capsys):
        code, doc, _ = run_cli(capsys, "homology", fixture_path("z-mod-2.json"))
        assert code == 0
        assert doc == {"free_rank": 0, "invariant_factors": [2]}

    def test_cycle_class(self, capsys, tmp_path):
        complex_doc = {
            "schema_version": "1",
            "kind": "complex",
            "ring": "Z",
            "degree": 1,
            "boundary_maps": {"2": [[2]]},
            "cycle": [3],
        }
        cfile = tmp_path / "complex.json"
        cfile.write_text(json.dumps(complex_doc))
        code, doc, _ = run_cli(capsys, "homology", str(cfile))
        assert code == 0
        assert doc["class"] == [1]


class TestValidate:
    def test_all_bundled_fixtures(self, capsys):
        paths = [fixture_path(n) for n in ALL_FIXTURES]
        code, doc, _ = run_cli(capsys, "validate", *paths)
        assert code == 0
        assert doc["valid"] is True
        assert len(doc["files"]) == len(ALL_FIXTURES)
        kinds = {entry["kind"] for entry in doc["files"]}
        assert kinds == {"query", "diagram", "complex", "reference"}


class TestErrorHandling:
    def test_missing_file(self, capsys):
        code, doc, _ = run_cli(capsys, "decide", "/nonexistent/q.json")
        assert code == 2
        assert doc["error"]["type"] == "InputError"

    def test_invalid_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, doc, _ = run_cli(capsys, "decide", str(bad))
        assert code == 2
        assert "not valid JSON" in doc["error"]["message"]

    def test_schema_violation_reports_path(self, capsys, tmp_path):
        doc_in = {
            "schema_version": "1",
            "kind": "diagram",
            "diagram": {"mode": "five_column", "components": [], "double_points": []},
        }
        f = tmp_path / "d.json"
        f.write_text(json.dumps(doc_in))
        code, doc, _ = run_cli(capsys, "diagram-normalize", str(f))
        assert code == 2
        assert doc["error"]["path"] == "diagram/mode"

    def test_wrong_schema_version(self, capsys, tmp_path):
        f = tmp_path / "d.json"
        f.write_text(json.dumps({"schema_version": "2", "kind": "diagram"}))
        code, doc, _ = run_cli(capsys, "diagram-oracle", str(f))
        assert code == 2
        assert doc["error"]["path"] == "schema_version"

    def test_wrong_kind_for_subcommand(self, capsys):
        code, doc, _ = run_cli(capsys, "homology", fixture_path("p11-t00.json"))
        assert code == 2
        assert doc["error"]["path"] == "kind"

    def test_internal_error_exits_three(self, capsys, monkeypatch):
        from surfcob import cli as cli_module

        def boom(*args, **kwargs):
            raise InternalLogicError("invariant violated")

        monkeypatch.setattr(cli_module._decide, "decide_cobordant", boom)
        code, doc, _ = run_cli(
            capsys, "decide", fixture_path("rp2-pair-closed.json")
        )
        assert code == 3
        assert doc["error"]["type"] == "InternalLogicError"

    def test_unexpected_exception_exits_three(self, capsys, monkeypatch):
        from surfcob import cli as cli_module

        monkeypatch.setattr(
            cli_module, "oracle_assign", lambda d: 1 / 0
        )
        code, doc, _ = run_cli(
            capsys, "diagram-oracle", fixture_path("p11-t00.json")
        )
        assert code == 3
        assert doc["error"]["type"] == "ZeroDivisionError"


class TestFixturesSubcommand:
    def test_list(self, capsys):
        code, doc, _ = run_cli(capsys, "fixtures")
        assert code == 0
        assert doc["fixtures"] == ALL_FIXTURES

    def test_emit_matches_file(self, capsys):
        code, doc, _ = run_cli(capsys, "fixtures", "p11-t00")
        assert code == 0
        with open(fixture_path("p11-t00.json")) as fh:
            assert doc == json.load(fh)

    def test_emit_unknown_name(self, capsys):
        code, doc, _ = run_cli(capsys, "fixtures", "definitely-not-here")
        assert code == 2

    def test_sample_diagram_is_seed_deterministic(self, capsys):
        _, _, first = run_cli(
            capsys, "fixtures", "--sample-diagram", "--seed", "5"
        )
        _, _, second = run_cli(
            capsys, "fixtures", "--sample-diagram", "--seed", "5"
        )
        assert first == second
        _, _, other = run_cli(
            capsys, "fixtures", "--sample-diagram", "--seed", "6"
        )
        assert other != first

    def test_sample_diagram_respects_mode_and_validates(self, capsys, tmp_path):
        code, doc, _ = run_cli(
            capsys,
            "fixtures",
            "--sample-diagram",
            "--seed",
            "11",
            "--mode",
            "three_column",
        )
        assert code == 0
        assert doc["diagram"]["mode"] == "three_column"
        f = tmp_path / "sampled.json"
        f.write_text(json.dumps(doc))
        code, checked, _ = run_cli(capsys, "validate", str(f))
        assert code == 0
        assert checked["files"][0]["kind"] == "diagram"


class TestConsoleScript:
    def test_installed_entry_point(self):
        proc = subprocess.run(
            ["surfcob", "decide", fixture_path("rp2-pair-boundary.json")],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["answer"] == "yes"

    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "surfcob.cli", "homology",
             fixture_path("z-mod-2.json")],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["invariant_factors"] == [2]
