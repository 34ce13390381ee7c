"""Command-line surface: commands, exit codes, report determinism."""

import json

import pytest

import cy3
from cy3.catalog import geometry_to_dict
from cy3.cli import main, report_from_dict


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGeometryCommands:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "geometry", "list")
        names = out.strip().splitlines()
        assert code == 0
        assert len(names) >= 12
        assert names[0] == "octic-k3"

    def test_show_octic(self, capsys):
        code, out, _ = run(capsys, "geometry", "show", "octic-k3")
        assert code == 0
        assert "E^3 = -16" in out
        assert "c3 = -168" in out
        assert "t - 2 s > 0" in out

    def test_show_unknown_name(self, capsys):
        code, _, err = run(capsys, "geometry", "show", "nonagon")
        assert code == 2
        assert "unknown geometry" in err

    def test_save_validate_round_trip(self, capsys, tmp_path):
        path = tmp_path / "octic.toml"
        code, _, _ = run(capsys, "geometry", "save", "octic-k3", str(path))
        assert code == 0
        code, out, _ = run(capsys, "geometry", "validate", str(path))
        assert code == 0 and "ok" in out

    def test_validate_inconsistent_file(self, capsys, tmp_path):
        data = geometry_to_dict(cy3.builtin("octic-k3"))
        data["triple"] = [[0, 0, 0, -15], [0, 0, 1, 4]]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        code, _, err = run(capsys, "geometry", "validate", str(path))
        assert code == 3
        assert "violation" in err and "(0, 0, 0)" in err

    def test_validate_missing_key(self, capsys, tmp_path):
        data = geometry_to_dict(cy3.builtin("octic-k3"))
        del data["pairing"]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        code, _, err = run(capsys, "geometry", "validate", str(path))
        assert code == 2
        assert "pairing" in err


class TestSearchCommand:
    def test_rank2_reference_run(self, capsys):
        code, out, _ = run(capsys, "search", "octic-k3", "--H", "1,5/2",
                           "--rank", "2", "--bound", "3", "--format", "json")
        assert code == 0
        report = json.loads(out)
        by_d = {tuple(c["D"]): c for c in report["candidates"]}
        assert by_d[(1, -1)]["chi"] == -40
        assert by_d[(1, -1)]["W"] == [40, 28]
        assert by_d[(1, -1)]["effective"] is True
        assert by_d[(2, -2)]["W"] == [-8, 40]
        assert by_d[(2, -2)]["effective"] is False

    def test_rank4_no_effective_solutions(self, capsys):
        code, out, _ = run(capsys, "search", "octic-k3", "--H", "1,5/2",
                           "--rank", "4", "--bound", "3", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["candidates"]
        assert all(c["effective"] is False for c in report["candidates"])

    def test_non_ample_names_the_inequality(self, capsys):
        code, _, err = run(capsys, "search", "octic-k3", "--H", "1,1")
        assert code == 2
        assert "t - 2 s > 0" in err

    def test_no_solutions_exit_code(self, capsys):
        code, _, _ = run(capsys, "search", "elliptic-f0", "--H", "1,3,5",
                         "--bound", "1", "--multiples", "1")
        assert code == 1

    def test_include_failures(self, capsys):
        code, out, _ = run(capsys, "search", "octic-k3", "--H", "1,5/2",
                           "--bound", "3", "--include-failures",
                           "--format", "json")
        assert code == 0
        report = json.loads(out)
        rejected = [c for c in report["candidates"] if not c["valid"]]
        assert any(tuple(c["D"]) == (-1, 1) and c["chi"] == 40 for c in rejected)

    def test_custom_bundle_pair(self, capsys):
        code, out, _ = run(capsys, "search", "octic-k3", "--H", "1,5/2",
                           "--e1", "TX", "--e2", "TX", "--bound", "2",
                           "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["config"]["rank_case"] == "custom"
        assert report["config"]["e1"] == "TX"

    def test_geometry_file_input(self, capsys, tmp_path):
        path = tmp_path / "octic.json"
        code, _, _ = run(capsys, "geometry", "save", "octic-k3", str(path))
        assert code == 0
        code, out, _ = run(capsys, "search", "--geometry-file", str(path),
                           "--H", "1,5/2", "--bound", "3", "--format", "json")
        assert code == 0
        assert json.loads(out)["geometry"] == "octic-k3"

    def test_bad_coordinates(self, capsys):
        code, _, err = run(capsys, "search", "octic-k3", "--H", "1,zebra")
        assert code == 2 and "cannot parse" in err
        code, _, err = run(capsys, "search", "octic-k3", "--H", "1,2,3")
        assert code == 2 and "coordinates" in err

    def test_json_report_round_trip(self, capsys):
        code, out, _ = run(capsys, "search", "octic-k3", "--H", "1,5/2",
                           "--bound", "3", "--format", "json")
        assert code == 0
        parsed = report_from_dict(json.loads(out))
        from cy3.cli import build_run_report
        g = cy3.builtin("octic-k3")
        from fractions import Fraction
        direct = build_run_report(
            g, g.divisor((1, Fraction(5, 2))),
            cy3.SearchConfig(coord_bound=3, multiple_range=3, rank_case="r2"))
        assert parsed == direct

    def test_byte_identical_reports_across_worker_counts(self, capsys, monkeypatch):
        outputs = []
        for threads in ("1", "3"):
            monkeypatch.setenv("CY3_THREADS", threads)
            code, out, _ = run(capsys, "search", "elliptic-f0", "--H", "1,3,3",
                               "--bound", "2", "--format", "json")
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1]

    def test_table_output_is_deterministic(self, capsys):
        runs = [run(capsys, "search", "octic-k3", "--H", "1,5/2", "--bound", "3")
                for _ in range(2)]
        assert runs[0] == runs[1]


class TestCheckCommand:
    def test_valid_candidate(self, capsys):
        code, out, _ = run(capsys, "check", "octic-k3", "--D", "1,-1",
                           "--H", "1,5/2", "--rank", "2")
        assert code == 0
        assert "D.H^2 = 0" in out
        assert "D^2.H = -14" in out
        assert "chi = -40" in out
        assert "W = (40, 28)" in out
        assert "certificate: valid" in out

    def test_orthogonality_failure(self, capsys):
        code, out, _ = run(capsys, "check", "octic-k3", "--D", "0,1",
                           "--H", "1,5/2")
        assert code == 1
        assert "D.H^2 = 4" in out
        assert "orthogonal: FAIL" in out

    def test_zero_candidate_fails_nontriviality(self, capsys):
        code, out, _ = run(capsys, "check", "octic-k3", "--D", "0,0",
                           "--H", "1,5/2")
        assert code == 1
        assert "numerically nontrivial: FAIL" in out

    def test_json_values_block(self, capsys):
        code, out, _ = run(capsys, "check", "octic-k3", "--D", "1,-1",
                           "--H", "1,5/2", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["values"]["orthogonality"] == 0
        assert payload["values"]["negativity"] == -14
        assert payload["values"]["pairing_row"] == [-10, 4]

    def test_rank4_check(self, capsys):
        code, out, _ = run(capsys, "check", "octic-k3", "--D", "1,-1",
                           "--H", "1,5/2", "--rank", "4")
        assert code == 0
        assert "chi = -932" in out


class TestVersionFlag:
    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert cy3.__version__ in capsys.readouterr().out
