import json
import math

import numpy as np
import pytest

from mubounds import example1_state, mubset_from_dict, pauli_mubs, verify_mub, write_state_file
from mubounds.cli import (
    RANDOM_HEADER,
    SWEEP_HEADER,
    format_value,
    main,
    parse_angle,
    parse_partition,
    self_check,
)
from mubounds.errors import ValidationError


class TestAngleParsing:
    @pytest.mark.parametrize("text,expected", [
        ("0.25pi", 0.25 * math.pi),
        ("pi", math.pi),
        ("-pi", -math.pi),
        ("2pi", 2 * math.pi),
        ("1.5", 1.5),
        ("0", 0.0),
    ])
    def test_values(self, text, expected):
        assert parse_angle(text) == pytest.approx(expected, abs=0)

    def test_garbage_rejected(self):
        from mubounds.cli import _UsageError
        with pytest.raises(_UsageError):
            parse_angle("threepi")


class TestPartitionParsing:
    def test_two_groups(self):
        p = parse_partition("1|2,3", memories=("B1", "B2"))
        assert p.groups() == {"B1": (1,), "B2": (2, 3)}

    def test_duplicate_basis_rejected(self):
        with pytest.raises(ValidationError, match="assigned twice"):
            parse_partition("1|1,2", memories=("B1", "B2"))

    def test_group_count_must_match_memories(self):
        with pytest.raises(ValidationError, match="memories"):
            parse_partition("1,2,3", memories=("B1", "B2"))


class TestSweepCommand:
    def test_example1_grid(self, tmp_path):
        out = tmp_path / "ex1.csv"
        code = main(["sweep", "--example", "example1", "--param", "theta",
                     "--from", "0", "--to", "2pi", "--steps", "201", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == SWEEP_HEADER
        assert len(lines) == 202
        row = lines[1 + 25].split(",")  # grid point 25 sits at pi/4
        assert float(row[0]) == pytest.approx(math.pi / 4, abs=1e-12)
        assert abs(float(row[1])) < 1e-7   # lhs
        assert abs(float(row[3])) < 1e-7   # thm1_lower
        assert abs(float(row[4])) < 1e-7   # thm2_upper

    def test_rows_satisfy_dominance(self, tmp_path):
        out = tmp_path / "ex5.csv"
        assert main(["sweep", "--example", "example5", "--param", "theta",
                     "--from", "0", "--to", "2pi", "--steps", "41", "--out", str(out)]) == 0
        for line in out.read_text().splitlines()[1:]:
            cells = [float(x) for x in line.split(",")]
            assert cells[3] >= cells[2] - 1e-9  # thm1_lower vs zhang_lower

    def test_single_step_is_usage_error(self, tmp_path):
        code = main(["sweep", "--example", "example1", "--param", "theta",
                     "--from", "0", "--to", "1", "--steps", "1", "--out", str(tmp_path / "x.csv")])
        assert code == 1

    def test_bad_parameter_is_usage_error(self, tmp_path):
        code = main(["sweep", "--example", "example1", "--param", "gamma",
                     "--from", "0", "--to", "1", "--steps", "5", "--out", str(tmp_path / "x.csv")])
        assert code == 1

    def test_missing_fix_is_usage_error(self, tmp_path):
        code = main(["sweep", "--example", "example2", "--param", "theta",
                     "--from", "0", "--to", "2pi", "--steps", "5", "--out", str(tmp_path / "x.csv")])
        assert code == 1

    def test_fixed_parameter_slice(self, tmp_path):
        out = tmp_path / "ex2.csv"
        code = main(["sweep", "--example", "example2", "--param", "theta",
                     "--from", "0", "--to", "2pi", "--steps", "11",
                     "--fix", "phi=0.25pi", "--out", str(out)])
        assert code == 0
        assert len(out.read_text().splitlines()) == 12

    def test_byte_identical_reruns(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        args = ["sweep", "--example", "example1", "--param", "theta",
                "--from", "0", "--to", "pi", "--steps", "17"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestRandomCommand:
    def test_single_row(self, tmp_path):
        out = tmp_path / "r.csv"
        code = main(["random", "--example", "example3", "--kind", "mixed",
                     "--seed", "3", "--count", "1", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == RANDOM_HEADER
        assert len(lines) == 2

    def test_rows_sorted_by_lhs(self, tmp_path):
        out = tmp_path / "r.csv"
        assert main(["random", "--example", "example6", "--kind", "pure",
                     "--seed", "12", "--count", "40", "--out", str(out)]) == 0
        lhs = [float(line.split(",")[1]) for line in out.read_text().splitlines()[1:]]
        assert lhs == sorted(lhs)

    def test_manifest_records_batch_settings(self, tmp_path):
        out = tmp_path / "r.csv"
        assert main(["random", "--example", "example3", "--kind", "pure",
                     "--seed", "12", "--count", "3", "--out", str(out)]) == 0
        manifest = json.loads((tmp_path / "r.manifest.json").read_text())
        assert manifest == {"seed": 12, "kind": "pure", "dim": 16,
                            "count": 3, "example": "example3"}

    def test_wrong_dim_is_validation_error(self, tmp_path):
        code = main(["random", "--example", "example3", "--kind", "mixed",
                     "--seed", "3", "--count", "1", "--dim", "9",
                     "--out", str(tmp_path / "r.csv")])
        assert code == 2

    def test_bad_example_is_usage_error(self, tmp_path):
        code = main(["random", "--example", "example1", "--kind", "mixed",
                     "--seed", "3", "--count", "1", "--out", str(tmp_path / "r.csv")])
        assert code == 1


class TestBoundsCommand:
    def test_bell_state_report(self, tmp_path, capsys):
        path = tmp_path / "bell.json"
        write_state_file(example1_state(math.pi / 4), path)
        code = main(["bounds", "--state", str(path), "--mub", "pauli", "--partition", "1,2,3"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert abs(report["thm1_lower"]) < 1e-7
        assert abs(report["thm2_upper"]) < 1e-7
        assert len(report["per_measurement"]) == 3

    def test_duplicate_partition_is_validation_error(self, tmp_path, capsys):
        path = tmp_path / "bell.json"
        write_state_file(example1_state(math.pi / 4), path)
        code = main(["bounds", "--state", str(path), "--mub", "2", "--partition", "1|1,2"])
        assert code == 2
        assert "assigned twice" in capsys.readouterr().err

    def test_bad_trace_names_invariant(self, tmp_path, capsys):
        bad = {"labels": ["A", "B"], "dims": [2, 2],
               "re": (0.225 * np.eye(4)).tolist(), "im": np.zeros((4, 4)).tolist()}
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        code = main(["bounds", "--state", str(path), "--mub", "pauli", "--partition", "1,2,3"])
        assert code == 2
        assert "trace" in capsys.readouterr().err

    def test_missing_state_file_is_validation_error(self, tmp_path, capsys):
        code = main(["bounds", "--state", str(tmp_path / "nope.json"),
                     "--mub", "pauli", "--partition", "1,2,3"])
        assert code == 2
        assert "validation error" in capsys.readouterr().err

    def test_broken_report_exits_with_invariant_code(self, tmp_path, capsys, monkeypatch):
        import mubounds.cli as cli
        from mubounds.errors import InvariantViolation
        path = tmp_path / "bell.json"
        write_state_file(example1_state(math.pi / 4), path)

        def broken(scenario):
            raise InvariantViolation("thm1_lower <= lhs_uncertainty")

        monkeypatch.setattr(cli, "evaluate_all", broken)
        code = main(["bounds", "--state", str(path), "--mub", "pauli", "--partition", "1,2,3"])
        assert code == 3
        assert "thm1_lower <= lhs_uncertainty" in capsys.readouterr().err


class TestVerifyCommand:
    def test_fresh_build_passes(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert out.count("PASS") >= 7

    def test_tampered_table_fails_unbiasedness(self):
        comp = pauli_mubs().bases[0]
        tampered = (comp, comp, pauli_mubs().bases[2])
        results = self_check(mub_tables={"tampered": tampered})
        tampered_result = [r for r in results if "tampered" in r.name]
        assert len(tampered_result) == 1
        assert not tampered_result[0].passed
        assert verify_mub(tampered, tol=1e-9).max_unbiased_deviation == pytest.approx(0.5, abs=1e-12)


class TestExportMubs:
    def test_round_trip_and_verify(self, tmp_path):
        out = tmp_path / "mubs.json"
        assert main(["export-mubs", "--mub", "4", "--out", str(out)]) == 0
        back = mubset_from_dict(json.loads(out.read_text()))
        assert verify_mub(back, tol=1e-9).passed


class TestFloatFormat:
    def test_twelve_significant_digits(self):
        assert format_value(1.5) == "1.5"
        assert format_value(0.0) == "0"
        assert format_value(-0.0) == "0"
        assert format_value(math.pi) == "3.14159265359"
