import json

import pytest

from phq import build
from phq.cli import main
from phq.fileformat import (
    BadRational,
    IndexOutOfRange,
    ParseError,
    parse_algebra_text,
    parse_recipe_text,
    serialize_algebra,
)

from conftest import FIXTURES


MINIMAL = json.dumps(
    {
        "dim": 2,
        "basis": ["e1", "e2"],
        "brackets": [],
        "J": [["0", "-1"], ["1", "0"]],
        "phi": [["1", "0"], ["0", "1"]],
    }
)


class TestParsing:
    def test_minimal_abelian_file(self):
        p = parse_algebra_text(MINIMAL)
        assert p.dim == 2
        assert p.algebra.derived_ideal().dim == 0

    def test_equal_indices_rejected(self):
        doc = json.loads(MINIMAL)
        doc["brackets"] = [{"i": 0, "j": 0, "coeffs": {"1": "1"}}]
        with pytest.raises(ParseError):
            parse_algebra_text(json.dumps(doc))

    def test_out_of_range_index(self):
        doc = json.loads(MINIMAL)
        doc["brackets"] = [{"i": 0, "j": 5, "coeffs": {"1": "1"}}]
        with pytest.raises(IndexOutOfRange):
            parse_algebra_text(json.dumps(doc))

    def test_decimal_scalar_rejected(self):
        doc = json.loads(MINIMAL)
        doc["phi"] = [[0.5, "0"], ["0", "1"]]
        with pytest.raises(BadRational):
            parse_algebra_text(json.dumps(doc))

    def test_broken_json_carries_location(self):
        with pytest.raises(ParseError) as err:
            parse_algebra_text("{\n  \"dim\": 2,,\n}")
        assert err.value.line is not None

    def test_round_trip_identity(self):
        for name in ("L(4,2)", "Tstar0K", "TstarTheta3K", "R(4,2)", "L(2,4)+R(2,0)"):
            p = build(name)
            assert parse_algebra_text(serialize_algebra(p)) == p

    def test_fixture_is_byte_exact(self):
        shipped = (FIXTURES / "L42.alg").read_text(encoding="utf-8")
        assert shipped == serialize_algebra(build("L(4,2)"))

    def test_recipe_validation(self):
        with pytest.raises(ParseError):
            parse_recipe_text(json.dumps({"op": "tstar", "theta": ["1", "0", "0"]}))
        recipe = parse_recipe_text(
            json.dumps({"op": "tstar", "base": {"op": "kodaira"}, "theta": ["0", "0", "1", "0"]})
        )
        assert recipe.evaluate() == build("TstarTheta3K")


class TestCommands:
    def test_check_passes_on_fixture(self, capsys):
        assert main(["check", str(FIXTURES / "L42.alg")]) == 0
        out = capsys.readouterr().out
        assert "Jacobi: ok" in out and "J-compatible: ok" in out

    def test_check_reports_broken_bracket(self, tmp_path, capsys):
        # Flipping one bracket sign in the six-dimensional core cannot break
        # Jacobi (every Jacobi term vanishes on its own there), but it does
        # break the torsion and invariance axioms: still exit 1.
        doc = json.loads((FIXTURES / "L42.alg").read_text())
        for entry in doc["brackets"]:
            if (entry["i"], entry["j"]) == (0, 2):
                entry["coeffs"]["5"] = "1"
        bad = tmp_path / "bad.alg"
        bad.write_text(json.dumps(doc))
        assert main(["check", str(bad)]) == 1
        out = capsys.readouterr().out
        assert "Nijenhuis: FAIL" in out
        assert "ad-invariant: FAIL" in out
        assert "Jacobi: ok" in out

    def test_check_lists_jacobi_violations(self, tmp_path, capsys):
        doc = {
            "dim": 4,
            "basis": ["e1", "e2", "e3", "e4"],
            "brackets": [
                {"i": 0, "j": 1, "coeffs": {"0": "1"}},
                {"i": 0, "j": 2, "coeffs": {"1": "1"}},
            ],
            "J": [
                ["0", "-1", "0", "0"],
                ["1", "0", "0", "0"],
                ["0", "0", "0", "-1"],
                ["0", "0", "1", "0"],
            ],
            "phi": [
                ["1", "0", "0", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", "1", "0"],
                ["0", "0", "0", "1"],
            ],
        }
        bad = tmp_path / "nonjacobi.alg"
        bad.write_text(json.dumps(doc))
        assert main(["check", str(bad)]) == 1
        out = capsys.readouterr().out
        assert "Jacobi: FAIL" in out
        assert "(e1, e2, e3)" in out

    def test_check_garbage_exits_2(self, tmp_path, capsys):
        garbage = tmp_path / "garbage.alg"
        garbage.write_text("not json at all {{{")
        assert main(["check", str(garbage)]) == 2
        assert "parse error" in capsys.readouterr().err

    def test_invariants_row(self, capsys):
        assert main(["invariants", str(FIXTURES / "L24_R02.alg")]) == 0
        assert capsys.readouterr().out == "8 | 3 | (2,6) | (0,1) | 3\n"

    def test_classify_fixture(self, capsys):
        assert main(["classify", str(FIXTURES / "TstarTheta3K.alg")]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "TstarTheta3K"

    def test_classify_dimension_limit(self, tmp_path, capsys):
        big = tmp_path / "big.alg"
        big.write_text(serialize_algebra(build("R(6,4)")))
        assert main(["classify", str(big)]) == 1
        assert "error" in capsys.readouterr().err

    def test_reduce_fixture(self, capsys):
        assert main(["reduce", str(FIXTURES / "Tstar0K.alg")]) == 0
        out = capsys.readouterr().out
        assert "plane_reduction" in out
        assert "residue: dim 4" in out

    def test_construct_pipeline(self, tmp_path, capsys):
        assert main(["construct", str(FIXTURES / "lorentz_ext.recipe")]) == 0
        text = capsys.readouterr().out
        constructed = parse_algebra_text(text)
        out_file = tmp_path / "constructed.alg"
        out_file.write_text(text)
        assert main(["classify", str(out_file)]) == 0
        label_line = capsys.readouterr().out.splitlines()[0]
        assert label_line == "L(4,2)"

    def test_json_format(self, capsys):
        assert main(["--format", "json", "invariants", str(FIXTURES / "TstarTheta3K.alg")]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["dim_center"] == 3
        assert doc["sig_phi"] == [4, 4]

    def test_output_is_deterministic(self, capsys):
        main(["--format", "json", "classify", str(FIXTURES / "L42.alg")])
        first = capsys.readouterr().out
        main(["--format", "json", "classify", str(FIXTURES / "L42.alg")])
        assert capsys.readouterr().out == first

    def test_fixtures_dir_resolution(self, capsys):
        assert main(["--fixtures-dir", str(FIXTURES), "classify", "L42.alg"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "L(4,2)"

    def test_carrier_complex_structure_column_convention(self):
        # the stored J of the cotangent fixtures maps e1-coordinates to e2
        doc = json.loads((FIXTURES / "Tstar0K.alg").read_text())
        col0 = [row[0] for row in doc["J"]]
        assert col0 == ["0", "1", "0", "0", "0", "0", "0", "0"]
