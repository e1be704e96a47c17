import json

import pytest

from geoconvex.cli.main import run_command
from geoconvex.config import TOLERANCE_ENV, Tolerance, default_tolerance, load_json, save_json
from geoconvex.errors import PreconditionError, SpecError


class TestEnvironmentTolerance:
    def test_unset(self):
        assert default_tolerance() == Tolerance()

    def test_override(self, monkeypatch):
        monkeypatch.setenv(TOLERANCE_ENV, "1e-6")
        assert default_tolerance() == Tolerance(1e-6, 1e-6)

    @pytest.mark.parametrize("raw", ["abc", "-1", "0", "nan", "inf"])
    def test_rejected_values_fall_back(self, monkeypatch, caplog, raw):
        monkeypatch.setenv(TOLERANCE_ENV, raw)
        with caplog.at_level("WARNING", logger="geoconvex"):
            assert default_tolerance() == Tolerance()
        assert TOLERANCE_ENV in caplog.text

    def test_spec_tolerance_starts_from_environment(self, monkeypatch):
        monkeypatch.setenv(TOLERANCE_ENV, "1e-6")
        tol = Tolerance.from_dict({"abs": 1e-8})
        assert (tol.abs_tol, tol.rel_tol) == (1e-8, 1e-6)

    def test_cli_tol_beats_environment(self, monkeypatch, capsys):
        monkeypatch.setenv(TOLERANCE_ENV, "abc")
        assert run_command(["verify", "--f", "x^2", "--a", "0.5", "--b", "2", "--checks", "hh",
                            "--tol", "1e-9"]) == 0
        assert json.loads(capsys.readouterr().out)["summary"]["failed"] == 0


class TestTolerance:
    @pytest.mark.parametrize("kw", [{"abs_tol": 0.0}, {"rel_tol": -1.0}, {"max_subdivisions": 0}])
    def test_invalid(self, kw):
        with pytest.raises(PreconditionError):
            Tolerance(**kw)

    def test_target(self):
        tol = Tolerance(1e-10, 1e-6)
        assert tol.target(1.0) == 1e-6
        assert tol.target(1e-8) == 1e-10

    def test_unknown_keys(self):
        with pytest.raises(SpecError):
            Tolerance.from_dict({"absolute": 1e-8})


class TestJsonFiles:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "spec.json"
        save_json(path, {"function": "x^2", "a": [0.5]})
        assert load_json(path) == {"function": "x^2", "a": [0.5]}

    @pytest.mark.parametrize("text", ["{not json", "[1, 2]"])
    def test_bad_files(self, tmp_path, text):
        path = tmp_path / "spec.json"
        path.write_text(text)
        with pytest.raises(SpecError):
            load_json(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(SpecError):
            load_json(tmp_path / "nope.json")
