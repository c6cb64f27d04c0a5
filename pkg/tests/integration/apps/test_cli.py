"""Integration tests for the ``phasespace`` command line.

Commands run in-process through :func:`src.apps.cli.main.main` with small
parameters; outputs land in a temporary directory.
"""

from __future__ import annotations

import csv
import json
import math

import pytest

from src.apps.cli import main as cli
from src.apps.cli.verify import CriterionResult
from src.core.errors import ConfigError, TruncationError


def _data_lines(text: str) -> list[str]:
    return [line for line in text.splitlines() if not line.startswith("#")]


@pytest.mark.integration
class TestCsvCommands:
    """Table outputs, headers and footers."""

    def test_discord_curve_default_path(self, output_dir):
        """Output goes to OUTPUT_DIR/<command>.csv with header, rows and footer."""
        assert cli.main(["discord-curve", "--r-max", "2", "--points", "5"]) == cli.EXIT_OK
        text = (output_dir / "discord-curve.csv").read_text(encoding="utf-8")
        assert "# command: discord-curve" in text
        assert "# param points: 5" in text
        assert "# setting FOCK_TAIL_TOL: " in text
        rows = list(csv.reader(_data_lines(text)))
        assert rows[0] == ["r", "discord_bits", "asymptote_bits"]
        assert len(rows) == 6
        assert float(rows[1][1]) == 0.0 and rows[1][2] == "nan"
        assert all(float(a[1]) < float(b[1]) for a, b in zip(rows[1:], rows[2:]))
        assert text.rstrip().splitlines()[-1].startswith("# gap_at_r_max = ")

    def test_stdout_output(self, output_dir, capsys):
        """'-' writes to stdout and creates no file."""
        assert cli.main(["discord-curve", "--points", "3", "--output", "-"]) == cli.EXIT_OK
        assert "discord_bits" in capsys.readouterr().out
        assert not list(output_dir.iterdir())

    def test_seeded_output_is_reproducible(self, output_dir):
        """Same parameters and seed give identical bytes."""
        args = ["weyl-check", "--r", "0.5", "--count", "2", "--terms", "2", "--seed", "7"]
        assert cli.main([*args, "--output", str(output_dir / "a.csv")]) == cli.EXIT_OK
        assert cli.main([*args, "--output", str(output_dir / "b.csv")]) == cli.EXIT_OK
        first = (output_dir / "a.csv").read_bytes()
        assert first == (output_dir / "b.csv").read_bytes()
        assert b"# seed: 7" in first

    def test_floats_keep_full_precision(self, output_dir):
        """Values are written with enough digits to round-trip."""
        cli.main(["discord-curve", "--r-max", "1", "--points", "2"])
        rows = list(csv.reader(_data_lines((output_dir / "discord-curve.csv").read_text(encoding="utf-8"))))
        assert float(rows[2][0]) == 1.0
        assert len(rows[2][1].replace("-", "").replace(".", "").split("e")[0]) >= 15


@pytest.mark.integration
class TestJsonCommands:
    """JSON results."""

    def test_pseudospin_bell(self, output_dir):
        """pseudospin-bell writes sorted JSON with the echo and the optimum."""
        args = ["pseudospin-bell", "--family", "bw", "--r", "0.5", "--truncation", "11", "--tail-tol", "1e-6", "--grid-points", "8"]
        assert cli.main(args) == cli.EXIT_OK
        document = json.loads((output_dir / "pseudospin-bell.json").read_text(encoding="utf-8"))
        assert document["command"] == "pseudospin-bell"
        assert document["parameters"]["family"] == "bw"
        result = document["result"]
        assert result["truncation"] == 11
        assert len(result["angles"]) == 4
        assert result["value"] <= result["tsirelson"] + 1e-6
        assert result["sweep"] is None
        assert list(document) == sorted(document)

    def test_too_small_truncation_is_numerical_failure(self, output_dir, capsys):
        """A truncation that drops too much of the state exits with 3."""
        args = ["pseudospin-bell", "--r", "2", "--truncation", "9", "--grid-points", "4"]
        assert cli.main(args) == cli.EXIT_NUMERICAL
        assert "numerical failure" in capsys.readouterr().err


@pytest.mark.integration
class TestConfiguration:
    """Precedence and validation of parameters."""

    def test_config_file_overrides_flags(self, output_dir, tmp_path):
        """--config values beat command-line flags."""
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"parameters": {"points": 4}, "seed": 3}), encoding="utf-8")
        assert cli.main(["discord-curve", "--points", "7", "--config", str(config)]) == cli.EXIT_OK
        text = (output_dir / "discord-curve.csv").read_text(encoding="utf-8")
        assert "# param points: 4" in text
        assert "# seed: 3" in text
        assert len(_data_lines(text)) == 5

    def test_defaults_from_settings(self, settings):
        """Without flags or file the seed comes from the settings."""
        args = cli.build_parser().parse_args(["discord-curve"])
        config = cli.resolve_config(args)
        assert config.seed == settings.DEFAULT_SEED
        assert config.parameters == {}

    @pytest.mark.parametrize(
        "content",
        [
            {"unknown": 1},
            {"command": "wigner-cat"},
            {"parameters": [1, 2]},
        ],
        ids=["unknown-key", "other-command", "parameters-not-object"],
    )
    def test_bad_config_files(self, output_dir, tmp_path, capsys, content):
        """Malformed config files exit with 2."""
        config = tmp_path / "bad.json"
        config.write_text(json.dumps(content), encoding="utf-8")
        assert cli.main(["discord-curve", "--config", str(config)]) == cli.EXIT_CONFIG
        assert "configuration error" in capsys.readouterr().err

    def test_unknown_parameter_in_config(self, output_dir, tmp_path):
        """Parameters the command does not know are rejected."""
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"parameters": {"r_min": 1.0}}), encoding="utf-8")
        assert cli.main(["discord-curve", "--config", str(config)]) == cli.EXIT_CONFIG

    def test_missing_config_file(self, output_dir, tmp_path):
        assert cli.main(["discord-curve", "--config", str(tmp_path / "nope.json")]) == cli.EXIT_CONFIG

    def test_out_of_range_value(self, output_dir):
        """Validation errors map to exit code 2."""
        assert cli.main(["discord-curve", "--points", "1"]) == cli.EXIT_CONFIG

    def test_inverted_range(self, output_dir):
        """Handler-level range checks also map to 2."""
        assert cli.main(["chsh-bell", "--x-min", "2", "--x-max", "1", "--points", "3"]) == cli.EXIT_CONFIG

    def test_unknown_flag_exits_through_argparse(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["discord-curve", "--bogus", "1"])
        assert info.value.code == 2


@pytest.mark.integration
class TestExitCodes:
    """Error mapping with the handlers mocked out."""

    def test_numerical_error_maps_to_three(self, output_dir, mocker, capsys):
        """A PhaseSpaceError from a handler exits with 3."""
        mocker.patch.object(cli, "run_command", side_effect=TruncationError("tail too heavy", required=40))
        assert cli.main(["discord-curve"]) == cli.EXIT_NUMERICAL
        assert "tail too heavy" in capsys.readouterr().err

    def test_config_error_from_handler_maps_to_two(self, output_dir, mocker):
        mocker.patch.object(cli, "run_command", side_effect=ConfigError("bad", key="k_max"))
        assert cli.main(["power-spectrum"]) == cli.EXIT_CONFIG

    def test_verify_failure_maps_to_one(self, mocker, capsys):
        """verify exits with 1 when any criterion fails."""
        results = [
            CriterionResult(1, "ok", 0.5, "< 1", True, 0.01),
            CriterionResult(2, "broken", math.nan, "no error", False, 0.02, "RangeError: boom"),
        ]
        mocker.patch.object(cli, "run_suite", return_value=results)
        assert cli.main(["verify"]) == cli.EXIT_VERIFY_FAILED
        out = capsys.readouterr().out
        assert "FAIL   2  broken" in out
        assert "1/2 criteria passed" in out

    def test_verify_success_writes_report(self, mocker, tmp_path, capsys):
        mocker.patch.object(cli, "run_suite", return_value=[CriterionResult(1, "ok", 0.5, "< 1", True, 0.01)])
        report = tmp_path / "report.txt"
        assert cli.main(["verify", "--output", str(report)]) == cli.EXIT_OK
        assert report.read_text(encoding="utf-8") == capsys.readouterr().out
