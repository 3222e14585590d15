"""Tests for the click command surface and the hypharm entry point."""

import json

import pytest
from click.testing import CliRunner

from HypHarm import __version__
from HypHarm.app import main
from HypHarm.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


class TestConstantCommand:
    """Test cases for hypharm constant."""

    def test_json_report(self, runner):
        """Test C_2(0.5 e_3) = 91/48 on standard output."""
        result = runner.invoke(cli, "constant --n 3 --q 2 --radius 0.5".split())
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert report["schema"] == "hypharm/1"
        assert report["values"]["C_q_x"] == pytest.approx(91.0 / 48.0, abs=1e-12)
        assert report["inputs"]["radius"] == 0.5

    def test_deterministic(self, runner):
        """Test identical output for identical arguments."""
        args = (
            "constant --q 1.5 --radius 0.7 --method monte-carlo "
            "--samples 5000 --threads 2"
        ).split()
        first = runner.invoke(cli, args)
        second = runner.invoke(cli, args)
        assert first.exit_code == 0
        assert first.output == second.output

    def test_config_defaults_from_environment(self, runner):
        """Test that HYPHARM_* variables feed option defaults."""
        result = runner.invoke(
            cli,
            ["constant", "--q", "2", "--radius", "0.5"],
            env={"HYPHARM_QUADRATURE_NODES": "64"},
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["quadrature"]["nodes"] == 64

    def test_explicit_option_beats_environment(self, runner):
        """Test that a given option overrides the configured default."""
        result = runner.invoke(
            cli,
            ["constant", "--q", "2", "--radius", "0.5", "--nodes", "32"],
            env={"HYPHARM_QUADRATURE_NODES": "64"},
        )
        assert json.loads(result.output)["quadrature"]["nodes"] == 32

    def test_coords(self, runner):
        """Test an explicit point."""
        result = runner.invoke(cli, ["constant", "--q", "2", "--coords", "0,0.3,0.4"])
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert report["values"]["C_q_x"] == pytest.approx(91.0 / 48.0)

    def test_invalid_input(self, runner):
        """Test that validation errors exit with status 1."""
        result = runner.invoke(cli, "constant --p 2 --q 2 --radius 0.5".split())
        assert result.exit_code == 1
        assert "Error" in result.output

        result = runner.invoke(cli, ["constant", "--q", "2", "--radius", "1.5"])
        assert result.exit_code == 1
        assert "Error" in result.output

    def test_bad_coords(self, runner):
        """Test that unparsable coordinates are a usage error."""
        result = runner.invoke(cli, ["constant", "--q", "2", "--coords", "0,a,1"])
        assert result.exit_code != 0
        assert "comma-separated" in result.output


class TestOtherCommands:
    """Test cases for bound, kernel, verify and table."""

    def test_bound_table_format(self, runner):
        """Test the rich table output."""
        result = runner.invoke(
            cli, "bound --n 4 --p 1.5 --radius 0.8 --format table".split()
        )
        assert result.exit_code == 0
        assert "hypharm bound" in result.output
        assert "pointwise_bound" in result.output

    def test_kernel(self, runner):
        """Test the kernel value at 0.5 e_3 and zeta = e_3."""
        result = runner.invoke(cli, "kernel --coords 0,0,0.5 --zeta 0,0,1".split())
        assert result.exit_code == 0
        assert json.loads(result.output)["values"]["P_h"] == pytest.approx(9.0)

    def test_verify_focused(self, runner):
        """Test a passing focused suite."""
        result = runner.invoke(
            cli, "verify --n 3 --suite sharpness --p 2 --radius 0.5".split()
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["summary"]["failed"] == 0

    def test_verify_failure(self, runner):
        """Test exit status 2 when a check fails."""
        result = runner.invoke(
            cli, ["verify", "--n", "3", "--suite", "harmonicity", "--radius", "0.9995"]
        )
        assert result.exit_code == 2

    def test_verify_rejects_coords(self, runner):
        """Test that verify has no --coords option."""
        result = runner.invoke(cli, ["verify", "--coords", "0,0,0.5"])
        assert result.exit_code != 0

    def test_table_csv(self, runner):
        """Test the CSV header and rows."""
        result = runner.invoke(
            cli,
            "table --n 3 --q-values 1.5,2 --radii 0,0.5 --format csv".split(),
        )
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "n,q,p,radius,C_q_x,C_q_sup,bound_pointwise,bound_uniform"
        assert len(lines) == 5

    def test_output_file(self, runner, tmp_path):
        """Test that --output writes the report and prints nothing."""
        path = tmp_path / "table.json"
        result = runner.invoke(
            cli, ["table", "--q-values", "2", "--radii", "0.5", "--output", str(path)]
        )
        assert result.exit_code == 0
        assert result.output == ""
        assert json.loads(path.read_text())["rows"][0]["q"] == 2.0

    def test_timing(self, runner):
        """Test the --timing flag."""
        result = runner.invoke(cli, "constant --q 2 --radius 0.5 --timing".split())
        assert "wall_time_s" in json.loads(result.output)["timing"]

    def test_version(self, runner):
        """Test --version."""
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output


class TestMain:
    """Test cases for the entry point's exit codes."""

    def test_success(self, capsys):
        """Test a successful run returns 0."""
        assert main(["constant", "--q", "2", "--radius", "0.5"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["values"]["C_q_sup"] == pytest.approx(16.0 / 3.0)

    def test_usage_error(self, capsys):
        """Test that click usage errors map to status 1."""
        args = "constant --method simpson --q 2 --radius 0.5".split()
        assert main(args) == 1
        assert "Error" in capsys.readouterr().err

    def test_help(self, capsys):
        """Test that --help returns 0."""
        assert main(["--help"]) == 0
        assert "hypharm" in capsys.readouterr().out.lower()

    def test_verification_failure(self, capsys):
        """Test that a failed check returns 2."""
        args = ["verify", "--n", "3", "--suite", "harmonicity", "--radius", "0.9995"]
        assert main(args) == 2
