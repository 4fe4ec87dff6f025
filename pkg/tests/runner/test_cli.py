"""Tests for the command-line interface."""

import pytest

from src.runner.cli import _pairs, main
from src.utils.exceptions import ConfigValidationError


def test_catalog_command(capsys):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    assert "toy" in out and "painleve1" in out


def test_coefficients_run(tmp_path, capsys):
    code = main(["coeffs", "--equation", "toy", "--set", "K=12", "--set", "expect=factorial",
                 "--out", str(tmp_path), "--precision", "128"])
    assert code == 0
    assert "coeffs (toy): PASS" in capsys.readouterr().out
    assert (tmp_path / "coeffs.csv").exists()


def test_invalid_precision_exits_with_config_code(capsys):
    assert main(["coeffs", "--equation", "toy", "--precision", "0"]) == 2
    assert "invalid configuration" in capsys.readouterr().err


def test_config_file_must_carry_required_keys(tmp_path):
    path = tmp_path / "run.json"
    path.write_text('{"equation": "toy", "experiment": "coeffs"}')
    assert main(["coeffs", "--config", str(path), "--out", str(tmp_path)]) == 2


def test_pairs_parse_yaml_values():
    assert _pairs(["m=1", "xs=[10, 20]", "name=toy"], "--set") == {"m": 1, "xs": [10, 20], "name": "toy"}
    with pytest.raises(ConfigValidationError):
        _pairs(["novalue"], "--set")


def test_exit_code_of_the_run_is_returned(mocker):
    fake = mocker.patch("src.runner.cli.run", return_value={"exit_code": 3, "passed": None, "files": []})
    assert main(["stokes", "--equation", "toy", "--r", "10"]) == 3
    config = fake.call_args.args[0]
    assert config.experiment == "stokes"
    assert config.parameters["r"] == 10
