"""Tests for run configuration loading and validation."""

import json

import pytest

from src.runner.run_config import (
    EXPERIMENTS,
    PRECISION_ENV,
    RunConfig,
    load_defaults,
    load_document,
    resolve_precision,
)
from src.utils.exceptions import ConfigValidationError


@pytest.fixture
def defaults():
    return load_defaults()


def test_defaults_cover_every_experiment(defaults):
    assert set(EXPERIMENTS) <= set(defaults["experiments"])
    assert defaults["precision"]["bits"] == 256


def test_parameters_and_thresholds_merge_with_defaults(defaults, monkeypatch):
    monkeypatch.delenv(PRECISION_ENV, raising=False)
    config = RunConfig.from_dict(
        {"equation": "toy", "experiment": "stokes", "parameters": {"r_window": [100, 150]},
         "thresholds": {"relative_tolerance": 1e-4}},
        defaults,
    )
    assert config.parameters["r_window"] == [100, 150]
    assert config.parameters["richardson_order"] == 4
    assert config.thresholds == {"relative_tolerance": 1e-4}
    assert config.precision == 256
    assert config.csv_path.name == "stokes.csv"


def test_required_key_missing(defaults):
    data = {"equation": "toy", "experiment": "berry"}
    with pytest.raises(ConfigValidationError) as info:
        RunConfig.from_dict(data, defaults)
    assert info.value.field == "r"
    assert RunConfig.from_dict(data, defaults, strict=False).parameters["r"] == 400


@pytest.mark.parametrize("data, field", [
    ({"equation": "toy", "experiment": "coeffs", "parameters": {"K": 5}, "colour": "red"}, "colour"),
    ({"equation": "toy", "experiment": "integrate"}, "experiment"),
    ({"experiment": "coeffs", "parameters": {"K": 5}}, "equation"),
    ({"equation": "toy", "experiment": "coeffs", "parameters": [1]}, "parameters"),
    ({"equation": "toy", "experiment": "coeffs", "parameters": {"K": 5}, "precision": 12.5}, "precision"),
])
def test_invalid_documents(defaults, data, field):
    with pytest.raises(ConfigValidationError) as info:
        RunConfig.from_dict(data, defaults)
    assert info.value.field == field


def test_fixed_equation_experiments(defaults):
    config = RunConfig.from_dict({"experiment": "resonant-fit", "parameters": {"k_window": [10, 20]}}, defaults)
    assert config.equation == "resonant"


def test_precision_resolution(monkeypatch):
    monkeypatch.delenv(PRECISION_ENV, raising=False)
    assert resolve_precision(None, 256) == 256
    monkeypatch.setenv(PRECISION_ENV, "512")
    assert resolve_precision(None, 256) == 512
    assert resolve_precision(128, 256) == 128
    monkeypatch.setenv(PRECISION_ENV, "lots")
    with pytest.raises(ConfigValidationError):
        resolve_precision(None, 256)


def test_load_document(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"equation": "toy", "experiment": "coeffs", "parameters": {"K": 5}}))
    config = RunConfig.from_file(path)
    assert config.parameters["K"] == 5

    listing = tmp_path / "list.json"
    listing.write_text("[1, 2]")
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    for bad in (listing, broken, tmp_path / "missing.json"):
        with pytest.raises(ConfigValidationError):
            load_document(bad)
