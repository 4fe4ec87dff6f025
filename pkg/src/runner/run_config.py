"""
Run Configuration

A RunConfig names one equation, one experiment and the experiment's
parameters. Config files are single JSON documents (read with the YAML
loader, which accepts JSON); parameters a file omits fall back to
config/defaults.yaml, except the keys an experiment requires.
"""

import copy
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from ..utils.exceptions import ConfigValidationError

DEFAULTS_PATH = Path(__file__).resolve().parents[2] / "config" / "defaults.yaml"
PRECISION_ENV = "EXPASYM_PRECISION"

EXPERIMENTS = (
    "coeffs", "truncate", "sum", "stokes", "jump", "berry", "alpha-sweep",
    "resonant-fit", "resonant-berry", "dingle", "antistokes", "check",
)

# Keys a config file must provide itself
REQUIRED_KEYS = {
    "coeffs": ("K",),
    "truncate": ("xs",),
    "sum": ("xs",),
    "stokes": ("r_window",),
    "jump": ("xs",),
    "berry": ("r",),
    "alpha-sweep": ("r_grid",),
    "resonant-fit": ("k_window",),
    "resonant-berry": ("r",),
    "dingle": ("x",),
    "antistokes": ("r_grid",),
    "check": (),
}

# Experiments that build their own equation
FIXED_EQUATION = {"resonant-fit": "resonant", "resonant-berry": "resonant"}

TOP_LEVEL_KEYS = {"equation", "params", "experiment", "precision", "guard_bits", "parameters",
                  "thresholds", "output", "verbose", "log_level", "description"}


def load_defaults(path: Optional[Path] = None) -> Dict:
    """Parse the YAML defaults file."""
    path = Path(path) if path is not None else DEFAULTS_PATH
    with open(path) as f:
        return yaml.safe_load(f) or {}


@dataclass
class RunConfig:
    """
    One experiment run.

    Attributes:
        equation: Catalog name (or "custom" with params["definition"])
        experiment: One of EXPERIMENTS
        params: Equation parameters, e.g. {"m": 1}
        precision: Working bits
        guard_bits: Guard bits
        parameters: Experiment parameters (defaults merged in)
        thresholds: PASS/FAIL thresholds stored with the report (defaults merged in)
        output: Directory for the CSV and JSON files
        verbose: Print banners and progress bars
        log_level: Root log level
    """

    equation: str
    experiment: str
    params: Dict[str, Any] = field(default_factory=dict)
    precision: int = 256
    guard_bits: int = 64
    parameters: Dict[str, Any] = field(default_factory=dict)
    thresholds: Dict[str, Any] = field(default_factory=dict)
    output: str = "results"
    verbose: bool = False
    log_level: str = "INFO"

    @property
    def csv_path(self) -> Path:
        return Path(self.output) / f"{self.experiment}.csv"

    @property
    def json_path(self) -> Path:
        return Path(self.output) / f"{self.experiment}.json"

    def to_dict(self) -> Dict:
        return {
            "equation": self.equation,
            "params": self.params,
            "experiment": self.experiment,
            "precision": self.precision,
            "guard_bits": self.guard_bits,
            "parameters": self.parameters,
            "thresholds": self.thresholds,
            "output": self.output,
        }

    @classmethod
    def from_dict(cls, data: Dict, defaults: Optional[Dict] = None, strict: bool = True) -> "RunConfig":
        """
        Validate a config document and merge defaults.

        Args:
            data: Parsed config document
            defaults: Parsed defaults (loaded from DEFAULTS_PATH if None)
            strict: Require the experiment's REQUIRED_KEYS in ``data``

        Returns:
            RunConfig

        Raises:
            ConfigValidationError: Unknown keys or experiment, missing required keys, bad types
        """
        if not isinstance(data, dict):
            raise ConfigValidationError("a run config must be a JSON object")
        defaults = load_defaults() if defaults is None else defaults
        unknown = set(data) - TOP_LEVEL_KEYS
        if unknown:
            raise ConfigValidationError(f"Unknown config keys: {sorted(unknown)}", field=sorted(unknown)[0])

        experiment = data.get("experiment")
        if experiment not in EXPERIMENTS:
            raise ConfigValidationError(f"Unknown experiment: {experiment}", field="experiment")

        equation = data.get("equation", FIXED_EQUATION.get(experiment))
        if not isinstance(equation, str):
            raise ConfigValidationError("config needs an equation name", field="equation")

        parameters = data.get("parameters", {})
        params = data.get("params", {})
        thresholds = data.get("thresholds", {})
        for name, value in (("parameters", parameters), ("params", params), ("thresholds", thresholds)):
            if not isinstance(value, dict):
                raise ConfigValidationError(f"'{name}' must be an object", field=name)
        if strict:
            missing = [key for key in REQUIRED_KEYS[experiment] if key not in parameters]
            if missing:
                raise ConfigValidationError(
                    f"experiment '{experiment}' requires parameter(s) {missing}", field=missing[0]
                )

        merged = copy.deepcopy(defaults.get("experiments", {}).get(experiment, {}) or {})
        merged.update(parameters)
        limits = copy.deepcopy(defaults.get("thresholds", {}).get(experiment, {}) or {})
        limits.update(thresholds)

        precision_defaults = defaults.get("precision", {})
        bits = resolve_precision(data.get("precision"), precision_defaults.get("bits", 256))
        guard_bits = _integer(data.get("guard_bits", precision_defaults.get("guard_bits", 64)), "guard_bits")

        output = data.get("output", defaults.get("output", {}).get("results_dir", "results"))
        log_level = data.get("log_level", defaults.get("logging", {}).get("log_level", "INFO"))
        return cls(
            equation=equation,
            experiment=experiment,
            params=dict(params),
            precision=bits,
            guard_bits=guard_bits,
            parameters=merged,
            thresholds=limits,
            output=str(output),
            verbose=bool(data.get("verbose", False)),
            log_level=str(log_level),
        )

    @classmethod
    def from_file(cls, path, defaults: Optional[Dict] = None) -> "RunConfig":
        """Load and validate a JSON config document."""
        return cls.from_dict(load_document(path), defaults)


def load_document(path) -> Dict:
    """
    Parse a config file into a dict.

    Raises:
        ConfigValidationError: Unreadable file, invalid JSON, or not an object
    """
    try:
        with open(path) as f:
            data = yaml.safe_load(f)
    except OSError as exc:
        raise ConfigValidationError(f"cannot read config {path}: {exc}", field="config") from exc
    except yaml.YAMLError as exc:
        raise ConfigValidationError(f"config {path} is not valid JSON: {exc}", field="config") from exc
    if not isinstance(data, dict):
        raise ConfigValidationError("a run config must be a JSON object", field="config")
    return data


def resolve_precision(configured, default: int) -> int:
    """Config value, else EXPASYM_PRECISION, else the YAML default."""
    if configured is not None:
        return _integer(configured, "precision")
    env = os.environ.get(PRECISION_ENV)
    if env:
        return _integer(env, PRECISION_ENV)
    return _integer(default, "precision")


# Utility functions

def _integer(value, name: str) -> int:
    try:
        out = int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigValidationError(f"'{name}' must be an integer, got {value!r}", field=name) from exc
    if isinstance(value, float) and value != out:
        raise ConfigValidationError(f"'{name}' must be an integer, got {value!r}", field=name)
    if out < 1:
        raise ConfigValidationError(f"'{name}' must be positive, got {value!r}", field=name)
    return out
