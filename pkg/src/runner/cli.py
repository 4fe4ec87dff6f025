"""
Command Line Interface

    expasym <experiment> --equation NAME [--param m=1] [--config FILE]
                         [--out DIR] [--precision BITS] [--set key=value]
    expasym catalog

Flags override the config file; parameters neither gives come from
config/defaults.yaml. Without --config the experiment's required keys may
also come from the defaults.
"""

import argparse
import sys
from typing import Dict, List, Optional

import yaml

from ..utils.exceptions import ConfigValidationError
from ..utils.logging_config import setup_logging
from .run_config import EXPERIMENTS, RunConfig, load_defaults, load_document
from .runner import EXIT_CONFIG, list_catalog, run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="expasym", description="Exponential asymptotics experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("catalog", help="List the catalog equations")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--equation", type=str, help="Catalog equation (toy, airy, painleve1, resonant)")
    common.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                        help="Equation parameter, e.g. m=1 (repeatable)")
    common.add_argument("--config", type=str, help="JSON run configuration")
    common.add_argument("--out", type=str, help="Output directory")
    common.add_argument("--precision", type=int, help="Working precision in bits")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", dest="overrides",
                        help="Experiment parameter override, value parsed as YAML (repeatable)")
    common.add_argument("--r", type=float, help="Base radius (berry, resonant-berry)")
    common.add_argument("--alpha", type=float, help="Averaging weight (sum, berry)")
    common.add_argument("--verbose", action="store_true", help="Print progress")
    common.add_argument("--log-level", type=str, help="Log level (DEBUG, INFO, WARNING, ...)")
    for name in EXPERIMENTS:
        sub.add_parser(name, parents=[common], help=f"Run the {name} experiment")
    return parser


def config_from_args(args: argparse.Namespace, defaults: Optional[Dict] = None) -> RunConfig:
    """
    Merge a config file (if any) with command-line overrides.

    Raises:
        ConfigValidationError: Invalid file, flag value or merged config
    """
    data = load_document(args.config) if args.config else {}

    data["experiment"] = args.command
    if args.equation:
        data["equation"] = args.equation
    if args.param:
        data["params"] = {**data.get("params", {}), **_pairs(args.param, "--param")}
    parameters = dict(data.get("parameters", {}))
    parameters.update(_pairs(args.overrides, "--set"))
    if args.r is not None:
        parameters["r"] = int(args.r) if args.r == int(args.r) else args.r
    if args.alpha is not None:
        parameters["alpha"] = args.alpha
    data["parameters"] = parameters
    if args.out:
        data["output"] = args.out
    if args.precision is not None:
        data["precision"] = args.precision
    if args.verbose:
        data["verbose"] = True
    if args.log_level:
        data["log_level"] = args.log_level
    return RunConfig.from_dict(data, defaults, strict=bool(args.config))


def main(argv: Optional[List[str]] = None) -> int:
    """Main function for command-line execution."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "catalog":
        for line in list_catalog():
            print(line)
        return 0

    defaults = load_defaults()
    try:
        config = config_from_args(args, defaults)
        setup_logging(config.log_level)
    except (ConfigValidationError, ValueError, TypeError) as exc:
        print(f"expasym: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    result = run(config)
    if result["exit_code"] == 0:
        verdict = {True: "PASS", False: "FAIL", None: "done"}[result["passed"]]
        print(f"{config.experiment} ({config.equation}): {verdict}")
        for path in result["files"]:
            print(f"  {path}")
    return result["exit_code"]


# Utility functions

def _pairs(items: List[str], flag: str) -> Dict:
    """KEY=VALUE strings to a dict, values parsed as YAML scalars or lists."""
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ConfigValidationError(f"{flag} expects KEY=VALUE, got {item!r}", field=flag)
        try:
            out[key.strip()] = yaml.safe_load(value)
        except yaml.YAMLError as exc:
            raise ConfigValidationError(f"{flag} {key}: cannot parse {value!r}", field=key) from exc
    return out


if __name__ == "__main__":
    sys.exit(main())
