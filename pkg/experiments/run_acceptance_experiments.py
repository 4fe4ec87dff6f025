"""
Acceptance Experiment Runner

Runs every configuration under configs/acceptance/ in order and prints a
PASS/FAIL table. Results go to the output directory each config names.

    python experiments/run_acceptance_experiments.py [--only PREFIX] [--verbose]
"""

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Dict, List

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.runner.run_config import RunConfig
from src.runner.runner import run
from src.utils.exceptions import ConfigValidationError
from src.utils.logging_config import setup_logging

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs" / "acceptance"


def run_acceptance_config(path: Path, verbose: bool = False) -> Dict:
    """
    Run one acceptance configuration.

    Args:
        path: JSON config
        verbose: Print banners and progress bars

    Returns:
        Dictionary with name, description, exit_code, passed and elapsed seconds
    """
    started = time.time()
    try:
        config = RunConfig.from_file(path)
    except ConfigValidationError as exc:
        return {"name": path.stem, "description": str(exc), "exit_code": exc.exit_code,
                "passed": None, "elapsed": 0.0}
    result = run(config, verbose=verbose)
    return {
        "name": path.stem,
        "description": _description(path),
        "exit_code": result["exit_code"],
        "passed": result["passed"],
        "elapsed": time.time() - started,
    }


def print_summary_table(results: List[Dict]):
    """
    Print one row per configuration.

    Args:
        results: Output of run_acceptance_config
    """
    print("\n" + "=" * 78)
    print("SUMMARY")
    print("=" * 78)
    print(f"\n{'Config':<34} {'Exit':<6} {'Verdict':<9} {'Time (s)':<10}")
    print("-" * 78)
    for row in results:
        verdict = {True: "PASS", False: "FAIL", None: "-"}[row["passed"]]
        print(f"{row['name']:<34} {row['exit_code']:<6} {verdict:<9} {row['elapsed']:<10.1f}")
    print("=" * 78)


def main():
    """Main experiment runner."""
    parser = argparse.ArgumentParser(description="Run the acceptance configurations")
    parser.add_argument("--only", type=str, default="", help="Run configs whose name starts with PREFIX")
    parser.add_argument("--verbose", action="store_true", help="Print progress")
    args = parser.parse_args()
    setup_logging("WARNING")

    paths = [p for p in sorted(CONFIG_DIR.glob("*.json")) if p.stem.startswith(args.only)]
    print("\n" + "=" * 78)
    print("EXPASYM ACCEPTANCE EXPERIMENTS")
    print("=" * 78)
    print(f"\n{len(paths)} configuration(s) in {CONFIG_DIR}")

    total_start = time.time()
    results = []
    for path in paths:
        print(f"\n  Running {path.stem}: {_description(path)}")
        results.append(run_acceptance_config(path, verbose=args.verbose))

    print_summary_table(results)
    print(f"\nTotal execution time: {(time.time() - total_start) / 60:.1f} minutes")
    failed = [row["name"] for row in results if row["passed"] is not True]
    if failed:
        print(f"Not passing: {', '.join(failed)}")
    return 0 if not failed else 1


# Utility functions

def _description(path: Path) -> str:
    with open(path) as f:
        return json.load(f).get("description", "")


if __name__ == "__main__":
    sys.exit(main())
