"""
Runner Module

Implements the batch front end: run configurations, the experiment
dispatcher, CSV/JSON output and the command-line interface.
"""

from .run_config import EXPERIMENTS, RunConfig, load_defaults, load_document, resolve_precision
from .runner import ExperimentRunner, ExperimentOutcome, run, list_catalog
from .output import write_csv, write_report, build_report, csv_digits

__all__ = [
    'EXPERIMENTS',
    'RunConfig',
    'load_defaults',
    'load_document',
    'resolve_precision',
    'ExperimentRunner',
    'ExperimentOutcome',
    'run',
    'list_catalog',
    'write_csv',
    'write_report',
    'build_report',
    'csv_digits'
]
