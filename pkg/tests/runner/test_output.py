"""Tests for CSV and JSON output helpers."""

import math
from fractions import Fraction

import mpmath
import numpy as np

from src.runner.output import csv_digits, format_real, rows_to_frame, to_jsonable, write_csv, write_report


def test_csv_digits():
    assert csv_digits(256) == 78
    assert csv_digits(100) == 31


def test_format_real():
    assert format_real(7, 10) == "7"
    assert format_real(True, 10) == "True"
    assert format_real(Fraction(12, 1), 10) == "12"
    assert format_real(0.5, 4) == "0.5000"
    assert format_real(Fraction(1, 3), 5) == "0.33333"


def test_complex_columns_are_split():
    frame = rows_to_frame([{"x": 1, "z": 1 + 2j, "note": "a", "gap": None}], 3)
    assert list(frame.columns) == ["x", "z_re", "z_im", "note", "gap"]
    assert frame.loc[0, "z_im"] == "2.00"
    assert frame.loc[0, "gap"] == ""


def test_mpmath_complex_is_split():
    frame = rows_to_frame([{"z": mpmath.mpc(1, -1)}], 3)
    assert frame.loc[0, "z_im"] == "-1.00"


def test_to_jsonable():
    data = {1: [Fraction(1, 3), 2j, np.float64(0.25), np.bool_(True), math.inf, np.arange(2)],
            "mp": mpmath.mpf(1.5)}
    assert to_jsonable(data) == {"1": ["1/3", {"re": 0.0, "im": 2.0}, 0.25, True, "inf", [0, 1]], "mp": 1.5}


def test_identical_rows_give_identical_bytes(tmp_path):
    rows = [{"k": k, "value": mpmath.mpf(k) / 7} for k in range(5)]
    first = write_csv(rows, tmp_path / "a.csv", 128)
    second = write_csv(rows, tmp_path / "b.csv", 128)
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text().splitlines()[0] == "k,value"
    assert write_csv([], tmp_path / "empty.csv", 128) is None


def test_write_report(tmp_path):
    path = write_report({"b": 1, "a": 2}, tmp_path / "out" / "report.json")
    assert path.read_text().startswith('{\n  "a": 2')
