"""
Output Writers

CSV files hold the raw grid data of an experiment: a header row, complex
numbers split into _re/_im columns and every real printed with
ceil(bits * 0.302) significant digits. JSON reports hold the summary.
Data files carry no timestamps, so identical runs give identical CSV bytes.
"""

import json
import math
from fractions import Fraction
from numbers import Integral
from pathlib import Path
from typing import Dict, List, Optional

import mpmath
import numpy as np
import pandas as pd

from ..core.numerics.precision import DIGITS_PER_BIT

SCHEMA_VERSION = 1
TOOL = "expasym"


def csv_digits(bits: int, digits_per_bit: float = DIGITS_PER_BIT) -> int:
    return int(math.ceil(bits * digits_per_bit))


def _is_complex(value) -> bool:
    if isinstance(value, (complex, np.complexfloating)):
        return True
    # mpc classes are created per mpmath context
    return type(value).__name__ == "mpc"


def format_real(value, digits: int) -> str:
    """Fixed significant-digit rendering of a real number."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    ctx = mpmath.mp.clone()
    ctx.dps = digits + 5
    converted = ctx.mpf(value.numerator) / value.denominator if isinstance(value, Fraction) else ctx.mpf(value)
    return ctx.nstr(converted, digits, strip_zeros=False)


def rows_to_frame(rows: List[Dict], digits: int) -> pd.DataFrame:
    """
    DataFrame of formatted strings; complex entries become <key>_re / <key>_im.

    Args:
        rows: One dict per grid point, same keys in every row
        digits: Significant digits for reals

    Returns:
        DataFrame ready for to_csv
    """
    records = []
    for row in rows:
        record = {}
        for key, value in row.items():
            if value is None:
                record[key] = ""
            elif isinstance(value, str):
                record[key] = value
            elif _is_complex(value):
                record[f"{key}_re"] = format_real(mpmath.mpmathify(value).real, digits)
                record[f"{key}_im"] = format_real(mpmath.mpmathify(value).imag, digits)
            else:
                record[key] = format_real(value, digits)
        records.append(record)
    return pd.DataFrame.from_records(records)


def write_csv(rows: List[Dict], path, bits: int) -> Optional[Path]:
    """Write grid rows; nothing is written for an empty grid."""
    if not rows:
        return None
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = rows_to_frame(rows, csv_digits(bits))
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def to_jsonable(value):
    """Recursively convert numbers (mpmath, numpy, Fraction, complex) to JSON types."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (str, type(None))):
        return value
    if isinstance(value, Integral):
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if _is_complex(value):
        z = complex(value)
        return {"re": z.real, "im": z.imag}
    f = float(value)
    if math.isnan(f) or math.isinf(f):
        return str(f)
    return f


def build_report(config, status: str, summary: Dict, passed: Optional[bool], files: List[str],
                 bits: int, wall_time: float, timestamp: str, error: Optional[Dict] = None) -> Dict:
    """JSON report document (schema 1)."""
    report = {
        "schema": SCHEMA_VERSION,
        "tool": TOOL,
        "experiment": config.experiment,
        "equation": {"name": config.equation, "params": config.params},
        "precision": {"bits": bits, "guard_bits": config.guard_bits, "requested_bits": config.precision},
        "parameters": config.parameters,
        "status": status,
        "summary": summary,
        "thresholds": config.thresholds,
        "passed": passed,
        "files": files,
        "metadata": {"wall_time_s": round(wall_time, 3), "timestamp": timestamp},
    }
    if error is not None:
        report["error"] = error
    return to_jsonable(report)


def write_report(report: Dict, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(report, f, indent=2, sort_keys=True)
        f.write("\n")
    return path
