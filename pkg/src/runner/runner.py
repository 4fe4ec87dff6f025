"""
Experiment Runner

Dispatches a RunConfig to the core operation behind its experiment, judges
the result against the config's thresholds and writes the CSV grid data and
the JSON report. Exit codes: 0 success, 2 invalid configuration, 3 numerical
failure (the report then carries the diagnostic).
"""

import logging
import math
import time
from datetime import datetime, timezone
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.numerics.precision import PrecisionContext
from ..core.equations.catalog import REQUIRED_PARAMS, build_catalog_equation, catalog_entries
from ..core.equations.checks import check_nonresonance, check_prepared, check_ode_residual
from ..core.equations.coefficients import generate_coefficients, scaled_coefficients
from ..core.equations.equation_spec import EquationSpec, to_exact
from ..core.equations.oracles import stokes_reference
from ..core.truncation.optimal_truncation import truncation_scan, table_length, working_context
from ..core.borel.borel_function import DEFAULT_PADE_DEGREE, borel_transform
from ..core.borel.summation import AverageSpec, averaged_sum
from ..core.borel.jump import lateral_jump, borel_jump_check
from ..core.stokes.extraction import extract_stokes, inversion_constant
from ..core.stokes.dingle import dingle_phase_check
from ..core.stokes.antistokes import antistokes_readings, converged_reading
from ..core.berry.berry_scan import BERRY_WIDTH, berry_scan, singular_scale, oracle_average
from ..core.berry.alpha_sweep import alpha_sweep
from ..core.berry.resonant import resonant_coefficient_fit, resonant_berry_scan
from ..utils.exceptions import ConfigValidationError, NumericalError, OracleUnavailableError
from .output import build_report, write_csv, write_report
from .run_config import FIXED_EQUATION, RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class ExperimentOutcome:
    """Grid rows for the CSV plus the summary and verdict for the report."""

    def __init__(self, rows: List[Dict], summary: Dict, passed: Optional[bool] = None,
                 bits: Optional[int] = None):
        self.rows = rows
        self.summary = summary
        self.passed = passed
        self.bits = bits

    def __repr__(self) -> str:
        return f"ExperimentOutcome(rows={len(self.rows)}, passed={self.passed})"


class ExperimentRunner:
    """
    Batch runner for one experiment at a time.

    Every handler is a pure function of the RunConfig: no timestamps or
    random state reach the CSV, so identical configs give identical data files.
    """

    def __init__(self, verbose: bool = False):
        """
        Initialize the runner.

        Args:
            verbose: Print banners and show progress bars
        """
        self.verbose = verbose
        self._handlers: Dict[str, Callable[[RunConfig, Optional[EquationSpec], PrecisionContext],
                                           ExperimentOutcome]] = {
            "coeffs": self._run_coeffs,
            "truncate": self._run_truncate,
            "sum": self._run_sum,
            "stokes": self._run_stokes,
            "jump": self._run_jump,
            "berry": self._run_berry,
            "alpha-sweep": self._run_alpha_sweep,
            "resonant-fit": self._run_resonant_fit,
            "resonant-berry": self._run_resonant_berry,
            "dingle": self._run_dingle,
            "antistokes": self._run_antistokes,
            "check": self._run_check,
        }

    def run(self, config: RunConfig) -> Dict:
        """
        Run one experiment and emit its files.

        Args:
            config: Validated run configuration

        Returns:
            Dictionary with exit_code, status, passed, files and the report (if written)
        """
        started = time.perf_counter()
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        try:
            ctx = self._context(config)
            spec = self._equation(config)
        except ConfigValidationError as exc:
            return self._invalid(exc)

        if self.verbose:
            self._print_header(config, ctx)

        try:
            outcome = self._handlers[config.experiment](config, spec, ctx)
        except NumericalError as exc:
            logger.error("%s failed: %s", config.experiment, exc)
            error = {"type": type(exc).__name__, "message": str(exc)}
            if getattr(exc, "raw_sequence", None):
                error["raw_sequence"] = list(exc.raw_sequence)
            report = build_report(config, "error", {}, None, [str(config.json_path)], ctx.bits,
                                  time.perf_counter() - started, timestamp, error=error)
            write_report(report, config.json_path)
            if self.verbose:
                print(f"ERROR ({error['type']}): {error['message']}")
            return {"exit_code": EXIT_NUMERICAL, "status": "error", "passed": None,
                    "files": [str(config.json_path)], "report": report}
        except ValueError as exc:
            return self._invalid(exc)

        bits = outcome.bits or ctx.bits
        files = []
        if write_csv(outcome.rows, config.csv_path, bits) is not None:
            files.append(str(config.csv_path))
        files.append(str(config.json_path))
        report = build_report(config, "ok", outcome.summary, outcome.passed, files, bits,
                              time.perf_counter() - started, timestamp)
        write_report(report, config.json_path)

        if self.verbose:
            self._print_summary(config, outcome, files)
        logger.info("%s on %s: passed=%s, files=%s", config.experiment, config.equation, outcome.passed, files)
        return {"exit_code": EXIT_OK, "status": "ok", "passed": outcome.passed, "files": files, "report": report}

    def _invalid(self, exc: Exception) -> Dict:
        logger.error("invalid configuration: %s", exc)
        if self.verbose:
            print(f"INVALID CONFIG: {exc}")
        return {"exit_code": EXIT_CONFIG, "status": "invalid", "passed": None, "files": [], "error": str(exc)}

    def _context(self, config: RunConfig) -> PrecisionContext:
        try:
            return PrecisionContext(config.precision, config.guard_bits)
        except ValueError as exc:
            raise ConfigValidationError(str(exc), field="precision") from exc

    def _equation(self, config: RunConfig) -> Optional[EquationSpec]:
        """The configured equation; None for experiments that build their own."""
        fixed = FIXED_EQUATION.get(config.experiment)
        if fixed is not None:
            if config.equation != fixed:
                raise ConfigValidationError(
                    f"experiment '{config.experiment}' runs on '{fixed}', not '{config.equation}'",
                    field="equation"
                )
            return None
        missing = [key for key in REQUIRED_PARAMS.get(config.equation, ()) if key not in config.params]
        if missing:
            raise ConfigValidationError(f"equation '{config.equation}' requires params {missing}", field=missing[0])
        return build_catalog_equation(config.equation, config.params)

    # Experiment handlers

    def _run_coeffs(self, config: RunConfig, spec: EquationSpec, ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        K = _integer(p["K"], "K")
        table = generate_coefficients(spec, K, ctx, exact=p.get("exact"))
        rows = [{"k": k, "a_k": str(table[k]) if table.exact else table[k]} for k in range(K + 1)]

        expect = p.get("expect")
        passed, mismatches = None, []
        if expect == "factorial":
            mismatches = [k for k in range(1, K + 1) if table[k] != math.factorial(k)]
            passed = table.exact and not mismatches
        elif expect == "scaled_recurrence":
            if "m" not in spec.params:
                raise ConfigValidationError("scaled_recurrence checks need the resonant parameter m", field="expect")
            m2 = to_exact(spec.params["m"]) ** 2
            b = scaled_coefficients(table)
            mismatches = [k for k in range(2, K) if b[k + 1] != (2 - m2 / k) * b[k] - b[k - 1]]
            passed = table.exact and not mismatches
        elif expect is not None:
            raise ConfigValidationError(f"Unknown expectation: {expect}", field="expect")

        summary = {
            "K": K,
            "expect": expect,
            "mismatches": len(mismatches),
            "first_mismatches": mismatches[:10],
            **table.precision_metadata(),
        }
        return ExperimentOutcome(rows, summary, passed)

    def _run_truncate(self, config: RunConfig, spec: EquationSpec, ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        points = [r * complex(math.cos(theta), math.sin(theta))
                  for theta in _floats(p.get("rays", [0.0]), "rays") for r in _floats(p["xs"], "xs")]
        reports = truncation_scan(spec, points, p.get("reference", "exact_oracle"), ctx)
        rows = [
            {"x": rep.x, "N": rep.N, "partial_sum": rep.partial_sum, "least_term": rep.least_term,
             "remainder": rep.remainder, "ratio": rep.ratio}
            for rep in reports
        ]
        ratios = [float(rep.ratio) for rep in reports]
        max_ratio = float(config.thresholds.get("max_ratio", 5.0))
        summary = {"points": len(reports), "max_ratio": max(ratios), "reference": p.get("reference", "exact_oracle")}
        return ExperimentOutcome(rows, summary, all(r <= max_ratio for r in ratios))

    def _run_sum(self, config: RunConfig, spec: EquationSpec, ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        xs = _floats(p["xs"], "xs")
        avg = AverageSpec(float(p.get("alpha", 0.5)), _integer(p.get("depth", 1), "depth"))
        degree = _integer(p.get("pade_degree", DEFAULT_PADE_DEGREE), "pade_degree")
        ctx = working_context(spec, max(xs), ctx)
        table = generate_coefficients(spec, 2 * degree + 2, ctx)
        bf = borel_transform(table, spec, ctx, pade_degree=degree)
        expected = p.get("expected")
        if expected is not None and len(expected) != len(xs):
            raise ConfigValidationError("'expected' needs one value per x", field="expected")

        rows, errors = [], []
        for i, x in enumerate(xs):
            value = averaged_sum(bf, x, avg, ctx)
            if expected is not None:
                reference = ctx.mpc(_complex(expected[i]))
            else:
                reference = self._sum_reference(spec, bf, x, avg, ctx)
            error = None if reference is None else abs(value - reference) / abs(reference)
            rows.append({"x": x, "value": value, "reference": reference, "relative_error": error})
            if error is not None:
                errors.append(float(error))

        tolerance = float(config.thresholds.get("relative_tolerance", 1e-30))
        passed = all(e <= tolerance for e in errors) if len(errors) == len(xs) else None
        summary = {"alpha": avg.alpha, "depth": avg.depth, "borel": bf.kind,
                   "max_relative_error": max(errors) if errors else None}
        return ExperimentOutcome(rows, summary, passed, bits=ctx.bits)

    @staticmethod
    def _sum_reference(spec, bf, x, avg: AverageSpec, ctx: PrecisionContext):
        """Oracle value of the same average, when the equation has one."""
        if avg.depth > 1 and not bf.single_valued:
            return None
        try:
            return oracle_average(spec, x, avg.alpha, ctx)
        except OracleUnavailableError:
            return None

    def _run_stokes(self, config: RunConfig, spec: EquationSpec, ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        j = _integer(p.get("j", 1), "j")
        lo, hi = _window(p["r_window"], "r_window")
        table = generate_coefficients(spec, hi, ctx)
        estimate = extract_stokes(table, spec, j, (lo, hi), _integer(p.get("richardson_order", 4), "richardson_order"),
                                  ctx)
        rows = [{"k": k, "S_est": s} for k, s in zip(estimate.indices, estimate.raw_sequence)]

        reference = _complex(p["expected"]) if p.get("expected") is not None else _known_stokes(spec, j, ctx)
        summary = {**estimate.to_dict(), "inversion_constant": inversion_constant(estimate, table, spec, ctx)}
        passed = None
        if reference is not None:
            error = float(abs(estimate.value - ctx.mpc(reference)) / abs(reference))
            summary.update({"reference": reference, "relative_error": error})
            passed = error <= float(config.thresholds.get("relative_tolerance", 1e-8))
        return ExperimentOutcome(rows, summary, passed)

    def _run_jump(self, config: RunConfig, spec: EquationSpec, ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        xs = _floats(p["xs"], "xs")
        _require_singular_point(spec)
        ctx = working_context(spec, max(xs), ctx)
        degree = _integer(p.get("pade_degree", DEFAULT_PADE_DEGREE), "pade_degree")
        table = generate_coefficients(spec, 2 * degree + 2, ctx)
        bf = borel_transform(table, spec, ctx, pade_degree=degree)
        S = _known_stokes(spec, 1, ctx)
        if S is None:
            raise ConfigValidationError(f"{spec.name}: the jump law needs a known Stokes constant", field="equation")

        rows, ratios = [], []
        for x in xs:
            jump = lateral_jump(bf, x, ctx)
            model = ctx.mpc(S) * singular_scale(spec, x, ctx)
            ratio = abs(jump) / abs(model)
            rows.append({"x": x, "jump": jump, "model": model, "ratio": ratio,
                         "deviation": abs(jump - model) / abs(model)})
            ratios.append(float(ratio))

        check = borel_jump_check(bf, spec, S, _grid(p.get("z_grid", [0.05, 0.3, 11]), "z_grid"), ctx)
        tolerance = float(config.thresholds.get("relative_tolerance", 1e-6))
        summary = {
            "stokes_constant": S,
            "ratios": ratios,
            "max_ratio_deviation": max(abs(r - 1) for r in ratios),
            "borel_jump": check.to_dict(),
        }
        return ExperimentOutcome(rows, summary, all(abs(r - 1) <= tolerance for r in ratios), bits=ctx.bits)

    def _run_berry(self, config: RunConfig, spec: EquationSpec, ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        _require_singular_point(spec)
        alpha = float(p.get("alpha", 0.5))
        scan = berry_scan(spec, _integer(p["r"], "r"), _grid(p.get("omega_grid", [-3.5, 3.5, 25]), "omega_grid"),
                          AverageSpec(alpha, 1), ctx, verbose=self.verbose)
        summary = scan.to_dict()
        passed = None
        if scan.expected_S is not None:
            S = scan.expected_S
            limits = config.thresholds
            deviation = scan.deviation_from(S, offset=(0.5 - alpha) * S) / abs(S)
            S_error = abs(scan.fit["S_fit"] - S) / abs(S)
            summary.update({"deviation": deviation, "S_error": S_error})
            passed = (deviation <= float(limits.get("max_deviation", 0.05))
                      and S_error <= float(limits.get("S_tolerance", 0.05))
                      and abs(scan.fit["center"]) <= float(limits.get("center_tolerance", 0.2)))
        return ExperimentOutcome(scan.rows(), summary, passed, bits=scan.bits)

    def _run_alpha_sweep(self, config: RunConfig, spec: EquationSpec, ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        _require_singular_point(spec)
        r_grid = [_integer(r, "r_grid") for r in p["r_grid"]]
        sweep = alpha_sweep(spec, r_grid, _floats(p.get("alphas", [0.0, 0.5, 1.0]), "alphas"), ctx)
        balanced = _band(config.thresholds.get("balanced_slope", [-0.15, 0.15]), "balanced_slope")
        lateral = _band(config.thresholds.get("lateral_slope", [0.4, 0.6]), "lateral_slope")
        passed = all(
            (balanced if alpha == 0.5 else lateral)[0] <= slope <= (balanced if alpha == 0.5 else lateral)[1]
            for alpha, slope in sweep.slopes.items()
        )
        return ExperimentOutcome(sweep.rows, sweep.to_dict(), passed)

    def _run_resonant_fit(self, config: RunConfig, spec: Optional[EquationSpec],
                          ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        fit = resonant_coefficient_fit(_resonant_m(config), _window(p["k_window"], "k_window"), ctx)
        passed = (fit.residual_rms <= float(config.thresholds.get("max_residual", 0.02))
                  and fit.conjugacy <= float(config.thresholds.get("max_conjugacy", 0.05)))
        return ExperimentOutcome(fit.rows(), fit.to_dict(), passed)

    def _run_resonant_berry(self, config: RunConfig, spec: Optional[EquationSpec],
                            ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        grid = _grid(p.get("beta_grid", [-4.0, 4.0, 25]), "beta_grid")
        plus, minus = resonant_berry_scan(_resonant_m(config), _integer(p["r"], "r"), grid, ctx, verbose=self.verbose)
        fitted_plus, fitted_minus = plus.fitted_values(), minus.fitted_values()
        rows = [
            {"beta": b, "C_plus": cp, "C_minus": cm, "model_plus": fp, "model_minus": fm}
            for b, cp, cm, fp, fm in zip(grid, plus.measured_C, minus.measured_C, fitted_plus, fitted_minus)
        ]

        max_residual = float(config.thresholds.get("max_residual", 0.10))
        width_tolerance = float(config.thresholds.get("width_tolerance", 0.15))
        summary, passed = {}, True
        for scan in (plus, minus):
            fit = scan.fit
            relative_residual = fit["residual_rms"] / abs(fit["S_fit"])
            width_error = abs(fit["width"] - BERRY_WIDTH) / BERRY_WIDTH
            summary[scan.label] = {**scan.to_dict(), "relative_residual": relative_residual,
                                   "width_error": width_error}
            passed = passed and scan.is_monotone() and relative_residual <= max_residual \
                and width_error <= width_tolerance
        return ExperimentOutcome(rows, summary, passed, bits=plus.bits)

    def _run_dingle(self, config: RunConfig, spec: EquationSpec, ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        j = _integer(p.get("j", 1), "j")
        _require_singular_point(spec, j)
        radius = float(p["x"])
        window = _integer(p.get("window", 20), "window")
        direction = -spec.dominant_singularity(j).phase
        table = generate_coefficients(spec, table_length(spec, radius), ctx)
        on_line = float(config.thresholds.get("on_line_max_spread", 0.05))
        off_line = float(config.thresholds.get("off_line_min_spread", 0.5))

        rows, reports, passed = [], [], True
        for arg in _floats(p.get("args", [0.0, 0.3]), "args"):
            x = radius * complex(math.cos(direction + arg), math.sin(direction + arg))
            report = dingle_phase_check(table, spec, x, j, window, ctx, tolerance=on_line)
            observed = list(report.observed_phases)
            for i, k in enumerate(report.indices):
                rows.append({"arg": arg, "k": k, "phase": float(report.phases[i]),
                             "observed_phase": observed[i] if len(observed) == len(report.indices) else None})
            reports.append({**report.to_dict(), "arg": arg})
            passed = passed and (report.spread < on_line if arg == 0 else report.spread > off_line)
        return ExperimentOutcome(rows, {"stokes_direction": direction, "reports": reports}, passed)

    def _run_antistokes(self, config: RunConfig, spec: EquationSpec, ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        _require_singular_point(spec)
        r_grid = _floats(p["r_grid"], "r_grid")
        C = _complex(p.get("C_reference", 0))
        S = _known_stokes(spec, 1, ctx)
        tolerance = float(config.thresholds.get("relative_tolerance", 0.02))
        convergence = float(config.thresholds.get("convergence_tolerance", 0.02))
        signs = {"plus": 1, "minus": -1}

        rows, limits, passed = [], {}, True
        for direction in p.get("directions", ["plus", "minus"]):
            if direction not in signs:
                raise ConfigValidationError(f"Unknown direction: {direction}", field="directions")
            readings = antistokes_readings(spec, C, direction, r_grid, ctx)
            rows.extend({"direction": direction, "r": r, "reading": c} for r, c in zip(r_grid, readings))
            limit = converged_reading(readings, r_grid, convergence, label=f"{spec.name} {direction}")
            entry = {"limit": limit}
            if S is not None:
                expected = C + signs[direction] * S / 2
                error = abs(complex(limit) - expected) / abs(expected)
                entry.update({"expected": expected, "relative_error": error})
                passed = passed and error <= tolerance
            limits[direction] = entry
        return ExperimentOutcome(rows, {"C_reference": C, "stokes_constant": S, "limits": limits},
                                 passed if S is not None else None)

    def _run_check(self, config: RunConfig, spec: EquationSpec, ctx: PrecisionContext) -> ExperimentOutcome:
        p = config.parameters
        xi = p.get("xi")
        reports = [
            check_nonresonance(spec.lambdas, _integer(p.get("bound", 6), "bound"), ctx),
            check_prepared(spec, None if xi is None else float(xi)),
            check_ode_residual(spec, _integer(p.get("n_terms", 8), "n_terms")),
        ]
        rows = [{"check": r.name, "passed": r.passed, "witnesses": len(r.witnesses)} for r in reports]
        summary = {r.name: r.to_dict() for r in reports}
        return ExperimentOutcome(rows, summary, all(r.passed for r in reports))

    # Printing

    def _print_header(self, config: RunConfig, ctx: PrecisionContext) -> None:
        print("=" * 70)
        print(f"Experiment: {config.experiment}")
        print(f"Equation: {config.equation} {config.params or ''}")
        print(f"Precision: {ctx.bits} bits (+{ctx.guard_bits} guard)")
        print("-" * 70)

    def _print_summary(self, config: RunConfig, outcome: ExperimentOutcome, files: List[str]) -> None:
        verdict = {True: "PASS", False: "FAIL", None: "n/a"}[outcome.passed]
        print("\n" + "=" * 70)
        print(f"Result: {verdict}")
        print(f"  Rows: {len(outcome.rows)}")
        for path in files:
            print(f"  Wrote {path}")


def run(config: RunConfig, verbose: Optional[bool] = None) -> Dict:
    """Run one configured experiment; see ExperimentRunner.run."""
    runner = ExperimentRunner(verbose=config.verbose if verbose is None else verbose)
    return runner.run(config)


def list_catalog() -> List[str]:
    """One line per catalog entry: eigenvalues, exponents, oracles and required parameters."""
    lines = []
    for entry in catalog_entries():
        if not entry["oracle"]:
            oracle = "no oracle: series-only experiments"
        elif entry["stokes_oracle"]:
            oracle = "oracles: exact solution, Stokes constant"
        else:
            oracle = "oracle: exact solution"
        line = (f"{entry['name']:<10} lambda=({', '.join(entry['lambdas'])}) "
                f"beta=({', '.join(entry['betas'])}) beta'=({', '.join(entry['beta_primes'])}) "
                f"offset={entry['series_offset']}  {oracle}")
        if entry["required_params"]:
            line += f"  requires: {', '.join(entry['required_params'])}"
        lines.append(line)
    return lines


# Utility functions

def _integer(value, name: str) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ConfigValidationError(f"'{name}' must be an integer, got {value!r}", field=name)
    return int(value)


def _floats(values, name: str) -> List[float]:
    if not isinstance(values, (list, tuple)) or not values:
        raise ConfigValidationError(f"'{name}' must be a non-empty list of numbers", field=name)
    try:
        return [float(v) for v in values]
    except (TypeError, ValueError) as exc:
        raise ConfigValidationError(f"'{name}' must be a list of numbers, got {values!r}", field=name) from exc


def _complex(value) -> complex:
    """Number, numeric string or [re, im] pair."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigValidationError(f"complex values are [re, im] pairs, got {value!r}")
        return complex(float(to_exact(value[0])), float(to_exact(value[1])))
    if isinstance(value, complex):
        return value
    try:
        return complex(float(to_exact(value)))
    except (TypeError, ValueError) as exc:
        raise ConfigValidationError(f"not a number: {value!r}") from exc


def _window(value, name: str) -> Tuple[int, int]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigValidationError(f"'{name}' must be [lo, hi]", field=name)
    return _integer(value[0], name), _integer(value[1], name)


def _grid(value, name: str) -> List[float]:
    """[start, stop, points] on an evenly spaced grid."""
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ConfigValidationError(f"'{name}' must be [start, stop, points]", field=name)
    return [float(v) for v in np.linspace(float(value[0]), float(value[1]), _integer(value[2], name))]


def _band(value, name: str) -> Tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigValidationError(f"threshold '{name}' must be [low, high]", field=name)
    return float(value[0]), float(value[1])


def _require_singular_point(spec: EquationSpec, j: int = 1) -> None:
    if not 1 <= j <= len(spec.singular_points):
        raise ConfigValidationError(f"{spec.name} records no singular point {j}", field="equation")


def _known_stokes(spec: EquationSpec, j: int, ctx: PrecisionContext) -> Optional[complex]:
    """Independent Stokes oracle first, then the recorded value."""
    if j == 1:
        S = stokes_reference(spec, ctx)
        if S is not None:
            return complex(S)
    if j <= len(spec.singular_points) and spec.singular_points[j - 1].stokes_constant is not None:
        return complex(spec.singular_points[j - 1].stokes_constant)
    return None


def _resonant_m(config: RunConfig):
    return config.params.get("m", config.parameters.get("m", 1))
