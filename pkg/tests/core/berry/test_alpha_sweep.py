"""Tests for the alpha sweep on the Stokes line."""

import sys

import pytest

from src.core.berry import alpha_sweep
from src.utils.exceptions import InsufficientDataError


def test_single_radius_is_rejected(toy):
    with pytest.raises(InsufficientDataError):
        alpha_sweep(toy, r_grid=[20])


def test_only_the_balanced_average_stays_bounded(toy, ctx):
    sweep = alpha_sweep(toy, r_grid=[20, 40], ctx=ctx)
    assert len(sweep.rows) == 6
    assert abs(sweep.slopes[0.5]) < 0.15
    assert 0.4 < sweep.slopes[0.0] < 0.6
    assert 0.4 < sweep.slopes[1.0] < 0.6

    frame = sweep.to_frame()
    assert list(frame.columns) == ["alpha", "r", "N", "ratio"]
    assert frame[frame["r"] == 20]["N"].unique().tolist() == [19]
    assert sweep.to_dict()["slopes"].keys() == {"0.0", "0.5", "1.0"}


def test_lateral_growth_comes_from_the_laplace_sums(toy, ctx, mocker):
    mocker.patch.object(sys.modules["src.core.berry.berry_scan"], "stokes_constant_of", return_value=0)
    mocker.patch.object(sys.modules["src.core.berry.berry_scan"], "exact_solution", side_effect=AssertionError("oracle called"))
    sweep = alpha_sweep(toy, r_grid=[20, 40], alpha_set=(0.0, 0.5), ctx=ctx)
    assert 0.4 < sweep.slopes[0.0] < 0.6
    assert abs(sweep.slopes[0.5]) < 0.15
