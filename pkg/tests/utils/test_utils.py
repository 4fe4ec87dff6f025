"""Tests for logging setup and the error hierarchy."""

import io
import logging

import pytest

from src.utils.exceptions import (
    AsymptoticsError,
    ConfigValidationError,
    GammaPoleError,
    NumericalError,
    OscillationDetectedError,
    SingularPadeError,
    UnknownEquationError,
)
from src.utils.logging_config import setup_logging


def test_setup_logging_levels():
    original = logging.getLogger().level
    logger = setup_logging("debug", stream=io.StringIO())
    assert logger.name == "src"
    assert logging.getLogger().level == logging.DEBUG
    setup_logging(logging.WARNING)
    assert logging.getLogger().level == logging.WARNING
    with pytest.raises(ValueError):
        setup_logging("chatty")
    logging.getLogger().setLevel(original)


def test_module_loggers_sit_under_the_package_logger():
    import src.utils
    from src.runner import runner

    original = logging.getLogger().level
    package = setup_logging(logging.WARNING, stream=io.StringIO())
    assert runner.logger.name == "src.runner.runner"
    assert runner.logger.getEffectiveLevel() == logging.WARNING
    assert runner.logger.parent in (package, logging.getLogger("src.runner"))
    assert "get_logger" not in src.utils.__all__
    logging.getLogger().setLevel(original)


@pytest.mark.parametrize("error, code", [
    (ConfigValidationError("bad", field="K"), 2),
    (UnknownEquationError("nope"), 2),
    (GammaPoleError("pole"), 3),
    (SingularPadeError("singular", 2, 2), 3),
])
def test_exit_codes(error, code):
    assert isinstance(error, AsymptoticsError)
    assert error.exit_code == code


def test_error_payloads():
    assert ConfigValidationError("bad", field="K").field == "K"
    assert isinstance(GammaPoleError("pole"), ValueError)
    oscillating = OscillationDetectedError("wobbles", raw_sequence=[1, 2])
    assert isinstance(oscillating, NumericalError)
    assert oscillating.raw_sequence == [1, 2]
