"""
Tests for the error hierarchy and exit codes
"""

import pytest

from cosetanomaly.errors import (
    CosetAnomalyError,
    CuratedDataError,
    DimensionMismatchError,
    ErrorCategory,
    ErrorReport,
    InadmissibleLevelError,
    InvalidConfigurationError,
    SubalgebraParseError,
)


@pytest.mark.parametrize(
    "error, code",
    [
        (DimensionMismatchError("bad"), 2),
        (InvalidConfigurationError("bad"), 2),
        (SubalgebraParseError("bad"), 2),
        (InadmissibleLevelError("bad"), 3),
        (CuratedDataError("bad"), 1),
        (KeyError("bad"), 2),
    ],
)
def test_exit_codes(error, code):
    assert ErrorReport.from_exception(error).exit_code == code


def test_errors_are_value_errors():
    """Test that callers can catch engine errors as ValueError"""
    with pytest.raises(ValueError):
        raise InadmissibleLevelError("k=1 is not admissible", k=1)


def test_error_report_from_exception():
    report = ErrorReport.from_exception(InadmissibleLevelError("k=1 is not admissible", k=1, modulus=2))
    assert report.category is ErrorCategory.INADMISSIBLE_LEVEL
    assert report.exit_code == 3
    assert report.to_dict() == {
        "category": "inadmissible_level",
        "message": "k=1 is not admissible",
        "exit_code": 3,
        "details": {"k": "1", "modulus": "2"},
    }


def test_error_report_for_foreign_exceptions():
    report = ErrorReport.from_exception(KeyError("x"))
    assert report.category is ErrorCategory.INVALID_INPUT
    assert report.exit_code == 2


def test_to_dict_includes_severity():
    data = CuratedDataError("broken", path="x.json").to_dict()
    assert data["severity"] == "data"
    assert data["details"] == {"path": "x.json"}
    assert CosetAnomalyError("plain").to_dict()["severity"] == "usage"
