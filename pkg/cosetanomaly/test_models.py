"""
Tests for the JSON report models
"""

import pytest

from cosetanomaly.anomaly import LevelSet, ModelConfig, check_level, classify_levels
from cosetanomaly.liealg import TheoryVariant, build_algebra, parse_algebra, parse_outer, parse_subgroup
from cosetanomaly.models import (
    ClassificationReport,
    ErrorPayload,
    LevelSetReport,
    ReportRow,
    ReproduceReport,
    VerdictReport,
)
from cosetanomaly.subalg import full_embedding


def config(name, Z, twist="id", variant=TheoryVariant.PLUS):
    data = build_algebra(parse_algebra(name))
    return ModelConfig(data.id, parse_subgroup(data, Z), full_embedding(data), parse_outer(data, twist), variant)


@pytest.mark.parametrize(
    "levels",
    [
        LevelSet.everything(),
        LevelSet.empty(),
        LevelSet.multiples(6),
        LevelSet(4, frozenset({1, 3})),
    ],
)
def test_level_set_report_round_trip(levels):
    """Test that a level set survives JSON and converts back unchanged"""
    report = LevelSetReport.from_level_set(levels)
    restored = LevelSetReport.model_validate_json(report.model_dump_json())
    assert restored == report
    assert restored.to_level_set() == levels
    assert restored.description == levels.describe()


def test_verdict_report_round_trip():
    cfg = config("D4", "full", twist="w4", variant=TheoryVariant.MINUS)
    report = VerdictReport.build(cfg, check_level(cfg, 1))
    assert report.witness is not None
    assert VerdictReport.model_validate_json(report.model_dump_json()) == report


def test_classification_report_round_trip():
    cfg = config("e6", "Z3")
    report = ClassificationReport.build(cfg, classify_levels(cfg))
    restored = ClassificationReport.model_validate_json(report.model_dump_json())
    assert restored == report
    assert restored.anomaly_free.to_level_set() == LevelSet.multiples(3)
    assert restored.witnesses


def test_reproduce_report_round_trip():
    rows = [
        ReportRow(target="A4", config="A4/Z5", expected="5Z", found="5Z", ok=True),
        ReportRow(target="A4", config="A4/Z5 A1", expected="Z", found="5Z", ok=False, citation="row 1"),
    ]
    report = ReproduceReport(target="A4", rows=rows)
    restored = ReproduceReport.model_validate_json(report.model_dump_json())
    assert restored == report
    assert restored.mismatches == 1
    assert not restored.ok


def test_error_payload_round_trip():
    payload = ErrorPayload(category="parse", message="bad", exit_code=2, details={"expr": "Q9"})
    assert ErrorPayload.model_validate_json(payload.model_dump_json()) == payload


def test_level_set_report_rejects_zero_modulus():
    with pytest.raises(ValueError):
        LevelSetReport(modulus=0)
