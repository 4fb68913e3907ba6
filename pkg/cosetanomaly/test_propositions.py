"""
Tests that every reproduction target matches the stated results
"""

import pytest

from cosetanomaly.anomaly import LevelSet
from cosetanomaly.config import EngineConfig
from cosetanomaly.errors import InvalidConfigurationError
from cosetanomaly.liealg import TheoryVariant, build_algebra, parse_algebra, parse_outer, parse_subgroup
from cosetanomaly.reproduce import TARGETS, expected_full_levels, run_target, run_targets, target_names


@pytest.fixture
def engine_config():
    return EngineConfig(max_rank=6)


@pytest.mark.parametrize("name", sorted(TARGETS))
def test_target_reproduces(name, engine_config):
    report = run_target(name, engine_config)
    assert report.rows
    bad = [f"{r.config}: expected {r.expected}, found {r.found}" for r in report.rows if not r.ok]
    assert bad == []


def test_expected_full_levels_examples():
    d4 = build_algebra(parse_algebra("D4"))
    full = parse_subgroup(d4, "full")
    assert expected_full_levels(d4, full, parse_outer(d4, "w4inv"), TheoryVariant.MINUS) == LevelSet(2, frozenset({1}))
    assert expected_full_levels(d4, parse_subgroup(d4, "Z1"), parse_outer(d4, "w2"), TheoryVariant.PLUS) == LevelSet.everything()
    a5 = build_algebra(parse_algebra("A5"))
    assert expected_full_levels(a5, parse_subgroup(a5, "Z3"), a5.identity_outer(), TheoryVariant.PLUS) == LevelSet.multiples(3)
    assert expected_full_levels(a5, parse_subgroup(a5, "Z2"), parse_outer(a5, "flip"), TheoryVariant.PLUS) == LevelSet.multiples(2)


def test_run_targets_expands_all(engine_config):
    engine_config.reproduce_workers = 2
    reports = run_targets(["A4", "A5-S"], engine_config)
    assert [r.target for r in reports] == ["A4", "A5-S"]
    assert all(r.ok for r in reports)
    assert "all" in target_names()


def test_unknown_target(engine_config):
    with pytest.raises(InvalidConfigurationError):
        run_target("B7", engine_config)
    with pytest.raises(InvalidConfigurationError):
        run_targets(["nope"], engine_config)
