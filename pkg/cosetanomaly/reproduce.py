# cosetanomaly/reproduce.py
"""
Regression targets: the stated propositions, worked examples and curated
tables, each recomputed and compared with what the source states.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from .anomaly import (
    LevelSet,
    ModelConfig,
    ar_closed_form,
    classify_levels,
    related_config,
    semisimple_precheck,
)
from .config import EngineConfig
from .curated import load_curated, verify_entry
from .errors import InvalidConfigurationError
from .liealg import (
    AlgebraData,
    AlgebraId,
    CenterSubgroup,
    OuterAut,
    TheoryVariant,
    admissible_levels,
    build_algebra,
    catalog,
    center_subgroups,
    full_center,
    parse_outer,
)
from .models import ReportRow, ReproduceReport
from .subalg import RegularSpec, embed_regular, enumerate_regular, full_embedding

logger = logging.getLogger(__name__)

EVERYTHING = LevelSet.everything()
EVEN = LevelSet.multiples(2)
ODD = LevelSet(2, frozenset({1}))
EMPTY = LevelSet.empty()

E6_ANOMALOUS_REGULAR = {"e6", "A5+A1", "3A2", "A5", "2A2+A1", "2A2"}


@dataclass(frozen=True)
class Target:
    """
    A named reproduction target.

    Attributes:
        name: Name used on the command line
        description: One-line summary
        runner: Builds the report
    """

    name: str
    description: str
    runner: Callable[[EngineConfig], ReproduceReport]


TARGETS: Dict[str, Target] = {}


def target(name: str, description: str):
    def register(func: Callable[[EngineConfig], ReproduceReport]):
        TARGETS[name] = Target(name, description, func)
        return func

    return register


def _variants(alg: AlgebraData) -> List[TheoryVariant]:
    if alg.id.is_d_even:
        return [TheoryVariant.PLUS, TheoryVariant.MINUS]
    return [TheoryVariant.PLUS]


def _level_row(name: str, cfg: ModelConfig, expected: LevelSet, citation: str) -> ReportRow:
    found = classify_levels(cfg)
    ok = found == expected.reduced()
    if not ok:
        logger.warning(f"{name}: {cfg.summary()} expected {expected} found {found}")
    return ReportRow(
        target=name,
        config=cfg.summary(),
        expected=expected.describe(),
        found=found.describe(),
        ok=ok,
        citation=citation,
        extrapolated=cfg.extrapolated,
    )


# Full-algebra propositions


def expected_full_levels(alg: AlgebraData, Z: CenterSubgroup, twist: OuterAut, variant: TheoryVariant) -> LevelSet:
    """Stated non-anomalous levels for h = g"""
    admissible = LevelSet.from_rule(admissible_levels(alg, Z, variant))
    if Z.is_trivial:
        return admissible
    s = alg.id.series
    full = Z.order == alg.center_order
    if twist.is_identity:
        if s == "A":
            return LevelSet.multiples(Z.order).intersect(admissible)
        if alg.id.is_d_odd:
            return LevelSet.multiples(4 if Z.order == 4 else 2)
        if alg.id.is_d_even:
            return EVEN
        if alg.id.name == "e6":
            return LevelSet.multiples(3)
        return admissible
    if not alg.id.is_d_even:
        return admissible

    minus = variant is TheoryVariant.MINUS
    if twist.name in ("flip", "w1"):
        table = {"Z1": EVEN, "Zdiag": EVEN, "Z2": EVERYTHING}
    elif twist.name == "w2":
        table = {"Z1": EVERYTHING, "Zdiag": EVEN, "Z2": EVEN}
    elif twist.name == "w3":
        table = {"Z1": EVEN, "Zdiag": EVERYTHING, "Z2": EVEN}
    elif twist.name == "w4":
        return (EMPTY if minus else EVERYTHING) if full else EVERYTHING
    elif twist.name == "w4inv":
        return (ODD if minus else EVEN) if full else EVERYTHING
    else:
        raise InvalidConfigurationError(f"No stated result for twist {twist.name} of {alg.name}")
    if full:
        return EMPTY if minus else EVEN
    return table[Z.name]


@target("props", "every h = g proposition, ranks up to the configured maximum")
def reproduce_props(config: EngineConfig) -> ReproduceReport:
    report = ReproduceReport(target="props")
    for alg_id in catalog(min(config.max_rank, 8)):
        alg = build_algebra(alg_id)
        h = full_embedding(alg)
        for Z in center_subgroups(alg):
            for twist in alg.diagram_automorphisms:
                for variant in _variants(alg):
                    cfg = ModelConfig(alg_id, Z, h, twist, variant)
                    expected = expected_full_levels(alg, Z, twist, variant)
                    report.rows.append(_level_row("props", cfg, expected, f"h = g propositions for {alg.name}"))
    return report


# Regular subalgebras


def _a_regular(name: str, alg: AlgebraData, anomalous: Dict[str, Dict[str, LevelSet]], citation: str) -> ReproduceReport:
    report = ReproduceReport(target=name)
    r = alg.rank
    for spec in enumerate_regular(alg):
        h = embed_regular(alg, spec)
        for Z in center_subgroups(alg):
            cfg = ModelConfig(alg.id, Z, h, alg.identity_outer())
            admissible = LevelSet.from_rule(cfg.rule)
            expected = anomalous.get(spec.label, {}).get(Z.name, admissible)
            report.rows.append(_level_row(name, cfg, expected, citation))
            closed = ar_closed_form(r, Z.order, spec)
            found = classify_levels(cfg)
            report.rows.append(
                ReportRow(
                    target=name,
                    config=f"closed form {cfg.summary()}",
                    expected=closed.describe(),
                    found=found.describe(),
                    ok=closed.reduced() == found,
                    citation="closed form for regular subalgebras of A_r",
                )
            )
    return report


@target("A4", "regular subalgebras of A4")
def reproduce_a4(config: EngineConfig) -> ReproduceReport:
    alg = build_algebra(AlgebraId("A", 4))
    anomalous = {"A4": {"Z5": LevelSet.multiples(5)}}
    return _a_regular("A4", alg, anomalous, "A4: only h = g with Z5 is anomalous")


@target("A5", "regular subalgebras of A5")
def reproduce_a5(config: EngineConfig) -> ReproduceReport:
    alg = build_algebra(AlgebraId("A", 5))
    bad = {"Z3": LevelSet.multiples(3), "Z6": LevelSet.multiples(6)}
    anomalous = {"A5": bad, "2A2": bad}
    return _a_regular("A5", alg, anomalous, "A5: h = g and 2A2 are the anomalous regular cases")


def _block_sizes(spec: RegularSpec) -> int:
    return sum(t.rank + 1 if t.series == "A" else t.rank for t in spec.ideals)


def _saturated_all_odd(alg: AlgebraData, spec: RegularSpec) -> bool:
    return _block_sizes(spec) == alg.rank and all(t.rank % 2 == 1 for t in spec.ideals if t.series == "A")


def expected_d_odd_regular(alg: AlgebraData, spec: RegularSpec, Z: CenterSubgroup) -> LevelSet:
    admissible = LevelSet.from_rule(admissible_levels(alg, Z))
    if Z.is_trivial or not _saturated_all_odd(alg, spec):
        return admissible
    return LevelSet.multiples(4 if Z.order == 4 else 2)


def expected_d4_regular(
    alg: AlgebraData, spec: RegularSpec, Z: CenterSubgroup, twist: OuterAut, variant: TheoryVariant
) -> LevelSet:
    """Stated outcomes for regular subalgebras of D4, untwisted and twisted by w1, w4 and w4inv"""
    if Z.is_trivial:
        return EVERYTHING
    has_d = any(t.series == "D" for t in spec.ideals)
    saturated = _saturated_all_odd(alg, spec)
    full = Z.order == alg.center_order
    minus = variant is TheoryVariant.MINUS
    choice = spec.embedding_choice

    if twist.is_identity:
        if saturated and not has_d:
            if (Z.name == "Z1" and choice == 1) or (Z.name == "Zdiag" and choice == 2):
                return EVERYTHING
            return EVEN
        if saturated:
            return EVEN
        if not has_d:
            return EVERYTHING
        return EVERYTHING if Z.name == "Z2" else EVEN

    if twist.name == "w1":
        if saturated and not has_d:
            if not full:
                return EVERYTHING
            if choice == 1:
                return EMPTY if minus else EVERYTHING
            return ODD if minus else EVEN
        if saturated:
            if Z.name == "Z2":
                return EVERYTHING
            return EMPTY if full and minus else EVEN
        if not has_d:
            return EVERYTHING
        return EVERYTHING if Z.name == "Z2" else EVEN

    listed = saturated or has_d
    if twist.name == "w4":
        return EMPTY if listed and full and minus else EVERYTHING
    if twist.name == "w4inv":
        if listed and full:
            return ODD if minus else EVEN
        return EVERYTHING
    raise InvalidConfigurationError(f"No stated regular result for twist {twist.name}")


@target("D4", "D4 untwisted and twisted outcomes, full algebra and regular subalgebras")
def reproduce_d4(config: EngineConfig) -> ReproduceReport:
    alg = build_algebra(AlgebraId("D", 4))
    report = ReproduceReport(target="D4")
    h_full = full_embedding(alg)
    for Z in center_subgroups(alg):
        for twist in alg.diagram_automorphisms:
            for variant in _variants(alg):
                cfg = ModelConfig(alg.id, Z, h_full, twist, variant)
                report.rows.append(
                    _level_row("D4", cfg, expected_full_levels(alg, Z, twist, variant), "D4 with h = g")
                )

    w1 = parse_outer(alg, "w1")
    w4 = parse_outer(alg, "w4")
    w4inv = parse_outer(alg, "w4inv")
    for spec in enumerate_regular(alg)[1:]:
        h = embed_regular(alg, spec)
        for Z in center_subgroups(alg):
            for variant in _variants(alg):
                for twist in (alg.identity_outer(), w1, w4, w4inv):
                    cfg = ModelConfig(alg.id, Z, h, twist, variant)
                    expected = expected_d4_regular(alg, spec, Z, twist, variant)
                    report.rows.append(_level_row("D4", cfg, expected, f"D4 regular subalgebras, twist {twist.name}"))
                # w2 and w3 results follow from w1 by the triality permutation
                base = ModelConfig(alg.id, Z, h, w1, variant)
                expected = expected_d4_regular(alg, spec, Z, w1, variant)
                for aut in (w4, w4inv):
                    image, _ = related_config(base, aut)
                    report.rows.append(
                        _level_row("D4", image, expected, f"D4 twist {image.twist.name} from w1 via {aut.name}")
                    )
    return report


@target("D5", "regular subalgebras of D5")
def reproduce_d5(config: EngineConfig) -> ReproduceReport:
    alg = build_algebra(AlgebraId("D", 5))
    report = ReproduceReport(target="D5")
    for spec in enumerate_regular(alg):
        h = embed_regular(alg, spec)
        for Z in center_subgroups(alg):
            cfg = ModelConfig(alg.id, Z, h, alg.identity_outer())
            expected = expected_d_odd_regular(alg, spec, Z)
            report.rows.append(_level_row("D5", cfg, expected, "D5: D3+D2 and A1+D3 keep the h = g anomaly"))
    return report


@target("e6-regular", "regular subalgebras of e6")
def reproduce_e6_regular(config: EngineConfig) -> ReproduceReport:
    alg = build_algebra(AlgebraId("E", 6))
    report = ReproduceReport(target="e6-regular")
    Z = full_center(alg)
    for spec in enumerate_regular(alg):
        cfg = ModelConfig(alg.id, Z, embed_regular(alg, spec), alg.identity_outer())
        expected = LevelSet.multiples(3) if spec.label in E6_ANOMALOUS_REGULAR else EVERYTHING
        report.rows.append(_level_row("e6-regular", cfg, expected, "e6 regular subalgebras"))
    return report


# Curated tables


def _curated_rows(name: str, alg_id: AlgebraId, table: Optional[str], config: EngineConfig) -> ReproduceReport:
    alg = build_algebra(alg_id)
    report = ReproduceReport(target=name)
    for entry in load_curated(alg_id, config.data_dir):
        if table is not None and entry.table != table:
            continue
        citation = entry.embedding.provenance.citation
        problems = verify_entry(alg, entry)
        stated = []
        if entry.compatibility is not None:
            stated.append(entry.compatibility.value)
        if entry.a_tilde is not None:
            stated.append(f"a~={entry.a_tilde}")
        report.rows.append(
            ReportRow(
                target=name,
                config=f"{entry.row_id} {entry.label} in {entry.regular_hull}",
                expected=", ".join(stated) or "consistent",
                found="; ".join(problems) or (", ".join(stated) or "consistent"),
                ok=not problems,
                citation=citation,
            )
        )
        for Z in center_subgroups(alg):
            if Z.name not in entry.expected_moduli:
                continue
            cfg = ModelConfig(alg_id, Z, entry.embedding, alg.identity_outer())
            expected = LevelSet.multiples(entry.expected_moduli[Z.name])
            if entry.table == "semisimple":
                check = semisimple_precheck(cfg)
                if check.anomalous_ideals:
                    logger.info(f"{entry.row_id}: ideals {list(check.anomalous_ideals)} are anomalous on their own")
            report.rows.append(_level_row(name, cfg, expected, citation))
    return report


@target("e6-rank1", "A1 subalgebras of e6")
def reproduce_e6_rank1(config: EngineConfig) -> ReproduceReport:
    return _curated_rows("e6-rank1", AlgebraId("E", 6), "rank1", config)


@target("e6-S", "simple S-subalgebras of e6")
def reproduce_e6_s(config: EngineConfig) -> ReproduceReport:
    return _curated_rows("e6-S", AlgebraId("E", 6), "S", config)


@target("e6-R", "simple R-subalgebras of e6")
def reproduce_e6_r(config: EngineConfig) -> ReproduceReport:
    return _curated_rows("e6-R", AlgebraId("E", 6), "R", config)


@target("e6-semisimple", "semisimple R-subalgebras of e6 and the g2+A2 S-subalgebra")
def reproduce_e6_semisimple(config: EngineConfig) -> ReproduceReport:
    return _curated_rows("e6-semisimple", AlgebraId("E", 6), "semisimple", config)


@target("A4-S", "S-subalgebras of A4")
def reproduce_a4_s(config: EngineConfig) -> ReproduceReport:
    return _curated_rows("A4-S", AlgebraId("A", 4), None, config)


@target("A5-S", "S-subalgebras of A5")
def reproduce_a5_s(config: EngineConfig) -> ReproduceReport:
    return _curated_rows("A5-S", AlgebraId("A", 5), None, config)


def target_names() -> List[str]:
    return list(TARGETS) + ["all"]


def run_target(name: str, config: EngineConfig) -> ReproduceReport:
    if name not in TARGETS:
        raise InvalidConfigurationError(
            f"Unknown reproduce target {name!r}", available=", ".join(target_names())
        )
    logger.info(f"Reproducing {name}")
    report = TARGETS[name].runner(config)
    logger.info(f"{name}: {len(report.rows)} rows, {report.mismatches} mismatches")
    return report


def run_targets(names: Sequence[str], config: EngineConfig) -> List[ReproduceReport]:
    """Run targets, expanding all, fanning out over config.reproduce_workers threads"""
    expanded: List[str] = []
    for name in names:
        expanded.extend(TARGETS if name == "all" else [name])
    for name in expanded:
        if name not in TARGETS:
            raise InvalidConfigurationError(f"Unknown reproduce target {name!r}", available=", ".join(target_names()))
    if config.reproduce_workers <= 1 or len(expanded) < 2:
        return [run_target(name, config) for name in expanded]
    with ThreadPoolExecutor(max_workers=config.reproduce_workers) as pool:
        return list(pool.map(lambda n: run_target(n, config), expanded))
