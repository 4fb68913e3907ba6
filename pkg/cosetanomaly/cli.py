# cosetanomaly/cli.py
"""
Command-line frontend.

    cosetanomaly info A5
    cosetanomaly subalgebras D5 --regular
    cosetanomaly check --g D4 --Z full --h g --twist w4 --variant - --k 1
    cosetanomaly classify --g e6 --Z Z3 --h 2A2
    cosetanomaly reproduce --target e6-rank1
"""

import argparse
import logging
import re
import sys
from typing import List, Optional, Sequence

from pydantic import BaseModel

from .anomaly import ModelConfig, check_level, classify_levels, window_agrees
from .config import EngineConfig, OutputFormat
from .curated import find_entry, load_curated, render_vector
from .errors import (
    CosetAnomalyError,
    ErrorReport,
    InvalidConfigurationError,
    SubalgebraParseError,
    UnsupportedAlgebraError,
)
from .liealg import (
    AlgebraId,
    TheoryVariant,
    admissible_levels,
    build_algebra,
    center_subgroups,
    parse_algebra,
    parse_outer,
    parse_subgroup,
)
from .models import ClassificationReport, ErrorPayload, VerdictReport
from .quadlattice import format_fraction
from .reproduce import run_targets, target_names
from .subalg import (
    SubalgebraEmbedding,
    dynkin_index,
    embed_regular,
    enumerate_regular,
    full_embedding,
    parse_ideal_sum,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
_SELECTOR = re.compile(r"^(.*?)@(i?\d+)$")


def parse_subalgebra(expr: str, ambient: AlgebraId, data_dir: Optional[str] = None) -> SubalgebraEmbedding:
    """
    Resolve a subalgebra expression inside the ambient algebra.

    Accepts g, regular sums such as A3+2A1 with an optional @n selector,
    @i1/@i2 for the two curated variants inside a regular hull, and curated
    row ids such as e6:rank1:row17.
    """
    text = (expr or "").strip()
    if not text:
        raise SubalgebraParseError("Empty subalgebra expression")
    alg = build_algebra(ambient)
    if text.lower() in ("g", alg.name.lower()):
        return full_embedding(alg)

    if ":" in text:
        prefix = text.split(":", 1)[0]
        if prefix.lower() != alg.name.lower():
            raise SubalgebraParseError(f"Row {text} does not belong to {alg.name}", expr=text)
        return find_entry(ambient, text, data_dir).embedding

    selector = None
    match = _SELECTOR.match(text)
    if match:
        text, selector = match.group(1), match.group(2)

    try:
        ideals = parse_ideal_sum(text)
    except CosetAnomalyError as e:
        raise SubalgebraParseError(f"Cannot parse {expr!r}: {e.message}", expr=expr) from e

    if ambient.series == "A":
        size = sum(t.rank + 1 for t in ideals if t.series == "A")
        if size > ambient.rank + 1:
            raise SubalgebraParseError(
                f"{text} needs {size} > {ambient.rank + 1} rows and does not fit in {alg.name}",
                expr=expr,
            )

    if selector is not None and selector.startswith("i"):
        return _curated_variant(alg.id, text, selector, data_dir)

    specs = enumerate_regular(alg)
    matches = [s for s in specs if s.label == text]
    if not matches:
        matches = [s for s in specs if s.iso_label == text]
    if not matches:
        raise SubalgebraParseError(
            f"{text} is not a regular subalgebra of {alg.name}",
            expr=expr,
            available=", ".join(sorted({s.label for s in specs})),
        )
    matches.sort(key=lambda s: s.embedding_choice)
    if selector is None:
        if len(matches) > 1:
            logger.info(f"{text} has {len(matches)} inequivalent embeddings in {alg.name}, using the first")
        return embed_regular(alg, matches[0])
    n = int(selector)
    if n < 1 or n > len(matches):
        raise SubalgebraParseError(
            f"Selector @{n} is out of range: {text} has {len(matches)} embedding(s) in {alg.name}",
            expr=expr,
        )
    return embed_regular(alg, matches[n - 1])


def _curated_variant(alg_id: AlgebraId, hull: str, selector: str, data_dir: Optional[str]) -> SubalgebraEmbedding:
    try:
        entries = load_curated(alg_id, data_dir)
    except UnsupportedAlgebraError as e:
        raise SubalgebraParseError(f"@{selector} needs curated data: {e.message}") from e
    found = [e for e in entries if e.regular_hull == hull and e.selector == selector]
    if not found:
        raise SubalgebraParseError(f"No curated variant {selector} inside {hull} for {alg_id}", hull=hull)
    return found[0].embedding


# Output


def format_table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(c) for c in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)),
        "  ".join("-" * w for w in widths),
    ]
    lines.extend("  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells)
    return "\n".join(lines)


def _emit(model: BaseModel, text: str, config: EngineConfig) -> None:
    if config.output_format is OutputFormat.JSON:
        print(model.model_dump_json(indent=2))
    else:
        print(text)


class InfoReport(BaseModel):
    algebra: str
    center_order: int
    theta_norms: List[str]
    subgroups: List[dict]
    automorphisms: List[dict]


class SubalgebraListing(BaseModel):
    algebra: str
    regular: List[dict] = []
    curated: List[dict] = []


# Commands


def cmd_info(args, config: EngineConfig) -> int:
    alg = build_algebra(parse_algebra(args.algebra))
    subgroups = []
    for Z in center_subgroups(alg):
        variants = [TheoryVariant.PLUS, TheoryVariant.MINUS] if alg.id.is_d_even else [TheoryVariant.PLUS]
        for variant in variants:
            rule = admissible_levels(alg, Z, variant)
            subgroups.append(
                {
                    "name": Z.name,
                    "order": Z.order,
                    "variant": variant.symbol,
                    "modulus": rule.modulus,
                    "reason": rule.reason,
                }
            )
    automorphisms = [{"name": a.name, "perm": list(a.perm), "order": a.order()} for a in alg.diagram_automorphisms]
    report = InfoReport(
        algebra=alg.name,
        center_order=alg.center_order,
        theta_norms=[format_fraction(n) for n in alg.theta_norms()],
        subgroups=subgroups,
        automorphisms=automorphisms,
    )
    lines = [
        f"{alg.name}: center of order {alg.center_order}, theta norms {', '.join(report.theta_norms) or '-'}",
        "",
        format_table(
            ["Z", "order", "variant", "levels", "reason"],
            [[s["name"], s["order"], s["variant"], f"{s['modulus']}Z" if s["modulus"] > 1 else "Z", s["reason"]] for s in subgroups],
        ),
        "",
        format_table(["automorphism", "permutation", "order"], [[a["name"], a["perm"], a["order"]] for a in automorphisms]),
    ]
    _emit(report, "\n".join(lines), config)
    return 0


def cmd_subalgebras(args, config: EngineConfig) -> int:
    alg = build_algebra(parse_algebra(args.algebra))
    show_regular = args.regular or not args.curated
    listing = SubalgebraListing(algebra=alg.name)
    sections = []
    if show_regular:
        for spec in enumerate_regular(alg):
            emb = embed_regular(alg, spec)
            indices = [dynkin_index(alg, emb, i) for i in range(len(emb.ideal_types))]
            listing.regular.append(
                {
                    "label": spec.label,
                    "iso": spec.iso_label,
                    "rank": spec.rank,
                    "choice": spec.embedding_choice,
                    "dynkin_indices": indices,
                }
            )
        sections.append(
            format_table(
                ["label", "iso", "rank", "choice", "indices"],
                [[r["label"], r["iso"], r["rank"], r["choice"], r["dynkin_indices"]] for r in listing.regular],
            )
        )
    if args.curated:
        for entry in load_curated(alg.id, config.data_dir):
            images = entry.embedding.center_generators_images
            listing.curated.append(
                {
                    "row_id": entry.row_id,
                    "label": entry.label,
                    "regular_hull": entry.regular_hull,
                    "selector": entry.selector,
                    "dynkin_indices": list(entry.embedding.dynkin_indices),
                    "generator": render_vector(images[0]) if images and images[0] is not None else None,
                }
            )
        sections.append(
            format_table(
                ["row", "label", "hull", "selector", "indices", "generator image"],
                [
                    [c["row_id"], c["label"], c["regular_hull"] or "-", c["selector"] or "-", c["dynkin_indices"], c["generator"] or "-"]
                    for c in listing.curated
                ],
            )
        )
    _emit(listing, "\n\n".join(sections), config)
    return 0


def _build_config(args, config: EngineConfig) -> ModelConfig:
    alg_id = parse_algebra(args.g)
    alg = build_algebra(alg_id)
    h = parse_subalgebra(args.h, alg_id, config.data_dir)
    return ModelConfig(
        alg=alg_id,
        Z=parse_subgroup(alg, args.Z),
        h=h,
        twist=parse_outer(alg, args.twist),
        variant=TheoryVariant.parse(args.variant),
    )


def cmd_check(args, config: EngineConfig) -> int:
    cfg = _build_config(args, config)
    verdict = check_level(cfg, args.k)
    report = VerdictReport.build(cfg, verdict)
    status = "ANOMALOUS" if verdict.anomalous else "anomaly free"
    lines = [f"{cfg.summary()} at k={args.k}: {status}"]
    if verdict.witness is not None:
        w = verdict.witness
        lines.append(
            f"  witness: M~={w.m_tilde} at {render_vector(w.m_tilde_vector)}, M={w.m}, phase {w.phase}"
        )
    if verdict.extrapolated:
        lines.append("  note: minus theory on a proper subgroup (extrapolated)")
    _emit(report, "\n".join(lines), config)
    return 0


def cmd_classify(args, config: EngineConfig) -> int:
    cfg = _build_config(args, config)
    levels = classify_levels(cfg)
    report = ClassificationReport.build(cfg, levels)
    lines = [
        f"{cfg.summary()}",
        f"  admissible: {cfg.rule.modulus}Z" if cfg.rule.modulus > 1 else "  admissible: Z",
        f"  anomaly free: {levels.describe()}",
    ]
    for w in report.witnesses:
        lines.append(f"  restricted by M~={w.m_tilde}, M={w.m}: {w.phase} allows {w.allows}")
    if report.extrapolated:
        lines.append("  note: minus theory on a proper subgroup (extrapolated)")
    if args.window:
        agrees = window_agrees(cfg, levels)
        lines.append(f"  level-by-level window: {'agrees' if agrees else 'DISAGREES'}")
        if not agrees:
            logger.error(f"{cfg.summary()}: closed form disagrees with the level-by-level check")
    _emit(report, "\n".join(lines), config)
    return 0


def cmd_reproduce(args, config: EngineConfig) -> int:
    if args.workers is not None:
        config.reproduce_workers = args.workers
        config.validate()
    reports = run_targets(args.target or ["all"], config)
    failed = 0
    for report in reports:
        failed += report.mismatches
        if config.output_format is OutputFormat.JSON:
            continue
        rows = report.rows if args.verbose else [r for r in report.rows if not r.ok]
        print(f"{report.target}: {len(report.rows)} rows, {report.mismatches} mismatches")
        if rows:
            print(
                format_table(
                    ["config", "expected", "found", "ok", "source"],
                    [[r.config + (" *" if r.extrapolated else ""), r.expected, r.found, "yes" if r.ok else "NO", r.citation] for r in rows],
                )
            )
    if config.output_format is OutputFormat.JSON:
        print("[" + ",\n".join(r.model_dump_json(indent=2) for r in reports) + "]")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cosetanomaly", description="Global gauge anomalies of gauged WZW cosets")
    parser.add_argument("--json", action="store_true", help="Emit JSON instead of tables.")
    parser.add_argument("--data-dir", type=str, default=None, help="Directory with the curated tables.")
    parser.add_argument("--log-level", type=str, default=None, help="Logging level.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # --json also works after the subcommand
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="Emit JSON instead of tables.")

    info = subparsers.add_parser("info", parents=[output], help="Center, subgroups, admissible levels and automorphisms.")
    info.add_argument("algebra")

    subs = subparsers.add_parser("subalgebras", parents=[output], help="List regular and curated subalgebras.")
    subs.add_argument("algebra")
    subs.add_argument("--regular", action="store_true", help="List regular subalgebras (default).")
    subs.add_argument("--curated", action="store_true", help="List curated rows.")

    for name, help_text in (("check", "Anomaly verdict at one level."), ("classify", "All anomaly-free levels.")):
        p = subparsers.add_parser(name, parents=[output], help=help_text)
        p.add_argument("--g", required=True, help="Ambient algebra, e.g. A5 or e6.")
        p.add_argument("--Z", default="full", help="Center subgroup: trivial, Z<p>, Z1, Z2, Zdiag or full.")
        p.add_argument("--h", default="g", help="Subalgebra expression.")
        p.add_argument("--twist", default="id", help="Outer automorphism: id, flip, w1..w4, w4inv.")
        p.add_argument("--variant", default="+", help="Theory variant, + or - (D_r with r even).")
        if name == "check":
            p.add_argument("--k", type=int, required=True, help="Level.")
        else:
            p.add_argument("--window", action="store_true", help="Cross-check against a level-by-level window.")

    rep = subparsers.add_parser("reproduce", parents=[output], help="Recompute stated results and diff them.")
    rep.add_argument("--target", action="append", choices=target_names(), help="Target, repeatable; default all.")
    rep.add_argument("--workers", type=int, default=None, help="Thread fan-out across targets.")
    rep.add_argument("--verbose", action="store_true", help="Print every row, not only mismatches.")
    return parser


COMMANDS = {
    "info": cmd_info,
    "subalgebras": cmd_subalgebras,
    "check": cmd_check,
    "classify": cmd_classify,
    "reproduce": cmd_reproduce,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    config = EngineConfig.from_env()
    if args.data_dir:
        config.data_dir = args.data_dir
    if args.log_level:
        config.log_level = args.log_level.upper()
    if args.json:
        config.output_format = OutputFormat.JSON

    logging.basicConfig(level=config.logging_level(), format=LOG_FORMAT)

    try:
        try:
            config.validate()
        except ValueError as e:
            raise InvalidConfigurationError(f"Invalid configuration: {e}") from e
        return COMMANDS[args.command](args, config)
    except CosetAnomalyError as e:
        report = ErrorReport.from_exception(e)
        logger.debug(f"{args.command} failed: {report.to_dict()}")
        if config.output_format is OutputFormat.JSON:
            payload = ErrorPayload(**report.to_dict())
            print(payload.model_dump_json(indent=2))
        else:
            print(f"error ({report.category.value}): {report.message}", file=sys.stderr)
        return report.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
