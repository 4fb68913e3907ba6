# cosetanomaly/models.py
from typing import List, Optional

from pydantic import BaseModel, Field

from .anomaly import LevelSet, ModelConfig, PairTerm, Verdict, pair_terms
from .quadlattice import format_fraction


class LevelSetReport(BaseModel):
    modulus: int = Field(..., ge=1, description="Period of the level set")
    residues: List[int] = Field(default_factory=list, description="Allowed residues modulo the period")
    description: str = Field("", description="Readable form such as 3Z")

    @classmethod
    def from_level_set(cls, levels: LevelSet) -> "LevelSetReport":
        return cls(modulus=levels.modulus, residues=sorted(levels.residues), description=levels.describe())

    def to_level_set(self) -> LevelSet:
        return LevelSet(self.modulus, frozenset(self.residues))


class WitnessReport(BaseModel):
    m_tilde: str = Field(..., description="Center class of M~")
    m_tilde_vector: List[str] = Field(..., description="Representative of M~ in the Cartan subspace of h")
    m: str = Field(..., description="Center class of M")
    phase: str = Field(..., description="Exponent x of exp(i pi x), or k*x + s for a level-independent term")
    allows: Optional[str] = Field(None, description="Levels for which this pair gives the trivial phase")

    @classmethod
    def from_term(cls, term: PairTerm) -> "WitnessReport":
        slope = format_fraction(term.phase.slope)
        offset = format_fraction(term.phase.offset)
        return cls(
            m_tilde=str(term.m_tilde),
            m_tilde_vector=term.m_tilde_vector.to_strings(),
            m=str(term.m),
            phase=f"k*{slope} + {offset}",
            allows=term.phase.solutions().describe(),
        )


class VerdictReport(BaseModel):
    algebra: str
    Z: str
    subalgebra: str
    twist: str
    variant: str
    k: int
    anomalous: bool
    admissible_modulus: int = Field(..., description="Admissible levels are the multiples of this")
    witness: Optional[WitnessReport] = None
    extrapolated: bool = Field(False, description="Minus theory on a proper center subgroup")

    @classmethod
    def build(cls, cfg: ModelConfig, verdict: Verdict) -> "VerdictReport":
        witness = None
        if verdict.witness is not None:
            w = verdict.witness
            witness = WitnessReport(
                m_tilde=str(w.m_tilde),
                m_tilde_vector=w.m_tilde_vector.to_strings(),
                m=str(w.m),
                phase=format_fraction(w.phase.exponent),
            )
        return cls(
            algebra=cfg.alg.name,
            Z=cfg.Z.name,
            subalgebra=cfg.h.display_label,
            twist=cfg.twist.name,
            variant=cfg.variant.symbol,
            k=verdict.k,
            anomalous=verdict.anomalous,
            admissible_modulus=cfg.rule.modulus,
            witness=witness,
            extrapolated=verdict.extrapolated,
        )


class ClassificationReport(BaseModel):
    algebra: str
    Z: str
    subalgebra: str
    twist: str
    variant: str
    admissible_modulus: int
    anomaly_free: LevelSetReport
    witnesses: List[WitnessReport] = Field(default_factory=list, description="Pairs that restrict the level")
    extrapolated: bool = False

    @classmethod
    def build(cls, cfg: ModelConfig, levels: LevelSet) -> "ClassificationReport":
        restricting = [t for t in pair_terms(cfg) if t.phase.solutions().modulus > 1 or t.phase.solutions().is_empty]
        return cls(
            algebra=cfg.alg.name,
            Z=cfg.Z.name,
            subalgebra=cfg.h.display_label,
            twist=cfg.twist.name,
            variant=cfg.variant.symbol,
            admissible_modulus=cfg.rule.modulus,
            anomaly_free=LevelSetReport.from_level_set(levels),
            witnesses=[WitnessReport.from_term(t) for t in restricting],
            extrapolated=cfg.extrapolated,
        )


class ReportRow(BaseModel):
    target: str
    config: str = Field(..., description="Configuration summary")
    expected: str
    found: str
    ok: bool
    citation: str = Field("", description="Where the expected value comes from")
    extrapolated: bool = False


class ReproduceReport(BaseModel):
    target: str
    rows: List[ReportRow] = Field(default_factory=list)

    @property
    def mismatches(self) -> int:
        return sum(1 for row in self.rows if not row.ok)

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


class ErrorPayload(BaseModel):
    category: str
    message: str
    exit_code: int
    details: dict = Field(default_factory=dict)
