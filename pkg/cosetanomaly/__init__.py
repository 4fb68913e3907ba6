"""
Global gauge anomalies of gauged WZW coset models.

Exact rational arithmetic over coweight lattices of simple Lie algebras,
regular and curated subalgebra embeddings, and a level classifier.
"""

from .anomaly import (
    LevelSet,
    LinearPhase,
    ModelConfig,
    Phase,
    Verdict,
    check_level,
    classify_levels,
    classify_many,
)
from .config import EngineConfig
from .errors import CosetAnomalyError, ErrorReport
from .liealg import (
    AlgebraId,
    TheoryVariant,
    build_algebra,
    center_subgroups,
    parse_algebra,
    parse_outer,
    parse_subgroup,
)
from .subalg import SubalgebraEmbedding, embed_regular, enumerate_regular, full_embedding

__version__ = "0.1.0"

__all__ = [
    "AlgebraId",
    "CosetAnomalyError",
    "EngineConfig",
    "ErrorReport",
    "LevelSet",
    "LinearPhase",
    "ModelConfig",
    "Phase",
    "SubalgebraEmbedding",
    "TheoryVariant",
    "Verdict",
    "build_algebra",
    "center_subgroups",
    "check_level",
    "classify_levels",
    "classify_many",
    "embed_regular",
    "enumerate_regular",
    "full_embedding",
    "parse_algebra",
    "parse_outer",
    "parse_subgroup",
]
