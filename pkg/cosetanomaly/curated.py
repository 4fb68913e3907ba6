# cosetanomaly/curated.py
"""
Curated non-regular embeddings shipped as versioned JSON tables.

Every row stores the embedded center generator of each simple ideal in the
orthogonal model of the ambient algebra. Loading converts those vectors to
coweight coordinates; `verify_entry` recomputes what the row states.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from .errors import CosetAnomalyError, CuratedDataError, UnsupportedAlgebraError
from .liealg import AlgebraData, AlgebraId, LatticeCompatibility, build_algebra
from .quadlattice import LatticeVector, format_fraction
from .subalg import (
    IdealType,
    Provenance,
    SubalgebraEmbedding,
    dynkin_index,
    parse_ideal_sum,
)

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
DATA_FILES = {"e6": "e6.json", "A4": "a4.json", "A5": "a5.json"}


class CuratedIdeal(BaseModel):
    """One simple ideal: its type and the image of a center generator"""

    type: Optional[str] = Field(None, description="Cartan type such as A2 or C3")
    generator: Optional[int] = Field(None, description="1-based node of the embedded fundamental coweight")
    index: Optional[int] = Field(None, description="Stated Dynkin index")
    vector: Optional[List[str]] = Field(None, description="Embedded coweight in model coordinates")
    ref: Optional[str] = Field(None, description="Name of a shared vector of the table")

    @model_validator(mode="after")
    def _type_or_ref(self) -> "CuratedIdeal":
        if self.ref is None and self.type is None:
            raise ValueError("an ideal needs a type or a ref")
        return self


class CuratedRow(BaseModel):
    row: int = Field(..., ge=1)
    label: str
    regular_hull: Optional[str] = Field(None, description="Smallest regular subalgebra containing h")
    selector: Optional[Literal["i1", "i2"]] = None
    compatibility: Optional[Literal["in_Q", "in_P_not_Q", "not_in_P"]] = None
    a_tilde: Optional[int] = Field(None, description="Stated center class of the embedded generator")
    expected_moduli: Dict[str, int] = Field(default_factory=dict, description="Non-anomalous modulus per Z")
    citation: str = ""
    ideals: List[CuratedIdeal] = Field(..., min_length=1)


class CuratedTable(BaseModel):
    name: str
    kind: Literal["rank1", "simple", "semisimple"]
    citation: str
    vectors: Dict[str, CuratedIdeal] = Field(default_factory=dict)
    rows: List[CuratedRow]


class CuratedFile(BaseModel):
    format_version: int
    ambient: str
    coordinates: str = ""
    tables: List[CuratedTable]


@dataclass(frozen=True)
class CuratedEntry:
    """
    A curated row turned into an embedding, with the row's stated facts.

    Attributes:
        row_id: <ambient>:<table>:row<n>
        table: Table name
        row: Row number within the table
        embedding: The embedding of h
        compatibility: Stated lattice compatibility of the generator image
        a_tilde: Stated center class when the image is in P but not in Q
        expected_moduli: Stated non-anomalous modulus per center subgroup
        selector: i1 or i2 for the two inequivalent embeddings
    """

    row_id: str
    table: str
    row: int
    embedding: SubalgebraEmbedding
    compatibility: Optional[LatticeCompatibility] = None
    a_tilde: Optional[int] = None
    expected_moduli: Dict[str, int] = field(default_factory=dict)
    selector: Optional[str] = None

    @property
    def label(self) -> str:
        return self.embedding.label

    @property
    def regular_hull(self) -> Optional[str]:
        return self.embedding.regular_hull


def _resolve(table: CuratedTable, ideal: CuratedIdeal, row_id: str) -> CuratedIdeal:
    if ideal.ref is None:
        return ideal
    if ideal.ref not in table.vectors:
        raise CuratedDataError(f"{row_id} refers to unknown vector {ideal.ref!r}", row=row_id)
    return table.vectors[ideal.ref]


def _build_entry(alg: AlgebraData, table: CuratedTable, row: CuratedRow) -> CuratedEntry:
    row_id = f"{alg.name}:{table.name}:row{row.row}"
    model = alg.euclidean_model()
    types: List[IdealType] = []
    images: List[Optional[LatticeVector]] = []
    nodes: List[Optional[int]] = []
    indices: List[Optional[int]] = []
    for raw in row.ideals:
        ideal = _resolve(table, raw, row_id)
        try:
            (ideal_type,) = parse_ideal_sum(ideal.type)
            image = model.to_coweight_coords(ideal.vector) if ideal.vector is not None else None
        except (CosetAnomalyError, ValueError) as e:
            raise CuratedDataError(f"{row_id}: {e}", row=row_id) from e
        types.append(ideal_type)
        images.append(image)
        nodes.append(ideal.generator - 1 if ideal.generator is not None else None)
        indices.append(ideal.index)

    embedding = SubalgebraEmbedding(
        ambient=alg.id,
        label=row.label,
        cartan_basis=tuple(v for v in images if v is not None and not v.is_zero()),
        provenance=Provenance("curated", row_id, row.citation or table.citation),
        ideal_types=tuple(types),
        center_generators_images=tuple(images),
        center_generator_nodes=tuple(nodes),
        dynkin_indices=tuple(indices),
        regular_hull=row.regular_hull,
    )
    return CuratedEntry(
        row_id=row_id,
        table=table.name,
        row=row.row,
        embedding=embedding,
        compatibility=LatticeCompatibility(row.compatibility) if row.compatibility else None,
        a_tilde=row.a_tilde,
        expected_moduli=dict(row.expected_moduli),
        selector=row.selector,
    )


def read_curated_file(path: Path) -> CuratedFile:
    """Parse and validate one curated JSON document"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except FileNotFoundError as e:
        raise CuratedDataError(f"Curated table not found: {path}", path=path) from e
    except json.JSONDecodeError as e:
        raise CuratedDataError(f"Curated table {path} is not valid JSON: {e}", path=path) from e
    try:
        document = CuratedFile.model_validate(raw)
    except ValidationError as e:
        raise CuratedDataError(f"Curated table {path} failed validation: {e}", path=path) from e
    if document.format_version != FORMAT_VERSION:
        raise CuratedDataError(
            f"Unsupported curated format version {document.format_version} in {path}",
            path=path,
        )
    return document


@lru_cache(maxsize=None)
def _load(alg_id: AlgebraId, data_dir: str) -> tuple:
    if alg_id.name not in DATA_FILES:
        raise UnsupportedAlgebraError(f"No curated tables for {alg_id}", algebra=alg_id.name)
    path = Path(data_dir) / DATA_FILES[alg_id.name]
    document = read_curated_file(path)
    if document.ambient != alg_id.name:
        raise CuratedDataError(f"{path} describes {document.ambient}, expected {alg_id}", path=path)
    alg = build_algebra(alg_id)
    entries = [_build_entry(alg, table, row) for table in document.tables for row in table.rows]
    logger.info(f"Loaded {len(entries)} curated rows for {alg_id} from {path}")
    return tuple(entries)


def load_curated(alg_id: AlgebraId, data_dir: Optional[str] = None) -> List[CuratedEntry]:
    if data_dir is None:
        from .config import EngineConfig

        data_dir = EngineConfig.from_env().data_dir
    return list(_load(alg_id, str(data_dir)))


def find_entry(alg_id: AlgebraId, row_id: str, data_dir: Optional[str] = None) -> CuratedEntry:
    for entry in load_curated(alg_id, data_dir):
        if entry.row_id.lower() == row_id.strip().lower():
            return entry
    raise CuratedDataError(f"Unknown curated row {row_id!r}", row=row_id)


# Recomputation


def recompute_compatibility(alg: AlgebraData, entry: CuratedEntry) -> Optional[LatticeCompatibility]:
    image = entry.embedding.center_generators_images[0]
    if image is None:
        return None
    return alg.lattice_compatibility(image)


def recompute_a_tilde(alg: AlgebraData, entry: CuratedEntry) -> Optional[int]:
    """Center class of the generator image, as a multiple of theta"""
    image = entry.embedding.center_generators_images[0]
    if image is None or alg.lattice_compatibility(image) is not LatticeCompatibility.IN_P_NOT_Q:
        return None
    return alg.discrete_log(image)[0]


def verify_entry(alg: AlgebraData, entry: CuratedEntry) -> List[str]:
    """Differences between a row's stated facts and the recomputed ones"""
    problems = []
    if entry.compatibility is not None:
        found = recompute_compatibility(alg, entry)
        if found is not entry.compatibility:
            problems.append(f"compatibility: stated {entry.compatibility.value}, found {found.value if found else None}")
    if entry.a_tilde is not None:
        found = recompute_a_tilde(alg, entry)
        order = alg.center_order
        if found is None or (found - entry.a_tilde) % order:
            problems.append(f"a_tilde: stated {entry.a_tilde}, found {found} (mod {order})")
    emb = entry.embedding
    for i, stated in enumerate(emb.dynkin_indices):
        if stated is None:
            continue
        try:
            found = dynkin_index(alg, emb, i)
        except CosetAnomalyError as e:
            problems.append(f"index of ideal {i + 1}: {e}")
            continue
        if found != stated:
            problems.append(f"index of ideal {i + 1}: stated {stated}, found {found}")
    for problem in problems:
        logger.warning(f"{entry.row_id}: {problem}")
    return problems


def render_vector(v: LatticeVector) -> str:
    return "(" + ", ".join(format_fraction(Fraction(c)) for c in v.coords) + ")"
