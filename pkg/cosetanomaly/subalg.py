"""
Regular and curated subalgebras and their Cartan-subspace embeddings.

Regular subalgebras are found with the extended-diagram algorithm: adjoin
the lowest root of a simple component, delete a node, and repeat, together
with plain node deletions. Results are deduplicated with a Weyl-invariant
key that keeps everything the anomaly verdict depends on.
"""

import logging
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    CuratedDataError,
    InsufficientEmbeddingDataError,
    InvalidConfigurationError,
    RankOutOfRangeError,
    SubalgebraParseError,
    UnsupportedAlgebraError,
)
from .liealg import (
    SERIES_ORDER,
    AlgebraData,
    AlgebraId,
    CenterElement,
    CenterSubgroup,
    OuterAut,
    build_algebra,
    full_center,
    positive_root_coefficients,
    type_name,
)
from .quadlattice import (
    LatticeVector,
    coset_meets_subspace,
    rational_rank,
    subspace_complement,
)

logger = logging.getLogger(__name__)

# Pieces that are not catalog algebras of their own
_SMALL_CENTER_ORDERS = {("A", 1): 2, ("B", 2): 2, ("C", 2): 2, ("D", 2): 4, ("D", 3): 4, ("C", 1): 2}


@dataclass(frozen=True, order=True)
class IdealType:
    """
    Cartan type of a simple (or D2) ideal of a subalgebra.

    Attributes:
        series: Series letter
        rank: Rank
    """

    series: str
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "series", self.series.upper())
        if self.series not in SERIES_ORDER or self.rank < 1:
            raise SubalgebraParseError(f"Unknown ideal type {self.series}{self.rank}")

    @property
    def name(self) -> str:
        return type_name(self.series, self.rank)

    def iso_types(self) -> Tuple["IdealType", ...]:
        if self.series == "D" and self.rank == 2:
            return (IdealType("A", 1), IdealType("A", 1))
        if self.series == "D" and self.rank == 3:
            return (IdealType("A", 3),)
        return (self,)

    def algebra_id(self) -> AlgebraId:
        return AlgebraId(self.series, self.rank)

    @property
    def center_order(self) -> int:
        key = (self.series, self.rank)
        if key in _SMALL_CENTER_ORDERS:
            return _SMALL_CENTER_ORDERS[key]
        return build_algebra(self.algebra_id()).center_order

    def __str__(self) -> str:
        return self.name


def _sort_key(t: IdealType) -> Tuple[int, int]:
    return SERIES_ORDER.index(t.series), -t.rank


def format_label(types: Sequence[IdealType]) -> str:
    """A5+A1, 2A2+A1, A1+D3, e6"""
    counts = Counter(types)
    parts = []
    for t in sorted(counts, key=_sort_key):
        n = counts[t]
        parts.append(f"{n}{t.name}" if n > 1 else t.name)
    return "+".join(parts)


def parse_ideal_sum(expr: str) -> Tuple[IdealType, ...]:
    """Parse sums such as A3+2A1 into a sorted tuple of ideal types"""
    text = (expr or "").strip()
    if not text:
        raise SubalgebraParseError("Empty subalgebra expression")
    types: List[IdealType] = []
    for term in text.split("+"):
        match = re.fullmatch(r"\s*(\d*)\s*([A-Ga-g])(\d+)\s*", term)
        if not match:
            raise SubalgebraParseError(f"Cannot parse ideal {term!r} in {expr!r}", expression=expr)
        count = int(match.group(1)) if match.group(1) else 1
        if count < 1:
            raise SubalgebraParseError(f"Multiplicity must be positive in {term!r}")
        rank = int(match.group(3))
        if rank < 1:
            raise SubalgebraParseError(f"Rank must be positive in {term!r}")
        types.extend([IdealType(match.group(2), rank)] * count)
    return tuple(sorted(types, key=_sort_key))


# Root-system helpers


def _cartan_of(alg: AlgebraData, roots: Sequence[LatticeVector]) -> Tuple[Tuple[int, ...], ...]:
    rows = []
    for a in roots:
        norm = alg.inner(a, a)
        row = []
        for b in roots:
            entry = 2 * alg.inner(a, b) / norm
            if entry.denominator != 1:
                raise InvalidConfigurationError("Roots do not form a pi-system")
            row.append(entry.numerator)
        rows.append(tuple(row))
    return tuple(rows)


def connected_components(alg: AlgebraData, roots: Sequence[LatticeVector]) -> List[List[int]]:
    remaining = set(range(len(roots)))
    components = []
    while remaining:
        start = min(remaining)
        remaining.discard(start)
        component = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in sorted(remaining):
                if alg.inner(roots[i], roots[j]) != 0:
                    remaining.discard(j)
                    component.append(j)
                    queue.append(j)
        components.append(sorted(component))
    return components


def identify_component(
    alg: AlgebraData, roots: Sequence[LatticeVector], ambient_series: Optional[str] = None
) -> IdealType:
    """Cartan type of a connected pi-system"""
    cartan = _cartan_of(alg, roots)
    n = len(cartan)
    if n == 1:
        return IdealType("A", 1)
    products = [cartan[i][j] * cartan[j][i] for i in range(n) for j in range(n) if i != j]
    if any(p == 3 for p in products):
        return IdealType("G", 2)
    count = len(positive_root_coefficients(cartan))
    if all(p <= 1 for p in products):
        if count == n * (n + 1) // 2:
            return IdealType("A", n)
        if count == n * (n - 1) and n >= 4:
            return IdealType("D", n)
        exceptional = {(6, 36): 6, (7, 63): 7, (8, 120): 8}
        if (n, count) in exceptional:
            return IdealType("E", n)
        raise InvalidConfigurationError(f"Unrecognized simply-laced pi-system of rank {n}")
    if n == 2:
        return IdealType("B" if (ambient_series or alg.id.series) == "B" else "C", 2)
    if n == 4 and count == 24:
        return IdealType("F", 4)
    norms = [alg.inner(r, r) for r in roots]
    longest = max(norms)
    short = sum(1 for x in norms if x < longest)
    return IdealType("B", n) if short == 1 else IdealType("C", n)


def component_positive_roots(alg: AlgebraData, roots: Sequence[LatticeVector]) -> List[LatticeVector]:
    vectors = []
    for coeffs in positive_root_coefficients(_cartan_of(alg, roots)):
        total = LatticeVector.zero(alg.rank)
        for c, beta in zip(coeffs, roots):
            if c:
                total = total + beta * c
        vectors.append(total)
    return vectors


def lowest_root(alg: AlgebraData, roots: Sequence[LatticeVector]) -> LatticeVector:
    """Negative of the highest root of the component spanned by roots"""
    coeffs = max(positive_root_coefficients(_cartan_of(alg, roots)), key=sum)
    total = LatticeVector.zero(alg.rank)
    for c, beta in zip(coeffs, roots):
        total = total + beta * c
    return -total


def coroot_sum(alg: AlgebraData, roots: Sequence[LatticeVector]) -> LatticeVector:
    """2 rho-check: the sum of positive coroots of the component"""
    total = LatticeVector.zero(alg.rank)
    for beta in component_positive_roots(alg, roots):
        total = total + alg.coroot_of(beta)
    return total


@dataclass(frozen=True)
class DiagramNode:
    """
    Node of a (possibly extended) Dynkin diagram.

    Attributes:
        label: alpha<i> for simple roots, delta for the lowest root
        root: Root vector in coweight coordinates
        is_lowest: True for the adjoined lowest-root node
    """

    label: str
    root: LatticeVector
    is_lowest: bool = False


@dataclass(frozen=True)
class ExtendedDiagram:
    """
    Dynkin diagram of a component with its lowest-root node adjoined.

    Attributes:
        nodes: Simple-root nodes followed by the lowest-root node
        edges: (i, j, bond multiplicity) for linked nodes
    """

    nodes: Tuple[DiagramNode, ...]
    edges: Tuple[Tuple[int, int, int], ...]

    @classmethod
    def of_component(cls, alg: AlgebraData, roots: Sequence[LatticeVector]) -> "ExtendedDiagram":
        nodes = [DiagramNode(f"alpha{i + 1}", r) for i, r in enumerate(roots)]
        nodes.append(DiagramNode("delta", lowest_root(alg, roots), is_lowest=True))
        return cls(tuple(nodes), _edges(alg, [n.root for n in nodes]))

    def without_lowest(self) -> "ExtendedDiagram":
        nodes = tuple(n for n in self.nodes if not n.is_lowest)
        keep = {i for i, n in enumerate(self.nodes) if not n.is_lowest}
        return ExtendedDiagram(nodes, tuple(e for e in self.edges if e[0] in keep and e[1] in keep))

    def delete(self, index: int) -> List[LatticeVector]:
        """Roots of the remaining nodes"""
        return [n.root for i, n in enumerate(self.nodes) if i != index]


def _edges(alg: AlgebraData, roots: Sequence[LatticeVector]) -> Tuple[Tuple[int, int, int], ...]:
    edges = []
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            ip = alg.inner(roots[i], roots[j])
            if ip:
                multiplicity = 4 * ip * ip / (alg.inner(roots[i], roots[i]) * alg.inner(roots[j], roots[j]))
                edges.append((i, j, int(multiplicity)))
    return tuple(edges)


def extended_diagram(alg: AlgebraData) -> ExtendedDiagram:
    return ExtendedDiagram.of_component(alg, alg.simple_roots)


# D-series bookkeeping via orthogonal coordinates


def _d_blocks(alg: AlgebraData, roots: Sequence[LatticeVector]) -> List[Tuple[List[int], List[int]]]:
    """(coordinates, root indices) of each block linked by root supports"""
    coords = [alg.euclidean_coordinates(r) for r in roots]
    parent = list(range(alg.rank))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    supports = []
    for vec in coords:
        support = [i for i, c in enumerate(vec) if c != 0]
        supports.append(support)
        for a in support[1:]:
            parent[find(a)] = find(support[0])

    blocks: Dict[int, Tuple[List[int], List[int]]] = {}
    for index, support in enumerate(supports):
        root = find(support[0])
        blocks.setdefault(root, ([], []))[1].append(index)
    for root in blocks:
        blocks[root][0].extend(i for i in range(alg.rank) if find(i) == root)
    return list(blocks.values())


def _d_labels(alg: AlgebraData, roots: Sequence[LatticeVector]) -> List[IdealType]:
    labels = []
    for block_coords, block_roots in _d_blocks(alg, roots):
        size = len(block_coords)
        if len(block_roots) == size - 1:
            labels.append(IdealType("A", size - 1))
        elif len(block_roots) == size:
            labels.append(IdealType("D", size))
        else:
            raise InvalidConfigurationError(f"Block of {size} coordinates carries {len(block_roots)} roots")
    return labels


def _sign_parity(alg: AlgebraData, roots: Sequence[LatticeVector]) -> int:
    """Product of the coordinate signs that bring every block to e_a - e_b form"""
    coords = [alg.euclidean_coordinates(r) for r in roots]
    sigma: Dict[int, int] = {}
    for block_coords, block_roots in _d_blocks(alg, roots):
        sigma[block_coords[0]] = 1
        pending = list(block_roots)
        while pending:
            progressed = False
            for index in list(pending):
                (a, sa), (b, sb) = [(i, 1 if c > 0 else -1) for i, c in enumerate(coords[index]) if c != 0]
                if a in sigma and b not in sigma:
                    sigma[b] = -sa * sb * sigma[a]
                elif b in sigma and a not in sigma:
                    sigma[a] = -sa * sb * sigma[b]
                elif a not in sigma:
                    continue
                pending.remove(index)
                progressed = True
            if not progressed:
                raise InvalidConfigurationError("Could not orient an A-type block")
    parity = 1
    for value in sigma.values():
        parity *= value
    return parity


def choice_allowed(alg: AlgebraData, ideals: Sequence[IdealType]) -> bool:
    """Second embedding exists for D_r, r even, with a saturated sum of odd-rank A ideals"""
    if not alg.id.is_d_even:
        return False
    if any(t.series != "A" or t.rank % 2 == 0 for t in ideals):
        return False
    return sum(t.rank + 1 for t in ideals) == alg.rank


def _flip(alg: AlgebraData) -> OuterAut:
    name = "w1" if alg.id.name == "D4" else "flip"
    return next(a for a in alg.diagram_automorphisms if a.name == name)


@dataclass(frozen=True)
class RegularSpec:
    """
    A regular semisimple subalgebra given by a pi-system of roots of g.

    Attributes:
        ideals: Ideal types used for labels (D2/D3 kept for D ambients)
        root_subset: Simple roots; for embedding_choice 2 the flip image of the embedded roots
        components: Root indices of each simple ideal
        component_types: Cartan type of each simple ideal
        embedding_choice: 1, or 2 for the second D_r (r even) embedding
    """

    ideals: Tuple[IdealType, ...]
    root_subset: Tuple[LatticeVector, ...]
    components: Tuple[Tuple[int, ...], ...]
    component_types: Tuple[IdealType, ...]
    embedding_choice: int = 1

    def __post_init__(self):
        if self.embedding_choice not in (1, 2):
            raise InvalidConfigurationError(f"Embedding choice must be 1 or 2, got {self.embedding_choice}")
        if not self.root_subset:
            raise InvalidConfigurationError("A regular subalgebra needs at least one root")
        covered = sorted(i for c in self.components for i in c)
        if covered != list(range(len(self.root_subset))):
            raise InvalidConfigurationError("Components do not partition the root subset")
        if len(self.components) != len(self.component_types):
            raise InvalidConfigurationError("Every component needs a type")

    @property
    def label(self) -> str:
        return format_label(self.ideals)

    @property
    def iso_label(self) -> str:
        return format_label([x for t in self.ideals for x in t.iso_types()])

    @property
    def display_label(self) -> str:
        return self.label if self.embedding_choice == 1 else f"{self.label}@2"

    @property
    def rank(self) -> int:
        return len(self.root_subset)


def spec_from_roots(alg: AlgebraData, roots: Sequence[LatticeVector]) -> RegularSpec:
    """Classify a pi-system of g and put it in stored form"""
    roots = list(roots)
    components = connected_components(alg, roots)
    component_types = [identify_component(alg, [roots[i] for i in c]) for c in components]
    if alg.id.series == "D":
        ideals = _d_labels(alg, roots)
    else:
        ideals = list(component_types)
    ideals_t = tuple(sorted(ideals, key=_sort_key))

    choice = 1
    if choice_allowed(alg, ideals_t) and _sign_parity(alg, roots) < 0:
        choice = 2
        flip = _flip(alg)
        roots = [flip.apply(r) for r in roots]

    return RegularSpec(
        ideals=ideals_t,
        root_subset=tuple(roots),
        components=tuple(tuple(c) for c in components),
        component_types=tuple(component_types),
        embedding_choice=choice,
    )


def embedded_roots(alg: AlgebraData, spec: RegularSpec) -> Tuple[LatticeVector, ...]:
    if spec.embedding_choice == 2:
        if not choice_allowed(alg, spec.ideals):
            raise InvalidConfigurationError(
                f"{spec.label} in {alg.name} has no second embedding",
                algebra=alg.name,
                subalgebra=spec.label,
            )
        flip = _flip(alg)
        return tuple(flip.apply(r) for r in spec.root_subset)
    return spec.root_subset


@lru_cache(maxsize=None)
def _classes_meeting(alg_id: AlgebraId, coroots: Tuple[Tuple[Fraction, ...], ...]) -> Tuple[Tuple[CenterElement, LatticeVector], ...]:
    alg = build_algebra(alg_id)
    basis = [LatticeVector(c) for c in coroots]
    complement = subspace_complement(basis, alg.rank)
    points = []
    for element in alg.center_elements:
        meets, witness = coset_meets_subspace(alg.coroot_lattice, element.rep, basis, complement)
        if meets:
            points.append((element, element.rep + witness))
    return tuple(points)


def spec_key(alg: AlgebraData, spec: RegularSpec) -> Tuple:
    """Weyl-invariant deduplication key"""
    roots = embedded_roots(alg, spec)
    per_component = []
    total = LatticeVector.zero(alg.rank)
    for component in spec.components:
        rho = coroot_sum(alg, [roots[i] for i in component])
        total = total + rho
        per_component.append(tuple(alg.dominant(rho).coords))
    coroots = tuple(tuple(alg.coroot_of(r).coords) for r in roots)
    classes = tuple(sorted(e.log for e, _ in _classes_meeting(alg.id, coroots)))
    return (
        tuple((t.series, t.rank) for t in spec.ideals),
        tuple(alg.dominant(total).coords),
        tuple(sorted(per_component)),
        classes,
    )


def _moves(alg: AlgebraData, spec: RegularSpec) -> List[List[LatticeVector]]:
    roots = list(embedded_roots(alg, spec))
    moves = []
    if len(roots) > 1:
        for i in range(len(roots)):
            moves.append(roots[:i] + roots[i + 1:])
    for component in spec.components:
        rest = [r for i, r in enumerate(roots) if i not in component]
        diagram = ExtendedDiagram.of_component(alg, [roots[i] for i in component])
        for index, node in enumerate(diagram.nodes):
            if node.is_lowest:
                continue
            moves.append(rest + diagram.delete(index))
    return moves


@lru_cache(maxsize=None)
def _enumerate_cached(alg_id: AlgebraId) -> Tuple[RegularSpec, ...]:
    alg = build_algebra(alg_id)
    start = spec_from_roots(alg, alg.simple_roots)
    start_key = spec_key(alg, start)
    seen: Dict[Tuple, RegularSpec] = {start_key: start}
    queue = deque([start])
    while queue:
        spec = queue.popleft()
        for roots in _moves(alg, spec):
            candidate = spec_from_roots(alg, roots)
            key = spec_key(alg, candidate)
            if key not in seen:
                seen[key] = candidate
                queue.append(candidate)
    ordered = sorted(
        seen.items(),
        key=lambda item: (item[0] != start_key, -item[1].rank, item[1].label, item[1].embedding_choice, item[0]),
    )
    logger.info(f"Enumerated {len(ordered)} regular subalgebras of {alg_id}")
    return tuple(spec for _, spec in ordered)


def enumerate_regular(alg: AlgebraData) -> List[RegularSpec]:
    """Regular semisimple subalgebras of g, the full algebra first"""
    return list(_enumerate_cached(alg.id))


def regular_labels(alg: AlgebraData) -> List[str]:
    return sorted({spec.label for spec in enumerate_regular(alg)})


def apply_automorphism_to_spec(alg: AlgebraData, aut: OuterAut, spec: RegularSpec) -> RegularSpec:
    return spec_from_roots(alg, [aut.apply(r) for r in embedded_roots(alg, spec)])


def sub_specs(alg: AlgebraData, spec: RegularSpec) -> List[RegularSpec]:
    """Specs obtained by deleting one simple root"""
    roots = list(embedded_roots(alg, spec))
    if len(roots) < 2:
        return []
    return [spec_from_roots(alg, roots[:i] + roots[i + 1:]) for i in range(len(roots))]


# Embeddings


@dataclass(frozen=True)
class Provenance:
    """
    Where an embedding comes from.

    Attributes:
        kind: full, regular or curated
        row_id: Curated row identifier
        citation: Human-readable source of a curated row
    """

    kind: str
    row_id: Optional[str] = None
    citation: str = ""

    def __post_init__(self):
        if self.kind not in ("full", "regular", "curated"):
            raise InvalidConfigurationError(f"Unknown provenance kind: {self.kind}")


@dataclass(frozen=True)
class SubalgebraEmbedding:
    """
    Cartan subalgebra of h inside the Cartan subalgebra of g.

    Attributes:
        ambient: The algebra g
        label: Name of h
        cartan_basis: Vectors spanning (part of) it_h in coweight coordinates
        provenance: Regular chain or curated row
        spec: Regular specification, if any
        ideal_types: Cartan type of each simple ideal of h
        ideal_coroots: Simple coroots of each ideal (regular and full embeddings)
        center_generators_images: iota(lambda) per ideal (curated embeddings)
        center_generator_nodes: Which fundamental coweight of each ideal was embedded (0-based)
        dynkin_indices: Stated Dynkin index per ideal (curated embeddings)
        regular_hull: Smallest regular subalgebra containing h (curated embeddings)
    """

    ambient: AlgebraId
    label: str
    cartan_basis: Tuple[LatticeVector, ...]
    provenance: Provenance
    spec: Optional[RegularSpec] = None
    ideal_types: Tuple[IdealType, ...] = ()
    ideal_coroots: Tuple[Tuple[LatticeVector, ...], ...] = ()
    center_generators_images: Tuple[Optional[LatticeVector], ...] = ()
    center_generator_nodes: Tuple[Optional[int], ...] = ()
    dynkin_indices: Tuple[Optional[int], ...] = ()
    regular_hull: Optional[str] = None

    def __post_init__(self):
        for v in self.cartan_basis:
            if v.dim != self.ambient.rank:
                raise InvalidConfigurationError(
                    f"Cartan vector {v} does not live in {self.ambient}"
                )
        if self.cartan_basis and rational_rank(self.cartan_basis) != len(self.cartan_basis):
            raise InvalidConfigurationError(f"Cartan basis of {self.label} is linearly dependent")

    @property
    def is_curated(self) -> bool:
        return self.provenance.kind == "curated"

    @property
    def is_full(self) -> bool:
        return self.provenance.kind == "full"

    @property
    def embedding_choice(self) -> int:
        return self.spec.embedding_choice if self.spec else 1

    @property
    def display_label(self) -> str:
        if self.provenance.row_id:
            return self.provenance.row_id
        if self.spec:
            return self.spec.display_label
        return self.label


def full_embedding(alg: AlgebraData) -> SubalgebraEmbedding:
    """h = g"""
    return SubalgebraEmbedding(
        ambient=alg.id,
        label=alg.name,
        cartan_basis=alg.simple_coroots,
        provenance=Provenance("full"),
        ideal_types=(IdealType(alg.id.series, alg.rank),),
        ideal_coroots=(alg.simple_coroots,),
    )


def embed_regular(alg: AlgebraData, spec: RegularSpec) -> SubalgebraEmbedding:
    roots = embedded_roots(alg, spec)
    known = _root_set(alg.id)
    for r in roots:
        if tuple(r.coords) not in known:
            raise InvalidConfigurationError(f"{r} is not a root of {alg.name}")
    coroots = tuple(alg.coroot_of(r) for r in roots)
    return SubalgebraEmbedding(
        ambient=alg.id,
        label=spec.label,
        cartan_basis=coroots,
        provenance=Provenance("regular"),
        spec=spec,
        ideal_types=spec.component_types,
        ideal_coroots=tuple(tuple(coroots[i] for i in c) for c in spec.components),
    )


@lru_cache(maxsize=None)
def _root_set(alg_id: AlgebraId) -> frozenset:
    return frozenset(tuple(r.coords) for r in build_algebra(alg_id).roots())


def curated_embeddings(alg_id: AlgebraId) -> List[SubalgebraEmbedding]:
    """Table-backed non-regular embeddings for e6, A4 and A5"""
    from .curated import load_curated

    if alg_id.name not in ("e6", "A4", "A5"):
        raise UnsupportedAlgebraError(
            f"No curated embeddings for {alg_id}", algebra=alg_id.name
        )
    return [entry.embedding for entry in load_curated(alg_id)]


def apply_automorphism_to_embedding(alg: AlgebraData, aut: OuterAut, emb: SubalgebraEmbedding) -> SubalgebraEmbedding:
    if aut.is_identity or emb.is_full:
        return emb
    if emb.spec is not None:
        return embed_regular(alg, apply_automorphism_to_spec(alg, aut, emb.spec))
    images = tuple(aut.apply(v) if v is not None else None for v in emb.center_generators_images)
    row_id = f"{emb.provenance.row_id}^{aut.name}" if emb.provenance.row_id else None
    return SubalgebraEmbedding(
        ambient=emb.ambient,
        label=emb.label,
        cartan_basis=tuple(aut.apply(v) for v in emb.cartan_basis),
        provenance=Provenance(emb.provenance.kind, row_id, emb.provenance.citation),
        ideal_types=emb.ideal_types,
        ideal_coroots=tuple(tuple(aut.apply(v) for v in c) for c in emb.ideal_coroots),
        center_generators_images=images,
        center_generator_nodes=emb.center_generator_nodes,
        dynkin_indices=emb.dynkin_indices,
        regular_hull=emb.regular_hull,
    )


def ideal_embeddings(alg: AlgebraData, emb: SubalgebraEmbedding) -> List[SubalgebraEmbedding]:
    """One embedding per simple ideal of h"""
    if emb.is_curated:
        parts = []
        for i, t in enumerate(emb.ideal_types):
            image = emb.center_generators_images[i]
            parts.append(
                SubalgebraEmbedding(
                    ambient=emb.ambient,
                    label=t.name,
                    cartan_basis=(image,) if image is not None and not image.is_zero() else (),
                    provenance=Provenance("curated", f"{emb.provenance.row_id}#{i + 1}", emb.provenance.citation),
                    ideal_types=(t,),
                    center_generators_images=(image,),
                    center_generator_nodes=(emb.center_generator_nodes[i],),
                    dynkin_indices=(emb.dynkin_indices[i],),
                )
            )
        return parts
    if emb.spec is None:
        return [emb]
    roots = embedded_roots(alg, emb.spec)
    return [
        embed_regular(alg, spec_from_roots(alg, [roots[i] for i in component]))
        for component in emb.spec.components
    ]


# Dynkin index and center intersections


def dynkin_index(alg: AlgebraData, emb: SubalgebraEmbedding, ideal_index: int) -> int:
    """Ratio of the restricted invariant form to the ideal's own normalized form"""
    if ideal_index < 0 or ideal_index >= len(emb.ideal_types):
        raise InsufficientEmbeddingDataError(
            f"{emb.label} has no ideal number {ideal_index}", ideals=len(emb.ideal_types)
        )
    if emb.is_curated:
        image = emb.center_generators_images[ideal_index] if emb.center_generators_images else None
        node = emb.center_generator_nodes[ideal_index] if emb.center_generator_nodes else None
        if image is None or node is None:
            raise InsufficientEmbeddingDataError(
                f"No embedded coweight is recorded for ideal {ideal_index} of {emb.display_label}"
            )
        t = emb.ideal_types[ideal_index]
        try:
            h = build_algebra(t.algebra_id())
        except RankOutOfRangeError as e:
            raise InsufficientEmbeddingDataError(f"No catalog data for ideal type {t}") from e
        lam = h.fundamental_coweights[node]
        ratio = alg.inner(image, image) / h.inner(lam, lam)
        if ratio.denominator != 1:
            raise CuratedDataError(
                f"Dynkin index {ratio} of {emb.display_label} is not an integer",
                row=emb.provenance.row_id,
            )
        return ratio.numerator

    if not emb.ideal_coroots:
        raise InsufficientEmbeddingDataError(f"No coroot data for {emb.display_label}")
    coroots = emb.ideal_coroots[ideal_index]
    # the long root has the shortest coroot
    shortest = min(alg.inner(c, c) for c in coroots)
    ratio = shortest / 2
    if ratio.denominator != 1:
        raise InvalidConfigurationError(f"Dynkin index {ratio} of {emb.display_label} is not an integer")
    return ratio.numerator


def _curated_points(alg: AlgebraData, emb: SubalgebraEmbedding, zomega: CenterSubgroup) -> List[Tuple[CenterElement, LatticeVector]]:
    ranges = []
    for i, t in enumerate(emb.ideal_types):
        order = t.center_order
        image = emb.center_generators_images[i] if emb.center_generators_images else None
        if order == 1:
            ranges.append((None, 1))
            continue
        if image is None:
            raise InsufficientEmbeddingDataError(
                f"Ideal {t} of {emb.display_label} has a nontrivial center but no embedded coweight"
            )
        ranges.append((image, order))

    points: List[Tuple[CenterElement, LatticeVector]] = []
    seen = set()
    combos = [LatticeVector.zero(alg.rank)]
    for image, order in ranges:
        if image is None:
            continue
        combos = [v + image * n for v in combos for n in range(order)]
    for v in combos:
        if not v.is_integral():
            continue
        element = alg.center_element(v)
        if element in seen or not zomega.contains(element):
            continue
        seen.add(element)
        points.append((element, v))
    return sorted(points, key=lambda p: p[0].log)


def intersection_points(
    alg: AlgebraData, emb: SubalgebraEmbedding, zomega: CenterSubgroup
) -> List[Tuple[CenterElement, LatticeVector]]:
    """Classes of zomega meeting it_h, each with a coweight of the class inside it_h"""
    if emb.is_full:
        return [(z, z.rep) for z in zomega.elements]
    if emb.is_curated:
        return _curated_points(alg, emb, zomega)
    coroots = tuple(tuple(c.coords) for c in emb.cartan_basis)
    return [(e, p) for e, p in _classes_meeting(alg.id, coroots) if zomega.contains(e)]


def subgroup_intersection_classes(
    alg: AlgebraData, emb: SubalgebraEmbedding, zomega: Optional[CenterSubgroup] = None
) -> List[CenterElement]:
    if zomega is None:
        zomega = full_center(alg)
    return [element for element, _ in intersection_points(alg, emb, zomega)]
