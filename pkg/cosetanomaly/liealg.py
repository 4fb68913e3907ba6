"""
Catalog of simple Lie algebras in the fundamental-coweight basis.

Every algebra lives in a QuadSpace whose basis vectors are the fundamental
coweights, so coweights are integer vectors, the coroot lattice is the row
lattice of the Cartan matrix and the Gram matrix is the inverse of the
matrix of root inner products (long roots have length squared 2).
"""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatchError,
    InvalidConfigurationError,
    RankOutOfRangeError,
    UnsupportedAlgebraError,
)
from .quadlattice import (
    IntegerLattice,
    LatticeVector,
    QuadSpace,
    in_rational_span,
    inner,
    rational_inverse,
    smith_normal_form,
    to_fraction,
)

logger = logging.getLogger(__name__)

SERIES_ORDER = "ABCDEFG"
EXCEPTIONAL = "EFG"

# (min rank, max rank or None)
RANK_BOUNDS: Dict[str, Tuple[int, Optional[int]]] = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

ClassTuple = Tuple[int, ...]


def type_name(series: str, rank: int) -> str:
    """Canonical spelling: A4, D5, e6, f4, g2"""
    series = series.upper()
    if series in EXCEPTIONAL:
        return f"{series.lower()}{rank}"
    return f"{series}{rank}"


@dataclass(frozen=True, order=True)
class AlgebraId:
    """
    Identifies a simple Lie algebra by series letter and rank.

    Attributes:
        series: One of A, B, C, D, E, F, G
        rank: Rank within the supported range of the series
    """

    series: str
    rank: int

    def __post_init__(self):
        series = str(self.series).upper()
        object.__setattr__(self, "series", series)
        if series not in RANK_BOUNDS:
            raise UnsupportedAlgebraError(f"Unknown series: {self.series}", series=self.series)
        low, high = RANK_BOUNDS[series]
        if self.rank < low or (high is not None and self.rank > high):
            raise RankOutOfRangeError(
                f"Rank {self.rank} is outside the supported range for series {series}",
                series=series,
                rank=self.rank,
            )

    @classmethod
    def parse(cls, name: str) -> "AlgebraId":
        match = re.fullmatch(r"\s*([A-Ga-g])(\d+)\s*", name or "")
        if not match:
            raise UnsupportedAlgebraError(f"Cannot parse algebra name: {name!r}", name=name)
        return cls(match.group(1), int(match.group(2)))

    @property
    def name(self) -> str:
        return type_name(self.series, self.rank)

    @property
    def is_d_even(self) -> bool:
        return self.series == "D" and self.rank % 2 == 0

    @property
    def is_d_odd(self) -> bool:
        return self.series == "D" and self.rank % 2 == 1

    def __str__(self) -> str:
        return self.name


def parse_algebra(name: str) -> AlgebraId:
    return AlgebraId.parse(name)


class TheoryVariant(Enum):
    """Sign choice of the WZ action; MINUS only exists for D_r with r even"""

    PLUS = 1
    MINUS = -1

    @property
    def sign(self) -> int:
        return self.value

    @property
    def offset(self) -> int:
        """Contribution of the sign to the antisymmetric bihomomorphism term"""
        return 1 if self is TheoryVariant.MINUS else 0

    @property
    def symbol(self) -> str:
        return "+" if self is TheoryVariant.PLUS else "-"

    def swapped(self) -> "TheoryVariant":
        return TheoryVariant.MINUS if self is TheoryVariant.PLUS else TheoryVariant.PLUS

    @classmethod
    def parse(cls, value: str) -> "TheoryVariant":
        text = str(value).strip().lower()
        if text in ("+", "+1", "1", "plus"):
            return cls.PLUS
        if text in ("-", "-1", "minus"):
            return cls.MINUS
        raise InvalidConfigurationError(f"Unknown theory variant: {value!r}", variant=value)


class LatticeCompatibility(Enum):
    """Where a vector sits relative to the coroot and coweight lattices"""

    IN_Q = "in_Q"
    IN_P_NOT_Q = "in_P_not_Q"
    NOT_IN_P = "not_in_P"


@dataclass(frozen=True)
class LevelRule:
    """
    Admissible levels k in modulus * Z.

    Attributes:
        modulus: 1 or 2
        reason: Short statement of the printed condition this rule encodes
    """

    modulus: int
    reason: str = ""

    def __post_init__(self):
        if self.modulus not in (1, 2):
            raise ValueError(f"Level rule modulus must be 1 or 2, got {self.modulus}")

    def admits(self, k: int) -> bool:
        return k % self.modulus == 0


@dataclass(frozen=True)
class OuterAut:
    """
    Diagram automorphism given by the permutation of simple roots.

    Attributes:
        name: id, flip, w1, w2, w3, w4 or w4inv
        perm: perm[i] is the index of the image of simple root i (0-based)
    """

    name: str
    perm: Tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        object.__setattr__(self, "perm", perm)
        if sorted(perm) != list(range(len(perm))):
            raise InvalidConfigurationError(f"Not a permutation: {perm}", name=self.name)

    @property
    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))

    def compose(self, other: "OuterAut") -> "OuterAut":
        """self after other"""
        if len(self.perm) != len(other.perm):
            raise DimensionMismatchError("Automorphisms of different diagrams cannot be composed")
        return OuterAut(f"{self.name}*{other.name}", tuple(self.perm[other.perm[i]] for i in range(len(self.perm))))

    def inverse(self) -> "OuterAut":
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return OuterAut(f"{self.name}^-1", tuple(inv))

    def order(self) -> int:
        current = self
        n = 1
        while not current.is_identity:
            current = self.compose(current)
            n += 1
        return n

    def apply(self, v: LatticeVector) -> LatticeVector:
        """lambda_i -> lambda_perm(i), which also sends alpha_i -> alpha_perm(i)"""
        if v.dim != len(self.perm):
            raise DimensionMismatchError(
                f"Automorphism of rank {len(self.perm)} applied to a vector of dimension {v.dim}"
            )
        coords = [Fraction(0)] * v.dim
        for i, c in enumerate(v.coords):
            coords[self.perm[i]] = c
        return LatticeVector(tuple(coords))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class CenterElement:
    """
    A class of P/Q given by its canonical coweight representative.

    Attributes:
        rep: Lexicographically minimal nonnegative representative
        log: Exponents with respect to the center generators
        name: Display name such as 2θ or θ1+θ2
    """

    rep: LatticeVector
    log: Tuple[int, ...] = field(compare=False)
    name: str = field(compare=False, default="")

    @property
    def is_identity(self) -> bool:
        return self.rep.is_zero()

    def __str__(self) -> str:
        return self.name or str(self.rep)


@dataclass(frozen=True)
class CenterSubgroup:
    """
    A subgroup of the center of the simply connected group.

    Attributes:
        name: trivial, Z<p>, Z1, Z2, Zdiag or full
        generators: Generating elements
        elements: All elements, identity first
    """

    name: str
    generators: Tuple[CenterElement, ...]
    elements: Tuple[CenterElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def contains(self, element: CenterElement) -> bool:
        return element in self.elements

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class EuclideanModel:
    """
    Orthogonal-coordinate realization of a root system.

    Attributes:
        name: Model name
        weights: Diagonal of the metric
        simple_roots: Simple roots in model coordinates
    """

    name: str
    weights: Tuple[Fraction, ...]
    simple_roots: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(to_fraction(w) for w in self.weights))
        object.__setattr__(
            self,
            "simple_roots",
            tuple(tuple(to_fraction(x) for x in root) for root in self.simple_roots),
        )
        for root in self.simple_roots:
            if len(root) != len(self.weights):
                raise DimensionMismatchError(f"Root of model {self.name} has the wrong length")

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def space(self) -> QuadSpace:
        return QuadSpace.euclidean(self.dim, weights=self.weights)

    def dot(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        return sum((w * a * b for w, a, b in zip(self.weights, x, y)), Fraction(0))

    def root_gram(self) -> List[List[Fraction]]:
        return [[self.dot(a, b) for b in self.simple_roots] for a in self.simple_roots]

    def in_root_span(self, x: Sequence[Fraction]) -> bool:
        return in_rational_span(LatticeVector(tuple(x)), [LatticeVector(r) for r in self.simple_roots])

    def to_coweight_coords(self, x: Sequence[object]) -> LatticeVector:
        """Coordinates c_i = (x, alpha_i) of a vector in the span of the roots"""
        vec = tuple(to_fraction(v) for v in x)
        if len(vec) != self.dim:
            raise DimensionMismatchError(
                f"Model {self.name} expects {self.dim} coordinates, got {len(vec)}"
            )
        if not self.in_root_span(vec):
            raise InvalidConfigurationError(
                f"Vector {[str(v) for v in vec]} is not in the span of the roots of model {self.name}"
            )
        return LatticeVector(tuple(self.dot(vec, root) for root in self.simple_roots))

    def from_coweight_coords(self, gram: Sequence[Sequence[Fraction]], c: LatticeVector) -> Tuple[Fraction, ...]:
        """Model vector with coweight coordinates c, given the coweight Gram matrix"""
        r = len(self.simple_roots)
        coefficients = [sum((c.coords[i] * gram[i][k] for i in range(r)), Fraction(0)) for k in range(r)]
        return tuple(
            sum((coefficients[k] * self.simple_roots[k][x] for k in range(r)), Fraction(0))
            for x in range(self.dim)
        )


def _unit(dim: int, *entries: Tuple[int, object]) -> Tuple[Fraction, ...]:
    coords = [Fraction(0)] * dim
    for index, value in entries:
        coords[index] = to_fraction(value)
    return tuple(coords)


def euclidean_model(alg_id: AlgebraId) -> EuclideanModel:
    """Orthogonal models for the classical series and e6"""
    r = alg_id.rank
    s = alg_id.series
    if s == "A":
        roots = [_unit(r + 1, (i, 1), (i + 1, -1)) for i in range(r)]
        return EuclideanModel(f"A{r}-euclidean", (1,) * (r + 1), tuple(roots))
    if s == "B":
        roots = [_unit(r, (i, 1), (i + 1, -1)) for i in range(r - 1)] + [_unit(r, (r - 1, 1))]
        return EuclideanModel(f"B{r}-euclidean", (1,) * r, tuple(roots))
    if s == "C":
        half = Fraction(1, 2)
        roots = [_unit(r, (i, half), (i + 1, -half)) for i in range(r - 1)] + [_unit(r, (r - 1, 1))]
        return EuclideanModel(f"C{r}-euclidean", (2,) * r, tuple(roots))
    if s == "D":
        roots = [_unit(r, (i, 1), (i + 1, -1)) for i in range(r - 1)] + [_unit(r, (r - 2, 1), (r - 1, 1))]
        return EuclideanModel(f"D{r}-euclidean", (1,) * r, tuple(roots))
    if s == "E" and r == 6:
        half = Fraction(1, 2)
        roots = [_unit(7, (i, 1), (i + 1, -1)) for i in range(5)]
        roots.append((-half, -half, -half, half, half, half, Fraction(1)))
        # seventh coordinate counts multiples of 1/sqrt(2)
        return EuclideanModel("e6-euclidean", (1, 1, 1, 1, 1, 1, half), tuple(roots))
    raise UnsupportedAlgebraError(f"No Euclidean model for {alg_id}", algebra=alg_id.name)


# Diagram data


def diagram_data(series: str, rank: int) -> Tuple[List[Fraction], List[Tuple[int, int]]]:
    """Node norms (long roots 2) and edges of the Dynkin diagram"""
    r = rank
    chain = [(i, i + 1) for i in range(r - 1)]
    two = Fraction(2)
    one = Fraction(1)
    if series == "A":
        return [two] * r, chain
    if series == "B":
        return [two] * (r - 1) + [one], chain
    if series == "C":
        return [one] * (r - 1) + [two], chain
    if series == "D":
        return [two] * r, [(i, i + 1) for i in range(r - 2)] + [(r - 3, r - 1)]
    if series == "E":
        branch = {6: 2, 7: 3, 8: 4}[r]
        return [two] * r, [(i, i + 1) for i in range(r - 2)] + [(branch, r - 1)]
    if series == "F":
        return [two, two, one, one], chain
    if series == "G":
        return [Fraction(2, 3), two], chain
    raise UnsupportedAlgebraError(f"Unknown series: {series}")


def root_inner_matrix(norms: Sequence[Fraction], edges: Sequence[Tuple[int, int]]) -> List[List[Fraction]]:
    r = len(norms)
    b = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        b[i][i] = norms[i]
    for i, j in edges:
        b[i][j] = b[j][i] = -max(norms[i], norms[j]) / 2
    return b


def cartan_from_inner(b: Sequence[Sequence[Fraction]]) -> Tuple[Tuple[int, ...], ...]:
    rows = []
    for i, row in enumerate(b):
        entries = []
        for value in row:
            entry = 2 * value / b[i][i]
            if entry.denominator != 1:
                raise ValueError("Inner products do not define an integral Cartan matrix")
            entries.append(entry.numerator)
        rows.append(tuple(entries))
    return tuple(rows)


def positive_root_coefficients(cartan: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Positive roots as simple-root coefficient vectors, in order of height"""
    r = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    found = set(simple)
    ordered = list(simple)
    layer = list(simple)
    while layer:
        next_layer = []
        for beta in layer:
            for i in range(r):
                pairing = sum(cartan[i][j] * beta[j] for j in range(r))
                down = 0
                lowered = list(beta)
                while True:
                    lowered[i] -= 1
                    if tuple(lowered) in found:
                        down += 1
                    else:
                        break
                if down - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up_t = tuple(up)
                    if up_t not in found:
                        found.add(up_t)
                        ordered.append(up_t)
                        next_layer.append(up_t)
        layer = next_layer
    return ordered


# Center generators and outer automorphisms


def _center_generator_nodes(alg_id: AlgebraId) -> List[int]:
    r = alg_id.rank
    s = alg_id.series
    if s == "A":
        return [r - 1]
    if s == "B":
        return [0]
    if s == "C":
        return [r - 1]
    if s == "D":
        return [r - 1, 0] if r % 2 == 0 else [r - 1]
    if alg_id.name == "e6":
        return [4]
    if alg_id.name == "e7":
        return [0]
    return []


def _outer_automorphisms(alg_id: AlgebraId) -> List[OuterAut]:
    r = alg_id.rank
    auts = [OuterAut("id", tuple(range(r)))]
    if alg_id.series == "A" and r >= 2:
        auts.append(OuterAut("flip", tuple(r - 1 - i for i in range(r))))
    elif alg_id.series == "D" and r > 4:
        perm = list(range(r))
        perm[r - 2], perm[r - 1] = r - 1, r - 2
        auts.append(OuterAut("flip", tuple(perm)))
    elif alg_id.series == "D" and r == 4:
        auts.extend(
            [
                OuterAut("w1", (0, 1, 3, 2)),
                OuterAut("w2", (2, 1, 0, 3)),
                OuterAut("w3", (3, 1, 2, 0)),
                OuterAut("w4", (3, 1, 0, 2)),
                OuterAut("w4inv", (2, 1, 3, 0)),
            ]
        )
    elif alg_id.name == "e6":
        auts.append(OuterAut("flip", (4, 3, 2, 1, 0, 5)))
    return auts


@dataclass(frozen=True)
class AlgebraData:
    """
    Exact data of a simple Lie algebra in the fundamental-coweight basis.

    Attributes:
        id: Algebra identifier
        space: Coweight-basis quadratic space
        cartan: Cartan matrix, A_ij = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)
        root_inner: Matrix of inner products of simple roots
        simple_roots: Simple roots (rows of root_inner)
        simple_coroots: Simple coroots (rows of cartan)
        fundamental_coweights: Unit vectors
        coroot_lattice: Q, the row lattice of the Cartan matrix
        coweight_lattice: P, the standard integer lattice
        positive_root_coeffs: Positive roots in simple-root coefficients
        highest_root_coeffs: Highest root in simple-root coefficients
        lowest_root_coroot: Coroot of the lowest root
        diagram_automorphisms: Outer automorphisms, identity first
        center_generators: Generators theta (theta1, theta2 for D_r, r even)
    """

    id: AlgebraId
    space: QuadSpace
    cartan: Tuple[Tuple[int, ...], ...]
    root_inner: Tuple[Tuple[Fraction, ...], ...]
    simple_roots: Tuple[LatticeVector, ...]
    simple_coroots: Tuple[LatticeVector, ...]
    fundamental_coweights: Tuple[LatticeVector, ...]
    coroot_lattice: IntegerLattice
    coweight_lattice: IntegerLattice
    positive_root_coeffs: Tuple[Tuple[int, ...], ...]
    highest_root_coeffs: Tuple[int, ...]
    lowest_root_coroot: LatticeVector
    diagram_automorphisms: Tuple[OuterAut, ...]
    center_generators: Tuple[LatticeVector, ...]
    _snf_moduli: Tuple[int, ...] = field(repr=False, compare=False, default=())
    _snf_columns: Tuple[Tuple[int, ...], ...] = field(repr=False, compare=False, default=())
    _center: Tuple[CenterElement, ...] = field(repr=False, compare=False, default=())

    @property
    def rank(self) -> int:
        return self.id.rank

    @property
    def name(self) -> str:
        return self.id.name

    @property
    def center_order(self) -> int:
        order = 1
        for d in self._snf_moduli:
            order *= d
        return order

    @property
    def center_elements(self) -> Tuple[CenterElement, ...]:
        return self._center

    @property
    def identity_element(self) -> CenterElement:
        return self._center[0]

    @property
    def is_center_cyclic(self) -> bool:
        return len(self.center_generators) <= 1

    def inner(self, u: LatticeVector, v: LatticeVector) -> Fraction:
        return inner(self.space, u, v)

    def theta_norms(self) -> Tuple[Fraction, ...]:
        return tuple(self.inner(t, t) for t in self.center_generators)

    # roots

    def root_vector(self, coeffs: Sequence[int]) -> LatticeVector:
        total = LatticeVector.zero(self.rank)
        for c, alpha in zip(coeffs, self.simple_roots):
            if c:
                total = total + alpha * c
        return total

    def positive_roots(self) -> List[LatticeVector]:
        return [self.root_vector(c) for c in self.positive_root_coeffs]

    def roots(self) -> List[LatticeVector]:
        positive = self.positive_roots()
        return positive + [-v for v in positive]

    def highest_root(self) -> LatticeVector:
        return self.root_vector(self.highest_root_coeffs)

    def coroot_of(self, root: LatticeVector) -> LatticeVector:
        norm = self.inner(root, root)
        if norm == 0:
            raise ValueError("Zero vector has no coroot")
        return root * (Fraction(2) / norm)

    def max_root_norm(self) -> Fraction:
        return max(self.root_inner[i][i] for i in range(self.rank))

    def reflect(self, v: LatticeVector, i: int) -> LatticeVector:
        """Simple reflection s_i: c -> c - c_i * alpha_i^vee"""
        c = v.coords[i]
        if c == 0:
            return v
        return v - self.simple_coroots[i] * c

    def dominant(self, v: LatticeVector) -> LatticeVector:
        """Dominant element of the Weyl orbit of v"""
        self.space.check(v)
        current = v
        while True:
            negative = next((i for i, c in enumerate(current.coords) if c < 0), None)
            if negative is None:
                return current
            current = self.reflect(current, negative)

    # center

    def center_class(self, v: LatticeVector) -> ClassTuple:
        if not v.is_integral():
            raise ValueError(f"{v} is not a coweight")
        ints = v.as_ints()
        return tuple(
            sum(ints[i] * column[i] for i in range(self.rank)) % d
            for d, column in zip(self._snf_moduli, self._snf_columns)
        )

    def in_coroot_lattice(self, v: LatticeVector) -> bool:
        return v.is_integral() and all(c == 0 for c in self.center_class(v))

    def lattice_compatibility(self, v: LatticeVector) -> LatticeCompatibility:
        self.space.check(v)
        if not v.is_integral():
            return LatticeCompatibility.NOT_IN_P
        if self.in_coroot_lattice(v):
            return LatticeCompatibility.IN_Q
        return LatticeCompatibility.IN_P_NOT_Q

    def center_element(self, v: LatticeVector) -> CenterElement:
        cls = self.center_class(v)
        for element in self._center:
            if self.center_class(element.rep) == cls:
                return element
        raise ValueError(f"No center class found for {v}")

    def discrete_log(self, v: LatticeVector) -> Tuple[int, ...]:
        """Exponents m with v = sum m_j theta_j mod Q"""
        return self.center_element(v).log

    def element_from_log(self, log: Sequence[int]) -> CenterElement:
        v = LatticeVector.zero(self.rank)
        for m, theta in zip(log, self.center_generators):
            v = v + theta * m
        return self.center_element(v)

    def center_add(self, a: CenterElement, b: CenterElement) -> CenterElement:
        return self.center_element(a.rep + b.rep)

    def center_neg(self, a: CenterElement) -> CenterElement:
        return self.center_element(-a.rep)

    def subgroup_generated(self, name: str, generators: Sequence[CenterElement]) -> CenterSubgroup:
        elements = [self.identity_element]
        frontier = [self.identity_element]
        while frontier:
            new = []
            for x in frontier:
                for g in generators:
                    y = self.center_add(x, g)
                    if y not in elements:
                        elements.append(y)
                        new.append(y)
            frontier = new
        ordered = sorted(elements, key=lambda e: e.log)
        return CenterSubgroup(name=name, generators=tuple(generators), elements=tuple(ordered))

    # automorphisms

    def outer_by_perm(self, perm: Sequence[int]) -> Optional[OuterAut]:
        perm = tuple(perm)
        return next((a for a in self.diagram_automorphisms if a.perm == perm), None)

    def identity_outer(self) -> OuterAut:
        return self.diagram_automorphisms[0]

    def euclidean_model(self) -> EuclideanModel:
        return euclidean_model(self.id)

    def euclidean_coordinates(self, v: LatticeVector) -> Tuple[Fraction, ...]:
        return self.euclidean_model().from_coweight_coords(self.space.gram, v)


def _element_name(alg_id: AlgebraId, log: Tuple[int, ...]) -> str:
    if not any(log):
        return "0"
    if len(log) == 1:
        return "θ" if log[0] == 1 else f"{log[0]}θ"
    return "+".join(f"θ{i + 1}" for i, m in enumerate(log) if m)


def _build_center(
    alg_id: AlgebraId,
    moduli: Tuple[int, ...],
    columns: Tuple[Tuple[int, ...], ...],
    generators: Tuple[LatticeVector, ...],
) -> Tuple[CenterElement, ...]:
    r = alg_id.rank
    order = 1
    for d in moduli:
        order *= d

    def class_of(ints: Sequence[int]) -> ClassTuple:
        return tuple(sum(ints[i] * col[i] for i in range(r)) % d for d, col in zip(moduli, columns))

    def add(a: ClassTuple, b: ClassTuple, scale: int = 1) -> ClassTuple:
        return tuple((x + scale * y) % d for x, y, d in zip(a, b, moduli))

    unit_classes = [class_of([1 if j == i else 0 for j in range(r)]) for i in range(r)]

    def closure(classes: Sequence[ClassTuple]) -> set:
        zero = tuple(0 for _ in moduli)
        seen = {zero}
        frontier = [zero]
        while frontier:
            new = []
            for x in frontier:
                for g in classes:
                    y = add(x, g)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return seen

    suffix_groups = [closure(unit_classes[i + 1:]) for i in range(r)]

    def canonical(target: ClassTuple) -> List[int]:
        coords = [0] * r
        remaining = target
        for i in range(r):
            for t in range(order):
                residual = add(remaining, unit_classes[i], -t)
                if residual in suffix_groups[i]:
                    coords[i] = t
                    remaining = residual
                    break
        return coords

    generator_classes = [class_of(g.as_ints()) for g in generators]
    exponents = list(product(*[range(_class_order(c, moduli)) for c in generator_classes]))
    elements: Dict[ClassTuple, CenterElement] = {}
    for log in exponents:
        cls = tuple(0 for _ in moduli)
        for m, g in zip(log, generator_classes):
            cls = add(cls, g, m)
        if cls in elements:
            continue
        rep = LatticeVector(tuple(canonical(cls)))
        elements[cls] = CenterElement(rep=rep, log=tuple(log), name=_element_name(alg_id, tuple(log)))

    if len(elements) != order:
        raise ValueError(f"Center generators of {alg_id} do not generate a group of order {order}")
    return tuple(sorted(elements.values(), key=lambda e: e.log))


def _class_order(cls: ClassTuple, moduli: Tuple[int, ...]) -> int:
    n = 1
    current = cls
    while any(current):
        current = tuple((x + y) % d for x, y, d in zip(current, cls, moduli))
        n += 1
    return n


@lru_cache(maxsize=None)
def build_algebra(alg_id: AlgebraId) -> AlgebraData:
    """Construct (and cache) the exact data of a catalog algebra"""
    if not isinstance(alg_id, AlgebraId):
        alg_id = AlgebraId.parse(str(alg_id))
    r = alg_id.rank
    norms, edges = diagram_data(alg_id.series, r)
    b = root_inner_matrix(norms, edges)
    cartan = cartan_from_inner(b)
    gram = rational_inverse(b)
    space = QuadSpace(dim=r, gram=tuple(tuple(row) for row in gram))

    simple_roots = tuple(LatticeVector(tuple(row)) for row in b)
    simple_coroots = tuple(LatticeVector(tuple(Fraction(x) for x in row)) for row in cartan)
    coweights = tuple(LatticeVector.unit(r, i) for i in range(r))

    coeffs = positive_root_coefficients(cartan)
    highest = max(coeffs, key=sum)

    _, d, v = smith_normal_form([list(row) for row in cartan])
    moduli = []
    columns = []
    for j in range(r):
        if d[j][j] > 1:
            moduli.append(d[j][j])
            columns.append(tuple(v[i][j] for i in range(r)))
    moduli_t = tuple(moduli)
    columns_t = tuple(columns)

    generators = tuple(LatticeVector.unit(r, i) for i in _center_generator_nodes(alg_id))
    center = _build_center(alg_id, moduli_t, columns_t, generators)

    autos = _outer_automorphisms(alg_id)
    for aut in autos:
        for i in range(r):
            for j in range(r):
                if cartan[aut.perm[i]][aut.perm[j]] != cartan[i][j]:
                    raise InvalidConfigurationError(f"{aut.name} is not a symmetry of {alg_id}")

    highest_vector = LatticeVector.zero(r)
    for c, alpha in zip(highest, simple_roots):
        highest_vector = highest_vector + alpha * c
    highest_coroot = highest_vector * (Fraction(2) / inner(space, highest_vector, highest_vector))

    data = AlgebraData(
        id=alg_id,
        space=space,
        cartan=cartan,
        root_inner=tuple(tuple(row) for row in b),
        simple_roots=simple_roots,
        simple_coroots=simple_coroots,
        fundamental_coweights=coweights,
        coroot_lattice=IntegerLattice(simple_coroots),
        coweight_lattice=IntegerLattice(coweights),
        positive_root_coeffs=tuple(coeffs),
        highest_root_coeffs=highest,
        lowest_root_coroot=-highest_coroot,
        diagram_automorphisms=tuple(autos),
        center_generators=generators,
        _snf_moduli=moduli_t,
        _snf_columns=columns_t,
        _center=center,
    )
    logger.debug(f"Built {alg_id}: {len(coeffs)} positive roots, center order {data.center_order}")
    return data


def center_subgroups(alg: AlgebraData) -> List[CenterSubgroup]:
    """All subgroups of P/Q, trivial first and full last"""
    if alg.id.is_d_even:
        theta1, theta2 = (alg.element_from_log(log) for log in ((1, 0), (0, 1)))
        diag = alg.element_from_log((1, 1))
        return [
            alg.subgroup_generated("trivial", []),
            alg.subgroup_generated("Z1", [theta1]),
            alg.subgroup_generated("Z2", [theta2]),
            alg.subgroup_generated("Zdiag", [diag]),
            alg.subgroup_generated("full", [theta1, theta2]),
        ]
    n = alg.center_order
    subgroups = []
    for p in range(1, n + 1):
        if n % p:
            continue
        if p == 1:
            subgroups.append(alg.subgroup_generated("trivial", []))
        else:
            subgroups.append(alg.subgroup_generated(f"Z{p}", [alg.element_from_log((n // p,))]))
    return subgroups


def full_center(alg: AlgebraData) -> CenterSubgroup:
    return center_subgroups(alg)[-1]


def parse_subgroup(alg: AlgebraData, name: str) -> CenterSubgroup:
    text = (name or "").strip()
    key = text.lower()
    subgroups = center_subgroups(alg)
    if key in ("trivial", "1", "id"):
        return subgroups[0]
    if key in ("full", "center"):
        return subgroups[-1]
    for subgroup in subgroups:
        if subgroup.name.lower() == key:
            return subgroup
    if not alg.id.is_d_even and key == "z1":
        return subgroups[0]
    raise InvalidConfigurationError(
        f"Unknown center subgroup {text!r} for {alg.name}",
        available=", ".join(s.name for s in subgroups),
    )


def admissible_levels(alg: AlgebraData, Z: CenterSubgroup, variant: TheoryVariant = TheoryVariant.PLUS) -> LevelRule:
    """Printed admissibility conditions, keyed by case"""
    alg_id = alg.id
    if variant is TheoryVariant.MINUS and not alg_id.is_d_even:
        raise InvalidConfigurationError(
            f"The minus theory only exists for D_r with r even, not {alg_id}",
            algebra=alg_id.name,
        )
    if Z.is_trivial:
        return LevelRule(1, "trivial Z: every integer level")

    p = Z.order
    r = alg_id.rank
    s = alg_id.series
    if s == "A":
        q = (r + 1) // p
        if p % 2 == 0 and q % 2 == 1:
            return LevelRule(2, f"A{r}, Z{p}: k even since |Z| is even and (r+1)/|Z| = {q} is odd")
        return LevelRule(1, f"A{r}, Z{p}: every integer level")
    if s == "B":
        return LevelRule(1, f"B{r}: every integer level")
    if s == "C":
        if r % 2 == 1:
            return LevelRule(2, f"C{r}: k even since r is odd")
        return LevelRule(1, f"C{r}: every integer level since r is even")
    if alg_id.is_d_odd:
        if p == 4:
            return LevelRule(2, f"D{r}, Z4: k even")
        return LevelRule(1, f"D{r}, Z2: every integer level")
    if alg_id.is_d_even:
        if (r // 2) % 2 == 0:
            return LevelRule(1, f"D{r}: every integer level since r/2 is even")
        if Z.name == "Z2":
            return LevelRule(1, f"D{r}, Z2: every integer level")
        return LevelRule(2, f"D{r}, {Z.name}: k even since r/2 is odd")
    if alg_id.name == "e7":
        return LevelRule(2, "e7, Z2: k even")
    return LevelRule(1, f"{alg_id}: every integer level")


def parse_outer(alg: AlgebraData, name: Optional[str]) -> OuterAut:
    key = (name or "id").strip().lower().replace("ω", "w").replace("omega", "w")
    aliases = {"identity": "id", "none": "id", "w4^-1": "w4inv", "w4-1": "w4inv"}
    key = aliases.get(key, key)
    if alg.id.name == "D4" and key == "flip":
        key = "w1"
    for aut in alg.diagram_automorphisms:
        if aut.name == key:
            return aut
    raise InvalidConfigurationError(
        f"Unknown outer automorphism {name!r} for {alg.name}",
        available=", ".join(a.name for a in alg.diagram_automorphisms),
    )


def _check_outer(alg: AlgebraData, aut: OuterAut) -> None:
    if alg.outer_by_perm(aut.perm) is None:
        raise InvalidConfigurationError(
            f"{aut.name} is not an outer automorphism of {alg.name}",
            algebra=alg.name,
            automorphism=aut.name,
        )


def apply_outer(alg: AlgebraData, aut: OuterAut, v: LatticeVector) -> LatticeVector:
    """Linear map lambda_i -> lambda_perm(i)"""
    _check_outer(alg, aut)
    alg.space.check(v)
    return aut.apply(v)


def canonical_outer(alg: AlgebraData, aut: OuterAut) -> OuterAut:
    """The named catalog automorphism with the same permutation"""
    _check_outer(alg, aut)
    return alg.outer_by_perm(aut.perm)


def _subgroup_named(alg: AlgebraData, elements: frozenset) -> CenterSubgroup:
    for subgroup in center_subgroups(alg):
        if subgroup.element_set() == elements:
            return subgroup
    raise ValueError(f"Element set of size {len(elements)} is not a subgroup of the center of {alg.name}")


def apply_outer_to_subgroup(alg: AlgebraData, aut: OuterAut, Z: CenterSubgroup) -> CenterSubgroup:
    image = frozenset(alg.center_element(apply_outer(alg, aut, z.rep)) for z in Z.elements)
    return _subgroup_named(alg, image)


def z_omega(alg: AlgebraData, Z: CenterSubgroup, aut: OuterAut) -> CenterSubgroup:
    """Elements z of the center with z * omega(z)^-1 in Z"""
    _check_outer(alg, aut)
    members = frozenset(
        z
        for z in alg.center_elements
        if Z.contains(alg.center_element(z.rep - aut.apply(z.rep)))
    )
    return _subgroup_named(alg, members)


def catalog(max_rank: int = 8) -> List[AlgebraId]:
    """Every catalog algebra up to the given rank"""
    ids = []
    for series in SERIES_ORDER:
        low, high = RANK_BOUNDS[series]
        top = max_rank if high is None else min(high, max_rank)
        for rank in range(low, top + 1):
            ids.append(AlgebraId(series, rank))
    return ids
