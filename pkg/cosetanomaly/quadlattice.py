"""
Exact rational linear algebra over a quadratic space.

Vectors carry Fraction coordinates, the invariant form is an explicit
rational Gram matrix, and integer-lattice questions are answered with a
Smith normal form that keeps its unimodular transforms.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Any, Iterable, List, Optional, Sequence, Tuple

import sympy

from .errors import DimensionMismatchError, EmptyInputError

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]


def to_fraction(value: Any) -> Fraction:
    """Coerce ints, Fractions, sympy rationals and strings like "1/2" to Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not rational coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, sympy.Basic) and value.is_Rational:
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"Cannot use {value!r} as an exact rational")


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class LatticeVector:
    """
    A rational vector given by its coordinates in the ambient basis.

    Attributes:
        coords: Exact coordinates
    """

    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(to_fraction(c) for c in self.coords))

    @classmethod
    def of(cls, *values: Any) -> "LatticeVector":
        return cls(tuple(values))

    @classmethod
    def zero(cls, dim: int) -> "LatticeVector":
        return cls(tuple(Fraction(0) for _ in range(dim)))

    @classmethod
    def unit(cls, dim: int, index: int) -> "LatticeVector":
        return cls(tuple(Fraction(1 if i == index else 0) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def _check_same_dim(self, other: "LatticeVector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"Vectors of dimension {self.dim} and {other.dim} cannot be combined",
                left=self.dim,
                right=other.dim,
            )

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._check_same_dim(other)
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._check_same_dim(other)
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.coords))

    def __mul__(self, scalar: Any) -> "LatticeVector":
        factor = to_fraction(scalar)
        return LatticeVector(tuple(factor * a for a in self.coords))

    __rmul__ = __mul__

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def as_ints(self) -> List[int]:
        if not self.is_integral():
            raise ValueError(f"Vector {self} has non-integral coordinates")
        return [c.numerator for c in self.coords]

    def to_strings(self) -> List[str]:
        return [format_fraction(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


def _as_vector(value: Any) -> LatticeVector:
    if isinstance(value, LatticeVector):
        return value
    return LatticeVector(tuple(value))


@dataclass(frozen=True)
class QuadSpace:
    """
    A rational vector space with a symmetric nondegenerate bilinear form.

    Attributes:
        dim: Dimension of the space
        gram: Gram matrix of the form in the chosen basis
    """

    dim: int
    gram: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(to_fraction(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        if self.dim <= 0:
            raise DimensionMismatchError("Quadratic space needs a positive dimension", dim=self.dim)
        if len(gram) != self.dim or any(len(row) != self.dim for row in gram):
            raise DimensionMismatchError(
                f"Gram matrix is not {self.dim}x{self.dim}", dim=self.dim
            )
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if gram[i][j] != gram[j][i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")
        if to_sympy_matrix(gram).det() == 0:
            raise ValueError("Gram matrix is degenerate")

    @classmethod
    def euclidean(cls, dim: int, scale: Any = 1, weights: Optional[Sequence[Any]] = None) -> "QuadSpace":
        """Diagonal form: scale * I, or the given diagonal weights"""
        diagonal = (
            [to_fraction(w) for w in weights]
            if weights is not None
            else [to_fraction(scale)] * dim
        )
        gram = tuple(
            tuple(diagonal[i] if i == j else Fraction(0) for j in range(dim))
            for i in range(dim)
        )
        return cls(dim=dim, gram=gram)

    def vector(self, *values: Any) -> LatticeVector:
        v = LatticeVector(tuple(values))
        self.check(v)
        return v

    def check(self, v: LatticeVector) -> None:
        if v.dim != self.dim:
            raise DimensionMismatchError(
                f"Vector of dimension {v.dim} does not belong to a space of dimension {self.dim}",
                vector=v,
                dim=self.dim,
            )


def inner(space: QuadSpace, u: LatticeVector, v: LatticeVector) -> Fraction:
    """Exact value of u^T * gram * v"""
    space.check(u)
    space.check(v)
    total = Fraction(0)
    for i, ui in enumerate(u.coords):
        if ui == 0:
            continue
        row = space.gram[i]
        for j, vj in enumerate(v.coords):
            if vj:
                total += ui * row[j] * vj
    return total


@dataclass(frozen=True)
class IntegerLattice:
    """
    The set of integer combinations of linearly independent vectors.

    Attributes:
        basis: Basis vectors
    """

    basis: Tuple[LatticeVector, ...]
    _dim: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        basis = tuple(_as_vector(b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        if not basis:
            raise EmptyInputError("Integer lattice needs at least one basis vector")
        dims = {b.dim for b in basis}
        if len(dims) != 1:
            raise DimensionMismatchError("Lattice basis vectors have different dimensions")
        object.__setattr__(self, "_dim", dims.pop())
        if rational_rank(basis) != len(basis):
            raise ValueError("Lattice basis vectors are linearly dependent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return self._dim

    def combination(self, coefficients: Sequence[int]) -> LatticeVector:
        total = LatticeVector.zero(self.dim)
        for c, b in zip(coefficients, self.basis):
            if c:
                total = total + b * c
        return total

    def coefficients_of(self, v: LatticeVector) -> Optional[List[int]]:
        """Integer coefficients expressing v in the basis, or None when v is not in the lattice"""
        if v.dim != self.dim:
            raise DimensionMismatchError(
                f"Vector of dimension {v.dim} compared with lattice of dimension {self.dim}"
            )
        return solve_integer_combination([list(b.coords) for b in self.basis], list(v.coords))

    def contains(self, v: LatticeVector) -> bool:
        return self.coefficients_of(v) is not None


# Matrix helpers


def to_sympy_matrix(rows: Sequence[Sequence[Any]]) -> sympy.Matrix:
    return sympy.Matrix(
        [[sympy.Rational(to_fraction(x).numerator, to_fraction(x).denominator) for x in row] for row in rows]
    )


def from_sympy_matrix(matrix: sympy.Matrix) -> List[List[Fraction]]:
    return [[to_fraction(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


def rational_inverse(rows: Sequence[Sequence[Any]]) -> List[List[Fraction]]:
    return from_sympy_matrix(to_sympy_matrix(rows).inv())


def rational_rank(vectors: Sequence[Any]) -> int:
    rows = [list(_as_vector(v).coords) for v in vectors]
    if not rows:
        return 0
    return int(to_sympy_matrix(rows).rank())


def in_rational_span(v: Any, basis: Sequence[Any]) -> bool:
    vector = _as_vector(v)
    if vector.is_zero():
        return True
    if not basis:
        return False
    return rational_rank(list(basis) + [vector]) == rational_rank(basis)


def _lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def _common_denominator(values: Iterable[Fraction]) -> int:
    return reduce(_lcm, (to_fraction(v).denominator for v in values), 1)


# Smith normal form


def _identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _swap_rows(m: IntMatrix, i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: IntMatrix, i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: IntMatrix, target: int, source: int, factor: int) -> None:
    if factor:
        m[target] = [a + factor * b for a, b in zip(m[target], m[source])]


def _add_col(m: IntMatrix, target: int, source: int, factor: int) -> None:
    if factor:
        for row in m:
            row[target] += factor * row[source]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form with transforms.

    Returns (U, D, V) with U * A * V = D, U and V unimodular, D diagonal with
    nonnegative entries and d_i dividing d_{i+1}.
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    t = 0
    while t < min(m, n):
        candidates = [
            (abs(a[i][j]), i, j)
            for i in range(t, m)
            for j in range(t, n)
            if a[i][j] != 0
        ]
        if not candidates:
            break
        _, pi, pj = min(candidates)
        _swap_rows(a, t, pi)
        _swap_rows(u, t, pi)
        _swap_cols(a, t, pj)
        _swap_cols(v, t, pj)

        while True:
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    _add_row(a, i, t, -q)
                    _add_row(u, i, t, -q)
                    if a[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    _add_col(a, j, t, -q)
                    _add_col(v, j, t, -q)
                    if a[t][j]:
                        changed = True

            if changed:
                # bring the smallest remainder of row t / column t to the pivot
                best = (abs(a[t][t]), t, t)
                for i in range(t + 1, m):
                    if a[i][t] and abs(a[i][t]) < best[0]:
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, n):
                    if a[t][j] and abs(a[t][j]) < best[0]:
                        best = (abs(a[t][j]), t, j)
                _, bi, bj = best
                if bi != t:
                    _swap_rows(a, t, bi)
                    _swap_rows(u, t, bi)
                if bj != t:
                    _swap_cols(a, t, bj)
                    _swap_cols(v, t, bj)
                continue

            bad_row = next(
                (
                    i
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if a[i][j] % a[t][t]
                ),
                None,
            )
            if bad_row is None:
                break
            _add_row(a, t, bad_row, 1)
            _add_row(u, t, bad_row, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return u, a, v


def invariant_factors(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Diagonal of the Smith normal form, zeros included"""
    _, d, _ = smith_normal_form(matrix)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def solve_integer_combination(
    rows: Sequence[Sequence[Any]], target: Sequence[Any]
) -> Optional[List[int]]:
    """
    Find integers y with sum_i y_i * rows[i] = target.

    Rows and target may be rational; both sides are scaled by a common
    denominator first. Returns None when no integer solution exists.
    """
    if not rows:
        return [] if all(to_fraction(x) == 0 for x in target) else None
    width = len(target)
    if any(len(row) != width for row in rows):
        raise DimensionMismatchError("Rows and target have different lengths")

    values = [to_fraction(x) for row in rows for x in row] + [to_fraction(x) for x in target]
    scale = _common_denominator(values)
    lattice = [[int(to_fraction(x) * scale) for x in row] for row in rows]
    goal = [int(to_fraction(x) * scale) for x in target]
    if width == 0:
        return [0] * len(rows)

    u, d, v = smith_normal_form(lattice)
    k = len(lattice)
    # y L = b  <=>  (y U^-1) D = b V
    transformed = [sum(goal[i] * v[i][j] for i in range(width)) for j in range(width)]
    z = [0] * k
    for j in range(width):
        dj = d[j][j] if j < k else 0
        if dj == 0:
            if transformed[j] != 0:
                return None
        else:
            if transformed[j] % dj:
                return None
            z[j] = transformed[j] // dj
    return [sum(z[i] * u[i][j] for i in range(k)) for j in range(k)]


def subspace_complement(subspace_basis: Sequence[LatticeVector], dim: int) -> List[List[Fraction]]:
    """
    Columns spanning the vectors orthogonal (coordinate-wise) to the subspace.

    A vector w lies in the span of subspace_basis iff w times this matrix is zero.
    """
    if not subspace_basis:
        return [[Fraction(1 if i == j else 0) for j in range(dim)] for i in range(dim)]
    null_columns = to_sympy_matrix([list(s.coords) for s in subspace_basis]).nullspace()
    return [[to_fraction(col[i]) for col in null_columns] for i in range(dim)]


def coset_meets_subspace(
    lattice: IntegerLattice,
    offset: LatticeVector,
    subspace_basis: Sequence[LatticeVector],
    complement: Optional[List[List[Fraction]]] = None,
) -> Tuple[bool, Optional[LatticeVector]]:
    """
    Decide whether offset + lattice meets the rational span of subspace_basis.

    Returns (True, q) with q in the lattice and offset + q in the span, or
    (False, None). A precomputed subspace_complement may be passed when many
    offsets are tested against one subspace.
    """
    if offset.dim != lattice.dim:
        raise DimensionMismatchError(
            f"Offset of dimension {offset.dim} does not match lattice dimension {lattice.dim}"
        )
    for s in subspace_basis:
        if s.dim != lattice.dim:
            raise DimensionMismatchError(
                f"Subspace vector of dimension {s.dim} does not match lattice dimension {lattice.dim}"
            )

    dim = lattice.dim
    if complement is None:
        complement = subspace_complement(subspace_basis, dim)

    columns = len(complement[0]) if complement else 0
    if columns == 0:
        return True, LatticeVector.zero(dim)

    def project(vec: LatticeVector) -> List[Fraction]:
        return [sum(vec.coords[i] * complement[i][j] for i in range(dim)) for j in range(columns)]

    projected_basis = [project(b) for b in lattice.basis]
    goal = [-x for x in project(offset)]
    coefficients = solve_integer_combination(projected_basis, goal)
    if coefficients is None:
        logger.debug(f"Coset of {offset} misses the subspace")
        return False, None
    witness = lattice.combination(coefficients)
    return True, witness


def lcm_of_list(ks: Sequence[int]) -> int:
    """Least common multiple of a nonempty list of positive integers"""
    if not ks:
        raise EmptyInputError("Least common multiple of an empty list is undefined")
    for k in ks:
        if k <= 0:
            raise ValueError(f"Expected positive integers, got {k}")
    return reduce(_lcm, ks)


def lcm_fraction_identity(a: int, bs: Sequence[int]) -> int:
    """a / gcd(a, b_1, ..., b_s), which equals lcm_i a / gcd(a, b_i)"""
    if not bs:
        raise EmptyInputError("Need at least one divisor candidate")
    if a <= 0 or any(b <= 0 for b in bs):
        raise ValueError("Expected positive integers")
    return a // reduce(gcd, bs, a)
