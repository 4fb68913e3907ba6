# cosetanomaly/anomaly.py
"""
Global gauge anomaly test for gauged WZW cosets.

A configuration is anomaly free at level k iff for every class
M~ in Z^omega meeting the Cartan subspace of h and every M with
exp(2 pi i M) in Z

    c(M~ - omega(M~), M) * exp(-2 pi i k (M, omega(M~))) = 1.

Each factor is exp(i pi (k x + s)) with x rational and s an integer that
does not depend on k, so the set of good levels is a finite intersection
of arithmetic progressions.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .errors import InadmissibleLevelError, InvalidConfigurationError
from .liealg import (
    AlgebraData,
    AlgebraId,
    CenterElement,
    CenterSubgroup,
    LevelRule,
    OuterAut,
    TheoryVariant,
    admissible_levels,
    apply_outer_to_subgroup,
    build_algebra,
    canonical_outer,
    center_subgroups,
    z_omega,
)
from .quadlattice import LatticeVector, format_fraction, lcm_fraction_identity
from .subalg import (
    RegularSpec,
    SubalgebraEmbedding,
    apply_automorphism_to_embedding,
    ideal_embeddings,
    intersection_points,
)

logger = logging.getLogger(__name__)

TWO = Fraction(2)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Phase:
    """
    A U(1) value exp(i pi x).

    Attributes:
        exponent: x, reduced to [0, 2)
    """

    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent) % TWO)

    @property
    def is_trivial(self) -> bool:
        return self.exponent == 0

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.exponent + other.exponent)

    def inverse(self) -> "Phase":
        return Phase(-self.exponent)

    def __str__(self) -> str:
        return f"exp(iπ·{format_fraction(self.exponent)})"


@dataclass(frozen=True)
class LevelSet:
    """
    Integers k with k mod modulus in residues.

    Attributes:
        modulus: Period, at least 1
        residues: Residues modulo the period
    """

    modulus: int
    residues: FrozenSet[int]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"Level set modulus must be positive, got {self.modulus}")
        residues = frozenset(int(r) for r in self.residues)
        if any(r < 0 or r >= self.modulus for r in residues):
            raise ValueError(f"Residues {sorted(residues)} out of range for modulus {self.modulus}")
        object.__setattr__(self, "residues", residues)

    @classmethod
    def everything(cls) -> "LevelSet":
        return cls(1, frozenset({0}))

    @classmethod
    def empty(cls) -> "LevelSet":
        return cls(1, frozenset())

    @classmethod
    def multiples(cls, n: int) -> "LevelSet":
        return cls(n, frozenset({0}))

    @classmethod
    def from_rule(cls, rule: LevelRule) -> "LevelSet":
        return cls.multiples(rule.modulus)

    @property
    def is_empty(self) -> bool:
        return not self.residues

    def contains(self, k: int) -> bool:
        return k % self.modulus in self.residues

    __contains__ = contains

    def intersect(self, other: "LevelSet") -> "LevelSet":
        n = _lcm(self.modulus, other.modulus)
        residues = frozenset(
            x for x in range(n) if x % self.modulus in self.residues and x % other.modulus in other.residues
        )
        return LevelSet(n, residues).reduced()

    def reduced(self) -> "LevelSet":
        """Same set with the minimal period"""
        if not self.residues:
            return LevelSet.empty()
        for d in range(1, self.modulus + 1):
            if self.modulus % d:
                continue
            candidate = frozenset(r % d for r in self.residues)
            if all((x % d in candidate) == (x in self.residues) for x in range(self.modulus)):
                return LevelSet(d, candidate)
        return self

    def is_subset_of(self, other: "LevelSet") -> bool:
        n = _lcm(self.modulus, other.modulus)
        return all(other.contains(x) for x in range(n) if self.contains(x))

    def describe(self) -> str:
        """Z, 3Z, k ≡ 1 (mod 2) or ∅"""
        s = self.reduced()
        if s.is_empty:
            return "∅"
        if s.modulus == 1:
            return "Z"
        if s.residues == frozenset({0}):
            return f"{s.modulus}Z"
        listed = ", ".join(str(r) for r in sorted(s.residues))
        return f"k ≡ {listed} (mod {s.modulus})"

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class LinearPhase:
    """
    Exponent k * slope + offset of a phase that is linear in the level.

    Attributes:
        slope: Coefficient of k
        offset: Level-independent part
    """

    slope: Fraction = Fraction(0)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "offset", Fraction(self.offset))

    def __add__(self, other: "LinearPhase") -> "LinearPhase":
        return LinearPhase(self.slope + other.slope, self.offset + other.offset)

    def at(self, k: int) -> Phase:
        return Phase(self.slope * k + self.offset)

    def solutions(self) -> LevelSet:
        """Integers k with k * slope + offset ≡ 0 (mod 2)"""
        d = _lcm(self.slope.denominator, self.offset.denominator)
        p = (self.slope * d).numerator
        s = (self.offset * d).numerator
        n = 2 * d
        if p % n == 0:
            return LevelSet.everything() if s % n == 0 else LevelSet.empty()
        g = gcd(p, n)
        if s % g:
            return LevelSet.empty()
        period = n // g
        if period == 1:
            return LevelSet.everything()
        k0 = (-s // g) * pow(p // g, -1, period) % period
        return LevelSet(period, frozenset({k0}))


class BihomRule(Enum):
    """Which closed formula evaluates the bihomomorphism"""

    CYCLIC = "cyclic"
    D_EVEN_FULL = "d_even_full"


def bihom_rule(alg: AlgebraData) -> BihomRule:
    return BihomRule.D_EVEN_FULL if alg.id.is_d_even else BihomRule.CYCLIC


def bihom_linear(alg: AlgebraData, variant: TheoryVariant, z: CenterElement, w: CenterElement) -> LinearPhase:
    """The bihomomorphism c(z, w) as k * slope + offset"""
    m, n = z.log, w.log
    if not m or not n:
        return LinearPhase()
    if bihom_rule(alg) is BihomRule.CYCLIC:
        theta = alg.center_generators[0]
        return LinearPhase(-m[0] * n[0] * alg.inner(theta, theta), 0)
    r = alg.rank
    (m1, m2), (n1, n2) = m, n
    antisym = m1 * n2 - m2 * n1
    symmetric = Fraction(m1 * n1 * r, 2) + m1 * n2 + m2 * n1 + 2 * m2 * n2
    return LinearPhase(Fraction(antisym, 2) - symmetric / 2, antisym * variant.offset)


def bihom(alg: AlgebraData, variant: TheoryVariant, k: int, z: CenterElement, w: CenterElement) -> Phase:
    return bihom_linear(alg, variant, z, w).at(k)


@dataclass(frozen=True)
class ModelConfig:
    """
    A gauged coset model.

    Attributes:
        alg: Ambient algebra g
        Z: Subgroup of the center with G = G~/Z
        h: Gauged subalgebra
        twist: Outer automorphism of the twisted adjoint action
        variant: Sign of the WZ action (minus only for D_r, r even)
    """

    alg: AlgebraId
    Z: CenterSubgroup
    h: SubalgebraEmbedding
    twist: OuterAut
    variant: TheoryVariant = TheoryVariant.PLUS

    def __post_init__(self):
        data = build_algebra(self.alg)
        if self.h.ambient != self.alg:
            raise InvalidConfigurationError(
                f"{self.h.label} is embedded in {self.h.ambient}, not {self.alg}",
                subalgebra=self.h.label,
            )
        canonical_outer(data, self.twist)
        if not any(s.element_set() == self.Z.element_set() for s in center_subgroups(data)):
            raise InvalidConfigurationError(f"{self.Z.name} is not a center subgroup of {self.alg}")
        if self.variant is TheoryVariant.MINUS and not self.alg.is_d_even:
            raise InvalidConfigurationError(
                f"The minus theory only exists for D_r with r even, not {self.alg}",
                algebra=self.alg.name,
            )

    @property
    def data(self) -> AlgebraData:
        return build_algebra(self.alg)

    @property
    def rule(self) -> LevelRule:
        return admissible_levels(self.data, self.Z, self.variant)

    @property
    def extrapolated(self) -> bool:
        """Minus theory on a proper nontrivial subgroup"""
        return (
            self.variant is TheoryVariant.MINUS
            and not self.Z.is_trivial
            and self.Z.order < self.data.center_order
        )

    def with_variant(self, variant: TheoryVariant) -> "ModelConfig":
        return replace(self, variant=variant)

    def with_subalgebra(self, h: SubalgebraEmbedding) -> "ModelConfig":
        return replace(self, h=h)

    def summary(self) -> str:
        variant = f" ({self.variant.symbol})" if self.alg.is_d_even else ""
        return f"{self.alg} / {self.Z.name} / h={self.h.display_label} / ω={self.twist.name}{variant}"


@dataclass(frozen=True)
class PairTerm:
    """
    One (M~, M) pair and its phase exponent.

    Attributes:
        m_tilde: Class of M~ in Z^omega meeting the Cartan subspace of h
        m_tilde_vector: A representative of that class inside the Cartan subspace of h
        m: Class of M in Z
        phase: Exponent as a function of k
    """

    m_tilde: CenterElement
    m_tilde_vector: LatticeVector
    m: CenterElement
    phase: LinearPhase


@dataclass(frozen=True)
class Witness:
    """
    A violating pair at a given level.

    Attributes:
        m_tilde: Class of M~
        m_tilde_vector: Representative of M~ in the Cartan subspace of h
        m: Class of M
        phase: The phase that differs from 1
    """

    m_tilde: CenterElement
    m_tilde_vector: LatticeVector
    m: CenterElement
    phase: Phase


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of the anomaly test at one level.

    Attributes:
        k: Level
        anomalous: Whether some pair gives a nontrivial phase
        witness: The first violating pair, present iff anomalous
        extrapolated: Minus theory on a proper subgroup
    """

    k: int
    anomalous: bool
    witness: Optional[Witness] = None
    extrapolated: bool = False

    def __post_init__(self):
        if self.anomalous != (self.witness is not None):
            raise ValueError("A verdict carries a witness exactly when it is anomalous")


@lru_cache(maxsize=4096)
def pair_terms(cfg: ModelConfig) -> Tuple[PairTerm, ...]:
    """Every (M~, M) pair of the configuration with its linear phase"""
    alg = cfg.data
    zomega = z_omega(alg, cfg.Z, cfg.twist)
    points = intersection_points(alg, cfg.h, zomega)
    terms = []
    for element, point in points:
        image = cfg.twist.apply(point)
        diff = alg.center_element(point - image)
        for m in cfg.Z.elements:
            trace = LinearPhase(-2 * alg.inner(m.rep, image), 0)
            terms.append(PairTerm(element, point, m, bihom_linear(alg, cfg.variant, diff, m) + trace))
    logger.debug(f"{cfg.summary()}: {len(points)} classes meet h, {len(terms)} pairs")
    return tuple(terms)


def check_level(cfg: ModelConfig, k: int) -> Verdict:
    """Anomaly verdict at an admissible level k"""
    rule = cfg.rule
    if not rule.admits(k):
        raise InadmissibleLevelError(
            f"Level {k} is not admissible for {cfg.alg} with {cfg.Z.name}: {rule.reason}",
            k=k,
            modulus=rule.modulus,
        )
    for term in pair_terms(cfg):
        phase = term.phase.at(k)
        if not phase.is_trivial:
            witness = Witness(term.m_tilde, term.m_tilde_vector, term.m, phase)
            return Verdict(k, True, witness, cfg.extrapolated)
    return Verdict(k, False, None, cfg.extrapolated)


@lru_cache(maxsize=4096)
def classify_levels(cfg: ModelConfig) -> LevelSet:
    """All admissible levels without anomaly"""
    levels = LevelSet.from_rule(cfg.rule)
    for term in pair_terms(cfg):
        levels = levels.intersect(term.phase.solutions())
        if levels.is_empty:
            break
    return levels.reduced()


def admissible_window(cfg: ModelConfig, count: int, start: int = 0) -> List[int]:
    rule = cfg.rule
    levels = []
    k = start
    while len(levels) < count:
        if rule.admits(k):
            levels.append(k)
        k += 1
    return levels


def window_agrees(cfg: ModelConfig, levels: Optional[LevelSet] = None, start: int = 0) -> bool:
    """Direct checks over 2 * modulus admissible levels match the level set"""
    if levels is None:
        levels = classify_levels(cfg)
    for k in admissible_window(cfg, max(2, 2 * levels.modulus), start):
        if check_level(cfg, k).anomalous == levels.contains(k):
            logger.warning(f"{cfg.summary()}: level set {levels} disagrees with the direct check at k={k}")
            return False
    return True


def ar_closed_form(r: int, p: int, spec: RegularSpec) -> LevelSet:
    """Closed form for a regular subalgebra of A_r with Z of order p"""
    if r < 1:
        raise InvalidConfigurationError(f"A_r needs r >= 1, got {r}")
    if p < 1 or (r + 1) % p:
        raise InvalidConfigurationError(f"Z{p} is not a subgroup of the center of A{r}", r=r, p=p)
    if any(t.series != "A" for t in spec.ideals):
        raise InvalidConfigurationError(f"{spec.label} is not a regular subalgebra of A{r}")
    alg = build_algebra(AlgebraId("A", r))
    Z = next(s for s in center_subgroups(alg) if s.order == p)
    rule = admissible_levels(alg, Z)
    sizes = [t.rank + 1 for t in spec.ideals]
    if sum(sizes) > r + 1:
        raise InvalidConfigurationError(
            f"{spec.label} does not fit in A{r}: sum of r_i + 1 is {sum(sizes)}", r=r
        )
    admissible = LevelSet.from_rule(rule)
    if sum(sizes) < r + 1:
        return admissible
    a_min = lcm_fraction_identity(r + 1, sizes)
    l = (r + 1) // a_min
    q = (r + 1) // p
    return LevelSet.multiples(l // gcd(q, l)).intersect(admissible)


def related_config(cfg: ModelConfig, aut: OuterAut) -> Tuple[ModelConfig, bool]:
    """(omega'(Z), omega'(h), omega' omega omega'^-1) and whether the sign swaps at odd k"""
    alg = cfg.data
    aut = canonical_outer(alg, aut)
    twist = canonical_outer(alg, aut.compose(cfg.twist).compose(aut.inverse()))
    image = ModelConfig(
        alg=cfg.alg,
        Z=apply_outer_to_subgroup(alg, aut, cfg.Z),
        h=apply_automorphism_to_embedding(alg, aut, cfg.h),
        twist=twist,
        variant=cfg.variant,
    )
    swap = alg.id.is_d_even and cfg.Z.order == alg.center_order and aut.order() == 2
    return image, swap


def twisted_reduction_check(cfg: ModelConfig, aut: OuterAut) -> bool:
    """Levels of cfg and of its image under an outer automorphism agree"""
    image, swap = related_config(cfg, aut)
    levels = classify_levels(cfg)
    same = classify_levels(image)
    if not swap:
        agrees = levels == same
    else:
        swapped = classify_levels(image.with_variant(cfg.variant.swapped()))
        period = reduce(_lcm, (levels.modulus, same.modulus, swapped.modulus, 2))
        agrees = all(
            levels.contains(k) == (same.contains(k) if k % 2 == 0 else swapped.contains(k))
            for k in range(period)
        )
    if not agrees:
        logger.warning(f"{cfg.summary()} and its image under {aut.name} have different level sets")
    return agrees


@dataclass(frozen=True)
class SemisimpleCheck:
    """
    Per-ideal levels of a semisimple h together with the full answer.

    Attributes:
        ideal_levels: Levels of each simple ideal gauged alone
        anomalous_ideals: Indices of ideals with fewer levels than admissibility allows
        levels: Levels of h itself
    """

    ideal_levels: Tuple[LevelSet, ...]
    anomalous_ideals: Tuple[int, ...]
    levels: LevelSet


def semisimple_precheck(cfg: ModelConfig) -> SemisimpleCheck:
    """An anomalous ideal makes the sum anomalous; otherwise the full engine decides"""
    alg = cfg.data
    admissible = LevelSet.from_rule(cfg.rule)
    ideal_levels = []
    anomalous = []
    for i, ideal in enumerate(ideal_embeddings(alg, cfg.h)):
        levels = classify_levels(cfg.with_subalgebra(ideal))
        ideal_levels.append(levels)
        if levels != admissible.reduced():
            anomalous.append(i)
    full = classify_levels(cfg)
    for i, levels in enumerate(ideal_levels):
        if not full.is_subset_of(levels):
            logger.warning(f"{cfg.summary()}: ideal {i + 1} allows fewer levels than the whole subalgebra")
    return SemisimpleCheck(tuple(ideal_levels), tuple(anomalous), full)


def classify_many(configs: Sequence[ModelConfig], workers: int = 1) -> List[LevelSet]:
    """classify_levels over many configurations, in input order"""
    if workers <= 1 or len(configs) < 2:
        return [classify_levels(cfg) for cfg in configs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(classify_levels, configs))
