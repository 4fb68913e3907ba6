"""
Tests for level sets, linear phases and the anomaly classifier
"""

import random
from fractions import Fraction

import pytest

from cosetanomaly.anomaly import (
    LevelSet,
    LinearPhase,
    ModelConfig,
    Phase,
    Verdict,
    ar_closed_form,
    bihom,
    bihom_linear,
    check_level,
    classify_levels,
    classify_many,
    pair_terms,
    related_config,
    semisimple_precheck,
    twisted_reduction_check,
    window_agrees,
)
from cosetanomaly.errors import InadmissibleLevelError, InvalidConfigurationError
from cosetanomaly.liealg import (
    TheoryVariant,
    admissible_levels,
    build_algebra,
    catalog,
    center_subgroups,
    full_center,
    parse_algebra,
    parse_outer,
    parse_subgroup,
)
from cosetanomaly.quadlattice import LatticeVector
from cosetanomaly.subalg import embed_regular, enumerate_regular, full_embedding, sub_specs

MINUS = TheoryVariant.MINUS


def alg(name):
    return build_algebra(parse_algebra(name))


def config(name, Z="full", h=None, twist="id", variant=TheoryVariant.PLUS):
    data = alg(name)
    return ModelConfig(
        alg=data.id,
        Z=parse_subgroup(data, Z),
        h=h if h is not None else full_embedding(data),
        twist=parse_outer(data, twist),
        variant=variant,
    )


def regular(name, label, choice=1):
    data = alg(name)
    spec = next(s for s in enumerate_regular(data) if s.label == label and s.embedding_choice == choice)
    return embed_regular(data, spec)


# Level sets and phases


def test_level_set_operations():
    """Test intersection, reduction, membership and printing"""
    two, three = LevelSet.multiples(2), LevelSet.multiples(3)
    assert two.intersect(three) == LevelSet.multiples(6)
    assert LevelSet(4, frozenset({0, 2})).reduced() == two
    assert LevelSet(2, frozenset({0, 1})).reduced() == LevelSet.everything()
    assert -3 in three
    assert 4 not in three
    assert LevelSet.multiples(6).is_subset_of(three)
    assert not three.is_subset_of(two)
    assert two.intersect(LevelSet(2, frozenset({1}))).is_empty
    assert LevelSet.everything().describe() == "Z"
    assert three.describe() == "3Z"
    assert LevelSet(2, frozenset({1})).describe() == "k ≡ 1 (mod 2)"
    assert LevelSet.empty().describe() == "∅"
    with pytest.raises(ValueError):
        LevelSet(0, frozenset())
    with pytest.raises(ValueError):
        LevelSet(2, frozenset({2}))


def test_phase_is_reduced_mod_two():
    assert Phase(Fraction(5, 2)).exponent == Fraction(1, 2)
    assert Phase(-2).is_trivial
    assert (Phase(Fraction(1, 2)) * Phase(Fraction(3, 2))).is_trivial
    assert Phase(Fraction(2, 3)).inverse().exponent == Fraction(4, 3)


def test_linear_phase_solutions():
    assert LinearPhase(Fraction(1, 2), 0).solutions() == LevelSet.multiples(4)
    assert LinearPhase(1, 1).solutions() == LevelSet(2, frozenset({1}))
    assert LinearPhase(0, 1).solutions().is_empty
    assert LinearPhase(Fraction(-4, 3), 0).solutions() == LevelSet.multiples(3)
    assert LinearPhase(2, 0).solutions() == LevelSet.everything()


def test_linear_phase_solutions_match_direct_evaluation():
    """Test solutions() against the phase evaluated level by level"""
    rng = random.Random(31415)
    for _ in range(200):
        slope = Fraction(rng.randint(-12, 12), rng.randint(1, 8))
        offset = Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2]))
        phase = LinearPhase(slope, offset)
        levels = phase.solutions()
        for k in range(-40, 40):
            assert levels.contains(k) == phase.at(k).is_trivial


def test_cyclic_bihomomorphism():
    a5 = alg("A5")
    theta = a5.element_from_log((1,))
    two_theta = a5.element_from_log((2,))
    assert bihom_linear(a5, TheoryVariant.PLUS, theta, theta).slope == Fraction(-5, 6)
    assert bihom_linear(a5, TheoryVariant.PLUS, theta, two_theta) == bihom_linear(a5, TheoryVariant.PLUS, two_theta, theta)
    assert bihom_linear(a5, TheoryVariant.PLUS, a5.identity_element, theta) == LinearPhase()


def test_d_even_bihomomorphism_offset():
    """Test that only the minus theory picks up a level-independent sign"""
    d4 = alg("D4")
    z = d4.element_from_log((1, 1))
    w = d4.element_from_log((1, 0))
    plus = bihom_linear(d4, TheoryVariant.PLUS, z, w)
    minus = bihom_linear(d4, MINUS, z, w)
    assert plus.slope == minus.slope
    assert plus.offset == 0
    assert minus.offset == -1


# Configurations


def test_model_config_validation():
    with pytest.raises(InvalidConfigurationError):
        config("A3", variant=MINUS)
    d4, a3 = alg("D4"), alg("A3")
    with pytest.raises(InvalidConfigurationError):
        ModelConfig(d4.id, full_center(d4), full_embedding(a3), d4.identity_outer())
    assert config("D4", "Z1", variant=MINUS).extrapolated
    assert not config("D4", "full", variant=MINUS).extrapolated
    assert not config("D4", "trivial", variant=MINUS).extrapolated


def test_verdict_requires_witness_iff_anomalous():
    with pytest.raises(ValueError):
        Verdict(1, True)


# Worked examples


def test_a4_full_algebra_is_anomalous_at_level_one():
    verdict = check_level(config("A4", "Z5"), 1)
    assert verdict.anomalous
    assert verdict.witness is not None
    assert not check_level(config("A4", "Z5"), 5).anomalous


def test_e7_full_algebra_is_fine_at_level_two():
    assert not check_level(config("e7", "Z2"), 2).anomalous


def test_inadmissible_level_is_rejected():
    with pytest.raises(InadmissibleLevelError):
        check_level(config("A5", "Z2"), 1)


def test_a5_two_a2():
    assert classify_levels(config("A5", "Z3", regular("A5", "2A2"))) == LevelSet.multiples(3)
    assert classify_levels(config("A5", "Z6", regular("A5", "2A2"))) == LevelSet.multiples(6)
    assert classify_levels(config("A5", "Z3", regular("A5", "3A1"))) == LevelSet.everything()


@pytest.mark.parametrize(
    "name, Z, modulus",
    [
        ("A3", "Z4", 4),
        ("A3", "Z2", 2),
        ("A5", "Z6", 6),
        ("B3", "Z2", 1),
        ("C3", "Z2", 2),
        ("D5", "Z4", 4),
        ("D5", "Z2", 2),
        ("D6", "Z2", 2),
        ("D6", "full", 2),
        ("e6", "Z3", 3),
        ("e7", "Z2", 2),
    ],
)
def test_untwisted_full_algebra(name, Z, modulus):
    assert classify_levels(config(name, Z)) == LevelSet.multiples(modulus)


def test_d4_twisted_full_algebra():
    """Test the full-center sign choice under each D4 automorphism"""
    even, odd = LevelSet.multiples(2), LevelSet(2, frozenset({1}))
    assert classify_levels(config("D4", twist="w1")) == even
    assert classify_levels(config("D4", twist="w1", variant=MINUS)).is_empty
    assert classify_levels(config("D4", "Z2", twist="w1")) == LevelSet.everything()
    assert classify_levels(config("D4", twist="w4")) == LevelSet.everything()
    assert classify_levels(config("D4", twist="w4", variant=MINUS)).is_empty
    assert classify_levels(config("D4", twist="w4inv")) == even
    assert classify_levels(config("D4", twist="w4inv", variant=MINUS)) == odd
    assert classify_levels(config("D4", "Z1", twist="w4")) == LevelSet.everything()
    assert check_level(config("D4", twist="w4", variant=MINUS), 1).anomalous


def test_d4_regular_two_a1():
    """Test that each 2A1 embedding escapes the anomaly on one cyclic subgroup"""
    first, second = regular("D4", "2A1", 1), regular("D4", "2A1", 2)
    assert classify_levels(config("D4", "Z1", first)) == LevelSet.everything()
    assert classify_levels(config("D4", "Zdiag", first)) == LevelSet.multiples(2)
    assert classify_levels(config("D4", "Zdiag", second)) == LevelSet.everything()
    assert classify_levels(config("D4", "Z1", second)) == LevelSet.multiples(2)


def test_d4_regular_d2_under_triality():
    d2 = regular("D4", "D2")
    assert classify_levels(config("D4", h=d2, twist="w4")) == LevelSet.everything()
    assert classify_levels(config("D4", h=d2, twist="w4", variant=MINUS)).is_empty
    assert classify_levels(config("D4", h=d2, twist="w4inv")) == LevelSet.multiples(2)
    assert classify_levels(config("D4", h=d2, twist="w4inv", variant=MINUS)) == LevelSet(2, frozenset({1}))
    assert classify_levels(config("D4", h=d2, twist="w1", variant=MINUS)) == LevelSet.multiples(2)


def test_witnesses_come_from_zero_phase_failures():
    cfg = config("e6", "Z3")
    terms = pair_terms(cfg)
    assert len(terms) == 9
    verdict = check_level(cfg, 1)
    assert verdict.anomalous
    assert not verdict.witness.phase.is_trivial


# Cross-checks


def test_window_agrees_on_many_configurations():
    """Test the closed level sets against level-by-level verdicts"""
    for name in ("A5", "D4", "D5", "e6"):
        data = alg(name)
        for spec in enumerate_regular(data):
            h = embed_regular(data, spec)
            for Z in center_subgroups(data):
                for twist in data.diagram_automorphisms:
                    cfg = ModelConfig(data.id, Z, h, twist)
                    assert window_agrees(cfg)


@pytest.mark.parametrize("r", range(1, 9))
def test_ar_closed_form_matches_engine(r):
    data = alg(f"A{r}")
    for spec in enumerate_regular(data):
        h = embed_regular(data, spec)
        for Z in center_subgroups(data):
            cfg = ModelConfig(data.id, Z, h, data.identity_outer())
            assert ar_closed_form(r, Z.order, spec) == classify_levels(cfg), f"{spec.label} {Z.name}"


def test_ar_closed_form_rejects_bad_input():
    spec = enumerate_regular(alg("A3"))[0]
    with pytest.raises(InvalidConfigurationError):
        ar_closed_form(3, 3, spec)
    with pytest.raises(InvalidConfigurationError):
        ar_closed_form(2, 3, spec)


def test_twisted_reduction_on_d4():
    """Test that relabelling by an outer automorphism preserves the answer"""
    data = alg("D4")
    auts = [parse_outer(data, n) for n in ("w1", "w4", "w4inv")]
    for spec in enumerate_regular(data):
        h = embed_regular(data, spec)
        for Z in center_subgroups(data):
            for twist in data.diagram_automorphisms:
                for variant in (TheoryVariant.PLUS, MINUS):
                    cfg = ModelConfig(data.id, Z, h, twist, variant)
                    for aut in auts:
                        assert twisted_reduction_check(cfg, aut)


def test_related_config_conjugates_the_twist():
    data = alg("D4")
    cfg = config("D4", "Z1", twist="w1")
    image, swap = related_config(cfg, parse_outer(data, "w4"))
    assert image.twist.name == "w2"
    assert image.Z.name == "Zdiag"
    assert not swap
    _, swap = related_config(config("D4", twist="w1"), parse_outer(data, "w1"))
    assert swap


def test_semisimple_precheck():
    cfg = config("A5", "Z3", regular("A5", "2A2"))
    check = semisimple_precheck(cfg)
    assert check.anomalous_ideals == ()
    assert check.levels == LevelSet.multiples(3)
    assert len(check.ideal_levels) == 2


def test_classify_many_keeps_order():
    data = alg("A5")
    configs = [ModelConfig(data.id, Z, full_embedding(data), data.identity_outer()) for Z in center_subgroups(data)]
    assert classify_many(configs, workers=4) == [classify_levels(c) for c in configs]


# Properties over the catalog


def _variants(data):
    return (TheoryVariant.PLUS, MINUS) if data.id.is_d_even else (TheoryVariant.PLUS,)


def _pair_phase(data, variant, twist, point, m_vector):
    image = twist.apply(point)
    diff = data.center_element(point - image)
    trace = LinearPhase(-2 * data.inner(m_vector, image), 0)
    return bihom_linear(data, variant, diff, data.center_element(m_vector)) + trace


@pytest.mark.parametrize("alg_id", catalog(8), ids=str)
def test_phases_ignore_the_coroot_representative(alg_id):
    """Test 1000 random coroot shifts of M~ and M never change a pair phase"""
    data = build_algebra(alg_id)
    rng = random.Random(f"shift-{alg_id}")

    def shift():
        q = LatticeVector.zero(data.rank)
        for coroot in data.simple_coroots:
            q = q + coroot * rng.randint(-3, 3)
        return q

    for _ in range(1000):
        z = rng.choice(data.center_elements)
        m = rng.choice(data.center_elements)
        twist = rng.choice(data.diagram_automorphisms)
        variant = rng.choice(_variants(data))
        point, m_vector = z.rep + shift(), m.rep + shift()
        assert data.center_element(point) == z
        assert data.center_element(m_vector) == m
        base = _pair_phase(data, variant, twist, z.rep, m.rep)
        moved = _pair_phase(data, variant, twist, point, m_vector)
        difference = LinearPhase(moved.slope - base.slope, moved.offset - base.offset)
        assert difference.solutions() == LevelSet.everything()


@pytest.mark.parametrize("alg_id", catalog(8), ids=str)
def test_bihomomorphism_is_additive_at_admissible_levels(alg_id):
    """Test c(z + w, u) = c(z, u) c(w, u) and c(u, z + w) = c(u, z) c(u, w) on the full center"""
    data = build_algebra(alg_id)
    elements = data.center_elements
    for variant in _variants(data):
        rule = admissible_levels(data, full_center(data), variant)
        levels = [k for k in range(-8, 9) if rule.admits(k)]
        for z in elements:
            for w in elements:
                total = data.center_add(z, w)
                for u in elements:
                    for k in levels:
                        left = bihom(data, variant, k, total, u)
                        right = bihom(data, variant, k, u, total)
                        assert left == bihom(data, variant, k, z, u) * bihom(data, variant, k, w, u)
                        assert right == bihom(data, variant, k, u, z) * bihom(data, variant, k, u, w)


@pytest.mark.parametrize("name", ["A3", "A4", "A5", "A6", "D4", "D5", "D6"])
def test_smaller_subalgebras_are_never_more_anomalous(name):
    """Test that deleting a simple root of h only enlarges the anomaly-free levels"""
    data = alg(name)
    for spec in enumerate_regular(data):
        parent = embed_regular(data, spec)
        children = [embed_regular(data, child) for child in sub_specs(data, spec)]
        for Z in center_subgroups(data):
            for twist in data.diagram_automorphisms:
                for variant in _variants(data):
                    levels = classify_levels(ModelConfig(data.id, Z, parent, twist, variant))
                    for child in children:
                        child_levels = classify_levels(ModelConfig(data.id, Z, child, twist, variant))
                        assert levels.is_subset_of(child_levels), f"{spec.label} > {child.label} {Z.name} {twist}"
