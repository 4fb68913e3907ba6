"""
Tests for labels, regular subalgebra enumeration, embeddings and
center intersections
"""

import pytest

from cosetanomaly.errors import InsufficientEmbeddingDataError, InvalidConfigurationError, SubalgebraParseError
from cosetanomaly.liealg import build_algebra, full_center, parse_algebra, parse_outer
from cosetanomaly.subalg import (
    IdealType,
    apply_automorphism_to_spec,
    dynkin_index,
    embed_regular,
    enumerate_regular,
    extended_diagram,
    format_label,
    full_embedding,
    ideal_embeddings,
    intersection_points,
    parse_ideal_sum,
    regular_labels,
    sub_specs,
    subgroup_intersection_classes,
)


def alg(name):
    return build_algebra(parse_algebra(name))


def specs_labelled(data, label):
    return [s for s in enumerate_regular(data) if s.label == label]


def test_parse_and_format_labels():
    """Test that sums are parsed, sorted and printed canonically"""
    types = parse_ideal_sum("2A1+A3")
    assert types == (IdealType("A", 3), IdealType("A", 1), IdealType("A", 1))
    assert format_label(types) == "A3+2A1"
    assert format_label(parse_ideal_sum("D2+D3+A1")) == "A1+D3+D2"
    assert format_label(parse_ideal_sum("e6")) == "e6"
    for bad in ("", "A", "2", "A1++A2", "0A1", "Q3"):
        with pytest.raises(SubalgebraParseError):
            parse_ideal_sum(bad)


def test_iso_types():
    assert format_label(IdealType("D", 2).iso_types()) == "2A1"
    assert format_label(IdealType("D", 3).iso_types()) == "A3"
    assert IdealType("D", 3).center_order == 4
    assert IdealType("A", 2).center_order == 3


def test_a4_regular_labels():
    """Test that regular subalgebras of A4 are the partitions of 5"""
    assert set(regular_labels(alg("A4"))) == {"A4", "A3", "A2+A1", "A2", "2A1", "A1"}


def test_a5_regular_labels():
    assert set(regular_labels(alg("A5"))) == {
        "A5", "A4", "A3+A1", "A3", "2A2", "A2+A1", "A2", "3A1", "2A1", "A1",
    }


def test_enumeration_starts_with_the_full_algebra():
    """Test the full algebra is listed first, also when a regular subalgebra has the same rank"""
    for name in ("A3", "B3", "C3", "B4", "g2", "D4", "e6"):
        data = alg(name)
        first = enumerate_regular(data)[0]
        assert first.rank == data.rank
        assert first.label == data.name


def test_d4_regular_labels_and_choices():
    """Test the D-series labels of D4 and its two inequivalent 2A1 and A3"""
    d4 = alg("D4")
    assert set(regular_labels(d4)) == {"D4", "A3", "D3", "A2", "2A1", "D2", "A1", "A1+D2", "2D2"}
    assert sorted(s.embedding_choice for s in specs_labelled(d4, "2A1")) == [1, 2]
    assert sorted(s.embedding_choice for s in specs_labelled(d4, "A3")) == [1, 2]
    assert [s.embedding_choice for s in specs_labelled(d4, "D2")] == [1]
    assert specs_labelled(d4, "2A1")[1].display_label == "2A1@2"
    assert specs_labelled(d4, "D2")[0].iso_label == "2A1"


def test_d5_regular_labels():
    labels = set(regular_labels(alg("D5")))
    assert {"D5", "D4", "A4", "D3+D2", "A1+D3", "A2+D2", "2D2", "A1+D2", "A2+A1"} <= labels


def test_e6_regular_labels():
    labels = set(regular_labels(alg("e6")))
    assert {"e6", "D5", "A5+A1", "3A2", "D4", "A5", "2A2+A1", "2A2", "A2", "A1"} <= labels
    assert not any(label.startswith("D6") or "A6" in label for label in labels)


def test_regular_embedding_has_one_coroot_per_root():
    data = alg("D5")
    for spec in enumerate_regular(data):
        emb = embed_regular(data, spec)
        assert len(emb.cartan_basis) == spec.rank
        assert sum(len(c) for c in emb.ideal_coroots) == spec.rank
        assert len(ideal_embeddings(data, emb)) == len(spec.components)


def test_sub_specs_drop_one_root():
    data = alg("A4")
    full = enumerate_regular(data)[0]
    labels = {s.label for s in sub_specs(data, full)}
    assert labels == {"A3", "A2+A1"}


def test_extended_diagram():
    data = alg("A3")
    diagram = extended_diagram(data)
    assert len(diagram.nodes) == 4
    assert sum(1 for node in diagram.nodes if node.is_lowest) == 1
    assert len(diagram.without_lowest().nodes) == 3


def test_dynkin_indices_of_regular_subalgebras():
    """Test index 1 for long roots and 2 for short roots of B3"""
    b3 = alg("B3")
    indices = {dynkin_index(b3, embed_regular(b3, s), 0) for s in specs_labelled(b3, "A1")}
    assert indices == {1, 2}
    d4 = alg("D4")
    for spec in enumerate_regular(d4):
        emb = embed_regular(d4, spec)
        assert all(dynkin_index(d4, emb, i) == 1 for i in range(len(emb.ideal_types)))
    with pytest.raises(InsufficientEmbeddingDataError):
        dynkin_index(d4, full_embedding(d4), 3)


def test_full_algebra_meets_every_class():
    for name in ("A5", "D4", "e6", "e7"):
        data = alg(name)
        points = intersection_points(data, full_embedding(data), full_center(data))
        assert len(points) == data.center_order


def test_d4_intersections_tell_embeddings_apart():
    """Test the center classes met by the three 2A1 subalgebras of D4"""
    d4 = alg("D4")

    def logs(spec):
        return {e.log for e in subgroup_intersection_classes(d4, embed_regular(d4, spec))}

    first, second = specs_labelled(d4, "2A1")
    assert logs(first) == {(0, 0), (1, 0)}
    assert logs(second) == {(0, 0), (1, 1)}
    assert logs(specs_labelled(d4, "D2")[0]) == {(0, 0), (0, 1)}
    assert logs(specs_labelled(d4, "A1+D2")[0]) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert logs(specs_labelled(d4, "A1")[0]) == {(0, 0)}


def test_intersection_points_lie_in_the_subalgebra():
    """Test that every returned point is in its class and in the span of the coroots"""
    from cosetanomaly.quadlattice import in_rational_span

    for name in ("A5", "D5", "e6"):
        data = alg(name)
        for spec in enumerate_regular(data):
            emb = embed_regular(data, spec)
            for element, point in intersection_points(data, emb, full_center(data)):
                assert data.center_element(point) == element
                assert in_rational_span(point, emb.cartan_basis)


def test_short_a1_in_a_r_misses_the_center():
    data = alg("A3")
    for spec in specs_labelled(data, "A1"):
        assert [e.log for e in subgroup_intersection_classes(data, embed_regular(data, spec))] == [(0,)]


def test_automorphism_swaps_d4_embeddings():
    d4 = alg("D4")
    w1 = parse_outer(d4, "w1")
    first, second = specs_labelled(d4, "2A1")
    assert apply_automorphism_to_spec(d4, w1, first).embedding_choice == 2
    assert apply_automorphism_to_spec(d4, w1, second).embedding_choice == 1
    w4 = parse_outer(d4, "w4")
    labels = {apply_automorphism_to_spec(d4, w4, s).label for s in (first, second)}
    assert labels <= {"2A1", "D2"}


def test_second_embedding_requires_d_even():
    from dataclasses import replace

    a3 = alg("A3")
    spec = specs_labelled(a3, "2A1")[0]
    with pytest.raises(InvalidConfigurationError):
        embed_regular(a3, replace(spec, embedding_choice=2))
