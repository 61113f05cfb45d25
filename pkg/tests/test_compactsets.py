from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chainforge import ordercore
from chainforge.compactsets import (
    CantorPiece,
    CompactDescriptor,
    EmptyDescriptorError,
    GeomSeq,
    Interval,
    Point,
    UnsupportedDescriptorError,
    classify,
    format_descriptor,
    min_nonisolated,
    nowhere_dense,
    order_type,
    parse_descriptor,
    sample,
)

F = Fraction


def test_atom_validation():
    with pytest.raises(ValueError):
        Interval(F(1), F(1))
    with pytest.raises(ValueError):
        GeomSeq(F(0), F(1), F(2))
    with pytest.raises(ValueError):
        GeomSeq(F(0), F(0), F(1, 2))


def test_geoseq_direction_and_terms():
    down = GeomSeq(F(0), F(1), F(1, 2))
    assert down.descending
    assert down.term(2) == F(1, 4)
    up = GeomSeq(F(1), F(0), F(1, 2))
    assert not up.descending
    assert up.term(1) == F(1, 2)


def test_empty_descriptor_rejected():
    with pytest.raises(EmptyDescriptorError):
        min_nonisolated(CompactDescriptor(()))


def test_overlap_rejected():
    d = parse_descriptor("union(interval(0,2), interval(1,3))")
    with pytest.raises(UnsupportedDescriptorError):
        min_nonisolated(d)
    d = parse_descriptor("union(point(1/2), cantor(0,1))")
    with pytest.raises(UnsupportedDescriptorError):
        min_nonisolated(d)


def test_point_absorption():
    d = parse_descriptor("union(point(0), geoseq(0,1,1/2))")
    assert order_type(d) == ordercore.OmegaStarLim()
    d = parse_descriptor("union(point(1/2), interval(0,1))")
    assert order_type(d) == ordercore.IntervalType()


def test_min_nonisolated_examples():
    assert min_nonisolated(parse_descriptor("geoseq(0,1,1/2)"))
    assert min_nonisolated(parse_descriptor("interval(0,1)"))
    assert min_nonisolated(parse_descriptor("cantor(0,1)"))
    assert not min_nonisolated(parse_descriptor("point(0)"))
    assert not min_nonisolated(parse_descriptor("geoseq(1,0,1/2)"))  # ascending
    assert not min_nonisolated(parse_descriptor("union(point(-1), geoseq(0,1,1/2))"))


def test_min_nonisolated_matches_sample_oracle():
    cases = [
        "geoseq(0,1,1/2)",
        "geoseq(1,0,1/2)",
        "union(point(-1), cantor(0,1))",
        "union(points(0,1), interval(2,3))",
        "cantor(-1,4)",
    ]
    for text in cases:
        d = parse_descriptor(text)
        # oracle: the gap above the sampled minimum shrinks as depth grows
        gaps = []
        for depth in (2, 4, 6):
            pts = sample(d, depth)
            gaps.append(pts[1] - pts[0])
        accumulation = gaps[-1] < gaps[0]
        assert min_nonisolated(d) == accumulation, text


def test_nowhere_dense():
    assert nowhere_dense(parse_descriptor("cantor(0,1)"))
    assert nowhere_dense(parse_descriptor("union(point(0), geoseq(1,2,1/3))"))
    assert not nowhere_dense(parse_descriptor("union(cantor(0,1), interval(2,3))"))


def test_sample_sorted():
    d = parse_descriptor("union(point(-2), geoseq(0,1,1/2), cantor(2,3))")
    for depth in (1, 2, 3):
        pts = sample(d, depth)
        assert pts == sorted(pts)
        assert len(pts) == len(set(pts))


def test_order_type_truncation_matches_sample_counts():
    cases = [
        "geoseq(0,1,1/2)",
        "cantor(0,1)",
        "union(point(-1), cantor(0,1))",
        "union(geoseq(0,1,1/2), points(2,3))",
    ]
    for text in cases:
        d = parse_descriptor(text)
        t = order_type(d)
        for depth in (1, 2, 3):
            assert len(ordercore.truncate(t, depth)) == len(sample(d, depth)), text


def test_classify_examples():
    assert classify(parse_descriptor("point(0)"))["class"] == "neither"
    assert classify(parse_descriptor("interval(0,1)"))["class"] == "I_c"
    assert classify(parse_descriptor("cantor(0,1)"))["class"] == "II_c"
    assert (
        classify(parse_descriptor("union(geoseq(0,1,1/2), interval(2,3))"))["class"]
        == "I_c"
    )


@st.composite
def descriptors(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    atoms = []
    base = F(0)
    for _ in range(n):
        kind = draw(st.sampled_from(["point", "interval", "geoseq_down", "geoseq_up", "cantor"]))
        width = F(draw(st.integers(min_value=1, max_value=3)))
        if kind == "point":
            atoms.append(Point(base))
        elif kind == "interval":
            atoms.append(Interval(base, base + width))
        elif kind == "geoseq_down":
            atoms.append(GeomSeq(base, base + width, F(1, 2)))
        elif kind == "geoseq_up":
            atoms.append(GeomSeq(base + width, base, F(1, 2)))
        else:
            atoms.append(CantorPiece(base, base + width))
        base = base + width + F(draw(st.integers(min_value=1, max_value=2)))
    return CompactDescriptor(tuple(atoms))


@given(descriptors())
def test_roundtrip_and_consistency(d):
    assert parse_descriptor(format_descriptor(d)) == d
    cat = classify(d)
    assert cat["class"] in ("neither", "I_c", "II_c")
    if cat["class"] == "II_c":
        assert cat["nowhere_dense"] and cat["min_nonisolated"]


@given(descriptors())
def test_boolean_iff_nowhere_dense(d):
    t = order_type(d)
    assert ordercore.is_boolean(t) == nowhere_dense(d)
