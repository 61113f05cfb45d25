from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chainforge.qline import (
    Window,
    coinitial_witness,
    denominator_class,
    format_rat,
    jclass,
    parse_rat,
    rationals_in,
    window_members,
)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=60)


def test_denominator_class_examples():
    assert denominator_class(1) == 0
    assert denominator_class(2) == 0
    assert denominator_class(4) == 0
    assert denominator_class(6) == 0  # smallest prime factor 2
    assert denominator_class(3) == 1
    assert denominator_class(9) == 1
    assert denominator_class(15) == 1
    assert denominator_class(5) == 2
    assert denominator_class(7) == 3
    assert denominator_class(49) == 3


def test_denominator_class_rejects_nonpositive():
    with pytest.raises(ValueError):
        denominator_class(0)


def test_jclass_examples():
    assert jclass(Fraction(3)) == 0
    assert jclass(Fraction(-7, 2)) == 0
    assert jclass(Fraction(1, 3)) == 1
    assert jclass(Fraction(2, 15)) == 1
    assert jclass(Fraction(4, 5)) == 2


@given(rats)
def test_jclass_shift_invariant(q):
    assert jclass(q) == jclass(q + 1) == jclass(q - 3)


@given(st.integers(min_value=0, max_value=4), rats)
def test_classes_are_coinitial(n, bound):
    w = coinitial_witness(n, bound)
    assert w < bound
    assert jclass(w) == n


def test_classes_partition_a_sample():
    qs = list(rationals_in(Fraction(0), Fraction(1), 30))
    for q in qs:
        assert jclass(q) >= 0
    # every class up to 3 is inhabited inside (0, 1)
    seen = {jclass(q) for q in qs}
    assert {0, 1, 2, 3} <= seen


def test_rationals_in_reduced_and_unique():
    qs = list(rationals_in(Fraction(-1), Fraction(1), 12))
    assert len(qs) == len(set(qs))
    for q in qs:
        assert Fraction(-1) < q < Fraction(1)
        assert q.denominator <= 12


def test_rationals_in_denominator_major_order():
    qs = list(rationals_in(Fraction(0), Fraction(1), 4))
    assert qs == [
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(2, 3),
        Fraction(1, 4),
        Fraction(3, 4),
    ]


def test_window_contains():
    w = Window(Fraction(0), Fraction(1), 4)
    assert w.contains(Fraction(1, 2))
    assert not w.contains(Fraction(0))  # open at the ends
    assert not w.contains(Fraction(1, 5))  # denominator too big
    assert Window(None, Fraction(0), 4).contains(Fraction(-100))


def test_window_rejects_empty():
    with pytest.raises(ValueError):
        Window(Fraction(1), Fraction(0), 4)


def test_window_members_sorted_and_classed():
    w = Window(Fraction(0), Fraction(2), 9)
    for n in range(3):
        ms = window_members(n, w)
        assert ms == sorted(ms)
        assert all(jclass(q) == n for q in ms)


def test_window_members_needs_bounded():
    with pytest.raises(ValueError):
        window_members(0, Window(None, Fraction(0), 4))


def test_coinitial_witness_canonical():
    # class 0: denominator 1 first, largest integer below the bound
    assert coinitial_witness(0, Fraction(0)) == Fraction(-1)
    assert coinitial_witness(0, Fraction(5, 2)) == Fraction(2)
    # class 1: denominator 3 first, largest third below the bound
    assert coinitial_witness(1, Fraction(0)) == Fraction(-1, 3)
    assert coinitial_witness(2, Fraction(1)) == Fraction(4, 5)


@given(rats)
def test_format_parse_roundtrip(q):
    assert parse_rat(format_rat(q)) == q


def test_format_integer_plain():
    assert format_rat(Fraction(4)) == "4"
    assert format_rat(Fraction(-3, 2)) == "-3/2"
