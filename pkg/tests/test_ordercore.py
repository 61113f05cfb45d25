from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chainforge.ordercore import (
    CantorType,
    Fin,
    IntervalType,
    OmegaPlusLim,
    OmegaStarLim,
    Sum,
    condensation,
    cuts,
    format_expr,
    is_boolean,
    iso_truncations,
    lex_sum,
    parse_expr,
    truncate,
)


def test_cuts_of_finite_order():
    cs = cuts("abc")
    assert len(cs) == 2
    assert cs[0].lower == ("a",) and cs[0].upper == ("b", "c")
    assert all(c.is_jump and not c.is_gap for c in cs)


def test_cuts_errors():
    with pytest.raises(ValueError):
        cuts("a")
    with pytest.raises(ValueError):
        cuts("aa")


def test_fin_needs_positive_size():
    with pytest.raises(ValueError):
        Fin(0)


def test_truncate_counts():
    assert len(truncate(Fin(5), 3)) == 5
    assert len(truncate(OmegaStarLim(), 4)) == 5
    assert len(truncate(OmegaPlusLim(), 4)) == 5
    assert len(truncate(CantorType(), 3)) == 16
    assert len(truncate(IntervalType(), 6)) == 7


def test_truncate_ascending():
    for t in (Fin(4), OmegaStarLim(), OmegaPlusLim(), CantorType(), IntervalType()):
        for d in (1, 2, 4):
            pts = truncate(t, d)
            assert pts == sorted(pts)
            assert len(pts) == len(set(pts))
            assert all(Fraction(0) <= p <= Fraction(1) for p in pts)


def test_omega_star_accumulates_at_min():
    pts = truncate(OmegaStarLim(), 6)
    diffs = [b - a for a, b in zip(pts, pts[1:])]
    assert pts[0] == 0
    assert diffs[0] < diffs[-1]  # crowding toward the minimum


def test_lex_sum_merges_adjacent_finites():
    t = lex_sum(range(3), [Fin(2), Fin(3), OmegaStarLim()])
    assert t == Sum((Fin(5), OmegaStarLim()))


def test_lex_sum_flattens_and_unwraps():
    inner = lex_sum(range(2), [OmegaStarLim(), Fin(1)])
    t = lex_sum(range(2), [inner, Fin(2)])
    assert t == Sum((OmegaStarLim(), Fin(3)))
    assert lex_sum(range(2), [Fin(1), Fin(1)]) == Fin(2)


def test_lex_sum_length_mismatch():
    with pytest.raises(ValueError):
        lex_sum(range(2), [Fin(1)])


def test_iso_truncations():
    assert iso_truncations(OmegaStarLim(), OmegaStarLim())
    assert not iso_truncations(OmegaStarLim(), Fin(3))
    assert not iso_truncations(CantorType(), IntervalType())


def test_is_boolean():
    assert is_boolean(Fin(3))
    assert is_boolean(CantorType())
    assert is_boolean(OmegaStarLim())
    assert not is_boolean(IntervalType())
    assert is_boolean(Sum((Fin(2), CantorType())))
    assert not is_boolean(Sum((Fin(2), IntervalType())))


def test_condensation_of_atoms():
    (c,) = condensation(Fin(4))
    assert c.size == 4
    (c,) = condensation(OmegaStarLim())
    assert c.size == "omega"
    cs = condensation(CantorType(), depth=2)
    assert [c.size for c in cs] == [1, 2, 2, 2, 1]
    assert cs[0].position == 0 and cs[-1].position == 1


def test_condensation_merges_countable_runs():
    # fin(2) + omega* + fin(1) collapses to a single countable class
    t = Sum((Fin(2), OmegaStarLim(), Fin(1)))
    (c,) = condensation(t)
    assert c.size == "omega"


def test_condensation_absorbs_boundary_of_cantor():
    t = Sum((Fin(3), CantorType()))
    cs = condensation(t, depth=1)
    # the leading finite part merges into the cantor endpoint class
    assert cs[0].size == 4
    assert [c.size for c in cs[1:]] == [2, 1]


def test_condensation_trailing_countable_part():
    t = Sum((CantorType(), Fin(2)))
    cs = condensation(t, depth=1)
    assert cs[-1].size == 3


exprs = st.recursive(
    st.one_of(
        st.integers(min_value=1, max_value=5).map(Fin),
        st.sampled_from([OmegaStarLim(), OmegaPlusLim(), CantorType(), IntervalType()]),
    ),
    lambda sub: st.lists(sub, min_size=2, max_size=4).map(
        lambda ps: lex_sum(range(len(ps)), ps)
    ),
    max_leaves=6,
)


@given(exprs)
def test_format_parse_roundtrip(t):
    assert parse_expr(format_expr(t)) == t


@given(exprs, st.integers(min_value=1, max_value=4))
def test_truncate_well_formed(t, d):
    pts = truncate(t, d)
    assert pts == sorted(pts)
    assert len(pts) == len(set(pts))


def test_parse_examples():
    assert parse_expr("fin(3)") == Fin(3)
    assert parse_expr("sum(fin(1), cantor)") == Sum((Fin(1), CantorType()))
    with pytest.raises(ValueError):
        parse_expr("zeta")
