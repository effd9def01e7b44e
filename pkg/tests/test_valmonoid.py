from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from berkline import (
    ONE,
    ZERO,
    DomainError,
    Interval,
    MonomialMap,
    NotCollapsible,
    Piece,
    Val,
    collapse,
    concatenate,
    val_max,
    val_min,
)

exponents = st.fractions(max_denominator=64)
values = st.one_of(st.just(ZERO), exponents.map(Val.of))


def test_zero_and_one_constants():
    assert ZERO.is_zero
    assert not ONE.is_zero
    assert ONE.exponent == 0
    assert Val.zero() == ZERO
    assert Val.of(0) == ONE


def test_order_is_reversed_on_exponents():
    assert Val.of(2) < Val.of(1) < Val.of(0) < Val.of(-3)
    assert ZERO < Val.of(10**9)
    assert not Val.of(1) < Val.of(1)
    assert ZERO <= ZERO


def test_multiplication_adds_exponents_and_zero_absorbs():
    assert Val.of(Fraction(1, 2)) * Val.of(Fraction(1, 3)) == Val.of(Fraction(5, 6))
    assert ZERO * Val.of(7) == ZERO
    assert Val.of(7) * ZERO == ZERO
    assert Val.of(4) / Val.of(1) == Val.of(3)
    with pytest.raises(DomainError):
        Val.of(1) / ZERO


def test_power_rules():
    assert Val.of(3) ** 2 == Val.of(6)
    assert Val.of(3) ** Fraction(-1, 3) == Val.of(-1)
    assert ZERO ** 2 == ZERO
    assert ZERO ** 0 == ONE
    with pytest.raises(DomainError):
        ZERO ** -1


@given(exponents, exponents)
def test_order_anti_isomorphic_to_exponent_order(e1, e2):
    assert (Val.of(e1) <= Val.of(e2)) == (e1 >= e2)


@given(values, values, values)
def test_multiplication_monotone(a, b, c):
    if a <= b:
        assert a * c <= b * c


def test_val_max_min():
    assert val_max(Val.of(2), Val.of(1), ZERO) == Val.of(1)
    assert val_max() == ZERO
    assert val_min(Val.of(2), Val.of(1)) == Val.of(2)
    assert val_min(ZERO, ONE) == ZERO
    with pytest.raises(DomainError):
        val_min()


def test_interval_membership():
    iv = Interval(ZERO, Val.of(3))
    assert iv.contains(ZERO)
    assert iv.contains(Val.of(3))
    assert iv.contains(Val.of(10))
    assert not iv.contains(Val.of(2))
    with pytest.raises(DomainError):
        Interval(Val.of(0), Val.of(3))


def test_interval_open_ends():
    iv = Interval(Val.of(3), Val.of(1), lo_closed=False)
    assert not iv.contains(Val.of(3))
    assert iv.contains(Val.of(2))
    assert not iv.is_closed
    assert not iv.is_empty


def test_monomial_map_and_inverse():
    m = MonomialMap(Val.of(1), Fraction(2))
    assert m(Val.of(3)) == Val.of(7)
    assert m.inverse_at(Val.of(7)) == Val.of(3)
    assert m(ZERO) == ZERO
    with pytest.raises(DomainError):
        MonomialMap(ZERO, Fraction(1))
    with pytest.raises(DomainError):
        MonomialMap(ONE, Fraction(0)).inverse_at(ONE)


@given(exponents, st.fractions(max_denominator=8).filter(lambda q: q != 0), exponents)
def test_monomial_map_round_trip(coeff, power, x):
    m = MonomialMap(Val.of(coeff), power)
    assert m.inverse_at(m(Val.of(x))) == Val.of(x)


def test_concatenate_accepts_pairs_pieces_and_intervals():
    seg = concatenate([(ONE, Val.of(1)), Piece(Val.of(1), Val.of(2)), Interval(Val.of(3), Val.of(2))])
    assert len(seg.pieces) == 3
    assert seg.origin == (0, ONE)
    assert seg.endpoint == (2, Val.of(2))
    with pytest.raises(DomainError):
        concatenate([])


def test_junction_points_canonicalize_to_the_earlier_piece():
    seg = concatenate([(ONE, Val.of(-1)), (Val.of(-1), Val.of(2))])
    assert seg.canonical_point(1, Val.of(-1)) == (0, Val.of(-1))
    assert seg.canonical_point(1, Val.of(1)) == (1, Val.of(1))
    with pytest.raises(DomainError):
        seg.canonical_point(0, Val.of(5))


def test_collapse_straight_run_is_the_identity():
    seg = concatenate([(ONE, Val.of(-1)), (Val.of(-1), Val.of(-3))])
    cm = collapse(seg)
    assert cm.target == Interval(ONE, Val.of(-3))
    assert cm.forward(0, Val.of(Fraction(-1, 2))) == Val.of(Fraction(-1, 2))
    assert cm.forward(1, Val.of(-2)) == Val.of(-2)


def test_collapse_zigzag_inverts_the_backward_piece():
    # [1 -> u^-1] then back down to u^2: the image keeps growing.
    seg = concatenate([(ONE, Val.of(-1)), (Val.of(-1), Val.of(2))])
    cm = collapse(seg)
    assert cm.target == Interval(ONE, Val.of(-4))
    assert cm.forward(1, ONE) == Val.of(-2)
    assert cm.forward(1, Val.of(2)) == Val.of(-4)
    assert cm.backward(Val.of(-2)) == (1, ONE)
    # The junction value is shared and canonicalizes to the first piece.
    assert cm.forward(1, Val.of(-1)) == Val.of(-1)
    assert cm.backward(Val.of(-1)) == (0, Val.of(-1))


def test_collapse_decreasing_first_piece():
    seg = concatenate([(Val.of(2), ONE), (ONE, Val.of(3))])
    cm = collapse(seg)
    assert cm.target == Interval(Val.of(2), Val.of(-3))
    assert cm.forward(1, Val.of(3)) == Val.of(-3)


def test_collapse_rejects_zero_junctions():
    with pytest.raises(NotCollapsible):
        collapse(concatenate([(ZERO, ONE)]))
    with pytest.raises(NotCollapsible):
        collapse(concatenate([(ONE, Val.of(2)), (Val.of(2), ZERO)]))


def test_collapse_backward_outside_target():
    cm = collapse(concatenate([(ONE, Val.of(2))]))
    with pytest.raises(DomainError):
        cm.backward(Val.of(-1))
