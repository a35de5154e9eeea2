"""Locally constant algebra sections: ring laws, restriction, the
invertibility criterion checked against its definitional enumeration."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sheafforms import AlgebraSection, NotNowhereZero, OpenMismatch, RationalField
from sheafforms.oracles import (
    discrete_pair_space,
    enumerate_algebra_sections,
    fixture_spaces,
    sierpinski_space,
    three_point_space,
)
from sheafforms import PrimeField

Q = RationalField()
F3 = PrimeField(3)


def section(space, values, open_ref=None):
    u = space.x_ref if open_ref is None else open_ref
    return AlgebraSection(space, Q, u, tuple(Fraction(v) for v in values))


def test_value_count_must_match_components():
    space = discrete_pair_space()
    with pytest.raises(OpenMismatch):
        AlgebraSection(space, Q, space.x_ref, (Fraction(1),))


def test_constant_and_unit():
    space = sierpinski_space()
    one = AlgebraSection.unit(space, Q, space.x_ref)
    assert one.values == (Fraction(1),)
    zero = AlgebraSection.zero(space, Q, space.x_ref)
    assert (one * zero).is_zero()


fractions3 = st.tuples(
    st.fractions(min_value=-9, max_value=9, max_denominator=7),
    st.fractions(min_value=-9, max_value=9, max_denominator=7),
)


@given(fractions3, fractions3, fractions3)
def test_ring_laws(a_vals, b_vals, c_vals):
    space = discrete_pair_space()
    a, b, c = (section(space, v) for v in (a_vals, b_vals, c_vals))
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    assert (-(-a)) == a


def test_mismatched_opens_rejected():
    space = sierpinski_space()
    full = section(space, [1])
    small = section(space, [2], space.ref(("a",)))
    with pytest.raises(OpenMismatch):
        _ = full + small


def test_restriction_reindexes_components():
    space = discrete_pair_space()
    s = section(space, [2, 5])
    only_b = s.restrict(space.ref(("b",)))
    assert only_b.values == (Fraction(5),)


def test_restriction_is_functorial():
    # restricting in two steps equals restricting once, all chains
    space = three_point_space()
    s = AlgebraSection(
        space, Q, space.x_ref, tuple(Fraction(k + 1) for k in
        range(len(space.components_of(space.x_ref))))
    )
    for v in range(len(space.opens)):
        if not set(space.opens[v]) <= set(space.opens[space.x_ref]):
            continue
        sv = s.restrict(v)
        for w in range(len(space.opens)):
            if set(space.opens[w]) <= set(space.opens[v]):
                assert sv.restrict(w) == s.restrict(w)


def test_restriction_commutes_with_arithmetic():
    space = discrete_pair_space()
    a = section(space, [1, 2])
    b = section(space, [3, 4])
    v = space.ref(("a",))
    assert (a + b).restrict(v) == a.restrict(v) + b.restrict(v)
    assert (a * b).restrict(v) == a.restrict(v) * b.restrict(v)


class TestNowhereZero:
    def test_fast_route_agrees_with_enumeration_everywhere(self):
        # both definitions, on every section of A over every open, GF(3)
        for space in fixture_spaces():
            for u in range(len(space.opens)):
                for sec in enumerate_algebra_sections(space, F3, u):
                    assert sec.is_nowhere_zero() == sec.is_nowhere_zero_enumerated()

    def test_mixed_section_is_not_nowhere_zero(self):
        space = discrete_pair_space()
        s = section(space, [1, 0])
        assert not s.is_nowhere_zero()
        assert not s.is_nowhere_zero_enumerated()
        # yet it is not the zero section either
        assert not s.is_zero()

    def test_invert_gives_exact_inverse(self):
        space = discrete_pair_space()
        s = section(space, [2, -3])
        inv = s.invert()
        assert (s * inv).values == (Fraction(1), Fraction(1))

    def test_invert_refuses_vanishing_component(self):
        space = discrete_pair_space()
        s = section(space, [1, 0])
        with pytest.raises(NotNowhereZero) as err:
            s.invert()
        assert err.value.witness["component"] == 1

    def test_invertible_iff_nowhere_zero_gf3(self):
        space = sierpinski_space()
        for u in range(len(space.opens)):
            for sec in enumerate_algebra_sections(space, F3, u):
                try:
                    sec.invert()
                    inverted = True
                except NotNowhereZero:
                    inverted = False
                assert inverted == sec.is_nowhere_zero_enumerated()

    def test_empty_open_section_is_vacuously_invertible(self):
        space = sierpinski_space()
        empty = AlgebraSection(space, Q, space.empty_ref, ())
        assert empty.is_nowhere_zero()
        assert empty.is_nowhere_zero_enumerated()
        empty.invert()


def test_repr_uses_field_format():
    space = sierpinski_space()
    s = section(space, [Fraction(1, 2)])
    assert "1/2" in repr(s)
