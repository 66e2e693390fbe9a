from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from c13tamagawa.exactnum import vp
from c13tamagawa.family import (
    DegenerateParameterError,
    RationalPointError,
    bad_support,
    build,
    build_inverted,
    cubic_value,
    j_formula,
    sextic,
)

params = st.builds(Fraction, st.integers(-60, 60), st.integers(1, 40)).filter(lambda t: t not in (0, 1))


def _d_of_t(t):
    try:
        return sextic(t).d
    except DegenerateParameterError:
        return 1


class TestSextic:
    def test_examples(self):
        s = sextic(2)
        assert (s.D, s.d, s.m) == (17, 17, 1)
        assert sextic(-1).D == 17
        assert (sextic(3).D, sextic(3).d) == (313, 313)
        assert sextic(Fraction(1, 2)).D == Fraction(17, 64)

    @given(params)
    def test_square_class(self, t):
        s = sextic(t)
        assert s.d * s.m**2 == s.D
        assert s.D > 0


class TestBuild:
    def test_e2(self):
        fc = build(2)
        assert fc.d == 17
        assert fc.s == fc.field.sqrt_d
        assert fc.model.j == Fraction(-60698457, 40960)

    def test_triple(self):
        curves = [build(t) for t in (-1, Fraction(1, 2), 2)]
        assert {fc.d for fc in curves} == {17}
        assert len({fc.model.j.x for fc in curves}) == 1

    def test_degenerate(self):
        for t in (0, 1):
            with pytest.raises(DegenerateParameterError):
                build(t)
            with pytest.raises(DegenerateParameterError):
                build_inverted(t)

    @given(params)
    def test_structure(self, t):
        assume(_d_of_t(t) != 1)
        fc = build(t)
        assert fc.s * fc.s == sextic(t).D
        assert fc.model.j == j_formula(t)
        assert fc.model.point_order(fc.marked_point, 20) == 13
        assert fc.d not in (1, 13)

    @given(params)
    def test_discriminant_factors(self, t):
        assume(_d_of_t(t) != 1)
        fc = build(t)
        # the discriminant is t^13 (t-1)^13 (t^3-4t^2+t+1) times a factor free of t
        g = 2 * fc.model.discriminant / (t**13 * (t - 1) ** 13 * cubic_value(t))
        assert g.norm() != 0

    @given(params)
    def test_sign_gives_conjugate(self, t):
        assume(_d_of_t(t) != 1)
        plus, minus = build(t), build(t, sign=-1)
        assert minus.model.a1 == plus.model.a1.conj()
        assert minus.model.j == plus.model.j


class TestInverted:
    @given(params)
    def test_isomorphic(self, t):
        assume(_d_of_t(t) != 1)
        inv, fc = build_inverted(t), build(t)
        assert inv.model.j == fc.model.j
        assert inv.model == fc.model.transform(-(t**7))
        assert inv.model.point_order(inv.marked_point, 20) == 13

    def test_minus_one_denominators(self):
        inv = build_inverted(-1)
        for a in inv.model.ainvs:
            for q in (a.x, a.y):
                assert q.denominator & (q.denominator - 1) == 0  # a power of two

    def test_integral_where_t_has_poles(self):
        for t in (Fraction(1, 3), Fraction(2, 9), Fraction(-5, 27)):
            inv = build_inverted(t)
            for a in inv.model.ainvs:
                assert vp(a.x, 3) >= 0 and vp(a.y, 3) >= 0


class TestJFormula:
    def test_values(self):
        assert j_formula(2) == Fraction(-60698457, 40960)
        assert j_formula(2) == Fraction(27 * 131**3, -(2**13) * 5)
        assert j_formula(-1) == j_formula(2)
        assert j_formula(3) == build(3).model.j

    def test_poles(self):
        with pytest.raises(ZeroDivisionError):
            j_formula(0)


class TestBadSupport:
    def test_examples(self):
        assert bad_support(2) == {2, 5, 13}
        assert bad_support(3) == {2, 3, 5, 13}
        assert bad_support(Fraction(1, 2)) == {2, 5, 13}

    @given(params)
    def test_contains_j_denominator(self, t):
        den = j_formula(t).denominator
        for p in bad_support(t):
            den //= p ** vp(den, p) if den % p == 0 else 1
        assert den == 1


def test_rational_square_rejected(monkeypatch):
    # D(t) is never a rational square for t != 0, 1, so force one
    import c13tamagawa.family as family

    monkeypatch.setattr(family, "sextic", lambda t: family.SexticData(Fraction(t), Fraction(4), 1, Fraction(2)))
    with pytest.raises(RationalPointError):
        family.build(5)
