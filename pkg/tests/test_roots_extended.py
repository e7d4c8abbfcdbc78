from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from strongcospec.errors import DomainError, UndefinedExtendedArithmetic
from strongcospec.extended import INF, ZERO_VALUE, ExtendedValue, as_point, ratfunc_eval_extended
from strongcospec.poly import ONE, T, IntPoly, RatFunc
from strongcospec.realroots import RealRoot, count_roots, isolate_real_roots

t_sym = sympy.Symbol("t")


def P(*coeffs):
    return IntPoly(coeffs)


def F(num, den=ONE):
    return RatFunc(num, den)


SQRT2 = isolate_real_roots(P(-2, 0, 1))[1]


# -- root isolation -----------------------------------------------------------


def test_isolate_examples():
    roots = isolate_real_roots(P(0, -2, 0, 1))
    assert len(roots) == 3
    assert [round(float(r), 12) for r in roots] == [round(-2**0.5, 12), 0.0, round(2**0.5, 12)]
    assert isolate_real_roots(P(1, 0, 1)) == []
    with pytest.raises(DomainError):
        isolate_real_roots(IntPoly())


@settings(max_examples=120, deadline=None)
@given(st.lists(st.integers(-8, 8), min_size=1, max_size=6), st.lists(st.integers(-3, 3), max_size=3))
def test_isolation_matches_sympy(roots, extra):
    p = IntPoly.from_roots(roots) * IntPoly(extra + [1]) if extra else IntPoly.from_roots(roots)
    ours = isolate_real_roots(p)
    theirs = sympy.Poly(list(reversed(p.coeffs)), t_sym).intervals()
    assert len(ours) == len(theirs)
    for r in ours:
        assert r.sign_of(p) == 0
    for x in set(roots):
        assert sum(r.sign_of(IntPoly((-x, 1))) == 0 for r in ours) == 1
    assert count_roots(p) == len(ours)


def test_refinement_keeps_the_root():
    roots = isolate_real_roots(IntPoly.from_roots([0, 1, -3]))
    for r, x in zip(roots, [-3, 0, 1]):
        r.refine_to(Fraction(1, 2**20))
        assert r.lo <= x <= r.hi and r.hi - r.lo <= Fraction(1, 2**20)


def test_sign_of_at_algebraic_point():
    r = RealRoot(P(-2, 0, 1), Fraction(1), Fraction(2))
    assert r.sign_of(P(-2, 0, 1)) == 0
    assert r.sign_of(P(-1, 1)) == 1
    assert r.sign_of(P(-3, 2)) == -1  # 2*sqrt2 - 3 < 0
    assert r.sign_of(P(-2, 0, 1) * P(5, 1)) == 0


def test_compare_and_same_as():
    a = isolate_real_roots(P(-2, 0, 1))[1]
    b = RealRoot(P(-2, 0, 1) * P(-3, 1), Fraction(1), Fraction(2))
    assert a.same_as(b) and a.compare(b) == 0
    c = isolate_real_roots(P(-3, 0, 1))[1]
    assert a.compare(c) == -1 and c.compare(a) == 1


def test_approx_precision():
    with mpmath.workprec(200):
        assert abs(SQRT2.approx(160) - mpmath.sqrt(2)) < mpmath.mpf(2) ** -160


# -- extended conventions ---------------------------------------------------


def test_zero_over_anything_is_zero():
    assert (ZERO_VALUE / ExtendedValue.finite(3)).equals(0)
    assert (ZERO_VALUE / INF).equals(0)
    assert (ZERO_VALUE / ZERO_VALUE).equals(0)


def test_infinity_absorbs_addition():
    assert (INF + ExtendedValue.finite(5)).is_inf
    assert (ExtendedValue.finite(-2) + INF).is_inf
    assert (INF + INF).is_inf


def test_finite_over_infinity_is_zero():
    assert (ExtendedValue.finite(7) / INF).equals(0)


def test_nonzero_over_zero_is_infinity():
    assert (ExtendedValue.finite(-1) / ZERO_VALUE).is_inf


def test_outside_conventions_rejected():
    with pytest.raises(UndefinedExtendedArithmetic):
        INF / INF
    with pytest.raises(UndefinedExtendedArithmetic):
        INF / ZERO_VALUE
    with pytest.raises(UndefinedExtendedArithmetic):
        INF * ExtendedValue.finite(2)
    with pytest.raises(UndefinedExtendedArithmetic):
        INF.sign()


def test_infinity_is_unsigned():
    assert (-INF).is_inf
    assert INF.equals(INF) and not INF.equals(0)


def test_ratfunc_eval_extended_examples():
    f = F(P(-1, 0, 1), T)
    assert ratfunc_eval_extended(f, 1).equals(0)
    assert ratfunc_eval_extended(f, 0).is_inf
    assert ratfunc_eval_extended(f, 2).equals(Fraction(3, 2))
    assert ratfunc_eval_extended(f, 2.5).equals(Fraction(21, 10))


def test_float_points_promoted_exactly():
    assert as_point(0.1).lo == Fraction(0.1)


def test_algebraic_point_arithmetic_is_exact():
    # at sqrt2: (t^2 - 2)/t = 0 and t^2 = 2
    assert ratfunc_eval_extended(F(P(-2, 0, 1), T), SQRT2).is_zero
    half = ratfunc_eval_extended(F(T * T), SQRT2)
    assert half.equals(2)
    x = ratfunc_eval_extended(F(T), SQRT2)
    y = ratfunc_eval_extended(F(P(0, 0, 0, 1), P(2)), SQRT2)  # t^3/2 = sqrt2
    assert x.equals(y)
    assert (x - y).is_zero
    assert (x / ExtendedValue.finite(0)).is_inf
    assert (x * x).equals(2)
    assert abs(float(x) - 2**0.5) < 1e-15


def test_pole_at_algebraic_point():
    f = F(ONE, P(-2, 0, 1))
    assert ratfunc_eval_extended(f, SQRT2).is_inf


def test_json_forms():
    assert INF.to_json() == {"kind": "inf"}
    assert ExtendedValue.finite(Fraction(1, 3)).to_json() == {"kind": "rational", "value": "1/3"}
    alg = ratfunc_eval_extended(F(T), SQRT2).to_json()
    assert alg["kind"] == "algebraic" and alg["sign"] == 1
