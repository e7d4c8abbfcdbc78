"""Values of rational functions on the projective real line.

An :class:`ExtendedValue` is either the single unsigned point ``INF`` or a
finite real. Finite values at rational points are exact ``Fraction`` objects.
At an irrational algebraic point ``theta`` a finite value is kept as the pair
``(f, theta)`` meaning "``f`` evaluated at ``theta``", where ``f`` is a reduced
rational function without a pole at ``theta``. Sums, quotients and equality
tests on such pairs are carried out on ``f`` itself and settled by exact sign
tests at ``theta``, so no tolerance is ever involved.

Division and addition follow the conventions

* ``0 / C = 0`` for every ``C``, including ``0`` and ``INF``;
* ``INF + C = C + INF = INF``;
* ``C / INF = 0`` for finite ``C``;
* ``C / 0 = INF`` for ``C`` not in ``{0, INF}``;

and anything else involving ``INF`` (``INF / INF``, ``INF / 0``, products with
``INF``) raises :class:`UndefinedExtendedArithmetic`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import UndefinedExtendedArithmetic
from .poly import IntPoly, RatFunc
from .realroots import RealRoot


class ExtendedValue:
    __slots__ = ("_inf", "_exact", "_func", "_point")

    def __init__(self, *, inf: bool = False, exact: Fraction | None = None,
                 func: RatFunc | None = None, point: RealRoot | None = None):
        self._inf = inf
        self._exact = exact
        self._func = func
        self._point = point

    # constructors ---------------------------------------------------------

    @classmethod
    def finite(cls, x: Fraction | int | float) -> ExtendedValue:
        return cls(exact=Fraction(x))

    @classmethod
    def at(cls, f: RatFunc, point: RealRoot) -> ExtendedValue:
        """``f(point)`` for ``f`` with no pole at ``point``."""
        if point.is_exact:
            return cls(exact=f(point.lo))
        if f.num.degree <= 0 and f.den.degree == 0:
            return cls(exact=Fraction(f.num[0], f.den[0]))
        return cls(func=f, point=point)

    # predicates -----------------------------------------------------------

    @property
    def is_inf(self) -> bool:
        return self._inf

    @property
    def is_finite(self) -> bool:
        return not self._inf

    @property
    def is_exact_rational(self) -> bool:
        return self._exact is not None

    def sign(self) -> int:
        if self._inf:
            raise UndefinedExtendedArithmetic("INF carries no sign")
        if self._exact is not None:
            return (self._exact > 0) - (self._exact < 0)
        return self._point.sign_of(self._func.num) * self._point.sign_of(self._func.den)

    @property
    def is_zero(self) -> bool:
        return not self._inf and self.sign() == 0

    # arithmetic -----------------------------------------------------------

    def _as_func(self) -> RatFunc:
        if self._exact is not None:
            return RatFunc(IntPoly.const(self._exact.numerator), IntPoly.const(self._exact.denominator))
        return self._func

    def _common_point(self, other: ExtendedValue) -> RealRoot | None:
        p, q = self._point, other._point
        if p is None:
            return q
        if q is None or p is q or p.same_as(q):
            return p
        raise UndefinedExtendedArithmetic("finite values live at different points")

    def _combine(self, other: ExtendedValue, f: RatFunc) -> ExtendedValue:
        point = self._common_point(other)
        return ExtendedValue(exact=_const(f)) if point is None else ExtendedValue.at(f, point)

    def __neg__(self) -> ExtendedValue:
        if self._inf:
            return self
        if self._exact is not None:
            return ExtendedValue(exact=-self._exact)
        return ExtendedValue(func=-self._func, point=self._point)

    def __add__(self, other: ExtendedValue | Fraction | int) -> ExtendedValue:
        other = _coerce(other)
        if self._inf or other._inf:
            return INF
        if self._exact is not None and other._exact is not None:
            return ExtendedValue(exact=self._exact + other._exact)
        return self._combine(other, self._as_func() + other._as_func())

    __radd__ = __add__

    def __sub__(self, other: ExtendedValue | Fraction | int) -> ExtendedValue:
        return self + (-_coerce(other))

    def __mul__(self, other: ExtendedValue | Fraction | int) -> ExtendedValue:
        other = _coerce(other)
        if self._inf or other._inf:
            raise UndefinedExtendedArithmetic("products with INF are not defined")
        if self._exact is not None and other._exact is not None:
            return ExtendedValue(exact=self._exact * other._exact)
        return self._combine(other, self._as_func() * other._as_func())

    __rmul__ = __mul__

    def __truediv__(self, other: ExtendedValue | Fraction | int) -> ExtendedValue:
        other = _coerce(other)
        if not self._inf and self.is_zero:
            return ZERO_VALUE
        if other._inf:
            if self._inf:
                raise UndefinedExtendedArithmetic("INF / INF")
            return ZERO_VALUE
        if other.is_zero:
            if self._inf:
                raise UndefinedExtendedArithmetic("INF / 0")
            return INF
        if self._inf:
            raise UndefinedExtendedArithmetic("INF / finite nonzero is outside the conventions")
        if self._exact is not None and other._exact is not None:
            return ExtendedValue(exact=self._exact / other._exact)
        return self._combine(other, self._as_func() / other._as_func())

    def __rtruediv__(self, other: ExtendedValue | Fraction | int) -> ExtendedValue:
        return _coerce(other) / self

    # comparison -----------------------------------------------------------

    def equals(self, other: ExtendedValue | Fraction | int) -> bool:
        other = _coerce(other)
        if self._inf or other._inf:
            return self._inf and other._inf
        if self._exact is not None and other._exact is not None:
            return self._exact == other._exact
        return (self - other).is_zero

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (ExtendedValue, Rational, int)):
            return self.equals(other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    # presentation ---------------------------------------------------------

    def approx(self, prec_bits: int = 64) -> mpmath.mpf:
        if self._inf:
            return mpmath.inf
        if self._exact is not None:
            with mpmath.workprec(prec_bits):
                return mpmath.mpf(self._exact.numerator) / self._exact.denominator
        x = self._point.approx(prec_bits)
        with mpmath.workprec(prec_bits + 16):
            return self._func.num(x) / self._func.den(x)

    def __float__(self) -> float:
        return float("inf") if self._inf else float(self.approx(64))

    def __repr__(self) -> str:
        if self._inf:
            return "INF"
        if self._exact is not None:
            return f"ExtendedValue({self._exact})"
        return f"ExtendedValue(~{float(self):.12g})"

    def to_json(self) -> dict:
        if self._inf:
            return {"kind": "inf"}
        if self._exact is not None:
            return {"kind": "rational", "value": str(self._exact)}
        return {
            "kind": "algebraic",
            "sign": self.sign(),
            "approx": mpmath.nstr(self.approx(80), 20),
            "func": self._func.to_json(),
        }


def _const(f: RatFunc) -> Fraction:
    if f.num.degree > 0 or f.den.degree > 0:
        raise UndefinedExtendedArithmetic("non-constant function at an unknown point")
    return Fraction(f.num[0], f.den[0])


def _coerce(x: ExtendedValue | Fraction | int) -> ExtendedValue:
    if isinstance(x, ExtendedValue):
        return x
    return ExtendedValue(exact=Fraction(x))


INF = ExtendedValue(inf=True)
ZERO_VALUE = ExtendedValue(exact=Fraction(0))


def as_point(theta: RealRoot | Fraction | int | float) -> RealRoot:
    """Promote a number to a :class:`RealRoot`; floats are converted exactly."""
    if isinstance(theta, RealRoot):
        return theta
    return RealRoot.rational(Fraction(theta))


def ratfunc_eval_extended(f: RatFunc, theta: RealRoot | Fraction | int | float) -> ExtendedValue:
    """``f(theta)``, or ``INF`` when ``theta`` is a root of the reduced denominator."""
    point = as_point(theta)
    if point.sign_of(f.den) == 0:
        return INF
    return ExtendedValue.at(f, point)
