"""Dense integer polynomials and reduced rational functions over Z.

Coefficients are Python ints stored lowest degree first. Nothing here ever
touches floating point: equality of two polynomials is equality of their
coefficient tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from collections.abc import Iterable, Sequence

from .errors import DomainError

_JSON_SAFE = 2**53


class IntPoly:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)
        self._hash = hash(self.coeffs)

    # construction ---------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        p = ONE
        for r in roots:
            p = p * cls((-r, 1))
        return p

    # basic protocol -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                body = ("" if a == 1 else f"{a}*") + ("t" if k == 1 else f"t^{k}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lc == 1

    # arithmetic -----------------------------------------------------------

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: IntPoly | int) -> IntPoly:
        return _coerce(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self) -> IntPoly:
        return IntPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> IntPoly:
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return ZERO
        c = self.content()
        if self.lc < 0:
            c = -c
        return IntPoly(x // c for x in self.coeffs)

    def exact_div_scalar(self, c: int) -> IntPoly:
        if any(x % c for x in self.coeffs):
            raise DomainError(f"{self} not divisible by {c}")
        return IntPoly(x // c for x in self.coeffs)

    def __floordiv__(self, other: IntPoly) -> IntPoly:
        return exact_div(self, other)

    def __mod__(self, other: IntPoly) -> IntPoly:
        return prem(self, other)

    # evaluation -----------------------------------------------------------

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        num, den = x.numerator, x.denominator
        return Fraction(self.eval_homogeneous(num, den), den ** max(self.degree, 0))

    def eval_homogeneous(self, num: int, den: int) -> int:
        """den**deg * p(num/den), computed in integers."""
        d = self.degree
        if d < 0:
            return 0
        acc = 0
        power = 1
        for c in reversed(self.coeffs):
            acc = acc * num + c * power
            power *= den
        return acc

    def sign_at(self, x: Fraction | int) -> int:
        """Exact sign of p(x) at a rational point."""
        if isinstance(x, int):
            v = self(x)
        else:
            v = self.eval_homogeneous(x.numerator, x.denominator)
        return (v > 0) - (v < 0)

    # serialisation --------------------------------------------------------

    def to_json(self) -> list:
        return [c if abs(c) < _JSON_SAFE else str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> IntPoly:
        return cls(int(c) for c in data)


def _coerce(x: IntPoly | int) -> IntPoly:
    return x if isinstance(x, IntPoly) else IntPoly.const(x)


ZERO = IntPoly()
ONE = IntPoly((1,))
T = IntPoly((0, 1))


# ---------------------------------------------------------------------------
# division


def pdivmod(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly, int]:
    """Pseudo-division: ``m * a = q * b + r`` with ``m = lc(b)**(deg a - deg b + 1)``.

    Returns ``(q, r, m)``.
    """
    if not b:
        raise DomainError("division by the zero polynomial")
    db = b.degree
    if a.degree < db:
        return ZERO, a, 1
    lb = b.lc
    r = list(a.coeffs)
    q = [0] * (a.degree - db + 1)
    steps = a.degree - db + 1
    for k in range(a.degree - db, -1, -1):
        lead = r[k + db] if k + db < len(r) else 0
        q = [c * lb for c in q]
        r = [c * lb for c in r]
        q[k] += lead
        if lead:
            for idx, c in enumerate(b.coeffs):
                r[k + idx] -= lead * c
    return IntPoly(q), IntPoly(r[:db]), lb**steps


def prem(a: IntPoly, b: IntPoly) -> IntPoly:
    return pdivmod(a, b)[1]


def divmod_exact(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly] | None:
    """Division in Z[t] when every quotient step is integral, else ``None``."""
    if not b:
        raise DomainError("division by the zero polynomial")
    db = b.degree
    lb = b.lc
    r = list(a.coeffs)
    if len(r) <= db:
        return ZERO, a
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        lead = r[k + db]
        if lead:
            c, rem = divmod(lead, lb)
            if rem:
                return None
            q[k] = c
            for idx, bc in enumerate(b.coeffs):
                r[k + idx] -= c * bc
    return IntPoly(q), IntPoly(r[:db])


def exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    res = divmod_exact(a, b)
    if res is None or res[1]:
        raise DomainError(f"{b} does not divide {a} in Z[t]")
    return res[0]


def divides(b: IntPoly, a: IntPoly) -> bool:
    """Whether ``b`` divides ``a`` in Q[t]."""
    if not b:
        return not a
    return not prem(a, b)


# ---------------------------------------------------------------------------
# gcd and squarefree machinery


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (subresultant PRS)."""
    if not p and not q:
        raise DomainError("gcd of two zero polynomials")
    return _gcd_cached(p, q) if p.degree >= q.degree else _gcd_cached(q, p)


@lru_cache(maxsize=1 << 16)
def _gcd_cached(a: IntPoly, b: IntPoly) -> IntPoly:
    if not b:
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    if b.degree == 0:
        return ONE
    g = h = 1
    while True:
        delta = a.degree - b.degree
        r = prem(a, b)
        if not r:
            return b.primitive()
        if r.degree == 0:
            return ONE
        a, b = b, r.exact_div_scalar(g * h**delta)
        g = a.lc
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)


def squarefree_part(p: IntPoly) -> IntPoly:
    """``p / gcd(p, p')`` made primitive with positive leading coefficient."""
    if not p:
        raise DomainError("squarefree part of the zero polynomial")
    if p.degree <= 0:
        return ONE
    return exact_div(p.primitive(), poly_gcd(p, p.derivative())).primitive()


def is_squarefree(p: IntPoly) -> bool:
    return p.degree <= 0 or poly_gcd(p, p.derivative()).degree == 0


def squarefree_decomposition(p: IntPoly) -> list[IntPoly]:
    """Yun's algorithm: primitive ``[a1, a2, ...]`` with ``p ~ a1 * a2**2 * ...``.

    Entries may be ``ONE`` for multiplicities that do not occur.
    """
    if not p:
        raise DomainError("squarefree decomposition of the zero polynomial")
    p = p.primitive()
    if p.degree <= 0:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    # a is primitive, so every quotient below stays in Z[t]
    b = exact_div(p, a)
    d = exact_div(dp, a) - b.derivative()
    while b.degree > 0:
        ai = poly_gcd(b, d)
        out.append(ai)
        b = exact_div(b, ai)
        d = exact_div(d, ai) - b.derivative()
    return out


def polynomial_sqrt(p: IntPoly) -> IntPoly | None:
    """Integer polynomial ``q`` with ``q*q == p`` and ``lc(q) > 0``, else ``None``."""
    if not p:
        return ZERO
    d = p.degree
    if d % 2 or p.lc < 0:
        return None
    top = math.isqrt(p.lc)
    if top * top != p.lc:
        return None
    m = d // 2
    q = [0] * (m + 1)
    q[m] = top
    for k in range(1, m + 1):
        idx = d - k
        s = sum(q[a] * q[idx - a] for a in range(idx - m, m + 1) if a != m and idx - a != m)
        num = p[idx] - s
        den = 2 * top
        if num % den:
            return None
        q[m - k] = num // den
    root = IntPoly(q)
    return root if root * root == p else None


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """``num / den`` with coprime integer polynomials and ``lc(den) > 0``.

    The integer contents are also cancelled, so every rational function has
    exactly one stored representation and ``==`` is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: IntPoly | int, den: IntPoly | int = 1, *, reduced: bool = False):
        num, den = _coerce(num), _coerce(den)
        if not den:
            raise DomainError("rational function with zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = hash((num, den))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, IntPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"RatFunc({self.num}, {self.den})"

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __bool__(self) -> bool:
        return bool(self.num)

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, reduced=True)

    def __add__(self, other: RatFunc | IntPoly | int) -> RatFunc:
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other: RatFunc | IntPoly | int) -> RatFunc:
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other: RatFunc | IntPoly | int) -> RatFunc:
        return _as_ratfunc(other) - self

    def __mul__(self, other: RatFunc | IntPoly | int) -> RatFunc:
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatFunc | IntPoly | int) -> RatFunc:
        other = _as_ratfunc(other)
        if not other.num:
            raise DomainError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: RatFunc | IntPoly | int) -> RatFunc:
        return _as_ratfunc(other) / self

    def derivative(self) -> RatFunc:
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x: Fraction | int) -> Fraction | None:
        """Exact value at a rational point, or ``None`` at a pole."""
        x = Fraction(x)
        d = self.den.eval_fraction(x)
        if d == 0:
            return None
        return self.num.eval_fraction(x) / d

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _as_ratfunc(x: RatFunc | IntPoly | int) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc(x)


def _reduce(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    if not num:
        return ZERO, ONE
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = exact_div_q(num, g), exact_div_q(den, g)
    cn, cd = num.content(), den.content()
    c = math.gcd(cn, cd)
    if den.lc < 0:
        c = -c
    return num.exact_div_scalar(c), den.exact_div_scalar(c)


def exact_div_q(a: IntPoly, g: IntPoly) -> IntPoly:
    """``a / g`` for primitive ``g`` dividing ``a`` over Q (hence over Z)."""
    return exact_div(a, g)


def ratfunc_reduce(num: IntPoly, den: IntPoly) -> RatFunc:
    return RatFunc(num, den)
