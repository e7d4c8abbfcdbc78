"""Real root isolation with Sturm sequences, and exact sign tests at real roots.

A :class:`RealRoot` is a real algebraic number given by a squarefree integer
polynomial and a rational isolating interval. Signs of other polynomials at
the root are decided exactly: a gcd test settles vanishing, and otherwise the
interval is bisected until the polynomial has no root in it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import DomainError
from .poly import IntPoly, pdivmod, poly_gcd, squarefree_part


@lru_cache(maxsize=1 << 14)
def sturm_sequence(p: IntPoly) -> tuple[IntPoly, ...]:
    """Sturm chain of ``p``; remainders are rescaled by positive constants only."""
    if p.degree <= 0:
        return (p,)
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        _, r, m = pdivmod(seq[-2], seq[-1])
        if not r:
            break
        nxt = -r if m > 0 else r
        c = nxt.content()
        seq.append(IntPoly(x // c for x in nxt.coeffs))
    return tuple(seq)


def _sign_at(p: IntPoly, x: Fraction | None, side: int = 0) -> int:
    if x is None:
        # side=+1 for +inf, -1 for -inf
        s = (p.lc > 0) - (p.lc < 0)
        return s if side > 0 or p.degree % 2 == 0 else -s
    return p.sign_at(x)


def sign_variations(seq: tuple[IntPoly, ...], x: Fraction | None, side: int = 0) -> int:
    count = 0
    last = 0
    for q in seq:
        s = _sign_at(q, x, side)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def count_roots(p: IntPoly, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Distinct real roots of ``p`` in ``(lo, hi]`` (``None`` means infinite)."""
    if not p:
        raise DomainError("the zero polynomial has infinitely many roots")
    seq = sturm_sequence(squarefree_part(p))
    return sign_variations(seq, lo, -1) - sign_variations(seq, hi, +1)


def root_bound(p: IntPoly) -> Fraction:
    """Cauchy bound: every real root lies strictly inside ``(-B, B)``."""
    lc = abs(p.lc)
    return Fraction(lc + max(abs(c) for c in p.coeffs[:-1]), lc) + 1 if p.degree > 0 else Fraction(1)


class RealRoot:
    """The unique root of squarefree ``poly`` in ``(lo, hi)``, or exactly ``lo == hi``.

    For a non-degenerate interval ``poly(lo)`` and ``poly(hi)`` are nonzero with
    opposite signs. Refinement narrows the interval in place; the number it
    denotes never changes.
    """

    __slots__ = ("poly", "lo", "hi")

    def __init__(self, poly: IntPoly, lo: Fraction, hi: Fraction):
        self.poly = poly
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)

    @classmethod
    def rational(cls, x: Fraction | int) -> RealRoot:
        x = Fraction(x)
        return cls(IntPoly((-x.numerator, x.denominator)), x, x)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __repr__(self) -> str:
        if self.is_exact:
            return f"RealRoot({self.lo})"
        return f"RealRoot({self.poly}, ({self.lo}, {self.hi}) ~ {float(self):.12g})"

    def __float__(self) -> float:
        self.refine_to(Fraction(1, 2**60))
        return float((self.lo + self.hi) / 2)

    def refine(self) -> None:
        if self.is_exact:
            return
        mid = (self.lo + self.hi) / 2
        s = self.poly.sign_at(mid)
        if s == 0:
            self.lo = self.hi = mid
        elif s == self.poly.sign_at(self.lo):
            self.lo = mid
        else:
            self.hi = mid

    def refine_to(self, width: Fraction) -> None:
        while not self.is_exact and self.hi - self.lo > width:
            self.refine()

    def sign_of(self, p: IntPoly) -> int:
        """Exact sign of ``p`` at this root."""
        if not p:
            return 0
        if self.is_exact:
            return p.sign_at(self.lo)
        g = poly_gcd(self.poly, p)
        if g.degree > 0 and g.sign_at(self.lo) * g.sign_at(self.hi) < 0:
            return 0
        sp = squarefree_part(p)
        while True:
            if self.is_exact:
                return p.sign_at(self.lo)
            slo = sp.sign_at(self.lo)
            if slo and sp.sign_at(self.hi) == slo and count_roots(sp, self.lo, self.hi) == 0:
                return p.sign_at(self.lo)
            self.refine()

    def is_root_of(self, p: IntPoly) -> bool:
        return self.sign_of(p) == 0

    def same_as(self, other: RealRoot) -> bool:
        if self is other:
            return True
        if self.is_exact and other.is_exact:
            return self.lo == other.lo
        if self.is_exact:
            return other.same_as(self)
        if other.sign_of(self.poly) != 0:
            return False
        # other is some root of self.poly; it is this one iff it falls in our interval
        while True:
            if other.is_exact:
                return self.lo < other.lo < self.hi
            if other.hi <= self.lo or other.lo >= self.hi:
                return False
            if self.lo <= other.lo and other.hi <= self.hi:
                return True
            other.refine()

    def compare(self, other: RealRoot) -> int:
        if self.same_as(other):
            return 0
        while True:
            # roots sit strictly inside non-degenerate intervals
            if self.hi <= other.lo:
                return -1
            if other.hi <= self.lo:
                return 1
            wa = self.hi - self.lo
            wb = other.hi - other.lo
            (self if wa >= wb else other).refine()

    def approx(self, prec_bits: int = 128) -> mpmath.mpf:
        """High-precision approximation, certified by exact bisection."""
        self.refine_to(Fraction(1, 2 ** (prec_bits + 8)))
        with mpmath.workprec(prec_bits + 16):
            mid = (self.lo + self.hi) / 2
            return mpmath.mpf(mid.numerator) / mid.denominator

    def to_json(self) -> dict:
        self.refine_to(Fraction(1, 2**40))
        return {"poly": self.poly.to_json(), "lo": str(self.lo), "hi": str(self.hi), "approx": repr(float(self))}


def isolate_real_roots(p: IntPoly) -> list[RealRoot]:
    """Isolating intervals for the distinct real roots of ``p``, in increasing order."""
    if not p:
        raise DomainError("cannot isolate roots of the zero polynomial")
    s = squarefree_part(p)
    if s.degree <= 0:
        return []
    return _isolate_cached(s)


@lru_cache(maxsize=1 << 14)
def _isolate_cached_raw(s: IntPoly) -> tuple[tuple[Fraction, Fraction], ...]:
    seq = sturm_sequence(s)
    bound = root_bound(s)
    out: list[tuple[Fraction, Fraction]] = []

    def var(x: Fraction) -> int:
        return sign_variations(seq, x)

    work = [(-bound, bound, var(-bound), var(bound))]
    while work:
        lo, hi, vlo, vhi = work.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        step = (hi - lo) / 4
        while s.sign_at(mid) == 0:
            # exact rational root: step off it, the interval split stays valid
            mid += step
            step /= 2
        vmid = var(mid)
        work.append((lo, mid, vlo, vmid))
        work.append((mid, hi, vmid, vhi))
    out.sort()
    return tuple(out)


def _isolate_cached(s: IntPoly) -> list[RealRoot]:
    return [RealRoot(s, lo, hi) for lo, hi in _isolate_cached_raw(s)]


def real_roots_count(p: IntPoly) -> int:
    return count_roots(p)
