import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from strongcospec.charpoly import charpoly, faddeev_leverrier
from strongcospec.errors import DomainError
from strongcospec.graphs import Graph, complete_graph, cycle_graph, disjoint_union, empty_graph, path_graph
from strongcospec.harness import random_graph
from strongcospec.poly import (
    ONE,
    T,
    ZERO,
    IntPoly,
    RatFunc,
    divides,
    exact_div,
    is_squarefree,
    poly_gcd,
    polynomial_sqrt,
    ratfunc_reduce,
    squarefree_decomposition,
    squarefree_part,
)

t_sym = sympy.Symbol("t")


def P(*coeffs):
    return IntPoly(coeffs)


def to_sympy(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)) or [0], t_sym)


def sympy_charpoly(g: Graph) -> IntPoly:
    if g.n == 0:
        return ONE
    m = sympy.zeros(g.n, g.n)
    for u, v in g.edges():
        m[u, v] = m[v, u] = 1
    coeffs = m.charpoly(t_sym).all_coeffs()
    return IntPoly(int(c) for c in reversed(coeffs))


int_polys = st.lists(st.integers(-20, 20), max_size=7).map(IntPoly)


def fraction_gcd(a: IntPoly, b: IntPoly) -> list[Fraction]:
    """Monic gcd over Q by the plain Euclidean algorithm."""
    x = [Fraction(c) for c in a.coeffs]
    y = [Fraction(c) for c in b.coeffs]
    while y:
        while len(x) >= len(y) and x:
            f = x[-1] / y[-1]
            shift = len(x) - len(y)
            for k, c in enumerate(y):
                x[k + shift] -= f * c
            while x and x[-1] == 0:
                x.pop()
        x, y = y, x
    return [c / x[-1] for c in x]


# -- IntPoly basics ---------------------------------------------------------


def test_canonical_zero_and_degree():
    assert IntPoly([0, 0]) == ZERO
    assert ZERO.degree == -1
    assert P(1, 2, 0, 0).degree == 1
    assert T * T - 1 == P(-1, 0, 1)


def test_json_big_coefficients_as_strings():
    p = P(1, 2**60)
    assert p.to_json() == [1, str(2**60)]
    assert IntPoly.from_json(p.to_json()) == p


def test_evaluation_and_derivative():
    p = P(-2, 0, 1)
    assert p(3) == 7
    assert p.eval_fraction(Fraction(1, 2)) == Fraction(-7, 4)
    assert p.derivative() == P(0, 2)
    assert p.sign_at(Fraction(3, 2)) == 1


@settings(max_examples=200, deadline=None)
@given(int_polys, int_polys)
def test_ring_operations_match_sympy(a, b):
    assert to_sympy(a + b) == to_sympy(a) + to_sympy(b)
    assert to_sympy(a * b) == to_sympy(a) * to_sympy(b)
    assert to_sympy(a - b) == to_sympy(a) - to_sympy(b)


# -- charpoly ---------------------------------------------------------------


def test_charpoly_examples():
    assert charpoly(Graph(1, [0])) == T
    assert charpoly(path_graph(2)) == P(-1, 0, 1)
    assert charpoly(path_graph(3)) == P(0, -2, 0, 1)
    assert charpoly(complete_graph(3)) == P(-2, -3, 0, 1)
    assert charpoly(empty_graph(0)) == ONE


def test_charpoly_matches_sympy_on_small_trees(small_trees):
    for tree in small_trees[::7]:
        assert charpoly(tree) == sympy_charpoly(tree)


def test_charpoly_matches_sympy_on_random_graphs():
    rng = random.Random(11)
    for _ in range(25):
        g = random_graph(rng, rng.randint(1, 9), rng.choice((0.3, 0.5, 0.8)))
        assert faddeev_leverrier(g) == sympy_charpoly(g)
        assert charpoly(g) == sympy_charpoly(g)


def test_charpoly_is_multiplicative_over_disjoint_union():
    rng = random.Random(5)
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 6), 0.5)
        h = random_graph(rng, rng.randint(1, 6), 0.5)
        assert charpoly(disjoint_union(g, h)) == charpoly(g) * charpoly(h)


def test_charpoly_second_coefficient_counts_edges(small_trees):
    for tree in small_trees:
        p = charpoly(tree)
        assert p.degree == tree.n and p.lc == 1
        if tree.n >= 2:
            assert p[tree.n - 2] == -tree.num_edges()


def test_charpoly_cycle_closed_form():
    # phi(C_n) = 2 T_n(t/2) - 2 with T_n the Chebyshev polynomial
    for n in range(3, 10):
        expected = sympy.expand(2 * sympy.chebyshevt(n, t_sym / 2) - 2)
        assert to_sympy(charpoly(cycle_graph(n))) == sympy.Poly(expected, t_sym)


# -- gcd and division -------------------------------------------------------


def test_gcd_examples():
    assert poly_gcd(P(-1, 0, 1), P(-1, 1)) == P(-1, 1)
    assert poly_gcd(P(0, -2, 0, 1), P(-1, 0, 1)) == ONE
    assert poly_gcd(P(4, 6), ZERO) == P(2, 3)
    assert poly_gcd(P(-4, -6), ZERO) == P(2, 3)
    with pytest.raises(DomainError):
        poly_gcd(ZERO, ZERO)


@settings(max_examples=300, deadline=None)
@given(int_polys, int_polys, int_polys)
def test_gcd_against_euclid(a, b, c):
    a, b = a * c, b * c
    if not a and not b:
        return
    g = poly_gcd(a, b)
    assert g.lc > 0 and g.content() == 1
    assert divides(g, a) and divides(g, b)
    monic = [Fraction(x, g.lc) for x in g.coeffs]
    assert monic == fraction_gcd(a, b)


def test_exact_div():
    assert exact_div(P(-1, 0, 1), P(1, 1)) == P(-1, 1)
    with pytest.raises(DomainError):
        exact_div(P(1, 0, 1), P(1, 1))


# -- squarefree machinery ---------------------------------------------------


def test_squarefree_examples():
    p = P(-1, 1) ** 2 * P(2, 1)
    assert squarefree_part(p) == P(-1, 1) * P(2, 1)
    q = P(0, -2, 0, 1)
    assert squarefree_part(q) == q
    assert squarefree_part(charpoly(complete_graph(3))) == P(-2, 1) * P(1, 1)
    with pytest.raises(DomainError):
        squarefree_part(ZERO)


@settings(max_examples=150, deadline=None)
@given(int_polys.filter(lambda p: p.degree > 0))
def test_squarefree_part_is_squarefree(p):
    s = squarefree_part(p)
    assert poly_gcd(s, s.derivative()).degree == 0
    assert is_squarefree(s)
    assert to_sympy(s).monic() == sympy.Poly(sympy.sqf_part(to_sympy(p).as_expr()), t_sym).monic()


def test_squarefree_decomposition_yun():
    p = P(-1, 1) ** 3 * P(-2, 1) * P(-3, 1) ** 2
    parts = squarefree_decomposition(p)
    assert parts[:3] == [P(-2, 1), P(-3, 1), P(-1, 1)]


@settings(max_examples=100, deadline=None)
@given(st.lists(int_polys.filter(lambda p: p.degree > 0), min_size=1, max_size=3))
def test_squarefree_decomposition_reassembles(factors):
    p = ONE
    for k, f in enumerate(factors, start=1):
        p = p * f**k
    parts = squarefree_decomposition(p)
    rebuilt = ONE
    for k, f in enumerate(parts, start=1):
        rebuilt = rebuilt * f**k
    assert rebuilt.primitive() == p.primitive()


@settings(max_examples=150, deadline=None)
@given(int_polys)
def test_polynomial_sqrt(q):
    assert polynomial_sqrt(q * q) in (q, -q)
    if q.degree >= 1 and polynomial_sqrt(q * q + 1) is not None:
        r = polynomial_sqrt(q * q + 1)
        assert r * r == q * q + 1


def test_polynomial_sqrt_rejects_non_squares():
    assert polynomial_sqrt(P(1, 0, 1)) is None
    assert polynomial_sqrt(P(-1)) is None
    assert polynomial_sqrt(P(0, 0, 4)) == P(0, 2)


# -- rational functions -----------------------------------------------------


def test_ratfunc_reduce_examples():
    assert ratfunc_reduce(P(-1, 0, 1), P(-1, 1)) == RatFunc(P(1, 1), ONE)
    f = ratfunc_reduce(P(0, -2, 0, 1), P(-1, 0, 1))
    assert (f.num, f.den) == (P(0, -2, 0, 1), P(-1, 0, 1))
    assert ratfunc_reduce(ZERO, P(1, 2, 3)).num == ZERO
    with pytest.raises(DomainError):
        ratfunc_reduce(ONE, ZERO)


def test_ratfunc_sign_normalisation_and_idempotence():
    f = RatFunc(P(2, 2), P(0, -4))
    assert f.den.lc > 0 and poly_gcd(f.num, f.den) == ONE
    assert RatFunc(f.num, f.den) == f
    assert f == RatFunc(P(-1, -1), P(0, 2))


@settings(max_examples=100, deadline=None)
@given(int_polys, int_polys.filter(bool), int_polys, int_polys.filter(bool))
def test_ratfunc_field_operations_match_sympy(a, b, c, d):
    f, g = RatFunc(a, b), RatFunc(c, d)
    x = to_sympy(a).as_expr() / to_sympy(b).as_expr()
    y = to_sympy(c).as_expr() / to_sympy(d).as_expr()
    for ours, theirs in ((f + g, x + y), (f - g, x - y), (f * g, x * y)):
        assert sympy.simplify(to_sympy(ours.num).as_expr() / to_sympy(ours.den).as_expr() - theirs) == 0


def test_ratfunc_eval_and_derivative():
    f = RatFunc(P(-1, 0, 1), T)
    assert f(2) == Fraction(3, 2)
    assert f(0) is None
    assert f.derivative() == RatFunc(P(1, 0, 1), P(0, 0, 1))
