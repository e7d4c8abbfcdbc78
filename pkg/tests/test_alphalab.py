import itertools
import random
from fractions import Fraction

import pytest

from strongcospec.alphalab import (
    alpha,
    alpha_branch_properties,
    alpha_criterion_strongly_cospectral,
    alpha_of,
    classify,
    contraction_identity_check,
    contraction_identity_details,
    extended_contraction_eval,
    interlacing_pattern,
    key_lemma_audit,
    lambda_,
    lambda_infinity_check,
    lambda_nonpositive_on_samples,
    lambda_of,
    separates,
    swapped_lambda_product_check,
)
from strongcospec.cospectral import are_cospectral, are_strongly_cospectral_exact
from strongcospec.errors import DomainError, PreconditionError
from strongcospec.extended import ratfunc_eval_extended
from strongcospec.graphs import Graph, empty_graph, path_graph, spider_graph, star_graph
from strongcospec.harness import random_graph, random_tree
from strongcospec.poly import ONE, T, IntPoly, RatFunc
from strongcospec.realroots import isolate_real_roots


def P(*coeffs):
    return IntPoly(coeffs)


# -- alpha ------------------------------------------------------------------


def test_alpha_examples():
    a = alpha(path_graph(2), 0)
    assert a.value == RatFunc(P(-1, 0, 1), T)
    assert [float(z) for z in a.zeros] == [-1.0, 1.0]
    assert [float(p) for p in a.poles] == [0.0]
    assert alpha(Graph(1, [0]), 0).value == RatFunc(T, ONE)
    assert alpha(path_graph(3), 0).value == RatFunc(P(0, -2, 0, 1), P(-1, 0, 1))
    with pytest.raises(DomainError):
        alpha(path_graph(3), 3)


def test_alpha_reduces_common_factors():
    # deleting the center of P3 leaves 2K1, phi = t^2 against t^3 - 2t
    assert alpha_of(path_graph(3), 1) == RatFunc(P(-2, 0, 1), T)
    assert interlacing_pattern(alpha_of(path_graph(3), 1)) == "ZPZ"


def test_alpha_branch_examples():
    rep = alpha_branch_properties(alpha(path_graph(2), 0), 10)
    assert rep["ok"] and rep["pattern"] == "ZPZ"
    assert alpha_of(path_graph(2), 0).derivative()(2) == Fraction(5, 4)
    k1 = alpha_of(Graph(1, [0]), 0)
    assert k1.derivative() == RatFunc(ONE, ONE)
    rep = alpha_branch_properties(k1, 5)
    assert rep["ok"] and rep["derivative_min"] == "1"
    with pytest.raises(DomainError):
        alpha_branch_properties(k1, 0)


def test_alpha_branch_random_tree():
    rng = random.Random(10)
    t = random_tree(rng, 10)
    for v in range(t.n):
        rep = alpha_branch_properties(alpha(t, v), 100)
        assert rep["ok"], rep
        assert rep["zero_count"] == rep["pole_count"] + 1


def test_alpha_branch_random_graphs(random_graphs_8):
    for g in random_graphs_8[:15]:
        for v in range(g.n):
            assert alpha_branch_properties(alpha_of(g, v), 20)["ok"]


def test_branch_report_flags_bad_function():
    rep = alpha_branch_properties(RatFunc(P(1, 0, 1), ONE), 5)
    assert not rep["ok"] and not rep["real_rooted"]
    rep = alpha_branch_properties(RatFunc(-T, ONE), 5)
    assert not rep["derivative_ok"]


# -- lambda -----------------------------------------------------------------


def test_lambda_examples():
    assert lambda_(path_graph(2), 0, 1).value == RatFunc(P(-1), ONE)
    assert lambda_(path_graph(3), 0, 2).value == RatFunc(P(-1), P(0, 0, 1))
    assert not lambda_(empty_graph(2), 0, 1).value
    sq = lambda_(path_graph(3), 0, 2).square_structure()
    assert sq["numerator_is_minus_square"] and sq["denominator_is_square"]


def test_lambda_structure_on_random_graphs(random_graphs_8):
    for g in random_graphs_8:
        for i, j in itertools.combinations(range(g.n), 2):
            lam = lambda_(g, i, j)
            assert lambda_nonpositive_on_samples(lam.value, 15)
            assert lam.value == lambda_of(g, j, i)


# -- contraction identity ----------------------------------------------------


def test_contraction_examples():
    p2 = path_graph(2)
    assert alpha_of(p2, 0) == RatFunc(T, ONE) + RatFunc(P(-1), ONE) / RatFunc(T, ONE)
    assert contraction_identity_check(p2, 0, 1)
    assert all(contraction_identity_details(path_graph(3), 0, 2).values())


def test_contraction_on_random_graphs():
    rng = random.Random(8)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 8), rng.choice((0.3, 0.5, 0.7)))
        i, j = rng.sample(range(g.n), 2)
        details = contraction_identity_details(g, i, j)
        assert all(details.values()), details


def test_swapped_lambda_product_needs_cospectral_pair(small_trees):
    # the variant with deleted alphas exchanged agrees exactly on cospectral pairs
    checked = 0
    for t in small_trees[:60]:
        for i, j in itertools.combinations(range(t.n), 2):
            if are_cospectral(t, i, j):
                assert swapped_lambda_product_check(t, i, j)
                checked += 1
    assert checked > 50
    assert not swapped_lambda_product_check(path_graph(3), 0, 1)


# -- pointwise lemmas --------------------------------------------------------


def test_extended_contraction_examples():
    assert extended_contraction_eval(path_graph(2), 0, 1, 0).is_inf
    val = extended_contraction_eval(path_graph(3), 0, 2, 1)
    assert val.equals(ratfunc_eval_extended(alpha_of(path_graph(3), 0), 1))
    with pytest.raises(PreconditionError):
        extended_contraction_eval(path_graph(3), 0, 2, 0)


def _lambda_zero_instance(trees):
    for t in trees:
        for i, j in itertools.combinations(range(t.n), 2):
            lam = lambda_of(t, i, j)
            if lam.num.degree > 0:
                roots = isolate_real_roots(lam.num)
                if roots:
                    return t, i, j, roots[0]
    raise AssertionError("no lambda zero found")


def test_lambda_zero_transfers(small_trees):
    t, i, j, theta = _lambda_zero_instance(small_trees)
    assert ratfunc_eval_extended(lambda_of(t, i, j), theta).is_zero
    val = extended_contraction_eval(t, i, j, theta)
    assert val.equals(ratfunc_eval_extended(alpha_of(t, i, {j}), theta))


def test_extended_contraction_at_all_algebraic_points(small_trees):
    for t in small_trees[20:45]:
        for i, j in itertools.combinations(range(t.n), 2):
            lam = lambda_of(t, i, j)
            points = set()
            for f in (alpha_of(t, i, {j}), alpha_of(t, j, {i}), lam):
                for poly in (f.num, f.den):
                    if poly.degree > 0:
                        points.update(isolate_real_roots(poly))
            for theta in points:
                if ratfunc_eval_extended(lam, theta).is_inf:
                    assert lambda_infinity_check(t, i, j, theta)
                else:
                    extended_contraction_eval(t, i, j, theta)


def test_lambda_infinity_examples(small_trees):
    assert lambda_infinity_check(path_graph(3), 0, 2, 0)
    with pytest.raises(PreconditionError):
        lambda_infinity_check(path_graph(3), 0, 2, 1)
    # an instance where the second implication is live
    found = False
    for t in small_trees:
        if t.n > 8 or found:
            break
        for i, j in itertools.combinations(range(t.n), 2):
            lam = lambda_of(t, i, j)
            if lam.den.degree <= 0:
                continue
            for theta in isolate_real_roots(lam.den):
                if ratfunc_eval_extended(alpha_of(t, j), theta).is_inf:
                    assert ratfunc_eval_extended(alpha_of(t, i), theta).is_inf
                    assert lambda_infinity_check(t, i, j, theta)
                    found = True
    assert found


def test_classify():
    f = RatFunc(P(-1, 0, 1), T)
    assert classify(ratfunc_eval_extended(f, 0)) == "pole"
    assert classify(ratfunc_eval_extended(f, 1)) == "zero"
    assert classify(ratfunc_eval_extended(f, 3)) == "finite"


# -- alpha criterion --------------------------------------------------------


def test_alpha_criterion_examples():
    assert alpha_criterion_strongly_cospectral(path_graph(3), 0, 2)
    assert not alpha_criterion_strongly_cospectral(path_graph(3), 0, 1)
    assert not alpha_criterion_strongly_cospectral(empty_graph(2), 0, 1)


def test_alpha_criterion_matches_divisibility(random_graphs_8):
    for g in random_graphs_8:
        for i, j in itertools.combinations(range(g.n), 2):
            exact = are_strongly_cospectral_exact(g, i, j).strongly_cospectral
            assert alpha_criterion_strongly_cospectral(g, i, j) == exact


# -- cut-vertex audit ---------------------------------------------------------


def test_separates():
    s = star_graph(3)
    assert separates(s, 0, (1, 2, 3))
    assert not separates(s, 1, (0, 2, 3))
    assert not separates(path_graph(5), 2, (0, 1, 4))


def test_audit_star():
    rep = key_lemma_audit(star_graph(3), 0, 1, 2, 3)
    assert rep.ok and rep.pairwise_cospectral
    assert not any(rep.strongly_cospectral.values())
    assert rep.obstructed
    assert all(rep.transfer_identities.values())
    # alpha of each leaf in G - v is t, zero at 0 where the other two vanish too
    assert [z["approx"] for z in rep.zeros["i"]] == ["0.0"]
    rec = rep.records[0]
    assert rec["values"]["alpha_j(G-v)"] == {"kind": "rational", "value": "0"}
    assert rec["cut_vertex_pattern"] is False


def test_audit_spiders():
    rep = key_lemma_audit(spider_graph([2, 2, 2]), 0, 2, 4, 6)
    assert rep.ok and rep.pairwise_cospectral and not rep.pairwise_strongly_cospectral
    rep = key_lemma_audit(spider_graph([1, 2, 3]), 0, 1, 3, 6)
    assert rep.ok and all(rep.transfer_identities.values())
    assert rep.branch_counts["pole"] > 0
    assert rep.to_json()["triple"] == [1, 3, 6]


def test_audit_requires_separation():
    with pytest.raises(DomainError):
        key_lemma_audit(path_graph(5), 2, 0, 1, 4)
