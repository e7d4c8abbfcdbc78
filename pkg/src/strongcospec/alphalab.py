"""Ratios of characteristic polynomials and the contraction calculus on them.

For a vertex ``i`` of ``G`` the alpha function is ``phi(G) / phi(G - i)``; for
a pair ``i, j`` the lambda function is ``-(S / phi(G - {i, j}))**2`` with ``S``
the sum of ``phi(G - P)`` over paths from ``i`` to ``j``. They are tied
together by the contraction identity::

    alpha_i(G) = alpha_i(G - j) + lambda_ij(G) / alpha_j(G - i)

Everything here works with vertex labels of the root graph ``g`` plus an
explicit set ``removed`` of deleted vertices, so ``alpha_of(g, i, {v, j})``
reads as "alpha of i in G minus {v, j}".
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from collections.abc import Iterable

from .cospectral import are_strongly_cospectral_exact, phi
from .errors import DomainError, PreconditionError, VerificationFailure
from .extended import INF, ExtendedValue, as_point, ratfunc_eval_extended
from .graphs import Graph, component_of, delete_vertices, relabel_after_delete, simple_paths_between, to_graph6
from .poly import ZERO, IntPoly, RatFunc, is_squarefree, polynomial_sqrt, squarefree_part
from .realroots import RealRoot, _isolate_cached_raw, count_roots, isolate_real_roots, root_bound


def _fs(removed: Iterable[int]) -> frozenset[int]:
    return frozenset(removed)


@lru_cache(maxsize=1 << 16)
def _alpha_cached(g: Graph, i: int, removed: frozenset[int]) -> RatFunc:
    return RatFunc(phi(g, removed), phi(g, removed | {i}))


def alpha_of(g: Graph, i: int, removed: Iterable[int] = ()) -> RatFunc:
    """``phi(G - removed) / phi(G - removed - i)`` as a reduced rational function."""
    removed = _fs(removed)
    g.check_vertex(i, *removed)
    if i in removed:
        raise DomainError(f"vertex {i} is among the deleted vertices")
    return _alpha_cached(g, i, removed)


def path_sum_in(g: Graph, i: int, j: int, removed: frozenset[int]) -> IntPoly:
    if not removed:
        h, a, b = g, i, j
    else:
        h = delete_vertices(g, removed)
        a, b = relabel_after_delete(g, removed, i), relabel_after_delete(g, removed, j)
    total = ZERO
    for path in simple_paths_between(h, a, b):
        total = total + phi(h, path)
    return total


@lru_cache(maxsize=1 << 16)
def _lambda_cached(g: Graph, i: int, j: int, removed: frozenset[int]) -> RatFunc:
    s = path_sum_in(g, i, j, removed)
    c = phi(g, removed | {i, j})
    return RatFunc(-(s * s), c * c)


def lambda_of(g: Graph, i: int, j: int, removed: Iterable[int] = ()) -> RatFunc:
    removed = _fs(removed)
    g.check_vertex(i, j, *removed)
    if i == j:
        raise DomainError("lambda needs two distinct vertices")
    if i in removed or j in removed:
        raise DomainError("lambda vertices must not be deleted")
    a, b = min(i, j), max(i, j)
    return _lambda_cached(g, a, b, removed)


# ---------------------------------------------------------------------------
# alpha functions and their branch structure


@dataclass
class AlphaFunction:
    graph: Graph
    vertex: int
    value: RatFunc
    zeros: list[RealRoot]
    poles: list[RealRoot]
    removed: frozenset[int] = frozenset()

    def __call__(self, theta) -> ExtendedValue:
        return ratfunc_eval_extended(self.value, theta)

    def to_json(self) -> dict:
        return {
            "graph6": to_graph6(self.graph),
            "vertex": self.vertex,
            "removed": sorted(self.removed),
            "value": self.value.to_json(),
            "zeros": [r.to_json() for r in self.zeros],
            "poles": [r.to_json() for r in self.poles],
        }


def interlacing_pattern(f: RatFunc) -> str:
    """Left-to-right pattern of real zeros ``Z`` and poles ``P`` of ``f``.

    Roots of ``num * den`` are isolated together; since the factors are
    coprime, each isolating interval holds a root of exactly one of them, told
    apart by whether the numerator changes sign across it.
    """
    prod = f.num * f.den
    if prod.degree <= 0:
        return ""
    out = []
    for lo, hi in _isolate_cached_raw(squarefree_part(prod)):
        out.append("Z" if f.num.sign_at(lo) * f.num.sign_at(hi) < 0 else "P")
    return "".join(out)


def alpha(g: Graph, i: int, removed: Iterable[int] = ()) -> AlphaFunction:
    """Alpha function with certified simple, strictly interlacing zeros and poles."""
    removed = _fs(removed)
    f = alpha_of(g, i, removed)
    if not (is_squarefree(f.num) and is_squarefree(f.den)):
        raise VerificationFailure("alpha has a multiple zero or pole", _alpha_dump(g, i, removed, f))
    pattern = interlacing_pattern(f)
    expected = "Z" + "PZ" * f.den.degree
    if pattern != expected or f.num.degree != f.den.degree + 1:
        raise VerificationFailure(
            f"alpha zeros/poles do not interlace: {pattern!r}", _alpha_dump(g, i, removed, f)
        )
    return AlphaFunction(g, i, f, isolate_real_roots(f.num), isolate_real_roots(f.den) if f.den.degree > 0 else [], removed)


def _alpha_dump(g: Graph, i: int, removed: frozenset[int], f: RatFunc) -> dict:
    return {"graph6": to_graph6(g), "vertex": i, "removed": sorted(removed), "alpha": f.to_json()}


def sample_points(f: RatFunc, count: int) -> list[Fraction]:
    """Deterministic rational points spread over the root range, avoiding poles."""
    prod = f.num * f.den
    bound = root_bound(prod) if prod.degree > 0 else Fraction(2)
    bound += 1
    pts = []
    for k in range(count):
        x = -bound + 2 * bound * Fraction(2 * k + 1, 2 * count) + Fraction(1, 997)
        while f.den.sign_at(x) == 0:
            x += Fraction(1, 7919)
        pts.append(x)
    return pts


def alpha_branch_properties(a: AlphaFunction | RatFunc, sample_count: int = 50) -> dict:
    """Exact checks of the branch structure of an alpha function.

    Covers: squarefree numerator and denominator, real-rootedness, zero count
    one more than pole count, strict interlacing, and the derivative being at
    least one at ``sample_count`` rational points.
    """
    if sample_count < 1:
        raise DomainError("sample_count must be at least 1")
    f = a.value if isinstance(a, AlphaFunction) else a
    n, d = f.num, f.den
    simple_zeros = is_squarefree(n)
    simple_poles = is_squarefree(d)
    real_rooted = count_roots(n) == n.degree and (d.degree == 0 or count_roots(d) == d.degree)
    counts_ok = n.degree == d.degree + 1
    pattern = interlacing_pattern(f)
    interlacing = pattern == "Z" + "PZ" * d.degree
    deriv = f.derivative()
    values = [deriv(x) for x in sample_points(f, sample_count)]
    dmin = min(values)
    report = {
        "simple_zeros": simple_zeros,
        "simple_poles": simple_poles,
        "real_rooted": real_rooted,
        "zero_count": n.degree,
        "pole_count": d.degree,
        "count_ok": counts_ok,
        "pattern": pattern,
        "interlacing": interlacing,
        "samples": sample_count,
        "derivative_min": str(dmin),
        "derivative_ok": dmin >= 1,
    }
    report["ok"] = all(report[k] for k in (
        "simple_zeros", "simple_poles", "real_rooted", "count_ok", "interlacing", "derivative_ok"))
    return report


# ---------------------------------------------------------------------------
# lambda functions


@dataclass
class LambdaFunction:
    graph: Graph
    pair: tuple[int, int]
    value: RatFunc
    removed: frozenset[int] = frozenset()

    def __call__(self, theta) -> ExtendedValue:
        return ratfunc_eval_extended(self.value, theta)

    def square_structure(self) -> dict:
        num_root = polynomial_sqrt(-self.value.num)
        den_root = polynomial_sqrt(self.value.den)
        return {
            "numerator_is_minus_square": num_root is not None,
            "denominator_is_square": den_root is not None,
            "sqrt_numerator": None if num_root is None else num_root.to_json(),
            "sqrt_denominator": None if den_root is None else den_root.to_json(),
        }

    def to_json(self) -> dict:
        return {"graph6": to_graph6(self.graph), "pair": list(self.pair),
                "removed": sorted(self.removed), "value": self.value.to_json()}


def lambda_(g: Graph, i: int, j: int, removed: Iterable[int] = ()) -> LambdaFunction:
    removed = _fs(removed)
    f = lambda_of(g, i, j, removed)
    lam = LambdaFunction(g, (i, j), f, removed)
    sq = lam.square_structure()
    if not (sq["numerator_is_minus_square"] and sq["denominator_is_square"]):
        raise VerificationFailure("lambda lacks double zeros/poles", lam.to_json())
    return lam


lambda_function = lambda_


def lambda_nonpositive_on_samples(f: RatFunc, count: int = 20) -> bool:
    return all(f(x) <= 0 for x in sample_points(f, count))


# ---------------------------------------------------------------------------
# identities


def contraction_identity_details(g: Graph, i: int, j: int) -> dict[str, bool]:
    """Each identity linking alpha and lambda for the pair ``(i, j)``.

    Checks both contraction forms as rational-function equalities and in the
    cross-multiplied polynomial form, the two product forms of lambda, and the
    two product forms of ``phi(G) / phi(G - {i, j})``.

    The lambda product forms are ``alpha_j(G-i) (alpha_i(G) - alpha_i(G-j))``
    and its mirror. The variant with the deleted alphas swapped,
    :func:`swapped_lambda_product_check`, agrees with them only when
    ``alpha_i(G-j) == alpha_j(G-i)``, that is, for cospectral pairs.
    """
    if i == j:
        raise DomainError("contraction needs two distinct vertices")
    g.check_vertex(i, j)
    a_i, a_j = alpha_of(g, i), alpha_of(g, j)
    a_i_wo_j, a_j_wo_i = alpha_of(g, i, {j}), alpha_of(g, j, {i})
    lam = lambda_of(g, i, j)

    pg, pi, pj, pij = phi(g), phi(g, {i}), phi(g, {j}), phi(g, {i, j})
    s = path_sum_in(g, i, j, frozenset())
    ratio = RatFunc(pg, pij)
    return {
        "contraction_i": a_i == a_i_wo_j + lam / a_j_wo_i,
        "contraction_j": a_j == a_j_wo_i + lam / a_i_wo_j,
        # A/Bi = Bj/C - S^2/(C Bi)  <=>  A C = Bi Bj - S^2
        "contraction_cross_multiplied": pg * pij == pi * pj - s * s,
        "lambda_product_i": lam == a_j_wo_i * (a_i - a_i_wo_j),
        "lambda_product_j": lam == a_i_wo_j * (a_j - a_j_wo_i),
        "alpha_product_i": a_i * a_j_wo_i == ratio,
        "alpha_product_j": a_j * a_i_wo_j == ratio,
    }


def swapped_lambda_product_check(g: Graph, i: int, j: int) -> bool:
    """``lambda == alpha_i(G-j) (alpha_i(G) - alpha_j(G-i))`` and its mirror."""
    g.check_vertex(i, j)
    lam = lambda_of(g, i, j)
    a_i_wo_j, a_j_wo_i = alpha_of(g, i, {j}), alpha_of(g, j, {i})
    return (lam == a_i_wo_j * (alpha_of(g, i) - a_j_wo_i)
            and lam == a_j_wo_i * (alpha_of(g, j) - a_i_wo_j))


def contraction_identity_check(g: Graph, i: int, j: int) -> bool:
    return all(contraction_identity_details(g, i, j).values())


def alpha_criterion_strongly_cospectral(g: Graph, i: int, j: int) -> bool:
    """Strong cospectrality read off alpha functions.

    ``alpha_i(G) == alpha_j(G)``, and at every real zero of ``alpha_i(G - j)``
    or ``alpha_j(G - i)`` the common value ``alpha_i(G)`` is nonzero.
    """
    a_i, a_j = alpha_of(g, i), alpha_of(g, j)
    if a_i != a_j:
        return False
    for f in (alpha_of(g, i, {j}), alpha_of(g, j, {i})):
        if f.num.degree <= 0:
            continue
        for theta in isolate_real_roots(f.num):
            vi = ratfunc_eval_extended(a_i, theta)
            vj = ratfunc_eval_extended(a_j, theta)
            if not vi.equals(vj) or vi.is_zero:
                return False
    return True


# ---------------------------------------------------------------------------
# pointwise lemmas under the infinity conventions


def classify(value: ExtendedValue) -> str:
    if value.is_inf:
        return "pole"
    return "zero" if value.is_zero else "finite"


def extended_contraction_eval(g: Graph, i: int, j: int, theta, removed: Iterable[int] = ()) -> ExtendedValue:
    """Right side of the contraction identity evaluated pointwise.

    Requires ``lambda_ij(theta)`` finite. The result is checked against a
    direct evaluation of ``alpha_i`` and a mismatch raises.
    """
    removed = _fs(removed)
    point = as_point(theta)
    lam = ratfunc_eval_extended(lambda_of(g, i, j, removed), point)
    if lam.is_inf:
        raise PreconditionError("lambda has a pole here; use lambda_infinity_check")
    rhs = ratfunc_eval_extended(alpha_of(g, i, removed | {j}), point) + \
        lam / ratfunc_eval_extended(alpha_of(g, j, removed | {i}), point)
    direct = ratfunc_eval_extended(alpha_of(g, i, removed), point)
    if not rhs.equals(direct):
        raise VerificationFailure(
            "pointwise contraction identity fails",
            {"graph6": to_graph6(g), "i": i, "j": j, "removed": sorted(removed),
             "theta": point.to_json(), "rhs": rhs.to_json(), "direct": direct.to_json()},
        )
    return direct


def lambda_infinity_check(g: Graph, i: int, j: int, theta, removed: Iterable[int] = ()) -> bool:
    """At a pole of ``lambda_ij``: both deleted alphas have poles, and a pole of
    one full alpha forces a pole of the other."""
    removed = _fs(removed)
    point = as_point(theta)
    lam = ratfunc_eval_extended(lambda_of(g, i, j, removed), point)
    if not lam.is_inf:
        raise PreconditionError("theta is not a pole of lambda")
    first = (ratfunc_eval_extended(alpha_of(g, i, removed | {j}), point).is_inf
             and ratfunc_eval_extended(alpha_of(g, j, removed | {i}), point).is_inf)
    ai_inf = ratfunc_eval_extended(alpha_of(g, i, removed), point).is_inf
    aj_inf = ratfunc_eval_extended(alpha_of(g, j, removed), point).is_inf
    second = ai_inf == aj_inf
    return first and second


# ---------------------------------------------------------------------------
# the cut-vertex audit


def separates(g: Graph, v: int, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    if v in vs or len(set(vs)) != len(vs):
        return False
    removed = 1 << v
    comps = [component_of(g, x, removed) for x in vs]
    return all(not comps[a] >> vs[b] & 1 for a in range(len(vs)) for b in range(len(vs)) if a != b)


@dataclass
class _Check:
    hypothesis: bool
    conclusion: bool | None

    @property
    def holds(self) -> bool:
        return not self.hypothesis or bool(self.conclusion)

    def to_json(self) -> dict:
        return {"hypothesis": self.hypothesis, "conclusion": self.conclusion, "holds": self.holds}


@dataclass
class AuditReport:
    graph6: str
    v: int
    triple: tuple[int, int, int]
    cospectral: dict[str, bool]
    strongly_cospectral: dict[str, bool]
    transfer_identities: dict[str, bool]
    zeros: dict[str, list[dict]]
    records: list[dict] = field(default_factory=list)
    branch_counts: Counter = field(default_factory=Counter)
    violations: list[str] = field(default_factory=list)

    @property
    def pairwise_cospectral(self) -> bool:
        return all(self.cospectral.values())

    @property
    def pairwise_strongly_cospectral(self) -> bool:
        return all(self.strongly_cospectral.values())

    @property
    def obstructed(self) -> bool:
        """Some zero shows the pattern ruling out pairwise strong cospectrality."""
        return any(not r["cut_vertex_pattern"] for r in self.records)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "graph6": self.graph6,
            "v": self.v,
            "triple": list(self.triple),
            "cospectral": self.cospectral,
            "strongly_cospectral": self.strongly_cospectral,
            "transfer_identities": self.transfer_identities,
            "zeros": self.zeros,
            "records": self.records,
            "branch_counts": dict(sorted(self.branch_counts.items())),
            "obstructed": self.obstructed,
            "violations": self.violations,
        }


def key_lemma_audit(g: Graph, v: int, i: int, j: int, k: int) -> AuditReport:
    """Evaluate every quantity in the cut-vertex argument at the relevant zeros.

    ``v`` must put ``i``, ``j`` and ``k`` into three different components of
    ``G - v``. For each of the three vertices ``x`` (with the other two ``y``,
    ``z``) and each real zero ``theta`` of ``alpha_x(G - v)``, records the
    branch of ``lambda_uv(theta)`` for ``u`` in the triple, checks each
    conditional statement of the argument whose hypothesis holds at
    ``theta``, and runs the pointwise contraction checks. Any failed
    conclusion is listed in ``violations``.
    """
    g.check_vertex(v, i, j, k)
    if not separates(g, v, (i, j, k)):
        raise DomainError(f"vertex {v} does not separate {i}, {j}, {k} into distinct components")
    triple = (i, j, k)
    names = {i: "i", j: "j", k: "k"}

    def pair_key(a: int, b: int) -> str:
        return "".join(sorted(names[a] + names[b]))

    decisions = {pair_key(a, b): are_strongly_cospectral_exact(g, a, b)
                 for a, b in itertools.combinations(triple, 2)}
    cosp = {p: d.cospectral for p, d in decisions.items()}
    sc = {p: d.strongly_cospectral for p, d in decisions.items()}

    transfer = {}
    for x, y, z in _roles(triple):
        n = names[x]
        transfer[f"alpha_{n}"] = (alpha_of(g, x, {v}) == alpha_of(g, x, {v, y}) == alpha_of(g, x, {v, y, z}))
        transfer[f"lambda_{n}v"] = (lambda_of(g, x, v) == lambda_of(g, x, v, {y}) == lambda_of(g, x, v, {y, z}))

    report = AuditReport(
        graph6=to_graph6(g), v=v, triple=triple, cospectral=cosp, strongly_cospectral=sc,
        transfer_identities=transfer, zeros={},
    )
    for name, ok in transfer.items():
        if not ok:
            report.violations.append(f"transfer identity {name}")

    all_sc = all(sc.values())
    for x, y, z in _roles(triple):
        f = alpha_of(g, x, {v})
        zs = isolate_real_roots(f.num) if f.num.degree > 0 else []
        report.zeros[names[x]] = [r.to_json() for r in zs]
        for theta in zs:
            rec = _audit_point(g, v, x, y, z, theta, names, sc, cosp, all_sc, report)
            report.records.append(rec)

    if report.pairwise_cospectral and all_sc:
        report.violations.append("three pairwise strongly cospectral vertices separated by a cut vertex")
    if all_sc and report.obstructed:
        report.violations.append("cut-vertex zero pattern fails although all pairs are strongly cospectral")
    return report


def _roles(triple: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    i, j, k = triple
    return [(i, j, k), (j, i, k), (k, i, j)]


def _audit_point(g, v, x, y, z, theta, names, sc, cosp, all_sc, report) -> dict:
    def ev(u: int, removed: Iterable[int] = ()) -> ExtendedValue:
        return ratfunc_eval_extended(alpha_of(g, u, removed), theta)

    def lam(u: int) -> ExtendedValue:
        return ratfunc_eval_extended(lambda_of(g, u, v), theta)

    def eq(*vals: ExtendedValue) -> bool:
        return all(a.equals(b) for a, b in zip(vals, vals[1:]))

    def pk(a, b):
        return "".join(sorted(names[a] + names[b]))

    nx_, ny, nz = names[x], names[y], names[z]
    lam_x = lam(x)
    branches = {names[u]: classify(lam(u)) for u in (x, y, z)}
    for u_name, br in branches.items():
        report.branch_counts[br] += 1

    a_x_g, a_x_v, a_x_y, a_x_z = ev(x), ev(x, {v}), ev(x, {y}), ev(x, {z})
    a_v_g, a_v_y, a_v_z, a_v_yz = ev(v), ev(v, {y}), ev(v, {z}), ev(v, {y, z})
    a_y_g, a_y_v, a_y_z = ev(y), ev(y, {v}), ev(y, {z})
    a_z_g, a_z_v, a_z_y = ev(z), ev(z, {v}), ev(z, {y})
    lam_zero = lam_x.is_finite and lam_x.is_zero
    lam_nonzero = not lam_zero

    checks = {
        "lambda_zero_transfers_alpha": _Check(lam_zero, eq(a_x_g, a_x_v, a_x_y) and eq(a_x_v, a_x_z)),
        f"sc_{pk(x, y)}_forces_lambda_nonzero": _Check(sc[pk(x, y)], lam_nonzero),
        f"sc_{pk(x, z)}_forces_lambda_nonzero": _Check(sc[pk(x, z)], lam_nonzero),
        "lambda_nonzero_forces_v_pole": _Check(
            lam_nonzero, all(a.is_inf for a in (a_v_g, a_v_y, a_v_z, a_v_yz))),
        "lambda_nonzero_forces_equalities": _Check(
            lam_nonzero, eq(a_y_g, a_y_v, a_y_z) and eq(a_z_g, a_z_v, a_z_y)),
        "cospectral_common_value": _Check(
            lam_nonzero and cosp[pk(y, z)], eq(a_y_z, a_y_v, a_y_g, a_z_g, a_z_v, a_z_y)),
        "strongly_cospectral_common_value_nonzero": _Check(
            lam_nonzero and sc[pk(y, z)], not a_y_g.is_zero),
    }
    pattern = eq(a_y_v, a_z_v) and not a_y_v.is_zero
    checks["cut_vertex_zero_lemma"] = _Check(all_sc, pattern)

    # pointwise contraction at theta for each (u, v), split by lambda branch
    pointwise = {}
    for u in (x, y, z):
        if branches[names[u]] == "pole":
            pointwise[names[u]] = lambda_infinity_check(g, u, v, theta)
        else:
            try:
                extended_contraction_eval(g, u, v, theta)
                pointwise[names[u]] = True
            except VerificationFailure:
                pointwise[names[u]] = False

    for name, c in checks.items():
        if not c.holds:
            report.violations.append(f"{name} at zero of alpha_{nx_}(G-v)")
    for name, ok in pointwise.items():
        if not ok:
            report.violations.append(f"pointwise contraction for ({name}, v) at zero of alpha_{nx_}(G-v)")

    return {
        "role": nx_,
        "others": [ny, nz],
        "theta": theta.to_json(),
        "lambda_branch": branches,
        "values": {
            f"alpha_{ny}(G-v)": a_y_v.to_json(),
            f"alpha_{nz}(G-v)": a_z_v.to_json(),
            f"alpha_{nx_}(G)": a_x_g.to_json(),
            "alpha_v(G)": a_v_g.to_json(),
        },
        "checks": {name: c.to_json() for name, c in checks.items()},
        "pointwise_contraction": pointwise,
        "cut_vertex_pattern": pattern,
    }
