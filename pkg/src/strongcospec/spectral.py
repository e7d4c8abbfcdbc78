"""Arbitrary-precision spectral decompositions and eigenprojector entries.

This is the floating-point side of the package, kept deliberately separate
from the exact decision procedures so that it can serve as an independent
check on them. Eigenvalue multiplicities always come from the exact
squarefree decomposition of the characteristic polynomial; numeric
eigenvalues only have to agree with that data, and when they do not the
computation is retried at twice the precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath

from .charpoly import charpoly
from .cospectral import path_sum_poly, phi
from .errors import DomainError, InfiniteEntryError, PrecisionError
from .graphs import Graph
from .poly import IntPoly, squarefree_decomposition
from .realroots import RealRoot, isolate_real_roots

DEFAULT_PRECISION = 128
MAX_PRECISION = 1024


def exact_spectrum(g: Graph) -> list[tuple[RealRoot, int]]:
    """Distinct eigenvalues in decreasing order, with exact multiplicities."""
    if g.n == 0:
        return []
    out = []
    for mult, factor in enumerate(squarefree_decomposition(charpoly(g)), start=1):
        if factor.degree > 0:
            out.extend((r, mult) for r in isolate_real_roots(factor))
    out.sort(key=lambda rm: float(rm[0]), reverse=True)
    # float ordering can only be wrong for nearly equal roots; confirm exactly
    for a in range(len(out) - 1):
        if out[a][0].compare(out[a + 1][0]) <= 0:
            out.sort(key=_CmpKey, reverse=True)
            break
    return out


class _CmpKey:
    __slots__ = ("root",)

    def __init__(self, rm: tuple[RealRoot, int]):
        self.root = rm[0]

    def __lt__(self, other: _CmpKey) -> bool:
        return self.root.compare(other.root) < 0


def adjacency_matrix(g: Graph) -> mpmath.matrix:
    a = mpmath.matrix(g.n, g.n)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    return a


@dataclass
class SpectralDecomposition:
    eigenvalues: list[mpmath.mpf]
    multiplicities: list[int]
    projectors: list[mpmath.matrix]
    precision_bits: int
    tolerance: mpmath.mpf
    exact: list[RealRoot] = field(default_factory=list, repr=False)

    @property
    def n(self) -> int:
        return sum(self.multiplicities)

    def to_json(self) -> dict:
        digits = int(self.precision_bits * math.log10(2)) + 1
        with mpmath.workprec(self.precision_bits):
            return {
                "precision_bits": self.precision_bits,
                "tolerance": mpmath.nstr(self.tolerance, 6),
                "eigenvalues": [mpmath.nstr(x, digits) for x in self.eigenvalues],
                "multiplicities": self.multiplicities,
                "projectors": [
                    [[mpmath.nstr(e[a, b], digits) for b in range(e.cols)] for a in range(e.rows)]
                    for e in self.projectors
                ],
            }


def _max_abs(m: mpmath.matrix) -> mpmath.mpf:
    return max((abs(m[a, b]) for a in range(m.rows) for b in range(m.cols)), default=mpmath.mpf(0))


def check_decomposition(dec: SpectralDecomposition, g: Graph) -> dict[str, mpmath.mpf]:
    """Largest entrywise residual of each projector identity."""
    n = g.n
    with mpmath.workprec(dec.precision_bits + 32):
        ident = mpmath.eye(n)
        total = mpmath.zeros(n, n)
        recon = mpmath.zeros(n, n)
        idem = mpmath.mpf(0)
        orth = mpmath.mpf(0)
        for r, e in enumerate(dec.projectors):
            total += e
            recon += dec.eigenvalues[r] * e
            idem = max(idem, _max_abs(e * e - e))
            for s in range(r + 1, len(dec.projectors)):
                orth = max(orth, _max_abs(e * dec.projectors[s]))
        return {
            "sum_identity": _max_abs(total - ident),
            "reconstruction": _max_abs(recon - adjacency_matrix(g)),
            "idempotence": idem,
            "orthogonality": orth,
            "trace_multiplicity": max(
                (abs(sum(e[a, a] for a in range(n)) - m) for e, m in zip(dec.projectors, dec.multiplicities)),
                default=mpmath.mpf(0),
            ),
        }


def eigendecompose(g: Graph, precision_bits: int = DEFAULT_PRECISION) -> SpectralDecomposition:
    """Spectral decomposition ``A = sum_r theta_r E_r`` with exact multiplicities.

    Numeric eigenvalues are matched to the exactly isolated roots of the
    characteristic polynomial; a mismatch in cluster sizes, or a projector
    identity off by more than ``2**(-precision_bits / 2)``, triggers a retry at
    doubled precision, up to :data:`MAX_PRECISION` bits.
    """
    if precision_bits < 64:
        raise DomainError("precision_bits must be at least 64")
    spectrum = exact_spectrum(g)
    prec = precision_bits
    while True:
        dec = _decompose_at(g, spectrum, prec, precision_bits)
        if dec is not None:
            return dec
        if prec >= MAX_PRECISION:
            raise PrecisionError(f"could not certify the decomposition at {prec} bits")
        prec *= 2


def _decompose_at(g: Graph, spectrum, prec: int, requested: int) -> SpectralDecomposition | None:
    n = g.n
    with mpmath.workprec(prec):
        tol = mpmath.mpf(2) ** (-(requested // 2))
        exact_vals = [r.approx(prec) for r, _ in spectrum]
        if n == 0:
            return SpectralDecomposition([], [], [], prec, tol, [])
        evals, evecs = mpmath.eigsy(adjacency_matrix(g))
        groups: list[list[int]] = [[] for _ in spectrum]
        for col in range(n):
            lam = evals[col]
            dists = [abs(lam - x) for x in exact_vals]
            best = min(range(len(dists)), key=dists.__getitem__)
            if dists[best] > tol:
                return None
            groups[best].append(col)
        if [len(gr) for gr in groups] != [m for _, m in spectrum]:
            return None
        projectors = []
        for gr in groups:
            e = mpmath.zeros(n, n)
            for col in gr:
                for a in range(n):
                    va = evecs[a, col]
                    for b in range(n):
                        e[a, b] += va * evecs[b, col]
            projectors.append(e)
        dec = SpectralDecomposition(exact_vals, [m for _, m in spectrum], projectors, prec, tol,
                                    [r for r, _ in spectrum])
    residuals = check_decomposition(dec, g)
    if max(residuals.values()) >= tol:
        return None
    return dec


# ---------------------------------------------------------------------------
# projector entries from characteristic polynomials


def _residue(numer: IntPoly, g: Graph, r: int, prec: int) -> mpmath.mpf:
    """Residue of ``numer / phi(G)`` at the r-th largest eigenvalue.

    With ``m`` the exact multiplicity of ``theta``, the residue is
    ``m * numer^(m-1)(theta) / phi^(m)(theta)`` provided ``numer`` vanishes to
    order at least ``m - 1``. Its sign is read from exact sign tests.
    """
    spectrum = exact_spectrum(g)
    if not 0 <= r < len(spectrum):
        raise DomainError(f"eigenvalue index {r} out of range 0..{len(spectrum) - 1}")
    theta, m = spectrum[r]
    p = charpoly(g)
    q = numer
    for _ in range(m - 1):
        if theta.sign_of(q) != 0:
            raise InfiniteEntryError(f"pole of order above one at eigenvalue index {r}")
        q = q.derivative()
    pm = p
    for _ in range(m):
        pm = pm.derivative()
    sign = theta.sign_of(q) * theta.sign_of(pm)
    if sign == 0:
        return mpmath.mpf(0)
    with mpmath.workprec(prec + 32):
        x = theta.approx(prec + 32)
        val = abs(m * q(x) / pm(x))
    return val if sign > 0 else -val


def projector_entry_diag(g: Graph, i: int, r: int, precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """``(E_r)_{ii}`` as the residue of ``phi(G - i) / phi(G)`` at ``theta_r``."""
    g.check_vertex(i)
    return _residue(phi(g, {i}), g, r, precision_bits)


def projector_entry_offdiag(g: Graph, i: int, j: int, r: int,
                            precision_bits: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """``(E_r)_{ij}`` as the residue of the path-sum polynomial over ``phi(G)``.

    The path sum is the signed square root of
    ``phi(G-i) phi(G-j) - phi(G-{i,j}) phi(G)``, so no sign is lost.
    """
    return _residue(path_sum_poly(g, i, j), g, r, precision_bits)


# ---------------------------------------------------------------------------
# numeric strong cospectrality


@dataclass
class NumericDecision:
    i: int
    j: int
    verdict: bool | None
    signature: list[int] | None
    precision_bits: int
    max_margin: str = ""

    @property
    def indeterminate(self) -> bool:
        return self.verdict is None

    def to_json(self) -> dict:
        return {
            "vertices": [self.i, self.j],
            "strongly_cospectral": self.verdict,
            "signature": self.signature,
            "precision_bits": self.precision_bits,
        }


def _compare_columns(dec: SpectralDecomposition, i: int, j: int) -> tuple[bool | None, list[int]]:
    tol = dec.tolerance
    signature = []
    verdict: bool | None = True
    n = dec.n
    for e in dec.projectors:
        with mpmath.workprec(dec.precision_bits):
            diff = max(abs(e[a, j] - e[a, i]) for a in range(n))
            summ = max(abs(e[a, j] + e[a, i]) for a in range(n))
        best = min(diff, summ)
        if best < tol:
            # a vanishing column matches both signs; report +1 then
            signature.append(1 if diff < tol else -1)
        elif best < 10 * tol:
            verdict = None
            signature.append(0)
        else:
            if verdict is not None:
                verdict = False
            signature.append(0)
    return verdict, signature


def strongly_cospectral_numeric(g: Graph, i: int, j: int,
                                precision_bits: int = DEFAULT_PRECISION) -> NumericDecision:
    """Test ``E_r e_i = +-E_r e_j`` for every eigenprojector at the given precision.

    With ``i < j`` the signature holds the sign ``s_r`` with
    ``E_r e_j = s_r E_r e_i``. Comparisons within ten times the tolerance of
    the threshold escalate the precision; at :data:`MAX_PRECISION` they give
    an indeterminate verdict (``verdict is None``).
    """
    g.check_vertex(i, j)
    if i == j:
        raise DomainError("a vertex pair needs two distinct vertices")
    i, j = min(i, j), max(i, j)
    prec = precision_bits
    while True:
        dec = eigendecompose(g, prec)
        verdict, signature = _compare_columns(dec, i, j)
        if verdict is not None or prec >= MAX_PRECISION:
            return NumericDecision(i, j, verdict, signature if verdict else None, prec)
        prec *= 2


def parity_consistency(dec: SpectralDecomposition, i: int, j: int, signature: list[int]) -> mpmath.mpf:
    """Largest ``|s_r (E_r)_{ii} - (E_r)_{ij}|`` over all eigenvalues."""
    with mpmath.workprec(dec.precision_bits):
        return max((abs(s * e[i, i] - e[i, j]) for s, e in zip(signature, dec.projectors)),
                   default=mpmath.mpf(0))


def all_numeric_decisions(g: Graph, precision_bits: int = DEFAULT_PRECISION) -> dict[tuple[int, int], NumericDecision]:
    """Numeric verdicts for every pair, sharing one decomposition per precision."""
    out = {}
    dec = eigendecompose(g, precision_bits) if g.n else None
    for i in range(g.n):
        for j in range(i + 1, g.n):
            verdict, signature = _compare_columns(dec, i, j)
            if verdict is None:
                out[(i, j)] = strongly_cospectral_numeric(g, i, j, precision_bits * 2)
            else:
                out[(i, j)] = NumericDecision(i, j, verdict, signature if verdict else None, dec.precision_bits)
    return out

