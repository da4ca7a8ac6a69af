"""Degree, branching, exceptional values and total curvature of the Gauss map."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ClassificationError, ConstantGaussMap, MinlagError, PreconditionError
from .polynomial import Polynomial, roots
from .quadrature import DEFAULT_MAX_EVALS, adaptive_quad2d
from .rational import ComplexRational, Divisor
from .sphere import INF, chordal, point_key
from .structure import GENUS, DEFAULT_SEED, completeness_check, period_check
from .weierstrass import WeierstrassData, regularity_check, rotate

MATCH_TOL = 1e-8


def _require_nonconstant(g: ComplexRational) -> None:
    if g.is_constant():
        raise ConstantGaussMap()


def gauss_degree(d: WeierstrassData) -> int:
    """Degree of ``g`` as a map of the sphere."""
    _require_nonconstant(d.g)
    return d.g.degree


# ---------------------------------------------------------------------
# preimages and exceptional values


def preimages(g: ComplexRational, alpha) -> list[tuple[object, int]]:
    """Solutions of ``g(z) = alpha`` on the sphere, with multiplicity."""
    _require_nonconstant(g)
    deg = g.degree
    if alpha is INF:
        out = list(g.poles())
        extra = g.num.degree - g.den.degree
    else:
        alpha = complex(alpha)
        p = g.num - alpha * g.den
        # leading terms cancelled up to round-off when alpha = g(∞)
        scale = g.num.scale() + abs(alpha) * g.den.scale()
        p = p.trim(1e-12 * scale / max(p.scale(), 1e-300))
        out = [] if p.is_constant() else roots(p)
        extra = deg - max(p.degree, 0)
    if extra > 0:
        out.append((INF, extra))
    return out


@dataclass(frozen=True)
class ValueCertificate:
    value: object
    preimages: tuple  # (point, multiplicity, at_puncture)
    omitted: bool


@dataclass(frozen=True)
class ExceptionalReport:
    omitted: tuple
    certificates: tuple

    @property
    def D_g(self) -> int:
        return len(self.omitted)


def exceptional_values(d: WeierstrassData) -> ExceptionalReport:
    """Values of the sphere not attained by ``g`` on the punctured sphere.

    A value can only be missed if all its preimages are punctures, so the
    candidates are the values of ``g`` at the punctures.
    """
    _require_nonconstant(d.g)
    candidates = []
    for p in d.punctures:
        v = d.g.value_at(p)
        if not any(chordal(v, c) <= MATCH_TOL for c in candidates):
            candidates.append(v)
    certs = []
    for alpha in sorted(candidates, key=point_key):
        pre = preimages(d.g, alpha)
        rows = tuple((p, m, d.is_puncture(p, MATCH_TOL)) for p, m in sorted(pre, key=lambda t: point_key(t[0])))
        certs.append(ValueCertificate(alpha, rows, all(flag for _, _, flag in rows)))
    omitted = tuple(c.value for c in certs if c.omitted)
    return ExceptionalReport(omitted, tuple(certs))


# ---------------------------------------------------------------------
# branching


class RiemannHurwitzViolation(MinlagError, AssertionError):
    code = "RiemannHurwitzViolation"


def _branch_order_at_zero_of_chart(G: ComplexRational) -> int:
    """Branching order of ``G`` at ``w = 0``."""
    v = G.order_at(0j)
    if v < 0:
        return -v - 1
    dG = G.derivative()
    return dG.order_at(0j) if not dG.is_zero() else 0


def branching_orders(g: ComplexRational) -> tuple[Divisor, int]:
    """Branching divisor of ``g`` on the sphere and its total ``n_g``.

    Raises
    ------
    RiemannHurwitzViolation
        If ``n_g != 2 (d - 1)``.
    """
    _require_nonconstant(g)
    entries: dict = {}
    dg = g.derivative()
    for r, m in dg.zeros():
        entries[r] = entries.get(r, 0) + m
    for r, m in g.poles():
        if m > 1:
            entries[r] = entries.get(r, 0) + m - 1
    b_inf = _branch_order_at_zero_of_chart(g.at_infinity_chart())
    if b_inf:
        entries[INF] = b_inf
    div = Divisor(entries)
    n_g = div.degree
    expected = 2 * (g.degree + GENUS - 1)
    if n_g != expected:
        raise RiemannHurwitzViolation(f"total branching {n_g} != 2(d + γ - 1) = {expected}")
    return div, n_g


def branching_at(g: ComplexRational, p) -> int:
    """Local branching order (multiplicity minus one) of ``g`` at ``p``."""
    if p is INF:
        return _branch_order_at_zero_of_chart(g.at_infinity_chart())
    v = g.order_at(p)
    if v < 0:
        return -v - 1
    dg = g.derivative()
    return max(dg.order_at(p), 0)


# ---------------------------------------------------------------------
# verified-surface checks


@dataclass(frozen=True)
class Verification:
    regular: bool
    period: bool
    complete: bool
    reasons: tuple

    @property
    def passed(self) -> bool:
        return self.regular and self.period and self.complete


def verify(d: WeierstrassData, seed: int = DEFAULT_SEED) -> Verification:
    """Regularity, single-valuedness and completeness in one pass."""
    reasons = []
    reg = regularity_check(d)
    reasons += [e.detail() for e in reg.issues]
    try:
        per = period_check(d)
        per_ok = per.passed
        reasons += [e.detail() for e in per.failures()]
    except MinlagError as exc:
        per_ok = False
        reasons.append(exc.detail())
    try:
        comp = completeness_check(d, seed=seed)
        comp_ok = comp.complete and not comp.simple_pole_ends
        if not comp.complete:
            reasons.append({"code": "Incomplete", "message": "the 1-form is regular at some end"})
    except MinlagError as exc:
        comp_ok = False
        reasons.append(exc.detail())
    return Verification(reg.passed, per_ok, comp_ok, tuple(reasons))


def _require_verified(d: WeierstrassData, seed: int) -> None:
    v = verify(d, seed)
    if not v.passed:
        raise PreconditionError(f"data is not a verified complete surface: {[r['code'] for r in v.reasons]}")


@dataclass(frozen=True)
class ExceptionalBoundCheck:
    D_g: int
    n0: int
    n_g: int
    k: int
    d: int
    inv_R: Fraction
    bound: Fraction
    chain: tuple  # (D_g, (n0+k)/d, (n_g+k)/d, 2 + 2/R)
    chain_pass: bool
    inv_R_below_half: bool

    @property
    def passed(self) -> bool:
        return self.chain_pass and self.inv_R_below_half


def kkm_bound_check(d: WeierstrassData, seed: int = DEFAULT_SEED, verified: bool = False) -> ExceptionalBoundCheck:
    """``D_g <= (n0 + k)/d <= (n_g + k)/d = 2 + 2/R`` with ``1/R < 1/2``."""
    if not verified:
        _require_verified(d, seed)
    _require_nonconstant(d.g)
    report = exceptional_values(d)
    n0 = sum(m - 1 for c in report.certificates if c.omitted for _, m, _ in c.preimages)
    _, n_g = branching_orders(d.g)
    k = len(d.punctures)
    deg = d.g.degree
    inv_R = Fraction(2 * (GENUS - 1) + k, 2 * deg)
    bound = 2 + 2 * inv_R
    mid = Fraction(n0 + k, deg)
    outer = Fraction(n_g + k, deg)
    chain_ok = report.D_g <= mid <= outer and outer == bound
    return ExceptionalBoundCheck(report.D_g, n0, n_g, k, deg, inv_R, bound, (report.D_g, mid, outer, bound), chain_ok, inv_R < Fraction(1, 2))


@dataclass(frozen=True)
class ChernOssermanCheck:
    lhs: int
    rhs: int
    passed: bool
    equality: bool


def chern_osserman_check(d: WeierstrassData, seed: int = DEFAULT_SEED, verified: bool = False) -> ChernOssermanCheck:
    """``d >= 2γ - 2 + 2k``; equality flags embedded (catenoid or planar) ends."""
    if not verified:
        _require_verified(d, seed)
    lhs = gauss_degree(d)
    rhs = 2 * GENUS - 2 + 2 * len(d.punctures)
    return ChernOssermanCheck(lhs, rhs, lhs >= rhs, lhs == rhs)


# ---------------------------------------------------------------------
# total curvature


def total_curvature_exact(d: WeierstrassData) -> float:
    """``-2π deg g``."""
    return -2.0 * math.pi * gauss_degree(d)


@dataclass(frozen=True)
class CurvatureTotals:
    exact: float
    numeric: float
    abs_error: float
    estimate: float
    evaluations: int


def _density(num: Polynomial, den: Polynomial):
    """``2 |g'|^2 / (1 + |g|^2)^2`` written through ``g = num/den`` (pole free)."""
    dn, dd = num.derivative(), den.derivative()

    def f(r, theta):
        z = r * np.exp(1j * theta)
        n, d_ = num(z), den(z)
        w = dn(z) * d_ - n * dd(z)
        return r * 2.0 * np.abs(w) ** 2 / (np.abs(n) ** 2 + np.abs(d_) ** 2) ** 2

    return f


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MLS_THREADS", "2")))
    except ValueError:
        return 1


def curvature_density_charts(g: ComplexRational):
    """Densities on the closed unit disks of the ``z`` and ``w = 1/z`` charts (polar form)."""
    deg = g.degree
    return (
        _density(g.num, g.den),
        _density(g.num.reversed(deg), g.den.reversed(deg)),
    )


def total_curvature_numeric(d: WeierstrassData, tol: float = 1e-6, max_evals: int = DEFAULT_MAX_EVALS) -> CurvatureTotals:
    """Integrate ``-(1/2) (2|g'|/(1+|g|^2))^2`` over both unit-disk charts.

    The density extends smoothly across punctures, so they are integrated
    over.  ``tol`` is relative to ``|exact|``.
    """
    if d.g.is_constant():
        return CurvatureTotals(0.0, 0.0, 0.0, 0.0, 0)
    exact = total_curvature_exact(d)
    target = 0.25 * tol * abs(exact)
    charts = curvature_density_charts(d.g)

    def run(f):
        return adaptive_quad2d(f, 0.0, 1.0, 0.0, 2 * math.pi, abs_tol=target, max_evals=max_evals // 2, initial=(2, 4))

    if _threads() > 1:
        with ThreadPoolExecutor(max_workers=2) as pool:
            results = list(pool.map(run, charts))
    else:
        results = [run(f) for f in charts]
    numeric = -(results[0].value + results[1].value)
    return CurvatureTotals(
        exact=exact,
        numeric=numeric,
        abs_error=abs(numeric - exact),
        estimate=results[0].error + results[1].error,
        evaluations=results[0].evaluations + results[1].evaluations,
    )


# ---------------------------------------------------------------------
# total curvature -2π


@dataclass(frozen=True)
class Minus2PiClassification:
    a: complex
    b: complex
    c: complex
    rotation: tuple
    reparametrization: np.ndarray
    omega_normalized: ComplexRational


def _rotation_to_infinity(alpha) -> tuple[complex, complex]:
    """Unitary ``(a, b)`` whose rotation sends ``alpha`` to ∞."""
    if alpha is INF:
        return 1 + 0j, 0j
    b = 1.0 / math.sqrt(1.0 + abs(alpha) ** 2)
    return complex(-np.conj(alpha) * b), complex(b)


def classify_minus_2pi(d: WeierstrassData, seed: int = DEFAULT_SEED, verified: bool = False):
    """Normal form ``(F1, F2) = (a z^2 + b, 2 a z + c)`` for total curvature -2π.

    Returns ``None`` when the total curvature is not -2π.

    Raises
    ------
    ClassificationError
        If a clause of the classification fails on data claimed to be valid.
    """
    if d.is_plane() or d.g.degree != 1:
        return None
    if not verified:
        _require_verified(d, seed)
    k = len(d.punctures)
    if k != 1:
        raise ClassificationError(f"k = {k}, but d = 1 forces exactly one end")
    alpha = d.g.value_at(d.punctures[0])
    a_rot, b_rot = _rotation_to_infinity(alpha)
    rd = rotate(d, a_rot, b_rot)
    n0, n1 = (list(rd.g.num.coeffs) + [0j, 0j])[:2]
    d0, d1 = (list(rd.g.den.coeffs) + [0j, 0j])[:2]
    # inverse Möbius map zeta -> z of g~ = (n1 z + n0)/(d1 z + d0)
    inv = np.array([[d0, -n0], [-d1, n1]], dtype=complex)
    det = d0 * n1 - n0 * d1
    jac = ComplexRational(Polynomial([det]), Polynomial([inv[1, 1], inv[1, 0]]) ** 2)
    g_new = rd.g.compose_mobius(inv[0, 0], inv[0, 1], inv[1, 0], inv[1, 1])
    if not g_new.allclose(ComplexRational.z(), atol=1e-9):
        raise ClassificationError(f"normalized Gauss map is {g_new}, not z")
    h_new = rd.omega.compose_mobius(inv[0, 0], inv[0, 1], inv[1, 0], inv[1, 1]) * jac
    if not h_new.is_constant():
        raise ClassificationError(f"normalized 1-form coefficient {h_new} is not constant")
    a = complex(h_new.value_at(0j)) / 2
    origin = _mobius_point(inv, 0j)
    c1, c2 = rd.constants
    G1 = rd.g_omega.antiderivative()
    G2 = rd.omega.antiderivative()
    b = complex(G1.value_at(origin)) + c1
    c = complex(G2.value_at(origin)) + c2
    return Minus2PiClassification(a, b, c, (a_rot, b_rot), inv, h_new)


def _mobius_point(m: np.ndarray, z):
    num = m[0, 0] * z + m[0, 1]
    den = m[1, 0] * z + m[1, 1]
    if den == 0:
        return INF
    return complex(num / den)
