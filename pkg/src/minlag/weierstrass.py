"""Weierstrass data ``(h dz, g)`` of minimal Lagrangian surfaces in C^2.

The immersion is ``f = e^{iβ/2}/√2 (F1 - i conj(F2), F2 + i conj(F1))`` for a
holomorphic curve ``(F1, F2)``; with ``S1 = F2'`` and ``S2 = -F1'`` the data
are ``g = -S2/S1`` and ``h = S1``.  The induced metric is
``|h|^2 (1 + |g|^2) |dz|^2`` and its curvature
``-2 |g'|^2 / (|h|^2 (1 + |g|^2)^3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import CommonZero, MissingPuncture, PreconditionError, Unbounded
from .rational import ComplexRational
from .sphere import INF, as_point, chordal, point_key

PUNCTURE_TOL = 1e-8


def one_form_order(h: ComplexRational, p) -> int:
    """Order of the 1-form ``h dz`` at a sphere point (``dz = -dw/w^2`` at ∞)."""
    if h.is_zero():
        raise ValueError("order of the zero 1-form is undefined")
    if p is INF:
        return h.order_at(INF) - 2
    return h.order_at(p)


@dataclass(frozen=True, eq=False)
class WeierstrassData:
    """Gauss map ``g``, 1-form coefficient ``omega`` and the punctures.

    ``constants`` are the additive constants ``(c1, c2)`` of the primitives
    ``F1 = ∫ g omega dz + c1`` and ``F2 = ∫ omega dz + c2``.
    """

    g: ComplexRational
    omega: ComplexRational
    punctures: tuple = ()
    beta: float = 0.0
    constants: tuple[complex, complex] = (0j, 0j)
    name: str = ""
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.omega.is_zero():
            raise ValueError("omega must not vanish identically")
        pts = []
        for p in self.punctures:
            p = as_point(p)
            if any(chordal(p, q) <= PUNCTURE_TOL for q in pts):
                raise ValueError(f"duplicate puncture {p}")
            pts.append(p)
        object.__setattr__(self, "punctures", tuple(sorted(pts, key=point_key)))
        object.__setattr__(self, "beta", float(self.beta) % (2 * math.pi))
        object.__setattr__(self, "constants", tuple(complex(c) for c in self.constants))

    # -- derived rationals ----------------------------------------------
    @cached_property
    def g_omega(self) -> ComplexRational:
        """Reduced product ``g * omega`` (coefficient of ``F1'``)."""
        return self.g * self.omega

    @cached_property
    def dg(self) -> ComplexRational:
        return self.g.derivative()

    @cached_property
    def inv_g(self) -> ComplexRational:
        return ComplexRational.constant(1.0) / self.g

    @cached_property
    def d_inv_g(self) -> ComplexRational:
        return self.inv_g.derivative()

    @property
    def S1(self) -> ComplexRational:
        return self.omega

    @property
    def S2(self) -> ComplexRational:
        return -self.g_omega

    def is_plane(self) -> bool:
        """Constant Gauss map: the Lagrangian plane, with ``K ≡ 0``."""
        return self.g.is_constant()

    def is_puncture(self, p, tol: float = PUNCTURE_TOL) -> bool:
        return any(chordal(p, q) <= tol for q in self.punctures)

    def with_(self, **changes) -> "WeierstrassData":
        kw = dict(
            g=self.g,
            omega=self.omega,
            punctures=self.punctures,
            beta=self.beta,
            constants=self.constants,
            name=self.name,
            notes=self.notes,
        )
        kw.update(changes)
        return WeierstrassData(**kw)


def from_holomorphic_curve(
    F1: ComplexRational,
    F2: ComplexRational,
    punctures=(),
    beta: float = 0.0,
    name: str = "",
) -> WeierstrassData:
    """Weierstrass data of the curve ``(F1, F2)``.

    Raises
    ------
    CommonZero
        If ``F1'`` and ``F2'`` vanish together at a point that is not a
        puncture.
    """
    S1 = F2.derivative()
    S2 = -F1.derivative()
    if S1.is_zero() and S2.is_zero():
        raise PreconditionError("S1 and S2 both vanish identically")
    if S1.is_zero():
        raise PreconditionError("S1 = F2' vanishes identically; h dz would be zero")
    pts = tuple(as_point(p) for p in punctures)

    def at_puncture(p):
        return any(chordal(p, q) <= PUNCTURE_TOL for q in pts)

    if not S2.is_zero():
        for r, _ in S1.zeros():
            if not at_puncture(r) and S2.order_at(r) > 0:
                raise CommonZero(r)
        if not at_puncture(INF) and one_form_order(S1, INF) > 0 and one_form_order(S2, INF) > 0:
            raise CommonZero(INF)
    g = -S2 / S1
    data = WeierstrassData(g=g, omega=S1, punctures=pts, beta=beta, name=name)
    G1 = data.g_omega.antiderivative() if _log_free(data.g_omega) else None
    G2 = S1.antiderivative() if _log_free(S1) else None
    c1 = _offset(F1, G1, pts)
    c2 = _offset(F2, G2, pts)
    return data.with_(constants=(c1, c2))


def _log_free(r: ComplexRational) -> bool:
    from .errors import NonzeroResidue

    try:
        r.antiderivative()
    except NonzeroResidue:
        return False
    return True


def _offset(F: ComplexRational, G: ComplexRational | None, pts) -> complex:
    """Constant ``F - G`` read off at a point regular for both."""
    if G is None:
        return 0j
    for z0 in (0.0, 1.0, 1j, -1.0, 0.5 + 0.25j, 2.0):
        if F.order_at(z0) >= 0 and G.order_at(z0) >= 0:
            return complex(F.value_at(z0) - G.value_at(z0))
    return 0j


# ---------------------------------------------------------------------
# regularity


@dataclass(frozen=True)
class RegularityVerdict:
    passed: bool
    issues: tuple = ()

    def __bool__(self):
        return self.passed


def regularity_check(d: WeierstrassData) -> RegularityVerdict:
    """The metric ``|omega|^2 + |g omega|^2`` is finite and nonzero off the punctures.

    At every non-puncture point the smaller of the two 1-form orders of
    ``omega`` and ``g omega`` must be zero: positive means ``S1 = S2 = 0``
    (degenerate metric), negative means a pole that should be a puncture.
    """
    issues = []
    forms = [d.omega] + ([] if d.g_omega.is_zero() else [d.g_omega])
    candidates = []
    for form in forms:
        candidates += [r for r, _ in form.zeros()] + [r for r, _ in form.poles()]
    candidates.append(INF)
    seen = []
    for p in candidates:
        if d.is_puncture(p) or any(chordal(p, q) <= PUNCTURE_TOL for q in seen):
            continue
        seen.append(p)
        order = min(one_form_order(f, p) for f in forms)
        if order > 0:
            issues.append(CommonZero(p))
        elif order < 0:
            issues.append(MissingPuncture(p, f"MissingPuncture: pole of the data at {p}"))
    return RegularityVerdict(not issues, tuple(issues))


# ---------------------------------------------------------------------
# pointwise metric quantities


@dataclass(frozen=True)
class MetricSample:
    point: complex
    conformal_factor: float
    gauss_curvature: float


def _finite(r: ComplexRational, p: complex) -> complex:
    v = r.value_at(p)
    if v is INF:
        raise Unbounded(p)
    return complex(v)


def _check_point(d: WeierstrassData, p: complex) -> complex:
    p = complex(p)
    if d.is_puncture(p):
        raise PreconditionError(f"{p} is a puncture")
    return p


def metric_factor(d: WeierstrassData, p: complex) -> float:
    """``|h|^2 (1 + |g|^2)`` at ``p``, evaluated as ``|h|^2 + |g h|^2``.

    Working with the reduced product ``g h`` resolves the matched
    pole/zero pairs exactly.
    """
    p = _check_point(d, p)
    h = _finite(d.omega, p)
    gh = _finite(d.g_omega, p)
    return abs(h) ** 2 + abs(gh) ** 2


def gauss_curvature(d: WeierstrassData, p: complex) -> float:
    """``-2|g'|^2 / (|h|^2 (1+|g|^2)^3)``.

    At a pole of ``g`` the equivalent form in ``u = 1/g`` is used:
    ``-2|u'|^2 / (|g h|^2 (1+|u|^2)^3)``.
    """
    p = _check_point(d, p)
    if d.is_plane():
        metric_factor(d, p)
        return 0.0
    gval = d.g.value_at(p)
    if gval is INF:
        u = complex(d.inv_g.value_at(p))
        du = _finite(d.d_inv_g, p)
        gh = _finite(d.g_omega, p)
        denom = abs(gh) ** 2 * (1 + abs(u) ** 2) ** 3
        if denom == 0:
            raise Unbounded(p, f"degenerate metric at {p}")
        return -2 * abs(du) ** 2 / denom
    h = _finite(d.omega, p)
    dg = _finite(d.dg, p)
    denom = abs(h) ** 2 * (1 + abs(gval) ** 2) ** 3
    if denom == 0:
        raise Unbounded(p, f"degenerate metric at {p}")
    return -2 * abs(dg) ** 2 / denom


def gauss_curvature_raw(S1: ComplexRational, S2: ComplexRational, p: complex) -> float:
    """``-2 |S1 S2' - S2 S1'|^2 / (|S1|^2 + |S2|^2)^3`` (Wronskian squared)."""
    p = complex(p)
    s1 = _finite(S1, p)
    s2 = _finite(S2, p)
    ds1 = _finite(S1.derivative(), p)
    ds2 = _finite(S2.derivative(), p)
    lam2 = abs(s1) ** 2 + abs(s2) ** 2
    if lam2 == 0:
        raise CommonZero(p)
    w = s1 * ds2 - s2 * ds1
    return -2 * abs(w) ** 2 / lam2 ** 3


def r3_comparison_metric(d: WeierstrassData, p: complex) -> tuple[float, float]:
    """Conformal factor and curvature of the R^3 minimal surface with the same data.

    ``|h|^2 (1+|g|^2)^2`` and ``-4|g'|^2 / (|h|^2 (1+|g|^2)^4)``.
    """
    p = _check_point(d, p)
    gval = d.g.value_at(p)
    if gval is INF:
        # |h|(1+|g|^2) = |h g^2| (1 + |1/g|^2)
        hg2 = _finite(d.g_omega * d.g, p)
        u = complex(d.inv_g.value_at(p))
        du = _finite(d.d_inv_g, p)
        lam = abs(hg2) * (1 + abs(u) ** 2)
        if lam == 0:
            raise Unbounded(p, f"degenerate metric at {p}")
        return lam ** 2, -4 * abs(du) ** 2 / (abs(hg2) ** 2 * (1 + abs(u) ** 2) ** 4)
    h = _finite(d.omega, p)
    lam = abs(h) * (1 + abs(gval) ** 2)
    if lam == 0:
        raise Unbounded(p, f"degenerate metric at {p}")
    dg = complex(d.dg.value_at(p)) if not d.is_plane() else 0j
    return lam ** 2, -4 * abs(dg) ** 2 / (abs(h) ** 2 * (1 + abs(gval) ** 2) ** 4)


def sample(d: WeierstrassData, p: complex) -> MetricSample:
    return MetricSample(complex(p), metric_factor(d, p), gauss_curvature(d, p))


# ---------------------------------------------------------------------
# rotations of the sphere


def check_unitary(a: complex, b: complex, tol: float = 1e-12) -> None:
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > tol:
        raise PreconditionError(f"rotation parameters must satisfy |a|^2+|b|^2 = 1 (got {abs(a)**2 + abs(b)**2!r})")


def rotation_matrix(a: complex, b: complex) -> np.ndarray:
    """Matrix of ``g -> (a g - conj(b)) / (b g + conj(a))``."""
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]], dtype=complex)


def rotate(d: WeierstrassData, a: complex, b: complex) -> WeierstrassData:
    """Rotate the surface: ``g~ = (a g - b̄)/(b g + ā)``, ``omega~ = (b g + ā) omega``.

    The ambient rotation mixes the primitives linearly, so the additive
    constants transform by the same matrix.
    """
    a, b = complex(a), complex(b)
    check_unitary(a, b)
    g_new = d.g.mobius_transform(rotation_matrix(a, b))
    omega_new = b * d.g_omega + np.conj(a) * d.omega
    c1, c2 = d.constants
    consts = (a * c1 - np.conj(b) * c2, b * c1 + np.conj(a) * c2)
    return d.with_(g=g_new, omega=omega_new, constants=consts)


def random_rotation(rng: np.random.Generator) -> tuple[complex, complex]:
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return complex(v[0], v[1]), complex(v[2], v[3])
