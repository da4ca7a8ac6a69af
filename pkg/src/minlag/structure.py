"""Global structure of genus-zero data: periods, ends, completeness.

On the sphere minus the punctures, the immersion integrals are single valued
exactly when ``omega`` and ``g omega`` have zero residue at every puncture.
Ends are studied after a rotation that moves the values of ``g`` at the
punctures away from ``0`` and ``∞`` and makes the zeros and poles of ``g``
simple; ``mu_j`` is then the pole order of the rotated 1-form at ``p_j``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MissingPuncture, NormalizationFailed, NonzeroResidue
from .rational import RESIDUE_RTOL, ComplexRational
from .sphere import INF, format_point
from .weierstrass import (
    WeierstrassData,
    one_form_order,
    random_rotation,
    rotate,
)

GENUS = 0
DEFAULT_SEED = 42
ROTATION_RETRIES = 64

__all__ = [
    "EndProfile",
    "PeriodVerdict",
    "CompletenessVerdict",
    "one_form_order_at",
    "one_form_residue",
    "period_check",
    "normalize",
    "end_profiles",
    "completeness_check",
    "degree_ends_identity",
]


def one_form_order_at(omega: ComplexRational, p) -> int:
    """Valuation of ``omega dz`` at a sphere point."""
    return one_form_order(omega, p)


def one_form_residue(h: ComplexRational, p) -> complex:
    """Residue of the 1-form ``h dz``; at ∞ computed in the chart ``w = 1/z``."""
    if p is not INF:
        return h.residue_at(p)
    # h(1/w) * (-1/w^2)
    hw = h.at_infinity_chart() * ComplexRational(-1.0, [0, 0, 1])
    return hw.residue_at(0j)


@dataclass(frozen=True)
class PeriodVerdict:
    residues: tuple  # (point, residue of omega, residue of g omega)
    passed: bool
    tolerance: float

    def __bool__(self):
        return self.passed

    def failures(self) -> list[NonzeroResidue]:
        out = []
        for p, r_om, r_gom in self.residues:
            if abs(r_om) > self.tolerance:
                out.append(NonzeroResidue(p, r_om, "omega"))
            if abs(r_gom) > self.tolerance:
                out.append(NonzeroResidue(p, r_gom, "g*omega"))
        return out


def _pole_points(r: ComplexRational):
    pts = [p for p, _ in r.poles()]
    if not r.is_zero() and one_form_order(r, INF) < 0:
        pts.append(INF)
    return pts


def period_check(d: WeierstrassData, residue_rtol: float = RESIDUE_RTOL) -> PeriodVerdict:
    """Residues of ``omega`` and ``g omega`` at all punctures (∞ via its chart).

    Raises
    ------
    MissingPuncture
        If either form has a pole off the puncture set.
    """
    forms = [d.omega, d.g_omega]
    for form in forms:
        if form.is_zero():
            continue
        for p in _pole_points(form):
            if not d.is_puncture(p):
                raise MissingPuncture(p, f"MissingPuncture: pole of the data at {format_point(p)}")
    tol = residue_rtol * max(1.0, d.omega.scale(), d.g_omega.scale())
    rows = []
    ok = True
    for p in d.punctures:
        r1 = one_form_residue(d.omega, p)
        r2 = 0j if d.g_omega.is_zero() else one_form_residue(d.g_omega, p)
        ok &= abs(r1) <= tol and abs(r2) <= tol
        rows.append((p, r1, r2))
    return PeriodVerdict(tuple(rows), bool(ok), tol)


# ---------------------------------------------------------------------
# ends


@dataclass(frozen=True)
class EndProfile:
    end: object
    mu: int
    g_value: object


def _normalized(d: WeierstrassData) -> bool:
    g = d.g
    for p in d.punctures:
        v = g.value_at(p)
        if v is INF or abs(v) <= 1e-6:
            return False
    if g.is_constant():
        return True
    if any(m > 1 for _, m in g.zeros()) or any(m > 1 for _, m in g.poles()):
        return False
    # zero or pole of g at ∞ must be simple as well
    return abs(g.order_at(INF)) <= 1


def normalize(d: WeierstrassData, rotation="auto", seed: int = DEFAULT_SEED):
    """Rotate ``d`` into general position.

    Returns ``(rotated data, (a, b))``.  With ``rotation="auto"`` random
    unitary rotations are drawn from a seeded generator until the
    normalization holds.
    """
    if rotation != "auto":
        a, b = rotation
        return rotate(d, a, b), (complex(a), complex(b))
    rng = np.random.default_rng(seed)
    for _ in range(ROTATION_RETRIES):
        a, b = random_rotation(rng)
        rd = rotate(d, a, b)
        if _normalized(rd):
            return rd, (a, b)
    raise NormalizationFailed(f"no normalizing rotation after {ROTATION_RETRIES} draws")


def end_profiles(d: WeierstrassData, rotation="auto", seed: int = DEFAULT_SEED) -> list[EndProfile]:
    """``mu_j = -ord_{p_j}(omega~)`` for every puncture after normalization."""
    rd, _ = normalize(d, rotation, seed)
    return [EndProfile(p, -one_form_order(rd.omega, p), rd.g.value_at(p)) for p in rd.punctures]


@dataclass(frozen=True)
class CompletenessVerdict:
    complete: bool
    profiles: tuple
    simple_pole_ends: tuple
    period_passed: bool
    contradiction: bool

    def __bool__(self):
        return self.complete

    @property
    def well_defined_surface(self) -> bool:
        return self.complete and self.period_passed and not self.simple_pole_ends


def completeness_check(d: WeierstrassData, rotation="auto", seed: int = DEFAULT_SEED) -> CompletenessVerdict:
    """Complete iff the normalized 1-form has a pole at every end.

    A single-valued surface cannot have a simple pole at an end (the residue
    would be the pole coefficient), so ``mu_j = 1`` together with a passing
    period check is reported as a contradiction.
    """
    profiles = tuple(end_profiles(d, rotation, seed))
    complete = all(e.mu >= 1 for e in profiles)
    simple = tuple(e.end for e in profiles if e.mu == 1)
    try:
        period_ok = period_check(d).passed
    except MissingPuncture:
        period_ok = False
    return CompletenessVerdict(
        complete=complete,
        profiles=profiles,
        simple_pole_ends=simple,
        period_passed=period_ok,
        contradiction=bool(simple) and period_ok,
    )


def degree_ends_identity(d: WeierstrassData, rotation="auto", seed: int = DEFAULT_SEED) -> tuple[int, int, bool]:
    """``deg g = 2γ - 2 + Σ mu_j`` with γ = 0; returns ``(lhs, rhs, pass)``."""
    rd, _ = normalize(d, rotation, seed)
    mus = [-one_form_order(rd.omega, p) for p in rd.punctures]
    lhs = rd.g.degree
    rhs = 2 * GENUS - 2 + sum(mus)
    return lhs, rhs, lhs == rhs
