"""Chordal distance and the auxiliary flat metric built from three omitted values.

For ``0 < eta < 1/4`` and ``lam = 1/(2 - 4 eta)`` the conformal factor

    |h|^(2/(1-lam)) * ( |g'|^-1 * prod_j (|g - a_j| / sqrt(1 + |a_j|^2))^(1-eta) )^(2 lam/(1-lam))

has a harmonic logarithm wherever ``g' != 0`` and ``g != a_j``, so the metric
is flat there.  Only pointwise quantities are provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CriticalPoint, PreconditionError, SingularStencil
from .sphere import INF, chordal
from .weierstrass import WeierstrassData


def chordal_distance(alpha, beta) -> float:
    """Half the chordal distance between the stereographic preimages."""
    return chordal(alpha, beta)


def stereographic_preimage(alpha) -> np.ndarray:
    """Point of the unit sphere projecting to ``alpha`` (∞ is the north pole)."""
    if alpha is INF:
        return np.array([0.0, 0.0, 1.0])
    alpha = complex(alpha)
    s = 1.0 + abs(alpha) ** 2
    return np.array([2 * alpha.real / s, 2 * alpha.imag / s, (abs(alpha) ** 2 - 1) / s])


@dataclass(frozen=True)
class SigmaParams:
    eta: float
    exceptional: tuple

    def __post_init__(self):
        if not 0.0 < self.eta < 0.25:
            raise PreconditionError(f"eta must lie in (0, 1/4), got {self.eta}")
        pts = tuple(complex(a) for a in self.exceptional if a is not INF)
        if len(pts) != 3 or len(self.exceptional) != 3:
            raise PreconditionError("exactly three finite exceptional values are required")
        if min(abs(pts[i] - pts[j]) for i in range(3) for j in range(i + 1, 3)) == 0:
            raise PreconditionError("exceptional values must be distinct")
        object.__setattr__(self, "exceptional", pts)

    @property
    def lam(self) -> float:
        return 1.0 / (2.0 - 4.0 * self.eta)

    @property
    def h_exponent(self) -> float:
        return 2.0 / (1.0 - self.lam)

    @property
    def bracket_exponent(self) -> float:
        return 2.0 * self.lam / (1.0 - self.lam)


def _values(d: WeierstrassData, z: complex):
    h = d.omega.value_at(z)
    g = d.g.value_at(z)
    dg = d.dg.value_at(z) if not d.is_plane() else 0j
    if h is INF or g is INF or dg is INF:
        raise PreconditionError(f"{z} is a pole of the data")
    return complex(h), complex(g), complex(dg)


def _critical_tol(d: WeierstrassData, z: complex) -> float:
    return 1e-12 * max(1.0, d.dg.num.abs_bound(z)) if not d.is_plane() else math.inf


def sigma_factor(d: WeierstrassData, p: SigmaParams, z: complex) -> float:
    """Conformal factor of the flat metric at ``z``.

    Raises
    ------
    CriticalPoint
        If ``g'(z) = 0``.
    """
    z = complex(z)
    h, g, dg = _values(d, z)
    if abs(dg) <= _critical_tol(d, z):
        raise CriticalPoint(z)
    prod = 1.0
    for a in p.exceptional:
        prod *= (abs(g - a) / math.sqrt(1.0 + abs(a) ** 2)) ** (1.0 - p.eta)
    return abs(h) ** p.h_exponent * (prod / abs(dg)) ** p.bracket_exponent


def log_sigma_factor(d: WeierstrassData, p: SigmaParams, z: complex) -> float:
    """``log sigma_factor`` summed term by term (an independent evaluation order)."""
    z = complex(z)
    h, g, dg = _values(d, z)
    if abs(dg) <= _critical_tol(d, z):
        raise CriticalPoint(z)
    s = sum((1.0 - p.eta) * (math.log(abs(g - a)) - 0.5 * math.log1p(abs(a) ** 2)) for a in p.exceptional)
    return p.h_exponent * math.log(abs(h)) + p.bracket_exponent * (s - math.log(abs(dg)))


def singular_points(d: WeierstrassData, p: SigmaParams) -> list[complex]:
    """Finite points where ``log sigma`` fails to be harmonic."""
    pts = [q for q in d.punctures if q is not INF]
    pts += [r for r, _ in d.omega.zeros()] + [r for r, _ in d.omega.poles()]
    pts += [r for r, _ in d.g.poles()]
    if not d.is_plane():
        pts += [r for r, _ in d.dg.zeros()]
        for a in p.exceptional:
            pts += [r for r, _ in (d.g - a).zeros()]
    return pts


def flatness_probe(d: WeierstrassData, p: SigmaParams, z: complex, h_step: float = 1e-3) -> float:
    """Discrete Laplacian of ``log sigma_factor`` at ``z``; ≈ 0 for a flat metric.

    Uses the fourth-order central stencil along each axis.  The exponent
    ``2 lam/(1 - lam)`` grows without bound as ``eta -> 1/4``, which makes
    the second-order truncation error too large for a 1e-4 flatness test.

    Raises
    ------
    SingularStencil
        If a singular point lies within ``3 h_step`` of ``z``.
    """
    z = complex(z)
    for q in singular_points(d, p):
        if abs(q - z) <= 3 * h_step:
            raise SingularStencil(z, f"stencil at {z} touches a singular point {q}")
    total = -60.0 * log_sigma_factor(d, p, z)
    for axis in (h_step, 1j * h_step):
        near = log_sigma_factor(d, p, z + axis) + log_sigma_factor(d, p, z - axis)
        far = log_sigma_factor(d, p, z + 2 * axis) + log_sigma_factor(d, p, z - 2 * axis)
        total += 16.0 * near - far
    return total / (12.0 * h_step ** 2)
