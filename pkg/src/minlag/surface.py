"""The immersion ``f: M -> C^2`` built from Weierstrass data, and mesh export."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import MinlagError, NonzeroResidue, PreconditionError
from .rational import ComplexRational
from .sphere import INF
from .structure import period_check
from .weierstrass import WeierstrassData, gauss_curvature, metric_factor

SQRT1_2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class SurfaceImmersion:
    """Primitives ``G1 = ∫ g h dz`` and ``G2 = ∫ h dz`` with the constants of ``F``."""

    G1: ComplexRational
    G2: ComplexRational
    beta: float = 0.0
    base_constants: tuple = (0j, 0j)

    def F(self, z):
        """The holomorphic curve ``(F1, F2) = (G1 + c1, G2 + c2)``."""
        c1, c2 = self.base_constants
        return self.G1(z) + c1, self.G2(z) + c2

    def __call__(self, z):
        """``f(z)`` as a pair of complex numbers (or arrays)."""
        F1, F2 = self.F(z)
        phase = SQRT1_2 * cmath.exp(0.5j * self.beta)
        return phase * (F1 - 1j * np.conj(F2)), phase * (F2 + 1j * np.conj(F1))


def build_immersion(d: WeierstrassData) -> SurfaceImmersion:
    """Integrate the data.

    Raises
    ------
    NonzeroResidue
        If ``omega`` or ``g omega`` has a residue at a puncture, i.e. the
        surface is not single valued.
    """
    verdict = period_check(d)
    if not verdict.passed:
        raise verdict.failures()[0]
    G1 = d.g_omega.antiderivative() if not d.g_omega.is_zero() else ComplexRational(0.0)
    G2 = d.omega.antiderivative()
    return SurfaceImmersion(G1, G2, d.beta, d.constants)


def immersion_from_curve(F1: ComplexRational, F2: ComplexRational, beta: float = 0.0) -> SurfaceImmersion:
    """Immersion evaluated directly from a holomorphic curve ``(F1, F2)``."""
    return SurfaceImmersion(F1, F2, beta, (0j, 0j))


def evaluate_immersion(s: SurfaceImmersion, z) -> np.ndarray:
    """``(Re f1, Im f1, Re f2, Im f2)``; the last axis has length 4."""
    f1, f2 = s(z)
    return np.stack([np.real(f1), np.imag(f1), np.real(f2), np.imag(f2)], axis=-1)


# ---------------------------------------------------------------------
# finite-difference verification


@dataclass
class ImmersionVerdict:
    conformality: float
    harmonicity: float
    lagrangian: float
    angle_spread: float
    angle_offset: float
    tol: float
    worst_probe: dict = field(default_factory=dict)

    @property
    def checks(self) -> dict:
        return {
            "conformality": self.conformality <= self.tol,
            "harmonicity": self.harmonicity <= self.tol,
            "lagrangian": self.lagrangian <= self.tol,
            "angle_constancy": self.angle_spread <= self.tol,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[dict]:
        out = []
        for name, ok in self.checks.items():
            if not ok:
                out.append({
                    "code": f"{name.title().replace('_', '')}Failed",
                    "value": getattr(self, {"angle_constancy": "angle_spread"}.get(name, name)),
                    "tolerance": self.tol,
                    "worst_probe": self.worst_probe.get(name),
                })
        return out


def _derivs(s: SurfaceImmersion, z: complex, h: float):
    fp = evaluate_immersion(s, z + h)
    fm = evaluate_immersion(s, z - h)
    fip = evaluate_immersion(s, z + 1j * h)
    fim = evaluate_immersion(s, z - 1j * h)
    f0 = evaluate_immersion(s, z)
    fu = (fp - fm) / (2 * h)
    fv = (fip - fim) / (2 * h)
    lap = (fp + fm + fip + fim - 4 * f0) / h ** 2
    return fu, fv, lap


def verify_immersion(
    s: SurfaceImmersion,
    d: WeierstrassData,
    probes,
    fd_step: float = 1e-4,
    tol: float = 1e-5,
) -> ImmersionVerdict:
    """Check conformality, harmonicity, the Lagrangian condition and constant angle.

    Residuals are relative: inner products against the closed-form ``λ²``,
    the Laplacian against ``λ``.  The step is scaled by ``max(1, |z|)``.
    """
    probes = [complex(z) for z in probes]
    if not probes:
        raise PreconditionError("at least one probe point is required")
    worst = {"conformality": (0.0, None), "harmonicity": (0.0, None), "lagrangian": (0.0, None)}
    angles = []
    for z in probes:
        h = fd_step * max(1.0, abs(z))
        fu, fv, lap = _derivs(s, z, h)
        lam2 = metric_factor(d, z)
        conf = max(abs(fu @ fu - lam2), abs(fv @ fv - lam2), abs(fu @ fv)) / lam2
        harm = float(np.linalg.norm(lap)) / math.sqrt(lam2)
        # dx1^dy1 + dx2^dy2 evaluated on (f_u, f_v)
        lag = abs(fu[0] * fv[1] - fu[1] * fv[0] + fu[2] * fv[3] - fu[3] * fv[2]) / lam2
        f1u, f2u = complex(fu[0], fu[1]), complex(fu[2], fu[3])
        f1v, f2v = complex(fv[0], fv[1]), complex(fv[2], fv[3])
        angles.append(cmath.phase(f1u * f2v - f1v * f2u))
        for name, val in (("conformality", conf), ("harmonicity", harm), ("lagrangian", lag)):
            if val >= worst[name][0]:
                worst[name] = (val, z)
    ang = np.array(angles)
    mean_dir = np.angle(np.mean(np.exp(1j * ang)))
    dev = np.abs(np.angle(np.exp(1j * (ang - mean_dir))))
    spread = float(np.max(dev))
    worst_angle = probes[int(np.argmax(dev))]
    return ImmersionVerdict(
        conformality=worst["conformality"][0],
        harmonicity=worst["harmonicity"][0],
        lagrangian=worst["lagrangian"][0],
        angle_spread=spread,
        angle_offset=float(mean_dir),
        tol=tol,
        worst_probe={
            "conformality": _fmt(worst["conformality"][1]),
            "harmonicity": _fmt(worst["harmonicity"][1]),
            "lagrangian": _fmt(worst["lagrangian"][1]),
            "angle_constancy": _fmt(worst_angle),
        },
    )


def _fmt(z):
    return None if z is None else [z.real, z.imag]


def default_probes(d: WeierstrassData, n: int = 25, seed: int = 0, r_min: float = 0.5, r_max: float = 2.0) -> list[complex]:
    """Random probes in an annulus, kept away from the singular set of the data."""
    rng = np.random.default_rng(seed)
    bad = [p for p in d.punctures if not _is_inf(p)]
    bad += [r for r, _ in d.omega.poles()] + [r for r, _ in d.g_omega.poles()]
    bad += [r for r, _ in d.omega.zeros()]
    out = []
    while len(out) < n:
        r = rng.uniform(r_min, r_max)
        t = rng.uniform(0, 2 * math.pi)
        z = r * cmath.exp(1j * t)
        if all(abs(z - q) > 0.25 for q in bad):
            out.append(z)
    return out


def _is_inf(p) -> bool:
    return p is INF


# ---------------------------------------------------------------------
# meshes


@dataclass(frozen=True)
class MeshGrid:
    """Sampling window in the ``z`` chart or the ``w = 1/z`` chart.

    ``window`` is ``("rect", x0, x1, y0, y1)`` or ``("annulus", r0, r1)``.
    """

    chart: str = "z"
    resolution: tuple = (64, 64)
    window: tuple = ("rect", -2.0, 2.0, -2.0, 2.0)

    def __post_init__(self):
        if self.chart not in ("z", "w"):
            raise PreconditionError("chart must be 'z' or 'w'")
        if self.window[0] not in ("rect", "annulus"):
            raise PreconditionError("window must be 'rect' or 'annulus'")
        nx, ny = self.resolution
        if nx < 2 or ny < 2:
            raise PreconditionError("resolution must be at least 2x2")

    def parameters(self) -> np.ndarray:
        """Chart coordinates of the grid, shape ``(nx, ny)``, row-major."""
        nx, ny = self.resolution
        if self.window[0] == "rect":
            _, x0, x1, y0, y1 = self.window
            x = np.linspace(x0, x1, nx)
            y = np.linspace(y0, y1, ny)
            X, Y = np.meshgrid(x, y, indexing="ij")
            return X + 1j * Y
        _, r0, r1 = self.window
        r = np.linspace(r0, r1, nx)
        t = np.linspace(0.0, 2 * math.pi, ny)
        R, T = np.meshgrid(r, t, indexing="ij")
        return R * np.exp(1j * T)

    def spacing(self) -> float:
        """Smallest distance between neighbouring parameter points."""
        P = self.parameters()
        steps = np.concatenate([np.abs(np.diff(P, axis=0)).ravel(), np.abs(np.diff(P, axis=1)).ravel()])
        steps = steps[steps > 0]
        return float(steps.min()) if steps.size else 1.0

    def z_points(self) -> np.ndarray:
        w = self.parameters()
        if self.chart == "z":
            return w
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(w == 0, np.nan, 1.0 / w)


def projection_matrix(projection) -> np.ndarray:
    """3x4 matrix from ``("drop", i)`` (1-based coordinate) or an explicit matrix."""
    if isinstance(projection, tuple) and projection and projection[0] == "drop":
        i = int(projection[1])
        if not 1 <= i <= 4:
            raise PreconditionError("drop_coordinate index must be in 1..4")
        return np.delete(np.eye(4), i - 1, axis=0)
    m = np.asarray(projection, dtype=float)
    if m.shape != (3, 4):
        raise PreconditionError("projection matrix must be 3x4")
    if not np.allclose(m @ m.T, np.eye(3), atol=1e-9):
        raise PreconditionError("projection rows must be orthonormal")
    return m


@dataclass
class Mesh:
    params: np.ndarray  # (n, 2) chart coordinates
    coords: np.ndarray  # (n, 4)
    metric: np.ndarray
    curvature: np.ndarray
    faces: np.ndarray  # (m, 3) zero-based
    grid: MeshGrid
    cut: int


def sample_mesh(s: SurfaceImmersion, d: WeierstrassData, grid: MeshGrid, margin: float | None = None) -> Mesh:
    """Evaluate the immersion on a grid, cutting holes around singular points."""
    nx, ny = grid.resolution
    P = grid.parameters()
    Z = grid.z_points()
    if margin is None:
        margin = 0.5 * grid.spacing()
    bad = [p for p in d.punctures if not _is_inf(p)]
    bad += [r for r, _ in s.G1.poles()] + [r for r, _ in s.G2.poles()]
    keep = np.isfinite(Z)
    for q in bad:
        if grid.chart == "z":
            keep &= np.abs(P - q) > margin
        elif q != 0:
            keep &= np.abs(P - 1.0 / q) > margin
    if grid.chart == "w" and (_any_inf(d.punctures) or s.G1.degree > 0):
        keep &= np.abs(P) > margin
    Zs = np.where(keep, Z, 0.0)
    with np.errstate(all="ignore"):
        coords = evaluate_immersion(s, Zs)
    keep &= np.all(np.isfinite(coords), axis=-1)
    idx = -np.ones((nx, ny), dtype=int)
    flat_keep = keep.ravel()
    idx.ravel()[flat_keep] = np.arange(int(flat_keep.sum()))
    if not flat_keep.any():
        raise PreconditionError("grid is empty after cutting holes")
    zk = Z.ravel()[flat_keep]
    lam2 = np.array([metric_factor(d, z) for z in zk])
    K = np.array([gauss_curvature(d, z) for z in zk])
    faces = []
    for i in range(nx - 1):
        for j in range(ny - 1):
            a, b, c, e = idx[i, j], idx[i + 1, j], idx[i + 1, j + 1], idx[i, j + 1]
            if min(a, b, c, e) >= 0:
                faces.append((a, b, c))
                faces.append((a, c, e))
    Pk = P.ravel()[flat_keep]
    return Mesh(
        params=np.stack([Pk.real, Pk.imag], axis=1),
        coords=coords.reshape(-1, 4)[flat_keep],
        metric=lam2,
        curvature=K,
        faces=np.array(faces, dtype=int).reshape(-1, 3),
        grid=grid,
        cut=int((~flat_keep).sum()),
    )


def _any_inf(points) -> bool:
    return any(_is_inf(p) for p in points)


def mesh_export(
    s: SurfaceImmersion,
    d: WeierstrassData,
    grid: MeshGrid,
    out: str | Path,
    projection=("drop", 4),
) -> tuple[Path, Path]:
    """Write ``<out>.json`` (4-D coordinates, λ², K) and ``<out>.obj`` (3-D projection)."""
    out = Path(out)
    if out.suffix in (".obj", ".json"):
        out = out.with_suffix("")
    mesh = sample_mesh(s, d, grid)
    P = projection_matrix(projection)
    xyz = mesh.coords @ P.T
    out.parent.mkdir(parents=True, exist_ok=True)
    json_path = out.with_suffix(".json")
    obj_path = out.with_suffix(".obj")
    doc = {
        "schema": 1,
        "chart": grid.chart,
        "resolution": list(grid.resolution),
        "window": list(grid.window),
        "cut_vertices": mesh.cut,
        "vertices": [
            {"param": p.tolist(), "f": c.tolist(), "metric": float(m), "K": float(k)}
            for p, c, m, k in zip(mesh.params, mesh.coords, mesh.metric, mesh.curvature)
        ],
        "faces": mesh.faces.tolist(),
        "projection": P.tolist(),
    }
    json_path.write_text(json.dumps(doc))
    lines = [f"# minlag mesh: {len(xyz)} vertices, {len(mesh.faces)} faces"]
    lines += [f"v {x:.12g} {y:.12g} {z:.12g}" for x, y, z in xyz]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.faces]
    obj_path.write_text("\n".join(lines) + "\n")
    return obj_path, json_path


__all__ = [
    "SurfaceImmersion",
    "build_immersion",
    "immersion_from_curve",
    "evaluate_immersion",
    "verify_immersion",
    "default_probes",
    "MeshGrid",
    "Mesh",
    "sample_mesh",
    "mesh_export",
    "projection_matrix",
    "ImmersionVerdict",
    "NonzeroResidue",
    "MinlagError",
]
