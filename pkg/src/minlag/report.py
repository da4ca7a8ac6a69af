"""Verification and analysis pipelines producing JSON-ready reports."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .errors import ConstantGaussMap, MinlagError
from .gauss import (
    chern_osserman_check,
    classify_minus_2pi,
    exceptional_values,
    kkm_bound_check,
    branching_orders,
    total_curvature_numeric,
)
from .inputs import LoadedInput, describe
from .sphere import format_point
from .structure import GENUS, completeness_check, degree_ends_identity, period_check
from .surface import SurfaceImmersion, build_immersion, default_probes, verify_immersion
from .weierstrass import regularity_check

SCHEMA = 1
DEFAULT_TOL = 1e-6
DEFAULT_FD_STEP = 1e-4
IMMERSION_TOL = 1e-5


def _c(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _pt(p):
    return format_point(p)


def _frac(q: Fraction) -> dict:
    return {"fraction": f"{q.numerator}/{q.denominator}", "value": float(q)}


@dataclass
class PipelineResult:
    """Report body plus the failure reasons that decide the exit code."""

    report: dict
    reasons: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.reasons


def _immersion(loaded: LoadedInput) -> SurfaceImmersion:
    if loaded.immersion is not None:
        G1, G2 = loaded.immersion
        return SurfaceImmersion(G1, G2, loaded.data.beta, loaded.data.constants)
    return build_immersion(loaded.data)


def run_verify(loaded: LoadedInput, seed: int = 42, fd_step: float = DEFAULT_FD_STEP) -> PipelineResult:
    """Regularity, periods, completeness and the immersion identities."""
    d = loaded.data
    reasons: list[dict] = []
    out: dict = {"data": describe(d)}

    reg = regularity_check(d)
    out["regularity"] = {"passed": reg.passed, "issues": [e.detail() for e in reg.issues]}
    reasons += [e.detail() for e in reg.issues]

    try:
        per = period_check(d)
        out["period"] = {
            "passed": per.passed,
            "tolerance": per.tolerance,
            "residues": [{"point": _pt(p), "omega": _c(a), "g_omega": _c(b)} for p, a, b in per.residues],
        }
        reasons += [e.detail() for e in per.failures()]
        period_ok = per.passed
    except MinlagError as exc:
        out["period"] = {"passed": False, "error": exc.detail()}
        reasons.append(exc.detail())
        period_ok = False

    try:
        comp = completeness_check(d, seed=seed)
        lhs, rhs, ok = degree_ends_identity(d, seed=seed)
        out["completeness"] = {
            "passed": comp.complete and not comp.simple_pole_ends,
            "complete": comp.complete,
            "ends": [{"end": _pt(e.end), "mu": e.mu, "g_value": _pt(e.g_value)} for e in comp.profiles],
            "simple_pole_ends": [_pt(p) for p in comp.simple_pole_ends],
            "contradiction": comp.contradiction,
            "degree_identity": {"deg_g": lhs, "sum_mu_minus_2": rhs, "passed": ok},
        }
        if not comp.complete:
            reasons.append({"code": "Incomplete", "ends": [_pt(e.end) for e in comp.profiles if e.mu < 1]})
        elif comp.simple_pole_ends and period_ok:
            reasons.append({"code": "SimplePoleEnd", "ends": [_pt(p) for p in comp.simple_pole_ends]})
    except MinlagError as exc:
        out["completeness"] = {"passed": False, "error": exc.detail()}
        reasons.append(exc.detail())

    if period_ok or loaded.immersion is not None:
        try:
            s = _immersion(loaded)
            v = verify_immersion(s, d, default_probes(d), fd_step=fd_step, tol=IMMERSION_TOL)
            out["immersion"] = {
                "passed": v.passed,
                "overridden": loaded.immersion is not None,
                "probes": 25,
                "fd_step": fd_step,
                "tolerance": v.tol,
                "conformality": v.conformality,
                "harmonicity": v.harmonicity,
                "lagrangian": v.lagrangian,
                "angle_spread": v.angle_spread,
                "angle_offset": v.angle_offset,
                "worst_probe": v.worst_probe,
            }
            reasons += v.failures()
        except MinlagError as exc:
            out["immersion"] = {"passed": False, "error": exc.detail()}
            reasons.append(exc.detail())
    else:
        out["immersion"] = {"passed": False, "skipped": "period condition failed"}
    out["passed"] = not reasons
    out["reasons"] = reasons
    return PipelineResult(out, reasons)


def run_curvature(loaded: LoadedInput, tol: float = DEFAULT_TOL) -> dict:
    t = total_curvature_numeric(loaded.data, tol=tol)
    rel = t.abs_error / abs(t.exact) if t.exact else t.abs_error
    return {
        "exact": t.exact,
        "exact_over_minus_2pi": round(t.exact / (-2 * math.pi)),
        "numeric": t.numeric,
        "abs_error": t.abs_error,
        "rel_error": rel,
        "error_estimate": t.estimate,
        "evaluations": t.evaluations,
        "tolerance": tol,
        "passed": rel <= max(tol, 1e-12) * 10,
    }


def run_analyze(
    loaded: LoadedInput,
    seed: int = 42,
    tol: float = DEFAULT_TOL,
    fd_step: float = DEFAULT_FD_STEP,
    force: bool = False,
) -> PipelineResult:
    """Full analysis; gauss-map checks need a verified surface unless ``force``."""
    ver = run_verify(loaded, seed, fd_step)
    d = loaded.data
    rep: dict = {
        "schema": SCHEMA,
        "name": d.name,
        "notes": list(d.notes),
        "tool": {
            "name": "minlag",
            "version": __version__,
            "seed": seed,
            "tolerances": {
                "quadrature": tol,
                "fd_step": fd_step,
                "immersion": IMMERSION_TOL,
                "residue_rtol": 1e-9,
            },
        },
        "verification": ver.report,
    }
    reasons = list(ver.reasons)
    if not ver.passed and not force:
        rep["analysis"] = {"skipped": "verification failed; rerun with --force"}
        rep["passed"] = False
        return PipelineResult(rep, reasons)

    an: dict = {"genus": GENUS, "k": len(d.punctures)}
    if d.is_plane():
        an["d"] = 0
        an["classification"] = {
            "lagrangian_plane": True,
            "note": "Lagrangian plane, K ≡ 0",
            "minus_2pi": None,
        }
        an["total_curvature"] = {"exact": 0.0, "numeric": 0.0, "exact_over_minus_2pi": 0}
        rep["analysis"] = an
        rep["passed"] = not reasons
        return PipelineResult(rep, reasons)

    an["d"] = d.g.degree
    try:
        ex = exceptional_values(d)
        an["exceptional"] = {
            "omitted": [_pt(v) for v in ex.omitted],
            "D_g": ex.D_g,
            "certificates": [
                {
                    "value": _pt(c.value),
                    "omitted": c.omitted,
                    "preimages": [{"point": _pt(p), "multiplicity": m, "puncture": f} for p, m, f in c.preimages],
                }
                for c in ex.certificates
            ],
        }
        div, n_g = branching_orders(d.g)
        an["branching"] = {
            "n_g": n_g,
            "riemann_hurwitz": 2 * (an["d"] + GENUS - 1),
            "points": [{"point": _pt(p), "order": m} for p, m in div.items()],
        }
        kkm = kkm_bound_check(d, seed, verified=True)
        an["exceptional_bound"] = {
            "passed": kkm.passed,
            "D_g": kkm.D_g,
            "n0": kkm.n0,
            "chain": [kkm.chain[0]] + [_frac(q) for q in kkm.chain[1:]],
            "inv_R": _frac(kkm.inv_R),
            "inv_R_below_half": kkm.inv_R_below_half,
            "bound": _frac(kkm.bound),
        }
        if not kkm.passed:
            reasons.append({"code": "ExceptionalBoundFailed", "chain": an["exceptional_bound"]["chain"]})
        co = chern_osserman_check(d, seed, verified=True)
        an["chern_osserman"] = {"d": co.lhs, "rhs": co.rhs, "passed": co.passed, "equality": co.equality}
        if not co.passed:
            reasons.append({"code": "ChernOssermanFailed", "d": co.lhs, "rhs": co.rhs})
        curv = run_curvature(loaded, tol)
        an["total_curvature"] = curv
        if not curv["passed"]:
            reasons.append({"code": "CurvatureMismatch", "abs_error": curv["abs_error"]})
        cls = classify_minus_2pi(d, seed, verified=True)
        an["classification"] = {
            "lagrangian_plane": False,
            "minus_2pi": None
            if cls is None
            else {"a": _c(cls.a), "b": _c(cls.b), "c": _c(cls.c), "rotation": [_c(x) for x in cls.rotation]},
        }
    except ConstantGaussMap as exc:
        reasons.append(exc.detail())
    except MinlagError as exc:
        an["error"] = exc.detail()
        reasons.append(exc.detail())
    rep["analysis"] = an
    rep["passed"] = not reasons
    rep["reasons"] = reasons
    return PipelineResult(rep, reasons)


def summary(rep: dict) -> str:
    """Short human-readable digest of an analysis report."""
    lines = [f"dataset: {rep.get('name') or '(unnamed)'}"]
    v = rep["verification"]
    for key in ("regularity", "period", "completeness", "immersion"):
        if key in v:
            lines.append(f"  {key:<13} {'pass' if v[key].get('passed') else 'FAIL'}")
    if "ends" in v.get("completeness", {}):
        mus = ", ".join(f"{e['end']}: {e['mu']}" for e in v["completeness"]["ends"])
        lines.append(f"  end orders    {mus}")
    an = rep.get("analysis", {})
    if "d" in an:
        lines.append(f"  deg g = {an['d']}, ends k = {an['k']}")
    if "exceptional" in an:
        ex = an["exceptional"]
        lines.append(f"  omitted       {ex['omitted'] or 'none'} (D_g = {ex['D_g']})")
    if "exceptional_bound" in an:
        b = an["exceptional_bound"]
        lines.append(f"  bound         D_g <= {b['bound']['fraction']} ({'pass' if b['passed'] else 'FAIL'})")
    if "chern_osserman" in an:
        c = an["chern_osserman"]
        eq = ", equality" if c["equality"] else ""
        lines.append(f"  chern-osserman d = {c['d']} >= {c['rhs']}{eq}")
    if "total_curvature" in an:
        t = an["total_curvature"]
        lines.append(f"  total curvature exact {t['exact']:.12g}, numeric {t['numeric']:.12g}")
    cls = an.get("classification")
    if cls:
        if cls.get("lagrangian_plane"):
            lines.append("  Lagrangian plane, K ≡ 0")
        elif cls.get("minus_2pi"):
            m = cls["minus_2pi"]
            lines.append(f"  −2π case: a = {complex(*m['a'])}, b = {complex(*m['b'])}, c = {complex(*m['c'])}")
    for n in rep.get("notes", []):
        if n not in "\n".join(lines):
            lines.append(f"  note: {n}")
    lines.append(f"  result        {'pass' if rep.get('passed') else 'FAIL'}")
    return "\n".join(lines)
