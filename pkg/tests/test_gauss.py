import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.spatial import cKDTree

from minlag import INF, ComplexRational, ConstantGaussMap, Polynomial, WeierstrassData
from minlag import parse_rational as P
from minlag.fujimoto import stereographic_preimage
from minlag.gauss import (
    branching_orders,
    chern_osserman_check,
    classify_minus_2pi,
    exceptional_values,
    gauss_degree,
    kkm_bound_check,
    preimages,
    total_curvature_exact,
    total_curvature_numeric,
    verify,
)
from minlag.sphere import chordal
from minlag.weierstrass import from_holomorphic_curve


def _data(g, punctures=(INF,), omega="1"):
    return WeierstrassData(P(g), P(omega), tuple(punctures))


def test_degrees():
    assert gauss_degree(_data("-z^2")) == 2
    assert gauss_degree(_data("(z^2+1)/z")) == 2
    assert gauss_degree(_data("z")) == 1
    with pytest.raises(ConstantGaussMap):
        gauss_degree(_data("3"))


def test_exceptional_examples(catenoid, surjective, enneper):
    ex = exceptional_values(catenoid)
    assert ex.omitted == (0, INF) and ex.D_g == 2
    assert exceptional_values(surjective).D_g == 0
    assert exceptional_values(enneper).omitted == (INF,)


def test_branching_examples():
    div, n = branching_orders(P("-z^2"))
    assert n == 2 and div[0] == 1 and div[INF] == 1
    assert branching_orders(P("z"))[1] == 0
    div, n = branching_orders(P("(z^2+1)/z"))
    assert n == 2
    assert sorted(round(p.real) for p, _ in div.items()) == [-1, 1]


def _random_rational(rng, max_deg):
    dn, dd = rng.integers(0, max_deg + 1, size=2)
    if dn == 0 and dd == 0:
        dn = 1
    num = Polynomial(rng.normal(size=dn + 1) + 1j * rng.normal(size=dn + 1))
    den = Polynomial(rng.normal(size=dd + 1) + 1j * rng.normal(size=dd + 1))
    return ComplexRational(num, den)


def test_riemann_hurwitz_random(rng):
    for _ in range(50):
        g = _random_rational(rng, 6)
        if g.is_constant():
            continue
        _, n_g = branching_orders(g)
        assert n_g == 2 * (g.degree - 1)


def test_exceptional_bound_examples(catenoid, enneper, surjective):
    c = kkm_bound_check(catenoid)
    assert (c.D_g, c.k, c.d, c.n0) == (2, 2, 2, 2)
    assert c.inv_R == 0 and c.bound == 2 and c.passed
    e = kkm_bound_check(enneper)
    assert (e.D_g, e.inv_R, e.bound, e.n0) == (1, Fraction(-1, 2), 1, 0) and e.passed
    s = kkm_bound_check(surjective)
    assert (s.D_g, s.inv_R, s.bound) == (0, Fraction(-1, 4), Fraction(3, 2)) and s.passed


def test_chern_osserman_examples(catenoid, enneper, surjective):
    c = chern_osserman_check(catenoid)
    assert (c.lhs, c.rhs, c.passed, c.equality) == (2, 2, True, True)
    e = chern_osserman_check(enneper)
    assert (e.lhs, e.rhs, e.equality) == (1, 0, False)
    assert chern_osserman_check(surjective).passed


def test_unverified_data_rejected():
    bad = _data("1/z", punctures=(0, INF), omega="1/z")
    assert not verify(bad).passed
    with pytest.raises(Exception):
        kkm_bound_check(bad)


def test_total_curvature(catenoid, enneper, surjective):
    assert total_curvature_exact(catenoid) == pytest.approx(-4 * math.pi)
    assert total_curvature_exact(enneper) == pytest.approx(-2 * math.pi)
    assert total_curvature_exact(surjective) == pytest.approx(-4 * math.pi)
    t = total_curvature_numeric(catenoid, tol=1e-6)
    assert t.numeric == pytest.approx(-4 * math.pi, rel=1e-5)
    assert total_curvature_numeric(_data("z", omega="5+i"), 1e-6).numeric == pytest.approx(-2 * math.pi, rel=1e-6)
    assert total_curvature_numeric(_data("2")).numeric == 0


def test_total_curvature_random(rng):
    for _ in range(10):
        g = _random_rational(rng, 4)
        if g.is_constant():
            continue
        d = WeierstrassData(g, P("1"), ())
        t = total_curvature_numeric(d, tol=1e-6)
        assert abs(t.numeric - t.exact) <= 1e-5 * abs(t.exact)


def test_classify_enneper(enneper):
    cls = classify_minus_2pi(enneper)
    assert abs(cls.a - (1 + 1j)) <= 1e-9
    assert abs(cls.b - 2) <= 1e-9 and abs(cls.c + 1j) <= 1e-9


def test_classify_plain_normal_form():
    a = 0.5 - 2j
    d = WeierstrassData(P("z"), ComplexRational.constant(2 * a), (INF,))
    cls = classify_minus_2pi(d)
    assert abs(cls.a - a) <= 1e-12 and abs(cls.b) <= 1e-12 and abs(cls.c) <= 1e-12


def test_classify_mobius_variant():
    # g = 2z + 1, end at ∞: reparametrize z = (zeta - 1)/2
    d = from_holomorphic_curve(P("(2*z+1)^2/2"), P("2*z"), [INF])
    assert d.g.allclose(P("2*z+1"))
    cls = classify_minus_2pi(d)
    # F in the new variable: F1 = zeta^2/2, F2 = zeta - 1
    assert abs(cls.a - 0.5) <= 1e-9
    assert abs(cls.b) <= 1e-9 and abs(cls.c + 1) <= 1e-9


def test_classify_rotated_end():
    # end at a finite point: g = 1/(z-1), puncture 1
    d = from_holomorphic_curve(P("1/(z-1)"), P("-1/(2*(z-1)^2)"), [1])
    assert verify(d).passed
    cls = classify_minus_2pi(d)
    assert cls is not None
    assert cls.omega_normalized.is_constant()


def test_classify_not_applicable(catenoid):
    assert classify_minus_2pi(catenoid) is None


def test_preimages_at_infinity():
    pre = preimages(P("(z^2+1)/z"), INF)
    assert sorted((p is INF, m) for p, m in pre) == [(False, 1), (True, 1)]


def _sphere_samples(g, n_side):
    """g on an n_side^2 grid of |z| <= 1 and one of |w| <= 1 (z = 1/w)."""
    t = np.linspace(-1, 1, n_side)
    X, Y = np.meshgrid(t, t)
    W = (X + 1j * Y)[(X ** 2 + Y ** 2) <= 1]
    W = W[W != 0]
    Z = np.concatenate([W, 1 / W])
    with np.errstate(all="ignore"):
        vals = g(Z)
    return Z, vals


def _sphere_xyz(vals):
    vals = np.asarray(vals)
    big = ~np.isfinite(vals) | (np.abs(vals) > 1e12)
    v = np.where(big, 0, vals)
    s = 1 + np.abs(v) ** 2
    xyz = np.stack([2 * v.real / s, 2 * v.imag / s, (np.abs(v) ** 2 - 1) / s], axis=1)
    xyz[big] = [0, 0, 1]
    return xyz


def test_exceptional_values_grid_oracle(rng):
    """10^6 samples: reported omitted values stay away from g off the punctures."""
    for _ in range(4):
        g = _random_rational(rng, 3)
        if g.is_constant():
            continue
        # make one random value omitted by puncturing its whole preimage
        alpha = complex(*rng.normal(size=2))
        pts = [p for p, _ in preimages(g, alpha)]
        extra = complex(*rng.normal(size=2))
        d = WeierstrassData(g, P("1"), tuple(pts) + (extra,))
        report = exceptional_values(d)
        assert any(o is not INF and abs(o - alpha) < 1e-8 for o in report.omitted)
        Z, vals = _sphere_samples(g, 800)
        finite_pts = np.array([p for p in d.punctures if p is not INF])
        far = np.ones(Z.size, dtype=bool)
        for p in finite_pts:
            far &= np.abs(Z - p) > 0.25
        if INF in d.punctures:
            far &= np.abs(Z) < 4
        xyz = _sphere_xyz(vals[far])
        for o in report.omitted:
            target = stereographic_preimage(o)
            assert np.min(np.linalg.norm(xyz - target, axis=1)) > 1e-4
        # values at non-omitted candidates have a preimage inside M
        for cert in report.certificates:
            if not cert.omitted:
                inside = [p for p, _, at_p in cert.preimages if not at_p]
                assert inside
                p = inside[0]
                assert chordal(g.value_at(p), cert.value) < 1e-8


def test_surjective_grid_oracle(surjective):
    Z, vals = _sphere_samples(surjective.g, 800)
    assert Z.size > 10 ** 6
    tree = cKDTree(_sphere_xyz(vals))
    rng = np.random.default_rng(7)
    targets = rng.normal(size=(2000, 3))
    targets /= np.linalg.norm(targets, axis=1)[:, None]
    special = np.array([stereographic_preimage(v) for v in (0, INF, 1, -1, 1j, 2)])
    dist, _ = tree.query(np.concatenate([targets, special]))
    assert dist.max() < 2e-2
    # ∞ is attained at the interior point 0
    assert surjective.g.value_at(0) is INF and not surjective.is_puncture(0)
