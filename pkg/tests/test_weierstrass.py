import math

import numpy as np
import pytest

from minlag import INF, CommonZero, ComplexRational, Polynomial, WeierstrassData, from_holomorphic_curve
from minlag import parse_rational as P
from minlag.errors import PreconditionError, Unbounded
from minlag.weierstrass import (
    gauss_curvature,
    gauss_curvature_raw,
    metric_factor,
    one_form_order,
    r3_comparison_metric,
    random_rotation,
    regularity_check,
    rotate,
)


def test_curves_to_data(catenoid, surjective, enneper):
    cat = from_holomorphic_curve(P("z"), P("1/z"), [0, INF])
    assert cat.g.allclose(P("-z^2")) and cat.omega.allclose(P("-1/z^2"))
    assert surjective.g.allclose(P("(z^2+1)/z")) and surjective.omega.allclose(P("z"))
    a = 1 + 1j
    assert enneper.g.allclose(P("z")) and enneper.omega.allclose(ComplexRational.constant(2 * a))


def test_common_zero_rejected():
    with pytest.raises(CommonZero):
        from_holomorphic_curve(P("z^3/3"), P("z^2/2"), [INF])


def test_identically_zero_curve_rejected():
    with pytest.raises(PreconditionError):
        from_holomorphic_curve(P("1"), P("2"), [INF])


def test_metric_examples(catenoid, surjective, enneper):
    assert metric_factor(catenoid, 1) == pytest.approx(2)
    assert metric_factor(surjective, 0) == pytest.approx(1)
    assert metric_factor(enneper, 0) == pytest.approx(4 * abs(1 + 1j) ** 2)


def test_curvature_examples(catenoid, enneper):
    assert gauss_curvature(catenoid, 1) == pytest.approx(-1)
    assert gauss_curvature(catenoid, 0.5 + 0.5j) <= 0
    assert gauss_curvature(enneper, 0) == pytest.approx(-1 / (2 * abs(1 + 1j) ** 2))


def test_curvature_vanishes_at_critical_point():
    d = WeierstrassData(P("z^2"), P("1"), (INF,))
    assert gauss_curvature(d, 0) == 0.0


def test_raw_curvature_examples():
    assert gauss_curvature_raw(P("-1/z^2"), P("-1"), 1) == pytest.approx(-1)
    assert gauss_curvature_raw(P("1"), P("3"), 0.4) == 0
    a = 1 + 1j
    S1 = ComplexRational.constant(2 * a)
    S2 = ComplexRational(Polynomial([0, -2 * a]))
    assert gauss_curvature_raw(S1, S2, 0) == pytest.approx(-1 / (2 * abs(a) ** 2))


def test_r3_comparison(catenoid):
    lam2, K = r3_comparison_metric(catenoid, 1)
    assert lam2 == pytest.approx(4) and K == pytest.approx(-1)
    assert K / gauss_curvature(catenoid, 1) == pytest.approx(2 / (1 + 1))
    lam2, K = r3_comparison_metric(WeierstrassData(P("z^2"), P("1"), (INF,)), 0)
    assert K == 0 and lam2 == pytest.approx(1)


def test_r3_comparison_at_pole_of_g(surjective):
    # |h|(1+|g|^2) ~ 1/|z| at the simple pole of g where h has a simple zero
    with pytest.raises(Unbounded):
        r3_comparison_metric(surjective, 0)
    d = WeierstrassData(P("1/z"), P("z^2"), (INF,))
    lam2, K = r3_comparison_metric(d, 0)
    near = r3_comparison_metric(d, 1e-6)
    assert lam2 == pytest.approx(near[0], rel=1e-5) and K == pytest.approx(near[1], rel=1e-5)


def test_one_form_orders(catenoid, enneper):
    assert one_form_order(catenoid.omega, 0) == -2
    assert one_form_order(catenoid.omega, INF) == 0
    assert one_form_order(enneper.omega, INF) == -2


def test_rotation_examples(catenoid):
    assert rotate(catenoid, 1, 0).g.allclose(catenoid.g)
    s = 1 / math.sqrt(2)
    r = rotate(catenoid, s, s)
    assert r.g.allclose(P("(-z^2-1)/(-z^2+1)"))
    assert r.omega.allclose(P("(z^2-1)/z^2") * s)
    assert metric_factor(r, 1 + 1j) == pytest.approx(metric_factor(catenoid, 1 + 1j), rel=1e-12)


def test_rotation_requires_unitary(catenoid):
    with pytest.raises(PreconditionError):
        rotate(catenoid, 1, 1)


def _regular_points(rng, d, n):
    bad = [q for q in d.punctures if q is not INF] + [r for r, _ in d.omega.poles()] + [r for r, _ in d.g_omega.poles()]
    out = []
    while len(out) < n:
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if all(abs(z - q) > 0.05 for q in bad):
            out.append(z)
    return out


def test_rotation_invariance(rng, datasets):
    for d in datasets.values():
        for _ in range(20):
            a, b = random_rotation(rng)
            rd = rotate(d, a, b)
            for z in _regular_points(rng, d, 5):
                assert metric_factor(rd, z) == pytest.approx(metric_factor(d, z), rel=1e-9)
                assert gauss_curvature(rd, z) == pytest.approx(gauss_curvature(d, z), rel=1e-9, abs=1e-14)


def test_raw_and_gauss_map_curvature_agree(rng):
    for _ in range(20):
        F1 = Polynomial(rng.normal(size=rng.integers(2, 7)) + 1j * rng.normal(size=1))
        F2 = Polynomial(rng.normal(size=rng.integers(2, 7)) - 0.5j)
        d = from_holomorphic_curve(ComplexRational(F1), ComplexRational(F2), [INF])
        for z in _regular_points(rng, d, 100):
            K = gauss_curvature(d, z)
            assert K <= 0
            assert gauss_curvature_raw(d.S1, d.S2, z) == pytest.approx(K, rel=1e-9, abs=1e-300)


def test_finite_difference_curvature(rng, datasets):
    h = 1e-4
    for name in ("catenoid", "enneper_type", "surjective"):
        d = datasets[name]
        for z in _regular_points(rng, d, 10):
            if abs(z) < 0.3:
                continue
            logs = [math.log(metric_factor(d, z + s)) for s in (h, -h, 1j * h, -1j * h)]
            lap = (sum(logs) - 4 * math.log(metric_factor(d, z))) / h ** 2
            K_fd = -lap / (2 * metric_factor(d, z))
            assert K_fd == pytest.approx(gauss_curvature(d, z), rel=1e-4)


def test_regularity(datasets):
    for d in datasets.values():
        assert regularity_check(d).passed
    bad = WeierstrassData(P("z"), P("1/(z-1)"), (INF,))
    issues = regularity_check(bad).issues
    assert [e.code for e in issues] == ["MissingPuncture"]
    deg = WeierstrassData(P("1/z"), P("z^2"), (INF,))
    assert [e.code for e in regularity_check(deg).issues] == ["CommonZero"]


def test_puncture_evaluation_rejected(catenoid):
    with pytest.raises(PreconditionError):
        metric_factor(catenoid, 0)
