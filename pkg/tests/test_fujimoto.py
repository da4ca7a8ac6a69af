import math

import numpy as np
import pytest

from minlag import INF, WeierstrassData
from minlag import parse_rational as P
from minlag.errors import CriticalPoint, PreconditionError, SingularStencil
from minlag.fujimoto import (
    SigmaParams,
    chordal_distance,
    flatness_probe,
    log_sigma_factor,
    sigma_factor,
    singular_points,
    stereographic_preimage,
)

CAT_PARAMS = SigmaParams(1 / 8, (1, -1, 2j))


def test_chordal_examples():
    assert chordal_distance(0, INF) == 1
    assert chordal_distance(2 + 1j, 2 + 1j) == 0
    assert chordal_distance(1, -1) == pytest.approx(1)
    assert chordal_distance(INF, INF) == 0


def _random_points(rng, n):
    pts = list(rng.normal(size=n) * 10 ** rng.uniform(-3, 3, size=n) + 1j * rng.normal(size=n))
    pts[::97] = [INF] * len(pts[::97])
    return pts


def test_chordal_bounds_and_symmetry(rng):
    a, b = _random_points(rng, 10_000), _random_points(rng, 10_000)
    for x, y in zip(a, b):
        v = chordal_distance(x, y)
        assert 0 <= v <= 1
        assert abs(v - chordal_distance(y, x)) <= 1e-15


def test_chordal_is_half_euclidean_on_sphere(rng):
    for x, y in zip(_random_points(rng, 500), _random_points(rng, 500)):
        half = 0.5 * np.linalg.norm(stereographic_preimage(x) - stereographic_preimage(y))
        assert chordal_distance(x, y) == pytest.approx(half, abs=1e-12)


def test_params():
    p = SigmaParams(1 / 8, (1, -1, 2j))
    assert p.lam == pytest.approx(2 / 3)
    assert p.h_exponent == pytest.approx(6)
    assert p.bracket_exponent == pytest.approx(4)
    assert 0.5 < SigmaParams(0.01, (0, 1, 2)).lam < SigmaParams(0.249, (0, 1, 2)).lam < 1
    for bad in (0, 0.25, -0.1):
        with pytest.raises(PreconditionError):
            SigmaParams(bad, (1, -1, 2j))
    with pytest.raises(PreconditionError):
        SigmaParams(0.1, (1, -1, INF))
    with pytest.raises(PreconditionError):
        SigmaParams(0.1, (1, 1, 2))


def test_sigma_two_evaluation_orders(catenoid):
    a = sigma_factor(catenoid, CAT_PARAMS, 3)
    b = math.exp(log_sigma_factor(catenoid, CAT_PARAMS, 3))
    assert 0 < a < math.inf
    assert a == pytest.approx(b, rel=1e-12)


def test_sigma_vanishes_towards_exceptional_preimage(catenoid):
    # g = -z^2 = -1 at z = 1
    vals = [sigma_factor(catenoid, CAT_PARAMS, 1 + t) for t in (1e-1, 1e-2, 1e-3, 1e-4)]
    assert all(x > y for x, y in zip(vals, vals[1:]))
    # sigma ~ |z - 1|^(4 (1 - eta)) = |z - 1|^3.5
    slope = math.log(vals[-1] / vals[-2]) / math.log(1e-1)
    assert slope == pytest.approx(3.5, abs=1e-2)


def test_critical_point_raises():
    d = WeierstrassData(P("z^2"), P("1"), (INF,))
    with pytest.raises(CriticalPoint):
        sigma_factor(d, CAT_PARAMS, 0)


def test_flatness_catenoid(catenoid):
    assert abs(flatness_probe(catenoid, CAT_PARAMS, 3 + 0.5j, 1e-3)) <= 1e-4


def test_flatness_linear_gauss_map():
    d = WeierstrassData(P("z"), P("1"), (INF,))
    p = SigmaParams(0.2, (0.5, -1j, 3))
    for z in np.linspace(-2, 2, 10) + 1.7j:
        assert abs(flatness_probe(d, p, z)) <= 1e-6


def test_stencil_next_to_critical_point():
    d = WeierstrassData(P("z^2 - 1"), P("1"), (INF,))
    with pytest.raises(SingularStencil):
        flatness_probe(d, SigmaParams(0.1, (5, 6, 7)), 1e-3, 1e-3)


def test_probe_detects_curved_metric(catenoid):
    """The same stencil applied to the induced metric sees its curvature."""
    from minlag.weierstrass import gauss_curvature, metric_factor

    z, h = 1.3 + 0.4j, 1e-3
    f = lambda w: math.log(metric_factor(catenoid, w))  # noqa: E731
    lap = (-60 * f(z) + sum(16 * (f(z + s) + f(z - s)) - f(z + 2 * s) - f(z - 2 * s) for s in (h, 1j * h))) / (12 * h * h)
    assert -lap / (2 * metric_factor(catenoid, z)) == pytest.approx(gauss_curvature(catenoid, z), rel=1e-6)


@pytest.mark.parametrize("name", ["catenoid", "enneper_type", "surjective"])
def test_flatness_random_admissible(name, datasets, rng):
    d = datasets[name]
    eta = rng.uniform(0.01, 0.24)
    p = SigmaParams(eta, tuple(complex(*rng.normal(size=2)) for _ in range(3)))
    sing = singular_points(d, p)
    done = 0
    while done < 100:
        z = complex(*rng.uniform(-3, 3, size=2))
        if min(abs(z - q) for q in sing) < 0.5:
            continue
        assert abs(flatness_probe(d, p, z, 1e-3)) <= 1e-4
        done += 1
