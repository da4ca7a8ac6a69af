import math

import numpy as np
import pytest

from minlag import INF, ComplexRational, Polynomial, WeierstrassData
from minlag import parse_rational as P
from minlag.errors import MissingPuncture
from minlag.structure import (
    completeness_check,
    degree_ends_identity,
    end_profiles,
    normalize,
    one_form_order_at,
    one_form_residue,
    period_check,
)
from minlag.weierstrass import random_rotation, rotate

S = 1 / math.sqrt(2)


def test_one_form_order_examples():
    assert one_form_order_at(P("-1/z^2"), 0) == -2
    assert one_form_order_at(P("-1/z^2"), INF) == 0
    assert one_form_order_at(P("2+2i"), INF) == -2


def test_period_examples(catenoid, enneper):
    assert period_check(catenoid).passed
    assert period_check(enneper).passed
    v = period_check(WeierstrassData(P("1"), P("1/z"), (0, INF)))
    assert not v.passed
    fails = v.failures()
    assert fails[0].code == "NonzeroResidue" and fails[0].point == 0
    assert fails[0].value == pytest.approx(1)


def test_period_requires_punctures_at_poles():
    with pytest.raises(MissingPuncture):
        period_check(WeierstrassData(P("z"), P("1/z^2"), (INF,)))


def test_catenoid_ends_with_given_rotation(catenoid):
    rd, _ = normalize(catenoid, (S, S))
    profiles = end_profiles(catenoid, (S, S))
    assert [(p.end, p.mu) for p in profiles] == [(0, 2), (INF, 2)]
    assert rd.g.value_at(0) == pytest.approx(-1)
    assert rd.g.value_at(INF) == pytest.approx(1)


def test_end_orders_of_examples(catenoid, enneper, surjective):
    assert [p.mu for p in end_profiles(catenoid)] == [2, 2]
    # the rotated form (b z + ā) 2a dz has a pole of order 3 at ∞
    assert [p.mu for p in end_profiles(enneper)] == [3]
    assert [p.mu for p in end_profiles(surjective)] == [4]


def test_end_orders_independent_of_rotation(rng, datasets):
    for d in datasets.values():
        if d.is_plane():
            continue
        ref = [p.mu for p in end_profiles(d)]
        for seed in range(10):
            assert [p.mu for p in end_profiles(d, seed=seed)] == ref
        for _ in range(10):
            a, b = random_rotation(rng)
            assert [p.mu for p in end_profiles(d, (a, b))] == ref


def test_completeness(catenoid):
    assert completeness_check(catenoid).well_defined_surface
    v = completeness_check(WeierstrassData(P("-z^2"), P("1"), (INF,)))
    assert v.complete and v.profiles[0].mu >= 2


def test_simple_pole_end_contradiction():
    d = WeierstrassData(P("z"), P("1/(z-5)"), (5,))
    v = completeness_check(d)
    assert [p.mu for p in v.profiles] == [1]
    assert v.simple_pole_ends == (5,)
    assert not v.period_passed and not v.well_defined_surface
    assert one_form_residue(d.omega, 5) == pytest.approx(1)
    # g omega = z/(z-5) dz also has an unlisted pole at ∞
    with pytest.raises(MissingPuncture):
        period_check(d)


def test_degree_identity(catenoid, enneper, surjective):
    assert degree_ends_identity(catenoid) == (2, 2, True)
    assert degree_ends_identity(enneper) == (1, 1, True)
    assert degree_ends_identity(surjective) == (2, 2, True)


def test_canonical_divisor_degree(rng):
    for _ in range(40):
        zs = [(complex(*rng.normal(size=2)), int(rng.integers(1, 3))) for _ in range(rng.integers(0, 4))]
        ps = [(complex(*rng.normal(size=2)), int(rng.integers(1, 3))) for _ in range(rng.integers(0, 4))]
        om = ComplexRational.from_roots(zs, ps, 1 + 0.5j)
        pts = [r for r, _ in om.zeros()] + [r for r, _ in om.poles()]
        total = sum(one_form_order_at(om, p) for p in pts) + one_form_order_at(om, INF)
        assert total == -2


def test_period_invariant_under_rotation(rng, catenoid):
    bad = WeierstrassData(P("1"), P("1/z"), (0, INF))
    for _ in range(20):
        a, b = random_rotation(rng)
        assert period_check(rotate(catenoid, a, b)).passed
        assert not period_check(rotate(bad, a, b)).passed


def _random_valid_data(rng):
    """Exact derivatives of a random curve: zero residues, matched zeros."""
    n = int(rng.integers(1, 3))
    poles = [complex(*rng.normal(size=2)) for _ in range(n)]
    F2 = ComplexRational(Polynomial(rng.normal(size=3) + 0j), Polynomial.from_roots([(p, 1) for p in poles]))
    F1 = ComplexRational(Polynomial(rng.normal(size=4) + 1j * rng.normal(size=4)), Polynomial.from_roots([(p, 1) for p in poles]))
    from minlag.weierstrass import from_holomorphic_curve

    return from_holomorphic_curve(F1, F2, poles + [INF])


def test_degree_identity_random(rng):
    checked = 0
    for _ in range(15):
        try:
            d = _random_valid_data(rng)
        except Exception:
            continue
        if d.is_plane() or not period_check(d).passed:
            continue
        assert degree_ends_identity(d)[2]
        checked += 1
    assert checked >= 10
