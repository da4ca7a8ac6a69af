"""
Catenoid walkthrough
====================

Build the catenoid-type surface from its Gauss map and height form, check
that it closes up, then compare exact and numeric total curvature.
"""

import math

import numpy as np

from minlag import INF, WeierstrassData, parse_rational
from minlag.gauss import exceptional_values, total_curvature_exact, total_curvature_numeric, verify
from minlag.structure import end_profiles, period_check

g = parse_rational("-z^2")
omega = parse_rational("-1/z^2")
cat = WeierstrassData(g, omega, (0, INF), name="catenoid")

# both ends have vanishing residues, so the surface is single-valued
for point, res_omega, res_g_omega in period_check(cat).residues:
    print(f"residues at {point}: {res_omega:.2e}, {res_g_omega:.2e}")

v = verify(cat)
print("regular:", v.regular, " periods:", v.period, " complete:", v.complete)

# the end orders feed the degree identity deg g = -2 + sum(mu)
mus = [e.mu for e in end_profiles(cat)]
print("end orders:", mus, " deg g =", g.degree, "=", -2 + sum(mus))

ex = exceptional_values(cat)
print("omitted values:", ex.omitted)

exact = total_curvature_exact(cat)
t = total_curvature_numeric(cat, tol=1e-8)
print(f"exact {exact:.12f}  numeric {t.numeric:.12f}  ({t.evaluations} evaluations)")
print("ratio to -2pi:", exact / (-2 * math.pi))

# the pointwise curvature is most negative at the unit circle
from minlag.weierstrass import gauss_curvature

r = np.linspace(0.25, 4, 9)
print(np.round([gauss_curvature(cat, x) for x in r], 4))
