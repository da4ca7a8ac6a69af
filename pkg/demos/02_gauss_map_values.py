"""
Which values does the Gauss map miss?
=====================================

Certify omitted values by solving g(z) = alpha exactly, and confirm
the surjective example against a dense sampling of the sphere.
"""

import numpy as np

from minlag.fujimoto import stereographic_preimage
from minlag.gauss import branching_orders, exceptional_values, kkm_bound_check, preimages
from minlag.inputs import builtin, load_input

surj = load_input(builtin("surjective")).data
print("g =", surj.g)
for note in surj.notes:
    print("note:", note)

ex = exceptional_values(surj)
print("omitted:", ex.omitted, " D_g =", ex.D_g)
for c in ex.certificates:
    print(f"  {c.value}: preimages {[(p, m) for p, m, _ in c.preimages]}")

# the value 1 is attained at the two roots of z^2 - z + 1
print("g = 1 at", preimages(surj.g, 1.0))

# ramification: n_g = 2(d - 1) on the sphere
div, n_g = branching_orders(surj.g)
print("branch points", list(div.items()), "total", n_g)

check = kkm_bound_check(surj)
print("bound chain:", [str(x) for x in check.chain], "passed", check.passed)

# brute force: map a fine grid of the sphere through g and look for holes
t = np.linspace(-1, 1, 600)
X, Y = np.meshgrid(t, t)
W = (X + 1j * Y)[(X**2 + Y**2 <= 1) & (X + 1j * Y != 0)]
Z = np.concatenate([W, 1 / W])
vals = surj.g(Z)
s = 1 + np.abs(vals) ** 2
pts = np.stack([2 * vals.real / s, 2 * vals.imag / s, (np.abs(vals) ** 2 - 1) / s], axis=1)
for alpha in (0, 1, -1, 1j):
    gap = np.min(np.linalg.norm(pts - stereographic_preimage(alpha), axis=1))
    print(f"closest sample to {alpha}: {gap:.1e}")
