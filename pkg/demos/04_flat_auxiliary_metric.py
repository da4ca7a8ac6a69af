"""
A flat metric built from the Gauss map
======================================

Evaluate the auxiliary conformal factor and check that log sigma is
harmonic with a finite-difference Laplacian.
"""

import numpy as np

from minlag.fujimoto import SigmaParams, flatness_probe, sigma_factor, singular_points
from minlag.inputs import builtin, load_input

d = load_input(builtin("enneper_type")).data
params = SigmaParams(0.2, (1.0, -1.0, 2j))
print("lambda", params.lam, "exponents", params.h_exponent, params.bracket_exponent)
print("singular set", singular_points(d, params))

rng = np.random.default_rng(0)
for z in rng.uniform(-3, 3, size=(6, 2)) @ np.array([1, 1j]):
    print(f"z={z:.3f}  sigma={sigma_factor(d, params, z):.4e}  laplacian={flatness_probe(d, params, z):.1e}")

# decay along a ray: log sigma grows linearly in log r with a fixed slope
r = np.logspace(1, 3, 5)
ls = np.log([sigma_factor(d, params, x) for x in r])
print("slope", np.polyfit(np.log(r), ls, 1)[0])
