"""
Surfaces with total curvature -2 pi
===================================

Polynomial curves F = (a z^2 + b, 2 a z + c) give one end and a Gauss map of
degree one.  The classifier recovers (a, b, c), even after a rotation.
"""

import numpy as np

from minlag import INF, ComplexRational, Polynomial, from_holomorphic_curve
from minlag.gauss import classify_minus_2pi, total_curvature_exact
from minlag.weierstrass import random_rotation, rotate

rng = np.random.default_rng(3)
for _ in range(3):
    a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
    d = from_holomorphic_curve(
        ComplexRational(Polynomial([b, 0, a])), ComplexRational(Polynomial([c, 2 * a])), [INF]
    )
    cls = classify_minus_2pi(d)
    print(f"input  a={a:.4f} b={b:.4f} c={c:.4f}")
    print(f"found  a={cls.a:.4f} b={cls.b:.4f} c={cls.c:.4f}  total {total_curvature_exact(d):.6f}")

# a rotated copy still lands in the family; the constants move with it
p, q = random_rotation(rng)
rd = rotate(d, p, q)
rc = classify_minus_2pi(rd)
print(f"rotated a={rc.a:.4f} b={rc.b:.4f} c={rc.c:.4f}  total {total_curvature_exact(rd):.6f}")
