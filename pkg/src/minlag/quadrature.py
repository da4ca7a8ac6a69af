"""Adaptive cubature on rectangles with a tensor Gauss-Kronrod (7, 15) rule.

Each cell is integrated with the 15x15 Kronrod tensor rule; the embedded 7x7
Gauss tensor rule gives the error estimate.  Cells carrying the largest
share of the estimated error are split into quarters until the total
estimate meets the tolerance.  The integrand is called on whole batches of
cells, so it must accept numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import QuadratureError

_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
WEIGHTS_K = np.concatenate([_WK[:-1], _WK[::-1]])
WEIGHTS_G = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes
WEIGHTS_G[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])

_WK2 = np.outer(WEIGHTS_K, WEIGHTS_K).ravel()
_WG2 = np.outer(WEIGHTS_G, WEIGHTS_G).ravel()
_NX, _NY = (a.ravel() for a in np.meshgrid(NODES, NODES, indexing="ij"))
POINTS_PER_CELL = _NX.size

DEFAULT_MAX_EVALS = 10_000_000


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    evaluations: int
    cells: int


def _rule(f, cells: np.ndarray):
    """Kronrod value and |Kronrod - Gauss| for each cell ``(x0, x1, y0, y1)``."""
    cx = 0.5 * (cells[:, 0] + cells[:, 1])
    hx = 0.5 * (cells[:, 1] - cells[:, 0])
    cy = 0.5 * (cells[:, 2] + cells[:, 3])
    hy = 0.5 * (cells[:, 3] - cells[:, 2])
    x = cx[:, None] + hx[:, None] * _NX[None, :]
    y = cy[:, None] + hy[:, None] * _NY[None, :]
    vals = np.asarray(f(x, y), dtype=float)
    area = hx * hy
    k = area * (vals @ _WK2)
    g = area * (vals @ _WG2)
    return k, np.abs(k - g)


def _split(cells: np.ndarray) -> np.ndarray:
    x0, x1, y0, y1 = cells.T
    xm = 0.5 * (x0 + x1)
    ym = 0.5 * (y0 + y1)
    return np.concatenate([
        np.stack([x0, xm, y0, ym], axis=1),
        np.stack([xm, x1, y0, ym], axis=1),
        np.stack([x0, xm, ym, y1], axis=1),
        np.stack([xm, x1, ym, y1], axis=1),
    ])


def adaptive_quad2d(
    f,
    x0: float,
    x1: float,
    y0: float,
    y1: float,
    abs_tol: float = 1e-10,
    rel_tol: float = 0.0,
    max_evals: int = DEFAULT_MAX_EVALS,
    initial: tuple[int, int] = (2, 2),
) -> QuadResult:
    """Integrate ``f(x, y)`` over ``[x0, x1] x [y0, y1]``.

    Raises
    ------
    QuadratureError
        If the error target is not met within ``max_evals`` evaluations.
    """
    xs = np.linspace(x0, x1, initial[0] + 1)
    ys = np.linspace(y0, y1, initial[1] + 1)
    cells = np.array([[xs[i], xs[i + 1], ys[j], ys[j + 1]] for i in range(initial[0]) for j in range(initial[1])])
    vals, errs = _rule(f, cells)
    evals = cells.shape[0] * POINTS_PER_CELL
    while True:
        total = float(np.sum(vals))
        err = float(np.sum(errs))
        target = max(abs_tol, rel_tol * abs(total))
        if err <= target:
            return QuadResult(total, err, evals, cells.shape[0])
        # refine the cells holding the top half of the error budget
        order = np.argsort(-errs, kind="stable")
        cum = np.cumsum(errs[order])
        n_split = int(np.searchsorted(cum, 0.5 * err)) + 1
        chosen = np.sort(order[:n_split])
        if evals + 4 * n_split * POINTS_PER_CELL > max_evals:
            raise QuadratureError(
                f"cubature did not converge: error estimate {err:.3e} > {target:.3e} after {evals} evaluations"
            )
        keep = np.ones(cells.shape[0], dtype=bool)
        keep[chosen] = False
        children = _split(cells[chosen])
        cvals, cerrs = _rule(f, children)
        evals += children.shape[0] * POINTS_PER_CELL
        cells = np.concatenate([cells[keep], children])
        vals = np.concatenate([vals[keep], cvals])
        errs = np.concatenate([errs[keep], cerrs])
