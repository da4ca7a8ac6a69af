"""Points of the Riemann sphere ``C ∪ {∞}``.

Finite points are plain Python ``complex`` values; the point at infinity is
the singleton :data:`INF`.
"""

from __future__ import annotations

import math


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(p) -> bool:
    return p is INF


def as_point(p):
    """Coerce to a sphere point (``complex`` or :data:`INF`)."""
    if p is INF:
        return INF
    p = complex(p)
    if not (math.isfinite(p.real) and math.isfinite(p.imag)):
        raise ValueError("finite sphere points must have finite components; use INF")
    return p


def chordal(alpha, beta) -> float:
    """``|alpha - beta| / (sqrt(1+|alpha|^2) sqrt(1+|beta|^2))``, with the ∞ convention."""
    if alpha is INF and beta is INF:
        return 0.0
    if alpha is INF:
        return 1.0 / math.sqrt(1.0 + abs(beta) ** 2)
    if beta is INF:
        return 1.0 / math.sqrt(1.0 + abs(alpha) ** 2)
    return abs(alpha - beta) / (math.sqrt(1.0 + abs(alpha) ** 2) * math.sqrt(1.0 + abs(beta) ** 2))


def same_point(p, q, tol: float = 1e-8) -> bool:
    return chordal(p, q) <= tol


def format_point(p) -> str:
    if p is INF:
        return "inf"
    from .parser import format_complex

    return format_complex(complex(p))


def point_key(p):
    """Sort key placing finite points by (re, im) and ∞ last."""
    if p is INF:
        return (1, 0.0, 0.0)
    return (0, p.real, p.imag)
