"""Dense complex polynomials with an Aberth-Ehrlich root finder.

Coefficients are stored in ascending powers of ``z``.  The zero polynomial
has an empty coefficient array.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .errors import RootFindingError

# coefficients below this fraction of the largest one are treated as round-off
TRIM_RTOL = 1e-14


def _as_coeffs(coeffs) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
    if arr.ndim != 1:
        raise ValueError("coefficients must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise ValueError("polynomial coefficients must be finite")
    return arr


def _trim(arr: np.ndarray, rtol: float = TRIM_RTOL) -> np.ndarray:
    if arr.size == 0:
        return arr
    scale = np.max(np.abs(arr))
    if scale == 0.0:
        return arr[:0]
    keep = np.nonzero(np.abs(arr) > rtol * scale)[0]
    return arr[: keep[-1] + 1]


class Polynomial:
    """Immutable complex polynomial ``c[0] + c[1] z + ... + c[n] z^n``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] = (), rtol: float = TRIM_RTOL):
        c = _trim(_as_coeffs(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs), rtol)
        c.setflags(write=False)
        self._c = c

    # -- construction -------------------------------------------------
    @classmethod
    def constant(cls, value: complex) -> "Polynomial":
        return cls([value])

    @classmethod
    def z(cls) -> "Polynomial":
        return cls([0.0, 1.0])

    @classmethod
    def from_roots(cls, roots: Iterable[tuple[complex, int]], lead: complex = 1.0) -> "Polynomial":
        """Build ``lead * prod (z - r)^m`` from ``(r, m)`` pairs."""
        c = np.array([lead], dtype=complex)
        for r, m in roots:
            for _ in range(int(m)):
                c = np.convolve(c, np.array([-r, 1.0], dtype=complex))
        return cls(c)

    # -- basic properties --------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self._c.size - 1

    @property
    def lead(self) -> complex:
        return complex(self._c[-1]) if self._c.size else 0j

    def is_zero(self) -> bool:
        return self._c.size == 0

    def is_constant(self) -> bool:
        return self._c.size <= 1

    def scale(self) -> float:
        """Largest coefficient modulus (0 for the zero polynomial)."""
        return float(np.max(np.abs(self._c))) if self._c.size else 0.0

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return Polynomial(self._c / self._c[-1])

    def trim(self, rtol: float) -> "Polynomial":
        """Drop leading coefficients smaller than ``rtol`` times the scale."""
        return Polynomial(self._c, rtol=rtol)

    # -- evaluation ---------------------------------------------------
    def __call__(self, z):
        """Horner evaluation; works elementwise on arrays."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in self._c[::-1]:
            acc = acc * z + c
        return acc if acc.ndim else complex(acc)

    def abs_bound(self, z):
        """``sum |c_k| |z|^k``: the scale of round-off in ``p(z)``."""
        r = np.abs(np.asarray(z, dtype=complex))
        acc = np.zeros_like(r)
        for c in self._c[::-1]:
            acc = acc * r + abs(c)
        return acc if acc.ndim else float(acc)

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return Polynomial([other])
        return NotImplemented

    def _padded(self, other: "Polynomial"):
        n = max(self._c.size, other._c.size)
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: self._c.size] = self._c
        b[: other._c.size] = other._c
        return a, b

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._padded(other)
        return Polynomial(a + b)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._padded(other)
        return Polynomial(a - b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial()
        return Polynomial(np.convolve(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if int(n) != n or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out = Polynomial([1.0])
        base = self
        n = int(n)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Euclidean division ``self = other * q + r`` with ``deg r < deg other``."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by the zero polynomial")
        num = self._c.copy()
        den = other._c
        dn = den.size - 1
        if num.size - 1 < dn:
            return Polynomial(), self
        q = np.zeros(num.size - dn, dtype=complex)
        lead = den[-1]
        for k in range(num.size - 1 - dn, -1, -1):
            coef = num[k + dn] / lead
            q[k] = coef
            num[k : k + dn + 1] -= coef * den
        rem = num[:dn] if dn > 0 else num[:0]
        return Polynomial(q), Polynomial(rem)

    def __divmod__(self, other):
        return self.divmod(self._coerce(other))

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def derivative(self, order: int = 1) -> "Polynomial":
        c = self._c
        for _ in range(order):
            if c.size <= 1:
                return Polynomial()
            c = c[1:] * np.arange(1, c.size)
        return Polynomial(c)

    def integral(self) -> "Polynomial":
        """Primitive with zero constant term."""
        if self.is_zero():
            return Polynomial()
        return Polynomial(np.concatenate([[0.0], self._c / np.arange(1, self._c.size + 1)]))

    def taylor_shift(self, center: complex) -> np.ndarray:
        """Coefficients of ``p(center + t)`` in powers of ``t``."""
        c = self._c.astype(complex)
        n = c.size
        out = c.copy()
        # repeated synthetic division
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                out[j] += center * out[j + 1]
        return out

    def reversed(self, degree: int) -> "Polynomial":
        """``z^degree * p(1/z)`` (requires ``degree >= deg p``)."""
        if degree < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        c = np.zeros(degree + 1, dtype=complex)
        c[: self._c.size] = self._c
        return Polynomial(c[::-1])

    def compose_mobius(self, a: complex, b: complex, c: complex, d: complex, degree: int | None = None) -> "Polynomial":
        """Numerator of ``p((a z + b)/(c z + d))`` over ``(c z + d)^degree``."""
        n = self.degree if degree is None else degree
        if self.is_zero():
            return Polynomial()
        lin_num = Polynomial([b, a])
        lin_den = Polynomial([d, c])
        out = Polynomial()
        for k, coef in enumerate(self._c):
            out = out + coef * (lin_num ** k) * (lin_den ** (n - k))
        return out

    # -- comparison / display ---------------------------------------
    def allclose(self, other: "Polynomial", atol: float = 1e-12) -> bool:
        a, b = self._padded(other)
        return bool(np.all(np.abs(a - b) <= atol))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._c.size == other._c.size and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return f"Polynomial({[complex(c) for c in self._c]!r})"

    def __str__(self):
        from .parser import format_polynomial

        return format_polynomial(self)


def poly_gcd(p: Polynomial, q: Polynomial, cluster_tol: float = 1e-9) -> Polynomial:
    """Monic greatest common divisor, found by matching root clusters."""
    if p.is_zero() and q.is_zero():
        raise ZeroDivisionError("gcd of two zero polynomials")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.is_constant() or q.is_constant():
        return Polynomial([1.0])
    common = _common_roots(roots(p, cluster_tol), roots(q, cluster_tol))
    return Polynomial.from_roots(common)


def match_tolerance(r: complex) -> float:
    """Absolute distance under which two computed roots are the same point."""
    return 1e-7 * (1.0 + abs(r))


def _common_roots(ra, rb):
    common = []
    used = [False] * len(rb)
    for r, m in ra:
        for j, (s, n) in enumerate(rb):
            if not used[j] and abs(r - s) <= match_tolerance(r):
                used[j] = True
                common.append((0.5 * (r + s), min(m, n)))
                break
    return common


# ---------------------------------------------------------------------
# root finding


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    n = c.size - 1
    # radius from the geometric mean of |a_0/a_n|, spread on a rotated circle
    a0 = abs(c[0]) if c[0] != 0 else 0.0
    rad = (a0 / abs(c[-1])) ** (1.0 / n) if a0 > 0 else 1.0
    upper = 1.0 + np.max(np.abs(c[:-1] / c[-1]))
    rad = min(max(rad, 1e-3), upper)
    k = np.arange(n)
    return rad * np.exp(1j * (2 * np.pi * k / n + 0.4))


def _aberth(c: np.ndarray, maxiter: int) -> tuple[np.ndarray, int]:
    n = c.size - 1
    dc = c[1:] * np.arange(1, n + 1)
    absc = np.abs(c)
    z = _initial_guesses(c)
    eps = np.finfo(float).eps
    active = np.ones(n, dtype=bool)
    for it in range(1, maxiter + 1):
        pz = np.polyval(c[::-1], z)
        dpz = np.polyval(dc[::-1], z)
        # a root is final once |p(z)| is at the rounding level of Horner's rule
        floor = 4 * n * eps * np.polyval(absc[::-1], np.abs(z))
        active &= np.abs(pz) > floor
        if not active.any():
            return z, it
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            s = inv.sum(axis=1)
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w) & active, w, 0.0)
        z = z - w
        if np.all(np.abs(w) <= 4 * eps * np.maximum(np.abs(z), 1e-300)):
            return z, it
    return z, maxiter


def _cluster(z: np.ndarray, radius: np.ndarray) -> list[list[int]]:
    """Single-linkage clusters of points closer than the per-point radius."""
    n = z.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= max(radius[i], radius[j]):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _is_multiple_root(p: Polynomial, c: complex, m: int, rtol: float) -> bool:
    """Backward test: p and its first m-1 derivatives vanish at c."""
    for j in range(m):
        dj = p.derivative(j)
        if dj.is_zero():
            continue
        if abs(dj(c)) > rtol * max(dj.abs_bound(c), 1e-300):
            return False
    return True


def _refine(p: Polynomial, c: complex, m: int, steps: int = 8) -> complex:
    """Newton on the (m-1)-th derivative, which has a simple root at c."""
    q = p.derivative(m - 1)
    dq = q.derivative()
    for _ in range(steps):
        d = dq(c)
        if d == 0:
            break
        step = q(c) / d
        c = c - step
        if abs(step) <= 4 * np.finfo(float).eps * max(abs(c), 1e-300):
            break
    return c


def roots(p: Polynomial, cluster_tol: float = 1e-9, maxiter: int = 2000) -> list[tuple[complex, int]]:
    """Roots of ``p`` with multiplicities.

    Simultaneous Aberth-Ehrlich iteration followed by cluster merging.
    Candidate clusters are accepted as one multiple root when the refined
    centre annihilates ``p`` and its first ``m-1`` derivatives to relative
    precision ``sqrt(cluster_tol)``; final roots closer than
    ``cluster_tol * (1 + |r|)`` are always merged.

    Raises
    ------
    RootFindingError
        If the iteration fails to converge or a root does not pass the
        residual check.
    """
    if p.is_zero():
        raise ValueError("roots of the zero polynomial are undefined")
    c = p.coeffs
    out: list[tuple[complex, int]] = []
    # strip roots at the origin exactly
    nz = 0
    while nz < c.size - 1 and c[nz] == 0:
        nz += 1
    if nz:
        out.append((0j, nz))
        c = c[nz:]
    if c.size <= 1:
        return out
    reduced = Polynomial(c)
    if c.size == 2:
        return out + [(complex(-c[0] / c[1]), 1)]

    z, _ = _aberth(np.asarray(c), maxiter)
    if not np.all(np.isfinite(z)):
        raise RootFindingError("Aberth iteration diverged", residuals=[])

    # loose grouping: a perturbed m-fold root spreads over ~eps^(1/m)
    n = z.size
    with np.errstate(divide="ignore", invalid="ignore"):
        newton = np.abs(reduced(z) / reduced.derivative()(z))
    newton = np.where(np.isfinite(newton), newton, np.inf)
    radius = np.minimum(np.maximum(1e-4 * (1.0 + np.abs(z)), 2 * n * newton), 0.1 * (1.0 + np.abs(z)))
    found: list[tuple[complex, int]] = []
    for group in _cluster(z, radius):
        m = len(group)
        centre = complex(np.mean(z[group]))
        if m > 1:
            refined = _refine(reduced, centre, m)
            if _is_multiple_root(reduced, refined, m, math.sqrt(cluster_tol)):
                found.append((refined, m))
                continue
        for i in group:
            found.append((_refine(reduced, complex(z[i]), 1), 1))

    # final merge at the caller's tolerance
    pts = np.array([r for r, _ in found])
    mult = [m for _, m in found]
    merged: list[tuple[complex, int]] = []
    for group in _cluster(pts, cluster_tol * (1.0 + np.abs(pts))):
        m = sum(mult[i] for i in group)
        w = np.array([mult[i] for i in group], dtype=float)
        merged.append((complex(np.sum(pts[group] * w) / w.sum()), m))

    residuals = []
    for r, m in merged:
        res = abs(reduced(r))
        bound = 1e-6 * max(reduced.abs_bound(r), 1e-300) if m == 1 else np.inf
        residuals.append(res)
        if res > bound:
            raise RootFindingError(f"root {r} failed residual check", residuals=residuals)
    if sum(m for _, m in merged) != n:
        raise RootFindingError("multiplicities do not sum to the degree", residuals=residuals)
    return out + merged

