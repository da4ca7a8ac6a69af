"""Rational functions with complex coefficients.

A :class:`ComplexRational` is kept reduced (numerator and denominator share no
root up to the matching tolerance) with a monic denominator, so two equal
functions have the same representation up to round-off.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonzeroResidue
from .polynomial import Polynomial, match_tolerance, roots
from .sphere import INF, point_key

RESIDUE_RTOL = 1e-9


def _series_div(num: np.ndarray, den: np.ndarray, nterms: int) -> np.ndarray:
    """First ``nterms`` coefficients of the power series ``num / den``."""
    out = np.zeros(nterms, dtype=complex)
    n = np.zeros(nterms, dtype=complex)
    k = min(nterms, num.size)
    n[:k] = num[:k]
    d0 = den[0]
    for i in range(nterms):
        acc = n[i]
        for j in range(1, min(i, den.size - 1) + 1):
            acc -= den[j] * out[i - j]
        out[i] = acc / d0
    return out


class ComplexRational:
    """Reduced quotient ``num / den`` of complex polynomials, ``den`` monic."""

    __slots__ = ("num", "den", "_cache")

    def __init__(self, num, den=None, *, reduce: bool = True, _poles=None, _zeros=None):
        num = num if isinstance(num, Polynomial) else Polynomial(np.atleast_1d(num))
        if den is None:
            den = Polynomial([1.0])
        elif not isinstance(den, Polynomial):
            den = Polynomial(np.atleast_1d(den))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self._cache: dict = {}
        if num.is_zero():
            self.num, self.den = Polynomial(), Polynomial([1.0])
            return
        lead = den.lead
        num = Polynomial(num.coeffs / lead)
        den = Polynomial(den.coeffs / lead)
        if reduce and not den.is_constant() and not num.is_constant():
            num, den = self._cancel(num, den, _poles, _zeros)
        elif den.is_constant() and _zeros is not None and _total(_zeros) == num.degree:
            self._cache["zeros"] = _zeros
        self.num, self.den = num, den

    def _cancel(self, num: Polynomial, den: Polynomial, prs=None, zrs=None):
        # factorizations known from the operands avoid re-solving products
        # with clustered multiple roots
        if prs is None or _total(prs) != den.degree:
            prs = roots(den)
        if zrs is None or _total(zrs) != num.degree:
            zrs = roots(num)
        used = [False] * len(zrs)
        kept_poles, kept_zeros, cancelled = [], [], []
        for r, m in prs:
            for j, (s, n) in enumerate(zrs):
                if not used[j] and abs(r - s) <= match_tolerance(r):
                    used[j] = True
                    k = min(m, n)
                    cancelled.append((r, k))
                    if m > k:
                        kept_poles.append((r, m - k))
                    if n > k:
                        kept_zeros.append((s, n - k))
                    break
            else:
                kept_poles.append((r, m))
        kept_zeros += [zr for j, zr in enumerate(zrs) if not used[j]]
        if not cancelled:
            self._cache["poles"] = prs
            self._cache["zeros"] = zrs
            return num, den
        factor = Polynomial.from_roots(cancelled)
        num = num.divmod(factor)[0]
        den = Polynomial.from_roots(kept_poles)
        self._cache["poles"] = kept_poles
        self._cache["zeros"] = kept_zeros
        return num, den

    # -- construction helpers ---------------------------------------
    @classmethod
    def constant(cls, c: complex) -> "ComplexRational":
        return cls(Polynomial([c]))

    @classmethod
    def z(cls) -> "ComplexRational":
        return cls(Polynomial.z())

    @classmethod
    def from_roots(cls, zeros, poles, lead: complex = 1.0) -> "ComplexRational":
        return cls(Polynomial.from_roots(zeros, lead), Polynomial.from_roots(poles))

    @staticmethod
    def coerce(x) -> "ComplexRational":
        if isinstance(x, ComplexRational):
            return x
        if isinstance(x, Polynomial):
            return ComplexRational(x)
        if isinstance(x, (int, float, complex, np.number)):
            return ComplexRational.constant(x)
        raise TypeError(f"cannot interpret {type(x).__name__} as a rational function")

    # -- structure -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    @property
    def degree(self) -> int:
        """Degree as a map of the sphere: ``max(deg num, deg den)``."""
        if self.is_zero():
            return 0
        return max(self.num.degree, self.den.degree)

    def scale(self) -> float:
        return max(self.num.scale(), self.den.scale())

    def poles(self) -> list[tuple[complex, int]]:
        """Finite poles with multiplicity."""
        if "poles" not in self._cache:
            self._cache["poles"] = [] if self.den.is_constant() else roots(self.den)
        return self._cache["poles"]

    def zeros(self) -> list[tuple[complex, int]]:
        """Finite zeros with multiplicity."""
        if "zeros" not in self._cache:
            self._cache["zeros"] = [] if self.num.is_constant() else roots(self.num)
        return self._cache["zeros"]

    def _match(self, p: complex, table) -> tuple[complex, int] | None:
        best = None
        for r, m in table:
            d = abs(r - p)
            if d <= match_tolerance(r) and (best is None or d < abs(best[0] - p)):
                best = (r, m)
        return best

    def order_at(self, p) -> int:
        """Valuation at ``p``: positive for zeros, negative for poles."""
        if self.is_zero():
            raise ValueError("order of the zero function is undefined")
        if p is INF:
            return self.den.degree - self.num.degree
        p = complex(p)
        hit = self._match(p, self.poles())
        if hit is not None:
            return -hit[1]
        hit = self._match(p, self.zeros())
        return hit[1] if hit is not None else 0

    def divisor(self) -> "Divisor":
        entries: dict = {}
        for r, m in self.zeros():
            entries[r] = entries.get(r, 0) + m
        for r, m in self.poles():
            entries[r] = entries.get(r, 0) - m
        v = self.order_at(INF)
        if v:
            entries[INF] = v
        return Divisor(entries)

    # -- evaluation ----------------------------------------------------
    def __call__(self, z):
        """Evaluate at finite points.  Scalars at a pole give :data:`INF`."""
        if z is INF:
            return self.value_at(INF)
        n = self.num(z)
        d = self.den(z)
        if np.ndim(n) == 0:
            if d == 0:
                return INF if n != 0 else self.value_at(complex(z))
            return n / d
        with np.errstate(divide="ignore", invalid="ignore"):
            return n / d

    def value_at(self, p):
        """Value as a sphere point, resolving poles and ∞ exactly."""
        if self.is_zero():
            return 0j
        if p is INF:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return INF
            if dn < dd:
                return 0j
            return self.num.lead / self.den.lead
        p = complex(p)
        v = self.order_at(p)
        if v < 0:
            return INF
        if v > 0:
            return 0j
        return self.num(p) / self.den(p)

    def laurent(self, p: complex, nterms: int) -> tuple[int, np.ndarray]:
        """Laurent expansion at a finite point.

        Returns ``(v, c)`` with ``r(z) = sum_k c[k] (z - p)^(v + k)``.
        """
        p = complex(p)
        pole = self._match(p, self.poles())
        zero = self._match(p, self.zeros())
        m = pole[1] if pole else 0
        k = zero[1] if zero else 0
        centre = pole[0] if pole else (zero[0] if zero else p)
        others = [(r, mm) for r, mm in self.poles() if pole is None or r != pole[0]]
        q = Polynomial.from_roots([(r - centre, mm) for r, mm in others])
        shifted = self.num.taylor_shift(centre)[k:]
        if shifted.size == 0:
            return 0, np.zeros(nterms, dtype=complex)
        return k - m, _series_div(shifted, q.taylor_shift(0.0), nterms)

    def residue_at(self, p) -> complex:
        """Coefficient of ``(z - p)^-1`` at a finite point."""
        if self.is_zero():
            return 0j
        v = self.order_at(p)
        if v >= 0:
            return 0j
        v, c = self.laurent(p, -v)
        return complex(c[-1 - v])

    def partial_fractions(self):
        """Polynomial part and principal parts.

        Returns ``(poly, parts)`` where ``parts`` maps each finite pole to the
        list ``[c_1, ..., c_m]`` of coefficients of ``(z - p)^-k``.
        """
        poly = self.num.divmod(self.den)[0]
        parts = {}
        for r, m in self.poles():
            v, c = self.laurent(r, m)
            # c[j] multiplies (z - r)^(j - m)
            parts[r] = [complex(c[m - k]) for k in range(1, m + 1)]
        return poly, parts

    def antiderivative(self, residue_rtol: float = RESIDUE_RTOL) -> "ComplexRational":
        """Rational primitive.

        Normalised so that ``R(0) = 0`` when 0 is not a pole; otherwise the
        polynomial part has zero constant term.

        Raises
        ------
        NonzeroResidue
            If a finite residue exceeds ``residue_rtol`` times the coefficient
            scale, i.e. the primitive needs a logarithm.
        """
        if self.is_zero():
            return ComplexRational(Polynomial())
        poly, parts = self.partial_fractions()
        tol = residue_rtol * max(1.0, self.num.scale())
        for r, cs in parts.items():
            if abs(cs[0]) > tol:
                raise NonzeroResidue(r, cs[0])
        out = ComplexRational(poly.integral())
        for r, cs in parts.items():
            m = len(cs)
            if m < 2:
                continue
            # sum_k c_k/(1-k) (z-r)^(1-k) over the common (z-r)^(m-1)
            lin = Polynomial([-r, 1.0])
            numer = Polynomial()
            for k in range(2, m + 1):
                numer = numer + (cs[k - 1] / (1 - k)) * lin ** (m - k)
            out = out + ComplexRational(numer, lin ** (m - 1), reduce=False)
        if self.order_at(0.0) >= 0:
            v0 = out.value_at(0j)
            out = out - v0
        return out

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        try:
            other = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den.is_constant() and other.den.is_constant():
            return ComplexRational(self.num + other.num)
        # least common denominator from the known poles
        lcm = _merge(self.poles(), other.poles(), max)
        fa = Polynomial.from_roots(_missing(lcm, self.poles()))
        fb = Polynomial.from_roots(_missing(lcm, other.poles()))
        num = self.num * fa + other.num * fb
        return ComplexRational(num, Polynomial.from_roots(lcm), _poles=lcm)

    __radd__ = __add__

    def __neg__(self):
        out = ComplexRational.__new__(ComplexRational)
        out.num, out.den, out._cache = -self.num, self.den, {}
        if "poles" in self._cache:
            out._cache["poles"] = self._cache["poles"]
        return out

    def __sub__(self, other):
        try:
            other = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ComplexRational(Polynomial())
        return ComplexRational(
            self.num * other.num,
            self.den * other.den,
            _poles=_merge(self.poles(), other.poles(), _add),
            _zeros=_merge(self.zeros(), other.zeros(), _add),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return ComplexRational(
            self.num * other.den,
            self.den * other.num,
            _poles=_merge(self.poles(), other.zeros(), _add),
            _zeros=_merge(self.zeros(), other.poles(), _add),
        )

    def __rtruediv__(self, other):
        return ComplexRational.coerce(other) / self

    def __pow__(self, n: int):
        if int(n) != n:
            raise ValueError("only integer powers are supported")
        n = int(n)
        if n < 0:
            return ComplexRational.constant(1.0) / self ** (-n)
        out = ComplexRational(self.num ** n, self.den ** n, reduce=False)
        out._cache["poles"] = [(r, m * n) for r, m in self.poles()] if n else []
        out._cache["zeros"] = [(r, m * n) for r, m in self.zeros()] if n else []
        return out

    def derivative(self) -> "ComplexRational":
        if self.is_constant():
            return ComplexRational(Polynomial())
        n, d = self.num, self.den
        return ComplexRational(n.derivative() * d - n * d.derivative(), d * d)

    def mobius_transform(self, m) -> "ComplexRational":
        """``(m11 r + m12) / (m21 r + m22)`` for an invertible 2x2 matrix."""
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("Möbius matrix must be 2x2")
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) <= 1e-14 * max(1.0, float(np.max(np.abs(m)))) ** 2:
            raise ValueError("singular Möbius matrix")
        top = m[0, 0] * self.num + m[0, 1] * self.den
        bot = m[1, 0] * self.num + m[1, 1] * self.den
        return ComplexRational(top, bot)

    def compose_mobius(self, a: complex, b: complex, c: complex, d: complex) -> "ComplexRational":
        """``r((a z + b) / (c z + d))``."""
        n = self.degree
        return ComplexRational(
            self.num.compose_mobius(a, b, c, d, n),
            self.den.compose_mobius(a, b, c, d, n),
        )

    def at_infinity_chart(self) -> "ComplexRational":
        """``r(1/w)`` as a function of ``w``."""
        return self.compose_mobius(0.0, 1.0, 1.0, 0.0)

    # -- comparison / display ------------------------------------------
    def allclose(self, other, atol: float = 1e-9) -> bool:
        other = ComplexRational.coerce(other)
        return self.num.allclose(other.num, atol) and self.den.allclose(other.den, atol)

    def __repr__(self):
        return f"ComplexRational({self.num!r}, {self.den!r})"

    def __str__(self):
        from .parser import format_rational

        return format_rational(self)


def _total(table) -> int:
    return sum(m for _, m in table)


def _add(a: int, b: int) -> int:
    return a + b


def _merge(a, b, combine):
    """Union of two root tables; matched roots get ``combine(ma, mb)``."""
    out = list(a)
    for r, m in b:
        for i, (s, n) in enumerate(out):
            if abs(r - s) <= match_tolerance(s):
                out[i] = (s, combine(n, m))
                break
        else:
            out.append((r, m))
    return out


def _missing(full, part):
    """Roots of ``full`` not accounted for by ``part`` (multiplicity difference)."""
    out = []
    for r, m in full:
        have = next((n for s, n in part if abs(r - s) <= match_tolerance(r)), 0)
        if m > have:
            out.append((r, m - have))
    return out


@dataclass(frozen=True)
class Divisor:
    """Finite formal sum of sphere points with nonzero integer orders."""

    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {p: int(v) for p, v in self.entries.items() if int(v) != 0}
        object.__setattr__(self, "entries", clean)

    @property
    def degree(self) -> int:
        return sum(self.entries.values())

    def positive_part(self) -> int:
        return sum(v for v in self.entries.values() if v > 0)

    def negative_part(self) -> int:
        return -sum(v for v in self.entries.values() if v < 0)

    def items(self):
        return sorted(self.entries.items(), key=lambda kv: point_key(kv[0]))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, p):
        return self.entries.get(p, 0)
