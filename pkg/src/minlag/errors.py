"""Exception types.

Every exception carries a ``code`` attribute and a ``detail()`` dict so the
command-line front end can emit machine-readable failure reasons.
"""

from __future__ import annotations


def _point_str(p) -> str:
    from .sphere import format_point

    return format_point(p)


class MinlagError(Exception):
    code = "Error"

    def detail(self) -> dict:
        return {"code": self.code, "message": str(self)}


class RootFindingError(MinlagError, ArithmeticError):
    code = "RootFindingError"

    def __init__(self, message: str, residuals=()):
        super().__init__(message)
        self.residuals = list(residuals)


class NonzeroResidue(MinlagError, ValueError):
    """A primitive would need a logarithm: the residue at ``point`` is nonzero."""

    code = "NonzeroResidue"

    def __init__(self, point, value: complex, form: str = ""):
        self.point = point
        self.value = complex(value)
        self.form = form
        where = f" of {form}" if form else ""
        super().__init__(f"nonzero residue{where} at {_point_str(point)}: {self.value:.6g}")

    def detail(self) -> dict:
        out = super().detail()
        out.update(point=_point_str(self.point), value=[self.value.real, self.value.imag])
        if self.form:
            out["form"] = self.form
        return out


class PointError(MinlagError, ValueError):
    """Base for failures tied to a single point of the sphere."""

    def __init__(self, point, message: str = ""):
        self.point = point
        super().__init__(message or f"{self.code} at {_point_str(point)}")

    def detail(self) -> dict:
        out = super().detail()
        out["point"] = _point_str(self.point)
        return out


class CommonZero(PointError):
    """Both S1 and S2 vanish at a non-puncture point: the metric degenerates."""

    code = "CommonZero"


class MissingPuncture(PointError):
    """A pole of the data sits at a point that was not declared a puncture."""

    code = "MissingPuncture"


class Unbounded(PointError):
    """The metric has a pole at the requested point."""

    code = "Unbounded"


class CriticalPoint(PointError):
    code = "CriticalPoint"


class SingularStencil(PointError):
    """A finite-difference stencil touches a singular point."""

    code = "SingularStencil"


class ConstantGaussMap(MinlagError, ValueError):
    code = "ConstantGaussMap"

    def __init__(self, message: str = "Gauss map is constant (Lagrangian plane)"):
        super().__init__(message)


class NormalizationFailed(MinlagError, RuntimeError):
    code = "NormalizationFailed"


class QuadratureError(MinlagError, RuntimeError):
    code = "QuadratureError"


class PreconditionError(MinlagError, ValueError):
    code = "PreconditionViolation"


class ClassificationError(MinlagError, AssertionError):
    code = "AssertionFailed"


class ParseError(MinlagError, ValueError):
    code = "ParseError"

    def __init__(self, message: str, position: int | None = None, text: str = ""):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)

    def detail(self) -> dict:
        out = super().detail()
        if self.position is not None:
            out["position"] = self.position
        return out
