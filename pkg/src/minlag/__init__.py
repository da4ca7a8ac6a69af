"""Minimal Lagrangian surfaces in C^2 from genus-zero Weierstrass data."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CommonZero,
    ConstantGaussMap,
    CriticalPoint,
    MinlagError,
    MissingPuncture,
    NonzeroResidue,
    ParseError,
)
from .parser import parse_point, parse_rational  # noqa: E402
from .polynomial import Polynomial, roots  # noqa: E402
from .rational import ComplexRational  # noqa: E402
from .sphere import INF  # noqa: E402
from .weierstrass import WeierstrassData, from_holomorphic_curve  # noqa: E402

__all__ = [
    "__version__",
    "INF",
    "Polynomial",
    "roots",
    "ComplexRational",
    "parse_rational",
    "parse_point",
    "WeierstrassData",
    "from_holomorphic_curve",
    "MinlagError",
    "NonzeroResidue",
    "CommonZero",
    "MissingPuncture",
    "CriticalPoint",
    "ConstantGaussMap",
    "ParseError",
]
