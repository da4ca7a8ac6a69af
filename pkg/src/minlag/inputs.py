"""Input specifications (plain JSON objects) and the built-in datasets.

An input is either ``{"g": ..., "omega": ...}`` or ``{"F1": ..., "F2": ...}``
with expression strings, plus ``"punctures"`` (point strings), an optional
``"beta"`` and optional ``"constants"``.  An optional ``"immersion"`` object
with ``"G1"`` and ``"G2"`` replaces the computed primitives; it exists for
negative controls.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .parser import format_rational, parse_point, parse_rational
from .rational import ComplexRational
from .sphere import INF, format_point
from .weierstrass import WeierstrassData, from_holomorphic_curve

SURJECTIVE_NOTE = (
    "the Gauss map of F = (z^3/3 + z, z^2/2) is (z^2 + 1)/z; the frequently quoted (z + 1)/z "
    "omits the value 1 and does not come from this curve"
)
PLANE_NOTE = "Lagrangian plane, K ≡ 0"

BUILTINS: dict[str, dict] = {
    "catenoid": {
        "g": "-z^2",
        "omega": "-1/z^2",
        "punctures": ["0", "inf"],
        "beta": 0.0,
    },
    "enneper_type": {
        "F1": "(1+i)*z^2 + 2",
        "F2": "2*(1+i)*z - i",
        "punctures": ["inf"],
        "beta": 0.0,
    },
    "surjective": {
        "F1": "z^3/3 + z",
        "F2": "z^2/2",
        "punctures": ["inf"],
        "beta": 0.0,
        "notes": [SURJECTIVE_NOTE],
    },
    "plane": {
        "F1": "z",
        "F2": "z",
        "punctures": ["inf"],
        "beta": 0.0,
        "notes": [PLANE_NOTE],
    },
}

# data that must be rejected; used by the test-suite and the demos
CONTROLS: dict[str, dict] = {
    "nonzero_residue": {"g": "1", "omega": "1/z", "punctures": ["0", "inf"]},
    "common_zero": {"F1": "z^3/3", "F2": "z^2/2", "punctures": ["inf"]},
    "corrupted_primitive": {
        "g": "-z^2",
        "omega": "-1/z^2",
        "punctures": ["0", "inf"],
        "immersion": {"G1": "1.01*z", "G2": "1/z"},
    },
}


@dataclass(frozen=True)
class LoadedInput:
    spec: dict
    data: WeierstrassData
    immersion: tuple[ComplexRational, ComplexRational] | None = None


def builtin(name: str) -> dict:
    """A deep copy of a built-in input (or a control)."""
    table = {**BUILTINS, **CONTROLS}
    if name not in table:
        raise KeyError(f"unknown dataset {name!r}; choose from {sorted(table)}")
    spec = copy.deepcopy(table[name])
    spec.setdefault("name", name)
    return spec


def _expr(spec: dict, key: str) -> ComplexRational:
    text = spec[key]
    if not isinstance(text, str):
        raise ParseError(f"field {key!r} must be an expression string")
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise ParseError(f"{key}: {exc}", exc.position, text) from None


def _complex(v) -> complex:
    if isinstance(v, str):
        p = parse_point(v)
        if p is not INF:
            return complex(p)
        raise ParseError(f"constant must be finite, got {v!r}")
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def load_input(spec: dict) -> LoadedInput:
    """Validate an input object and build the Weierstrass data.

    Raises
    ------
    ParseError
        On a malformed object or expression.
    CommonZero
        If a curve ``(F1, F2)`` has a degenerate point off the punctures.
    """
    if not isinstance(spec, dict):
        raise ParseError("input must be a JSON object")
    has_g = "g" in spec or "omega" in spec
    has_f = "F1" in spec or "F2" in spec
    if has_g == has_f:
        raise ParseError("give exactly one of {g, omega} or {F1, F2}")
    pts = spec.get("punctures", [])
    if not isinstance(pts, list):
        raise ParseError("punctures must be a list of point strings")
    punctures = tuple(parse_point(str(p)) for p in pts)
    beta = float(spec.get("beta", 0.0))
    name = str(spec.get("name", ""))
    notes = tuple(str(n) for n in spec.get("notes", ()))
    if has_g:
        if not ("g" in spec and "omega" in spec):
            raise ParseError("both g and omega are required")
        g, omega = _expr(spec, "g"), _expr(spec, "omega")
        if omega.is_zero():
            raise ParseError("omega must not vanish identically")
        data = WeierstrassData(g=g, omega=omega, punctures=punctures, beta=beta, name=name, notes=notes)
    else:
        if not ("F1" in spec and "F2" in spec):
            raise ParseError("both F1 and F2 are required")
        data = from_holomorphic_curve(_expr(spec, "F1"), _expr(spec, "F2"), punctures, beta, name)
        data = data.with_(notes=notes)
    if "constants" in spec:
        c = spec["constants"]
        if not isinstance(c, list) or len(c) != 2:
            raise ParseError("constants must be a pair")
        data = data.with_(constants=(_complex(c[0]), _complex(c[1])))
    override = None
    if "immersion" in spec:
        imm = spec["immersion"]
        if not isinstance(imm, dict) or not {"G1", "G2"} <= set(imm):
            raise ParseError("immersion override needs G1 and G2")
        override = (_expr(imm, "G1"), _expr(imm, "G2"))
    return LoadedInput(spec, data, override)


def resolve(source: str) -> dict:
    """Input object from a built-in name, a JSON file path or inline JSON.

    Inline text of the form ``g; omega; p1, p2`` is also accepted.
    """
    table = {**BUILTINS, **CONTROLS}
    if source in table:
        return builtin(source)
    path = Path(source)
    if path.suffix == ".json" or path.is_file():
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from None
        return _json(text)
    if source.lstrip().startswith("{"):
        return _json(source)
    parts = [s.strip() for s in source.split(";")]
    if len(parts) not in (2, 3):
        raise ParseError(f"cannot interpret input {source!r}")
    spec = {"g": parts[0], "omega": parts[1], "punctures": []}
    if len(parts) == 3 and parts[2]:
        spec["punctures"] = [s.strip() for s in parts[2].split(",")]
    return spec


def _json(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.pos, text) from None


def describe(data: WeierstrassData) -> dict:
    """Canonical text form of the data (round-trips through the parser)."""
    return {
        "g": format_rational(data.g),
        "omega": format_rational(data.omega),
        "punctures": [format_point(p) for p in data.punctures],
        "beta": data.beta,
        "constants": [[c.real, c.imag] for c in data.constants],
    }
