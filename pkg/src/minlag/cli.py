"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails (the reasons are
printed as JSON), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import MinlagError, ParseError
from .fujimoto import SigmaParams, flatness_probe, sigma_factor
from .inputs import BUILTINS, CONTROLS, LoadedInput, builtin, load_input, resolve
from .parser import parse_point
from .report import DEFAULT_FD_STEP, DEFAULT_TOL, run_analyze, run_curvature, run_verify, summary
from .surface import MeshGrid, build_immersion, mesh_export

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    def default(o):
        if isinstance(o, np.generic):
            return o.item()
        if isinstance(o, complex):
            return [o.real, o.imag]
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return json.dumps(obj, indent=2, default=default, ensure_ascii=False)


def _meta(args) -> dict | None:
    if args.no_meta:
        return None
    return {"generated": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"), "argv": sys.argv[1:]}


def _load(source: str) -> LoadedInput:
    try:
        spec = resolve(source)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    return load_input(spec)


def _failure(reasons) -> int:
    print(_dump({"passed": False, "reasons": reasons}))
    return EXIT_FAIL


# ---------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    loaded = _load(args.input)
    res = run_verify(loaded, args.seed, args.fd_step)
    rep = res.report
    meta = _meta(args)
    if meta:
        rep["meta"] = meta
    print(_dump(rep))
    return EXIT_PASS if res.passed else EXIT_FAIL


def cmd_analyze(args) -> int:
    loaded = _load(args.input)
    res = run_analyze(loaded, args.seed, args.tol, args.fd_step, force=args.force)
    rep = res.report
    meta = _meta(args)
    if meta:
        rep["meta"] = meta
    text = _dump(rep) + "\n"
    if args.report:
        Path(args.report).parent.mkdir(parents=True, exist_ok=True)
        Path(args.report).write_text(text)
    print(summary(rep))
    if not res.passed:
        print(_dump({"passed": False, "reasons": res.reasons}))
    return EXIT_PASS if res.passed else EXIT_FAIL


def cmd_curvature(args) -> int:
    loaded = _load(args.input)
    out = run_curvature(loaded, args.tol)
    print(_dump(out))
    return EXIT_PASS if out["passed"] else EXIT_FAIL


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        nx, ny = (int(s) for s in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"--grid expects NxM, got {text!r}") from None
    return nx, ny


def _parse_window(text: str) -> tuple:
    kind, _, rest = text.partition(":")
    try:
        vals = [float(s) for s in rest.split(",")]
    except ValueError:
        raise UsageError(f"bad --window {text!r}") from None
    if kind == "annulus" and len(vals) == 2:
        return ("annulus", *vals)
    if kind == "rect" and len(vals) == 4:
        return ("rect", *vals)
    raise UsageError("--window expects annulus:R0,R1 or rect:X0,X1,Y0,Y1")


def _parse_projection(text: str):
    if text.startswith("drop"):
        try:
            return ("drop", int(text[4:]))
        except ValueError:
            raise UsageError(f"bad --project {text!r}") from None
    try:
        m = json.loads(text)
    except json.JSONDecodeError:
        raise UsageError("--project expects dropN or a JSON 3x4 matrix") from None
    return m


def cmd_mesh(args) -> int:
    loaded = _load(args.input)
    try:
        grid = MeshGrid(args.chart, _parse_grid(args.grid), _parse_window(args.window))
    except MinlagError as exc:
        raise UsageError(str(exc)) from None
    s = build_immersion(loaded.data)
    obj, js = mesh_export(s, loaded.data, grid, args.out, _parse_projection(args.project))
    print(_dump({"obj": str(obj), "json": str(js)}))
    return EXIT_PASS


def cmd_examples(args) -> int:
    if args.name is None:
        for name in BUILTINS:
            print(name)
        for name in CONTROLS:
            print(f"{name} (negative control)")
        return EXIT_PASS
    try:
        spec = builtin(args.name)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    print(_dump(spec))
    return EXIT_PASS


def cmd_probe(args) -> int:
    loaded = _load(args.input)
    try:
        alphas = tuple(parse_point(s) for s in args.exceptional.split(","))
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    params = SigmaParams(args.eta, alphas)
    z = parse_point(args.at)
    out = {
        "eta": params.eta,
        "lambda": params.lam,
        "exponents": [params.h_exponent, params.bracket_exponent],
        "at": [complex(z).real, complex(z).imag],
        "sigma": sigma_factor(loaded.data, params, z),
        "laplacian_log_sigma": flatness_probe(loaded.data, params, z, args.h_step),
        "h_step": args.h_step,
    }
    out["passed"] = abs(out["laplacian_log_sigma"]) <= 1e-4
    print(_dump(out))
    return EXIT_PASS if out["passed"] else EXIT_FAIL


# ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minlag", description="Minimal Lagrangian surfaces from Weierstrass data.")
    ap.add_argument("--version", action="version", version=f"minlag {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="seed of the normalizing rotation")
    common.add_argument("--fd-step", type=float, default=DEFAULT_FD_STEP, help="finite-difference step")
    common.add_argument("--no-meta", action="store_true", help="omit timestamps for byte-identical output")
    sub = ap.add_subparsers(dest="command", required=True)
    src_help = "built-in name, JSON file, inline JSON, or 'g; omega; p1, p2'"

    p = sub.add_parser("verify", parents=[common], help="regularity, periods, completeness, immersion")
    p.add_argument("input", help=src_help)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", parents=[common], help="full analysis report")
    p.add_argument("input", help=src_help)
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--force", action="store_true", help="analyze even if verification fails")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative quadrature tolerance")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("curvature", parents=[common], help="exact and numeric total curvature")
    p.add_argument("input", help=src_help)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("mesh", parents=[common], help="export OBJ and JSON meshes")
    p.add_argument("input", help=src_help)
    p.add_argument("--grid", default="64x64")
    p.add_argument("--window", default="annulus:0.2,5", help="annulus:R0,R1 or rect:X0,X1,Y0,Y1")
    p.add_argument("--chart", choices=["z", "w"], default="z")
    p.add_argument("--project", default="drop4", help="dropN (1-based) or a JSON 3x4 matrix")
    p.add_argument("--out", default="mesh", help="output path without extension")
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("examples", parents=[common], help="list or print built-in inputs")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("probe", parents=[common], help="flat auxiliary metric at a point")
    p.add_argument("input", help=src_help)
    p.add_argument("--eta", type=float, default=0.125)
    p.add_argument("--exceptional", default="1,-1,2i", help="three comma-separated values")
    p.add_argument("--at", default="3", help="evaluation point")
    p.add_argument("--h-step", type=float, default=1e-3)
    p.set_defaults(func=cmd_probe)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        detail = exc.detail() if isinstance(exc, ParseError) else {"code": "UsageError", "message": str(exc)}
        print(_dump({"passed": False, "reasons": [detail]}), file=sys.stderr)
        return EXIT_USAGE
    except MinlagError as exc:
        return _failure([exc.detail()])
    except OSError as exc:
        print(_dump({"passed": False, "reasons": [{"code": "IOError", "message": str(exc)}]}), file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
