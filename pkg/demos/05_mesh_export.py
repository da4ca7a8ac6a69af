"""
Exporting a surface mesh
========================

Sample the immersion on an annulus, project R^4 to R^3 and write OBJ/JSON.
"""

import json
import tempfile
from pathlib import Path

from minlag.inputs import builtin, load_input
from minlag.surface import MeshGrid, build_immersion, default_probes, mesh_export, verify_immersion

d = load_input(builtin("catenoid")).data
s = build_immersion(d)

v = verify_immersion(s, d, default_probes(d))
print("conformal", v.conformality, "harmonic", v.harmonicity, "lagrangian", v.lagrangian)
print("angle offset", v.angle_offset, "(beta =", d.beta, ")")

grid = MeshGrid("z", (48, 96), ("annulus", 0.3, 3.0))
out = Path(tempfile.mkdtemp()) / "catenoid"
obj, js = mesh_export(s, d, grid, out, projection=("drop", 4))
meta = json.loads(js.read_text())
print(obj, js)
print(len(meta["vertices"]), "vertices,", len(meta["faces"]), "triangles")
