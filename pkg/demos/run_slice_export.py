"""Slice the body with hyperplanes and export meshes.

A hyperplane cuts each 4-ball in a 3-ball, so a slice of the model is again
an intersection of balls; the surface is ray cast in-plane and written as
an OFF mesh.  Run this, then open the files in any mesh viewer.
"""

import numpy as np

from peabody4d import build_ball_model, compute_model_constants
from peabody4d.cli import EmptySlice, SliceSpec, _mesh_text, slice_surface
from peabody4d.skeleton import build_focal_skeleton, build_simplex, build_symmetry_group

c = compute_model_constants()
s = build_simplex(c)
skeleton = build_focal_skeleton(c, s, build_symmetry_group(s))
model = build_ball_model(skeleton, patch_grid=(16, 24), arc_n=64)

for name, normal, offset in (
        ("slice_w0.off", [0, 0, 0, 1], 0.0),
        ("slice_z0.off", [0, 0, 1, 0], 0.0),
        ("slice_x.off", [1, 0, 0, 0], 1.1)):
    spec = SliceSpec(normal=np.array(normal, dtype=float), offset=offset,
                     resolution=32, fmt="off")
    try:
        verts, faces, _ = slice_surface(model, spec)
    except EmptySlice as e:
        print(name, "-> empty:", e)
        continue
    with open(name, "w") as fh:
        fh.write(_mesh_text(verts, faces, "off"))
    ext = verts.max(axis=0) - verts.min(axis=0)
    print(name, "->", len(verts), "vertices, extents",
          np.round(ext, 4), "(width %.4f)" % model.width)

# pushing the plane past the support gives an empty slice, not a crash
try:
    slice_surface(model, SliceSpec(np.array([0.0, 0, 0, 1]), 0.4, 16, "off"))
except EmptySlice:
    print("offset 0.4 along w -> empty slice, as it should be")
