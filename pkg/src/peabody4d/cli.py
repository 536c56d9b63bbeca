"""Command-line interface: constants, verification suites, sampling, slicing.

Four subcommands:

``constants``
    Print the model constants (17 significant digits, optionally JSON with
    exact radical forms), or the embedding tuple for another ``--a2``.
``verify``
    Run a named suite of numeric checks and emit a JSON report.  The report
    is deterministic for a given seed and grid: wall-clock timings go to
    stderr only.  Exit status 1 when any check fails.
``sample``
    Write a CSV of boundary samples (coordinates, piece label, model slack).
``slice``
    Intersect the ball model with a hyperplane and export the resulting
    3-dimensional surface as an OFF/PLY mesh or a CSV point cloud.

Checks are independent of each other and keep no state beyond the report
accumulator, so they are safe to reorder or run concurrently; all
randomness flows through explicitly seeded generators.

Exit statuses: 0 success, 1 verification failure (or an empty slice),
2 usage error, 3 I/O error.
"""

import argparse
import dataclasses
import json
import math
import os
import sys
import time
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.stats import norm as _norm
from scipy.stats import qmc

from .body import (
    _ray_cast_many,
    binormal_partner,
    boundary_residual,
    build_ball_model,
    diameter_check,
    phi1,
    phi2,
    sample_exact_boundary,
    sample_points,
    sample_theta,
    width_in_direction,
)
from .focal import (
    interlock_residual,
    focal_const_residual,
    focal_sum_residual,
    standard_focal_pair,
)
from .geometry import (
    base_ellipse,
    base_hyperboloid,
    ellipse_point,
    hyperboloid_point,
)
from .numerics import compute_model_constants, solve_focal_embedding
from .skeleton import (
    _ALL_PERMS,
    base_arc_points,
    base_patch_grid,
    build_focal_skeleton,
    build_simplex,
    build_symmetry_group,
    dual_label,
    radius_consistency_residual,
    rotation_closure_check,
    tangent_slopes,
)


class EmptySlice(Exception):
    """The requested hyperplane does not meet the body."""


class _UsageError(Exception):
    """Malformed flag or config values (exit status 2)."""


# exact radical forms for the canonical constants; quantities obtained by
# tangency solves (the chain seed radii) have no closed form and are omitted
EXACT_FORMS = {
    "a_sq": "3/2",
    "focus_e": "1",
    "focus_h": "sqrt(3/2)",
    "x0_sq": "(41 - 4*sqrt(10))/27",
    "y0_sq": "(7 - 2*sqrt(10))/27",
    "x1_sq": "(11 + 2*sqrt(10))/12",
    "z1": "sqrt(7 - 2*sqrt(10))/6",
    "width": "sqrt(7 - 2*sqrt(10))/3",
}

DEFAULT_GRID = (64, 96)
DEFAULT_SAMPLES = 10000


def _fmt(x):
    return "%.17g" % float(x)


# ----------------------------------------------------------------------------
# configuration plumbing
# ----------------------------------------------------------------------------

def _load_config(path):
    """Flat key = value file; '#' starts a comment."""
    cfg = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise _UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            cfg[key] = value
    return cfg


def _resolve(flag_value, cfg, key, convert, default):
    """Defaults < config file < command-line flag."""
    if flag_value is not None:
        return flag_value
    if key in cfg:
        try:
            return convert(cfg[key])
        except ValueError as exc:
            raise _UsageError(f"config key {key!r}: {exc}") from exc
    return default


def _resolve_seed(flag_value, cfg):
    if flag_value is not None:
        return flag_value
    if "seed" in cfg:
        return int(cfg["seed"])
    env = os.environ.get("PEABODY4D_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise _UsageError(f"PEABODY4D_SEED: {exc}") from exc
    return 0


def _parse_grid(text):
    try:
        nx, ntheta = (int(part) for part in text.lower().split("x"))
    except ValueError as exc:
        raise _UsageError(f"--grid expects <nx>x<ntheta>, got {text!r}") from exc
    if nx < 2 or ntheta < 3 or ntheta % 3:
        raise _UsageError("--grid needs nx >= 2 and ntheta a positive multiple of 3")
    return nx, ntheta


def _arc_count(ntheta):
    # ties the arc resolution to the patch resolution: 96 -> 256, 24 -> 64
    return max(16, (8 * ntheta) // 3)


def _parse_tols(items):
    tols = {}
    for item in items or []:
        if "=" not in item:
            raise _UsageError(f"--tol expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        try:
            tols[name.strip()] = float(value)
        except ValueError as exc:
            raise _UsageError(f"--tol {name}: {exc}") from exc
    return tols


def _build_model(grid):
    c = compute_model_constants()
    s = build_simplex(c)
    skeleton = build_focal_skeleton(c, s, build_symmetry_group(s))
    model = build_ball_model(skeleton, patch_grid=grid, arc_n=_arc_count(grid[1]))
    return c, skeleton, model


# ----------------------------------------------------------------------------
# constants
# ----------------------------------------------------------------------------

def cmd_constants(args):
    cfg = _load_config(args.config) if args.config else {}
    a2 = _resolve(args.a2, cfg, "a2", float, None)
    if a2 is not None and a2 != 1.5:
        x0, x1, y0, z1 = solve_focal_embedding(a2)
        data = {"a_sq": a2, "x0": x0, "x1": x1, "y0": y0, "z1": z1,
                "width": 2.0 * z1}
        if args.json:
            print(json.dumps(data, indent=2, sort_keys=True))
        else:
            for key in ("a_sq", "x0", "x1", "y0", "z1", "width"):
                print(f"{key:8s} = {_fmt(data[key])}")
        return 0

    c = compute_model_constants()
    data = dataclasses.asdict(c)
    if args.json:
        data["exact"] = dict(EXACT_FORMS)
        print(json.dumps(data, indent=2, sort_keys=True))
        return 0
    for key, value in data.items():
        line = f"{key:10s} = {_fmt(value)}"
        if key in EXACT_FORMS:
            line += f"   (= {EXACT_FORMS[key]})"
        print(line)
    for key in ("x0_sq", "y0_sq", "x1_sq"):
        print(f"{key:10s} = {_fmt(getattr(c, key[:2]) ** 2)}   (= {EXACT_FORMS[key]})")
    return 0


# ----------------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------------

@dataclass
class CheckRecord:
    name: str
    anchor: str
    max_residual: float
    tolerance: float
    passed: bool
    samples: int
    seed: int


@dataclass
class VerificationReport:
    suite: str
    seed: int
    samples: int
    a_sq: float
    width: float
    patch_grid: tuple
    arc_n: int
    checks: list

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def to_json(self):
        doc = {
            "schema": 1,
            "suite": self.suite,
            "seed": self.seed,
            "samples": self.samples,
            "model": {
                "a_sq": self.a_sq,
                "width": self.width,
                "patch_grid": list(self.patch_grid),
                "arc_n": self.arc_n,
            },
            "checks": [dataclasses.asdict(check) for check in self.checks],
            "passed": self.passed,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _run_check(report, tols, name, anchor, samples, seed, default_tol, fn):
    tol = tols.get(name, default_tol)
    start = time.perf_counter()
    value = float(fn())
    elapsed = time.perf_counter() - start
    record = CheckRecord(name=name, anchor=anchor, max_residual=value,
                         tolerance=float(tol), passed=bool(value <= tol),
                         samples=int(samples), seed=int(seed))
    status = "ok" if record.passed else "FAIL"
    print(f"  {name}: {value:.3e} vs {tol:.1e} [{status}] ({elapsed:.2f}s)",
          file=sys.stderr)
    report.checks.append(record)


def _focal_checks(report, tols, samples, seed):
    E, H = base_ellipse(), base_hyperboloid()
    pair = standard_focal_pair()
    c = compute_model_constants()

    def sum_sweep():
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(samples):
            a_e = ellipse_point(E, rng.uniform(0, 2 * math.pi))
            b_e = ellipse_point(E, rng.uniform(0, 2 * math.pi))
            a_h = hyperboloid_point(H, rng.uniform(1.0, 2.5),
                                    rng.uniform(0, 2 * math.pi))
            b_h = hyperboloid_point(H, rng.uniform(1.0, 2.5),
                                    rng.uniform(0, 2 * math.pi))
            worst = max(worst, abs(focal_sum_residual(E, H, a_e, b_e, a_h, b_h)))
        return worst

    def const_sweep():
        rng = np.random.default_rng(seed + 1)
        worst = 0.0
        for _ in range(samples):
            a_e = ellipse_point(E, rng.uniform(0, 2 * math.pi))
            a_h = hyperboloid_point(H, rng.uniform(1.0, 3.0),
                                    rng.uniform(0, 2 * math.pi))
            worst = max(worst, abs(focal_const_residual(pair, a_e, a_h)))
        return worst

    def radius_sum_grid():
        xs = base_patch_grid(c, 20, 15)[:100]
        ys = base_arc_points(c, 100)
        return max(abs(interlock_residual(x, y)) for x in xs for y in ys)

    _run_check(report, tols, "focal-distance-sum",
               "sum of distances between dual quadric points splits by component",
               samples, seed, 1e-10, sum_sweep)
    _run_check(report, tols, "focal-difference-constant",
               "mixed vertex-focus distance combination is constant",
               samples, seed + 1, 1e-10, const_sweep)
    _run_check(report, tols, "radius-sum-constant",
               "separation plus the two chain radii equals the width",
               100 * 100, seed, 1e-10, radius_sum_grid)


def _skeleton_checks(report, tols, samples, seed):
    c = compute_model_constants()
    s = build_simplex(c)
    skeleton = build_focal_skeleton(c, s, build_symmetry_group(s))
    group = skeleton.group

    def closure():
        return rotation_closure_check(c, s, n=max(200, samples // 5))

    def omega_offset():
        motion = group[_ALL_PERMS.index((4, 5, 3, 1, 2))]
        omega = motion.apply(np.array([math.sqrt(c.a_sq), 0.0, 0.0, 0.0]))
        p45 = s.midpoints[(4, 5)]
        return abs(np.linalg.norm(omega - p45) - (math.sqrt(1.5) - c.x1))

    def tangents():
        target = -3.0 * c.z1 / c.x1
        return max(abs(slope - target) for slope in tangent_slopes(c, s))

    def radius_match():
        pts = skeleton.face((4, 5)).points(102)[1:-1]
        return max(abs(radius_consistency_residual(skeleton, x)) for x in pts)

    _run_check(report, tols, "rotation-closure",
               "the cycling motion maps the base arc onto the patch sheet",
               max(200, samples // 5), seed, 1e-10, closure)
    _run_check(report, tols, "closure-point-offset",
               "the transported arc apex sits at the predicted edge-midpoint distance",
               1, seed, 1e-12, omega_offset)
    _run_check(report, tols, "tangent-match",
               "arc tangent agrees with the patch tangent at the shared corner",
               3, seed, 1e-12, tangents)
    _run_check(report, tols, "radius-consistency",
               "elliptic and hyperbolic chain radii agree along the shared arc",
               100, seed, 1e-10, radius_match)


def _body_checks(report, tols, samples, seed, skeleton, model, resid_budget):
    w = model.width
    n = max(samples, 10 ** 4)
    pop = sample_theta(model, skeleton, n, seed=seed)
    pts = sample_points(pop)
    ms, _ = model.min_slack(pts)

    def separation():
        rng = np.random.default_rng(seed + 3)
        worst = 0.0
        for patch in skeleton.triangle_faces():
            arc = skeleton.face(dual_label(patch.label))
            xs = patch.grid_points(8, 9)
            ys = arc.points(40)
            for _ in range(20):
                x = xs[rng.integers(0, len(xs))]
                y = ys[rng.integers(1, len(ys) - 1)]
                gap = np.linalg.norm(phi1(patch, arc, x, y)
                                     - phi2(patch, arc, x, y))
                worst = max(worst, abs(gap - w))
        return worst

    def partner_sweep():
        worst = 0.0
        for s in pop[:2000]:
            q = binormal_partner(model, s)
            worst = max(worst, abs(np.linalg.norm(s.point - q) - w))
        return worst

    def diameter_pairs():
        exact = sample_exact_boundary(model, skeleton, min(n, 20000),
                                      seed=seed + 1)
        return abs(diameter_check(model, exact, pairs=10 ** 6, seed=seed + 2) - w)

    def diameter_chords():
        # the ten dual-pair axes carry diameters through the centroid, so a
        # corrupted radius law shows up here no matter how the random
        # directions fall
        axes = np.array([line.direction
                         for line in skeleton.simplex.axes.values()])
        eng = qmc.Sobol(d=4, scramble=True, seed=seed + 4)
        U = _norm.ppf(eng.random(2048))
        U /= np.linalg.norm(U, axis=1, keepdims=True)
        U = np.vstack([axes, U])
        t_plus, _ = _ray_cast_many(model, U)
        t_minus, _ = _ray_cast_many(model, -U)
        return max(0.0, float(np.max(t_plus + t_minus)) - w)

    # support extents converge like n^(-2/3); the 1e-3 width tolerance
    # needs a population in the 2e5 range regardless of --samples
    n_w = max(n, 2 * 10 ** 5)

    def width_axes():
        if n_w == n:
            pop_w = pop
        else:
            # exact samples from any grid lie on the same boundary, and a
            # coarse grid certifies its cap samples much faster
            src = model
            if len(model.centers) > 4000:
                src = build_ball_model(skeleton, patch_grid=(16, 24), arc_n=64)
            pop_w = sample_theta(src, skeleton, n_w, seed=seed + 5)
        worst = 0.0
        for k in range(4):
            u = np.zeros(4)
            u[k] = 1.0
            worst = max(worst, abs(width_in_direction(pop_w, u) - w))
        return worst

    _run_check(report, tols, "boundary-slack-inner",
               "every boundary sample lies inside every ball",
               n, seed, 1e-9, lambda: max(0.0, -float(ms.min())))
    _run_check(report, tols, "boundary-slack-outer",
               "every boundary sample touches the ball envelope within the grid residual",
               n, seed, resid_budget, lambda: max(0.0, float(ms.max())))
    _run_check(report, tols, "binormal-separation",
               "paired envelope images are the width apart",
               200, seed + 3, 1e-12, separation)
    _run_check(report, tols, "partner-distance",
               "each sample's diameter partner is the width away",
               min(2000, n), seed, 1e-9, partner_sweep)
    _run_check(report, tols, "diameter-pairs",
               "no sampled pair exceeds the width",
               10 ** 6, seed + 2, 1e-9, diameter_pairs)
    _run_check(report, tols, "diameter-chords",
               "antipodal ray chords through the centroid stay within the width budget",
               2058, seed + 4, 2.0 * resid_budget + 1e-9, diameter_chords)
    _run_check(report, tols, "width-coordinate-axes",
               "support width along the coordinate axes matches the width",
               n_w, seed + 5, 1e-3, width_axes)


def cmd_verify(args):
    cfg = _load_config(args.config) if args.config else {}
    suite = _resolve(args.suite, cfg, "suite", str, "all")
    if suite not in ("all", "focal", "skeleton", "body"):
        raise _UsageError(f"unknown suite {suite!r}")
    samples = _resolve(args.samples, cfg, "samples", int, DEFAULT_SAMPLES)
    if samples < 1:
        raise _UsageError("--samples must be positive")
    seed = _resolve_seed(args.seed, cfg)
    grid = _parse_grid(_resolve(args.grid, cfg, "grid", str,
                                "%dx%d" % DEFAULT_GRID))
    tols = _parse_tols(args.tol)

    start = time.perf_counter()
    c = compute_model_constants()
    report = VerificationReport(suite=suite, seed=seed, samples=samples,
                                a_sq=c.a_sq, width=c.width, patch_grid=grid,
                                arc_n=_arc_count(grid[1]), checks=[])
    print(f"suite {suite}: grid {grid[0]}x{grid[1]}, arcs {report.arc_n}, "
          f"samples {samples}, seed {seed}", file=sys.stderr)

    if suite in ("all", "focal"):
        _focal_checks(report, tols, samples, seed)
    if suite in ("all", "skeleton"):
        _skeleton_checks(report, tols, samples, seed)
    if suite in ("all", "body"):
        s = build_simplex(c)
        skeleton = build_focal_skeleton(c, s, build_symmetry_group(s))
        model = build_ball_model(skeleton, patch_grid=grid,
                                 arc_n=_arc_count(grid[1]))
        # the residual budget is calibrated on the as-built model so that a
        # corrupted radius law (--perturb) cannot loosen its own tolerances
        resid_budget = boundary_residual(model, skeleton, probes=128, seed=seed)
        if args.perturb:
            model = dataclasses.replace(
                model, radii=model.radii * (1.0 + args.perturb))
        _body_checks(report, tols, samples, seed, skeleton, model, resid_budget)

    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    status = "pass" if report.passed else "FAIL"
    print(f"suite {suite}: {status} "
          f"({time.perf_counter() - start:.1f}s wall)", file=sys.stderr)
    return 0 if report.passed else 1


# ----------------------------------------------------------------------------
# sample
# ----------------------------------------------------------------------------

def cmd_sample(args):
    cfg = _load_config(args.config) if args.config else {}
    n = _resolve(args.samples, cfg, "samples", int, 1000)
    if n < 1:
        raise _UsageError("--samples must be positive")
    seed = _resolve_seed(args.seed, cfg)
    fmt = _resolve(args.format, cfg, "format", str, "csv")
    if fmt != "csv":
        raise _UsageError(f"sample supports format csv, got {fmt!r}")
    grid = _parse_grid(_resolve(args.grid, cfg, "grid", str,
                                "%dx%d" % DEFAULT_GRID))

    _, skeleton, model = _build_model(grid)
    pop = sample_theta(model, skeleton, n, seed=seed)
    slack, _ = model.min_slack(sample_points(pop))
    lines = ["x,y,z,w,face,slack"]
    for s, sl in zip(pop, slack):
        coords = ",".join(_fmt(v) for v in s.point)
        lines.append(f"{coords},{s.face},{_fmt(sl)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ----------------------------------------------------------------------------
# slice
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class SliceSpec:
    normal: np.ndarray
    offset: float
    resolution: int
    fmt: str

    def __post_init__(self):
        if np.linalg.norm(self.normal) < 1e-12:
            raise _UsageError("hyperplane normal must be nonzero")
        if self.resolution < 8:
            raise _UsageError("slice resolution must be at least 8")
        if self.fmt not in ("off", "ply", "csv"):
            raise _UsageError(f"unknown slice format {self.fmt!r}")


def _parse_hyperplane(text):
    parts = text.split(",")
    if len(parts) != 5:
        raise _UsageError("--hyperplane expects nx,ny,nz,nw,offset")
    try:
        values = [float(part) for part in parts]
    except ValueError as exc:
        raise _UsageError(f"--hyperplane: {exc}") from exc
    return np.array(values[:4]), values[4]


def plane_basis(normal):
    """Deterministic orthonormal (3, 4) basis of the hyperplane through 0."""
    n_hat = normal / np.linalg.norm(normal)
    # rows of V orthogonal to n_hat, from the SVD of the 1 x 4 matrix
    _, _, vt = np.linalg.svd(n_hat[None, :])
    return vt[1:]


def slice_surface(model, spec):
    """Vertices (plane coords), faces, and the plane frame of the slice."""
    scale = np.linalg.norm(spec.normal)
    n_hat = spec.normal / scale
    off = spec.offset / scale
    d = model.centers @ n_hat - off
    if np.any(np.abs(d) >= model.radii):
        raise EmptySlice("a bounding ball misses the hyperplane entirely")

    B = plane_basis(spec.normal)
    origin = off * n_hat
    C3 = (model.centers - origin - np.outer(d, n_hat)) @ B.T
    R3 = np.sqrt(model.radii ** 2 - d ** 2)

    def min_slack3(q):
        return float(np.min(R3 - np.linalg.norm(C3 - q, axis=1)))

    p0 = (model.interior_point - origin) @ B.T
    if min_slack3(p0) <= 1e-9:
        # the projected centroid fell outside: look for any interior point
        best = max(
            (minimize(lambda q: -min_slack3(q), start, method="Nelder-Mead",
                      options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 400})
             for start in (p0, np.zeros(3))),
            key=lambda res: -res.fun)
        if -best.fun <= 1e-9:
            raise EmptySlice("hyperplane misses the body")
        p0 = best.x

    dirs, faces = _uv_sphere(spec.resolution)
    D = C3 - p0
    b = dirs @ D.T                                     # (ndir, nball)
    disc = b * b + (R3 ** 2 - np.einsum("ij,ij->i", D, D))[None, :]
    t = np.min(b + np.sqrt(np.maximum(disc, 0.0)), axis=1)
    verts = p0 + t[:, None] * dirs
    return verts, faces, (origin, B)


def _uv_sphere(res):
    """Closed latitude-longitude triangulation of the unit 2-sphere."""
    m = 2 * res
    phis = np.linspace(0.0, 2.0 * math.pi, m, endpoint=False)
    dirs = [np.array([0.0, 0.0, 1.0])]
    index = {}
    for i in range(1, res - 1):
        theta = math.pi * i / (res - 1)
        st, ct = math.sin(theta), math.cos(theta)
        for j, phi in enumerate(phis):
            index[i, j] = len(dirs)
            dirs.append(np.array([st * math.cos(phi), st * math.sin(phi), ct]))
    south = len(dirs)
    dirs.append(np.array([0.0, 0.0, -1.0]))

    faces = []
    for j in range(m):
        faces.append((0, index[1, j], index[1, (j + 1) % m]))
    for i in range(1, res - 2):
        for j in range(m):
            a, b = index[i, j], index[i, (j + 1) % m]
            c, e = index[i + 1, j], index[i + 1, (j + 1) % m]
            faces.append((a, c, e))
            faces.append((a, e, b))
    for j in range(m):
        faces.append((south, index[res - 2, (j + 1) % m], index[res - 2, j]))
    return np.array(dirs), faces


def _mesh_text(verts, faces, fmt):
    if fmt == "off":
        lines = ["OFF", f"{len(verts)} {len(faces)} 0"]
        lines += [" ".join(_fmt(v) for v in vert) for vert in verts]
        lines += ["3 %d %d %d" % face for face in faces]
        return "\n".join(lines) + "\n"
    if fmt == "ply":
        lines = [
            "ply", "format ascii 1.0",
            f"element vertex {len(verts)}",
            "property double x", "property double y", "property double z",
            f"element face {len(faces)}",
            "property list uchar int vertex_indices",
            "end_header",
        ]
        lines += [" ".join(_fmt(v) for v in vert) for vert in verts]
        lines += ["3 %d %d %d" % face for face in faces]
        return "\n".join(lines) + "\n"
    lines = ["x,y,z"]
    lines += [",".join(_fmt(v) for v in vert) for vert in verts]
    return "\n".join(lines) + "\n"


def cmd_slice(args):
    cfg = _load_config(args.config) if args.config else {}
    plane = _resolve(args.hyperplane, cfg, "hyperplane", str, None)
    if plane is None:
        raise _UsageError("--hyperplane is required")
    normal, offset = _parse_hyperplane(plane)
    spec = SliceSpec(
        normal=normal, offset=offset,
        resolution=_resolve(args.resolution, cfg, "resolution", int, 24),
        fmt=_resolve(args.format, cfg, "format", str, "off"))
    grid = _parse_grid(_resolve(args.grid, cfg, "grid", str,
                                "%dx%d" % DEFAULT_GRID))

    _, _, model = _build_model(grid)
    verts, faces, _frame = slice_surface(model, spec)
    text = _mesh_text(verts, faces, spec.fmt)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ----------------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="peabody4d",
        description="Inspect and verify a 4-dimensional constant-width body "
                    "built from focal-conic ball envelopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("constants", help="print the model constants")
    pc.add_argument("--json", action="store_true")
    pc.add_argument("--a2", type=float, default=None,
                    help="solve the embedding for another ellipse scale")
    pc.add_argument("--config", default=None)
    pc.set_defaults(func=cmd_constants)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("--suite", choices=["all", "focal", "skeleton", "body"],
                    default=None)
    pv.add_argument("--samples", type=int, default=None)
    pv.add_argument("--seed", type=int, default=None)
    pv.add_argument("--tol", action="append", metavar="NAME=VALUE",
                    help="override a check tolerance")
    pv.add_argument("--grid", default=None, metavar="NXxNTHETA")
    pv.add_argument("--out", default=None)
    pv.add_argument("--config", default=None)
    pv.add_argument("--perturb", type=float, default=0.0,
                    help=argparse.SUPPRESS)
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("sample", help="write boundary samples as CSV")
    ps.add_argument("--samples", type=int, default=None)
    ps.add_argument("--seed", type=int, default=None)
    ps.add_argument("--format", choices=["csv"], default=None)
    ps.add_argument("--grid", default=None, metavar="NXxNTHETA")
    ps.add_argument("--out", default=None)
    ps.add_argument("--config", default=None)
    ps.set_defaults(func=cmd_sample)

    pl = sub.add_parser("slice", help="export a hyperplane slice as a mesh")
    pl.add_argument("--hyperplane", default=None, metavar="NX,NY,NZ,NW,OFFSET")
    pl.add_argument("--resolution", type=int, default=None)
    pl.add_argument("--format", choices=["off", "ply", "csv"], default=None)
    pl.add_argument("--grid", default=None, metavar="NXxNTHETA")
    pl.add_argument("--out", default=None)
    pl.add_argument("--config", default=None)
    pl.set_defaults(func=cmd_slice)
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return int(args.func(args))
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EmptySlice as exc:
        print(f"error: empty slice: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
