"""The ball-intersection model of the body, envelope maps, and width checks.

Two independent representations of the same body are kept in play:

  * the envelope maps phi1/phi2, which push dual-pair points (x, y) outward
    along the line x-y by the chain radii -- their images are exact
    boundary points, and the pair (phi1, phi2) is always a binormal of
    length 2 z1;
  * an intersection of balls: one ball of radius 2 z1 around each vertex
    (their intersection alone is the Reuleaux simplex) and, for each grid
    sample c of each skeleton face, a ball of radius 2 z1 - r(c) where r is
    the face's chain radius.  A body of constant width w equals the
    intersection of all balls of radius w centered on its own boundary;
    since the chain spheres around skeleton points are internally tangent
    to the body, the shrunken balls above recover it, up to grid
    resolution.

Everything downstream cross-validates one representation against the
other: ray casts probe the ball model, phi samples must land on its
boundary, and boundary samples are classified by which ball is tight.

Labels for the 25 boundary pieces are digit strings: "2345"-style caps
(the spherical piece around the region antipodal to a vertex), "345"-style
triangle wedges (phi1 images over a patch), and "12"-style edge wedges
(phi2 images over an arc).  A ball centered on a patch is tight exactly at
phi2 points of the dual arc and vice versa, so the active center of a
sample lives on the face dual to the sample's own piece.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm as _norm
from scipy.stats import qmc

from .focal import base_patch_contains
from .geometry import as_vec4
from .skeleton import base_arc_points, base_patch_grid_params, dual_label


class DomainError(Exception):
    """phi1/phi2 arguments are not a dual pair point configuration."""


class InteriorPointNotInterior(Exception):
    """The designated interior point is not strictly inside every ball."""


class UnclassifiedSample(Exception):
    """Boundary sample carries an unknown face label."""


class TooFewSamples(Exception):
    """Not enough samples for the requested statistic."""


def _label_str(label):
    return "".join(str(i) for i in sorted(label))


_CAP_LABELS = {i: _label_str(set(range(1, 6)) - {i}) for i in range(1, 6)}
_VALID_LABELS = (
    set(_CAP_LABELS.values())
    | {_label_str(t) for t in itertools.combinations(range(1, 6), 3)}
    | {_label_str(p) for p in itertools.combinations(range(1, 6), 2)}
)


# ============================================================================
# envelope maps
# ============================================================================

def _require_dual_pair(patch, arc):
    if patch.kind != "triangle-patch" or arc.kind != "edge-arc":
        raise DomainError("phi maps take (triangle-patch, edge-arc)")
    if set(patch.label) | set(arc.label) != {1, 2, 3, 4, 5}:
        raise DomainError(f"faces {patch.label} and {arc.label} are not dual")


def phi1(patch, arc, x, y, validate=True):
    """Envelope point on the triangle-wedge side: x pushed away from y.

    x rides the patch, y the dual arc; the image is x + Rx * (x-y)/|x-y|
    with Rx the hyperbolic chain radius at x.  At a patch corner Rx = 0 and
    the map fixes x.
    """
    x, y = as_vec4(x), as_vec4(y)
    if validate:
        _require_dual_pair(patch, arc)
        if not patch.contains(x, tol=1e-8):
            raise DomainError("x is not on the patch")
        if not arc.contains(y, tol=1e-8):
            raise DomainError("y is not on the arc")
    d = x - y
    n = np.linalg.norm(d)
    return x + float(patch.radius(x)) * d / n


def phi2(patch, arc, x, y, validate=True):
    """Envelope point on the edge-wedge side: y pushed away from x."""
    x, y = as_vec4(x), as_vec4(y)
    if validate:
        _require_dual_pair(patch, arc)
        if not patch.contains(x, tol=1e-8):
            raise DomainError("x is not on the patch")
        if not arc.contains(y, tol=1e-8):
            raise DomainError("y is not on the arc")
    d = y - x
    n = np.linalg.norm(d)
    return y + float(arc.radius(y)) * d / n


# ============================================================================
# the ball model
# ============================================================================

@dataclass(frozen=True)
class BallModel:
    """Immutable intersection-of-balls representation.

    centers        (N, 4) ball centers: the 5 vertices first, then grid
                   samples of the 10 arcs, then of the 10 patches
    radii          (N,) ball radii: 2 z1 for vertices, 2 z1 - r(c) else
    origin_labels  per center: "v1".."v5" or the face label string
    origin_params  per center: () / (t,) / (x, theta)
    sample_labels  per center: the piece label a boundary sample gets when
                   this ball is the active one (the dual-face rule)
    face_slices    label -> slice into the center arrays
    interior_point the simplex centroid g
    width          2 z1
    patch_grid     (nx, ntheta) used for patch centers
    arc_n          sample count per arc
    """

    centers: np.ndarray
    radii: np.ndarray
    origin_labels: tuple
    origin_params: tuple
    sample_labels: tuple
    face_slices: dict
    interior_point: np.ndarray
    width: float
    patch_grid: tuple
    arc_n: int

    def min_slack(self, pts, chunk=None):
        """Smallest ball slack rho(c) - |p - c| and its argmin, vectorized.

        Negative slack means outside the model; zero means on a sphere.
        """
        P = np.atleast_2d(np.asarray(pts, dtype=float))
        C, R = self.centers, self.radii
        if chunk is None:
            # keep each distance block around 32 MB whatever the grid size
            chunk = max(16, int(4e6) // len(C))
        c2 = np.einsum("ij,ij->i", C, C)
        out = np.empty(len(P))
        arg = np.empty(len(P), dtype=np.intp)
        for i in range(0, len(P), chunk):
            B = P[i:i + chunk]
            d2 = (np.einsum("ij,ij->i", B, B)[:, None] + c2[None, :]
                  - 2.0 * (B @ C.T))
            np.maximum(d2, 0.0, out=d2)
            s = R[None, :] - np.sqrt(d2)
            j = np.argmin(s, axis=1)
            out[i:i + chunk] = s[np.arange(len(B)), j]
            arg[i:i + chunk] = j
        if np.ndim(pts) == 1:
            return float(out[0]), int(arg[0])
        return out, arg

    def contains(self, p, tol=1e-9):
        s, _ = self.min_slack(as_vec4(p))
        return s >= -tol

    def tight_centers(self, p, tol=1e-9):
        """Indices of all balls whose sphere passes through p (within tol)."""
        d = np.linalg.norm(self.centers - as_vec4(p), axis=1)
        return np.flatnonzero(np.abs(self.radii - d) <= tol)


def build_ball_model(skeleton, patch_grid=(64, 96), arc_n=256):
    """Assemble the ball model from a skeleton at the given grid resolution.

    ntheta must be divisible by 3 and the arc grids are symmetric, so the
    center set is (up to roundoff) invariant under all 120 motions.
    """
    nx, ntheta = patch_grid
    if ntheta % 3 != 0:
        raise ValueError("ntheta must be divisible by 3")
    c = skeleton.constants
    V = skeleton.simplex.vertices
    w = c.width

    centers, radii, o_labels, o_params, s_labels = [], [], [], [], []
    face_slices = {}
    for i in range(5):
        centers.append(V[i])
        radii.append(w)
        o_labels.append(f"v{i + 1}")
        o_params.append(())
        s_labels.append(_CAP_LABELS[i + 1])
    face_slices["vertices"] = slice(0, 5)

    a = math.sqrt(c.a_sq)
    t1 = math.acos(c.x1 / a)
    ts = np.linspace(-t1, t1, arc_n)
    arc_base = base_arc_points(c, arc_n)
    patch_params, patch_base = base_patch_grid_params(c, nx, ntheta)
    # the x = 1 grid row collapses to the sheet vertex; keep one copy
    first = (patch_params[:, 0] > 1.0) | (patch_params[:, 1] == 0.0)
    patch_params, patch_base = patch_params[first], patch_base[first]

    for face in skeleton.edge_faces() + skeleton.triangle_faces():
        lab = _label_str(face.label)
        dual = _label_str(dual_label(face.label))
        if face.kind == "edge-arc":
            pts = face.generator.apply(arc_base)
            params = [(float(t),) for t in ts]
        else:
            pts = face.generator.apply(patch_base)
            params = [tuple(p) for p in patch_params]
        # drop centers that duplicate a vertex ball (arc endpoints, patch
        # corners): the copies differ by roundoff, and whichever wins the
        # ray-cast argmin would mislabel cap hits
        dv = np.min(np.linalg.norm(pts[:, None, :] - V[None, :, :], axis=2), axis=1)
        keep = dv > 1e-12
        pts = pts[keep]
        params = [q for q, k in zip(params, keep) if k]
        start = len(centers)
        centers.extend(pts)
        radii.extend(w - face.radius(pts))
        o_labels.extend([lab] * len(pts))
        o_params.extend(params)
        s_labels.extend([dual] * len(pts))
        face_slices[lab] = slice(start, len(centers))

    model = BallModel(
        centers=np.array(centers),
        radii=np.array(radii),
        origin_labels=tuple(o_labels),
        origin_params=tuple(o_params),
        sample_labels=tuple(s_labels),
        face_slices=face_slices,
        interior_point=skeleton.simplex.centroid.copy(),
        width=w,
        patch_grid=(nx, ntheta),
        arc_n=arc_n,
    )
    slack, _ = model.min_slack(model.interior_point)
    if slack < 1e-6:
        raise InteriorPointNotInterior(f"centroid slack {slack:.3e}")
    return model


# ============================================================================
# boundary samples
# ============================================================================

@dataclass(frozen=True)
class BoundarySample:
    """A boundary point with its piece label and generating data.

    face is one of the 25 piece labels; active_center indexes the model
    ball that is tight at the point; params records face-local coordinates
    (grid parameters for phi samples, the direction for cap/ray samples).
    """

    point: np.ndarray
    face: str
    active_center: int
    params: dict


def _ray_cast_many(model, U, chunk=256):
    """Smallest positive sphere hit along g + t u for each row of U."""
    D = model.centers - model.interior_point
    d2 = np.einsum("ij,ij->i", D, D)
    r2md2 = model.radii ** 2 - d2  # positive: g is interior
    ts = np.empty(len(U))
    args = np.empty(len(U), dtype=np.intp)
    for i in range(0, len(U), chunk):
        B = D @ U[i:i + chunk].T                  # (N, b)
        t = B + np.sqrt(B * B + r2md2[:, None])   # positive root per ball
        j = np.argmin(t, axis=0)
        ts[i:i + chunk] = t[j, np.arange(t.shape[1])]
        args[i:i + chunk] = j
    return ts, args


def ray_cast_boundary(model, u):
    """Boundary sample in direction u from the interior point."""
    u = as_vec4(u)
    if abs(np.linalg.norm(u) - 1.0) > 1e-8:
        raise ValueError("direction must be a unit vector")
    t, idx = _ray_cast_many(model, u[None, :])
    point = model.interior_point + t[0] * u
    return BoundarySample(point=point, face=model.sample_labels[idx[0]],
                          active_center=int(idx[0]),
                          params={"direction": u, "t": float(t[0])})


def binormal_partner(model, s):
    """The opposite end of the diameter through a boundary sample.

    Every boundary point p with tight ball (c, rho) continues through c to
    the boundary point p - 2 z1 * (p - c)/|p - c|: for caps that is the
    opposite vertex, for wedges the phi-image on the dual side.
    """
    if s.face not in _VALID_LABELS:
        raise UnclassifiedSample(f"unknown face label {s.face!r}")
    c = model.centers[s.active_center]
    d = s.point - c
    n = np.linalg.norm(d)
    if n < 1e-12:
        raise UnclassifiedSample("sample coincides with its active center")
    return s.point - model.width * d / n


# ----------------------------------------------------------------------------
# exact boundary population
# ----------------------------------------------------------------------------

def _cap_directions(model, skeleton, i, count, rng,
                    vertex_margin=1e-7, face_margin=2e-4):
    """Certified directions u with p_i + 2 z1 u on the cap opposite p_i.

    A candidate passes when the cap point keeps distance <= 2 z1 - margin
    from the four other vertices (the Reuleaux condition, strictly) and
    slack >= face_margin against every face-sample ball.  Face centers that
    coincide with a vertex (arc endpoints, patch corners) restate the
    vertex condition and are skipped.  The face margin beats the sag of the
    slack function between grid nodes (a few 1e-5 even on coarse grids), so
    certified points satisfy the continuum constraints, not just the
    sampled ones; the price is a thin uncertified band along the cap rim,
    which wedge samples cover from the other side.
    """
    V = skeleton.simplex.vertices
    p = V[i - 1]
    others = np.array([V[j] for j in range(5) if j != i - 1])
    w = model.width
    fstart = model.face_slices["vertices"].stop
    C, R = model.centers[fstart:], model.radii[fstart:]
    near_vertex = np.zeros(len(C), dtype=bool)
    for v in V:
        near_vertex |= np.linalg.norm(C - v, axis=1) <= 1e-9
    C, R = C[~near_vertex], R[~near_vertex]
    c2 = np.einsum("ij,ij->i", C, C)

    out = []
    need = count
    for _ in range(400):
        if need <= 0:
            break
        m = max(20000, 60 * need)
        W = rng.standard_normal((m, 4))
        W /= np.linalg.norm(W, axis=1)[:, None]
        Q = p + w * W
        dv = np.linalg.norm(Q[:, None, :] - others[None, :, :], axis=2)
        keep = np.all(dv <= w - vertex_margin, axis=1)
        Q, Wk = Q[keep], W[keep]
        chunk = max(16, int(4e6) // max(1, len(C)))
        for j in range(0, len(Q), chunk):
            if need <= 0:
                break
            B = Q[j:j + chunk]
            d2 = (np.einsum("ij,ij->i", B, B)[:, None] + c2[None, :]
                  - 2.0 * (B @ C.T))
            np.maximum(d2, 0.0, out=d2)
            slack = R[None, :] - np.sqrt(d2)
            ok = slack.min(axis=1) >= face_margin
            for u in Wk[j:j + chunk][ok][:need]:
                out.append(u)
            need = count - len(out)
    if need > 0:
        raise RuntimeError(f"cap {i}: certified only {len(out)} of {count}")
    return np.array(out)


def sample_exact_boundary(model, skeleton, n, seed=0):
    """n exact boundary samples: phi images, certified cap points, vertices.

    All points lie on the true body boundary to roundoff (none come from
    ray casts against the discretized model), which is what the diameter
    check requires.  phi samples use the model's own face grids, so their
    active ball is tight exactly.
    """
    rng = np.random.default_rng(seed)
    V = skeleton.simplex.vertices
    w = model.width
    out = []

    n_caps = max(int(round(0.18 * n)) - 5, 0)
    n_phi = max(n - n_caps - 5, 0)
    pieces = []  # (sample label, center-slice of x, center-slice of y, kind)
    for patch in skeleton.triangle_faces():
        pieces.append((_label_str(patch.label), patch.label, "phi1"))
    for arc in skeleton.edge_faces():
        pieces.append((_label_str(arc.label), arc.label, "phi2"))
    base_count = n_phi // len(pieces)
    extras = n_phi - base_count * len(pieces)

    for k, (lab, label, kind) in enumerate(pieces):
        cnt = base_count + (1 if k < extras else 0)
        if cnt == 0:
            continue
        dual = dual_label(label)
        if kind == "phi1":
            xs_slice = model.face_slices[lab]
            ys_slice = model.face_slices[_label_str(dual)]
        else:
            xs_slice = model.face_slices[_label_str(dual)]
            ys_slice = model.face_slices[lab]
        xi = rng.integers(xs_slice.start, xs_slice.stop, size=cnt)
        yi = rng.integers(ys_slice.start, ys_slice.stop, size=cnt)
        X, Y = model.centers[xi], model.centers[yi]
        D = X - Y
        nn = np.linalg.norm(D, axis=1)
        good = nn > 1e-12  # x = y only when both sit at a shared vertex
        xi, yi, X, Y, D, nn = xi[good], yi[good], X[good], Y[good], D[good], nn[good]
        if kind == "phi1":
            r = w - model.radii[xi]          # hyperbolic chain radius at x
            P = X + (r / nn)[:, None] * D
            active = yi
        else:
            r = w - model.radii[yi]          # elliptic chain radius at y
            P = Y - (r / nn)[:, None] * D
            active = xi
        for p, a, ix, iy in zip(P, active, xi, yi):
            out.append(BoundarySample(
                point=p, face=lab, active_center=int(a),
                params={"x": model.origin_params[ix],
                        "y": model.origin_params[iy]}))

    per_cap = [n_caps // 5] * 5
    for k in range(n_caps - 5 * (n_caps // 5)):
        per_cap[k] += 1
    for i in range(1, 6):
        if per_cap[i - 1] == 0:
            continue
        for u in _cap_directions(model, skeleton, i, per_cap[i - 1], rng):
            out.append(BoundarySample(
                point=V[i - 1] + w * u, face=_CAP_LABELS[i],
                active_center=i - 1, params={"direction": u}))

    for i in range(1, 6):
        j = 1 if i != 1 else 2  # the tight vertex ball; any j != i works
        out.append(BoundarySample(
            point=V[i - 1].copy(), face=_CAP_LABELS[j],
            active_center=j - 1, params={}))
    return out


def sample_theta(model, skeleton, n, seed=0):
    """Mixed boundary population: exact phi/cap/vertex samples plus ray casts.

    Ray-cast samples (about 15%) sit on the discretized model's boundary,
    within the grid residual of the true one; everything else is exact.
    """
    n_ray = int(round(0.15 * n))
    out = sample_exact_boundary(model, skeleton, n - n_ray, seed=seed)
    if n_ray:
        sob = qmc.Sobol(d=4, scramble=True, seed=seed)
        m = 1 << max(2, (n_ray - 1).bit_length())
        U = _norm.ppf(sob.random(m)[:n_ray])
        U /= np.linalg.norm(U, axis=1)[:, None]
        ts, args = _ray_cast_many(model, U)
        for u, t, idx in zip(U, ts, args):
            out.append(BoundarySample(
                point=model.interior_point + t * u,
                face=model.sample_labels[idx], active_center=int(idx),
                params={"direction": u, "t": float(t)}))
    return out


# ============================================================================
# width and diameter verifiers
# ============================================================================

def sample_points(samples):
    """(N, 4) array of the sample points."""
    return np.array([s.point for s in samples])


def width_in_direction(samples, u):
    """Support width of the sampled boundary along u."""
    if len(samples) < 10 ** 4:
        raise TooFewSamples(f"{len(samples)} samples; need at least 10^4")
    u = as_vec4(u)
    if abs(np.linalg.norm(u) - 1.0) > 1e-8:
        raise ValueError("direction must be a unit vector")
    proj = sample_points(samples) @ u
    return float(proj.max() - proj.min())


def diameter_check(model, samples, pairs=10 ** 6, seed=0):
    """Largest pairwise distance found: partner sweep plus random pairs.

    The binormal partner of every sample is at distance exactly 2 z1, so
    the returned value can never fall below the width; the random-pair
    sweep hunts for anything above it.
    """
    pts = sample_points(samples)
    active = np.array([s.active_center for s in samples])
    C = model.centers[active]
    D = pts - C
    nn = np.linalg.norm(D, axis=1)
    partners = pts - model.width * D / nn[:, None]
    best = float(np.max(np.linalg.norm(pts - partners, axis=1)))

    rng = np.random.default_rng(seed)
    chunk = 200000
    done = 0
    while done < pairs:
        m = min(chunk, pairs - done)
        ia = rng.integers(0, len(pts), size=m)
        ib = rng.integers(0, len(pts), size=m)
        d = np.linalg.norm(pts[ia] - pts[ib], axis=1)
        best = max(best, float(d.max()))
        done += m
    return best


# ============================================================================
# grid-convergence diagnostics
# ============================================================================

def _random_arc_points(c, n, rng):
    a = math.sqrt(c.a_sq)
    b = math.sqrt(c.a_sq - 1.0)
    t1 = math.acos(c.x1 / a)
    ts = rng.uniform(-t1, t1, size=n)
    return np.column_stack([a * np.cos(ts), np.zeros(n), b * np.sin(ts),
                            np.zeros(n)])


def _random_patch_points(c, n, rng):
    out = []
    while len(out) < n:
        x = rng.uniform(1.0, c.x0)
        th = rng.uniform(0.0, 2.0 * math.pi)
        rho = math.sqrt((c.a_sq - 1.0) * (x * x - 1.0))
        q = np.array([x, rho * math.cos(th), 0.0, rho * math.sin(th)])
        if base_patch_contains(q, mc=None if c.a_sq == 1.5 else c):
            out.append(q)
    return np.array(out)


def boundary_residual(model, skeleton, probes=256, seed=0):
    """Empirical bound on how far the model boundary sits outside the body.

    Exact phi points at generic (off-grid) parameters are probed against
    the model; their worst min-slack, doubled plus a floor, bounds the
    displacement the grid resolution can cause anywhere.
    """
    rng = np.random.default_rng(seed)
    c = skeleton.constants
    per = max(probes // 20, 4)
    worst = 0.0
    for patch in skeleton.triangle_faces():
        arc = skeleton.face(dual_label(patch.label))
        X = patch.generator.apply(_random_patch_points(c, per, rng))
        Y = arc.generator.apply(_random_arc_points(c, per, rng))
        for x, y in zip(X, Y):
            for p in (phi1(patch, arc, x, y, validate=False),
                      phi2(patch, arc, x, y, validate=False)):
                s, _ = model.min_slack(p)
                worst = max(worst, abs(s))
    return 2.0 * worst + 1e-10


def ray_displacements(skeleton, grids, probes=200, seed=0):
    """Max boundary movement between successive grid refinements.

    grids is a list of (patch_grid, arc_n) levels, typically each twice as
    fine as the last; the returned displacement maxima shrink ~4x per level
    for a second-order-accurate envelope.
    """
    rng = np.random.default_rng(seed)
    U = rng.standard_normal((probes, 4))
    U /= np.linalg.norm(U, axis=1)[:, None]
    hits = []
    for patch_grid, arc_n in grids:
        model = build_ball_model(skeleton, patch_grid=patch_grid, arc_n=arc_n)
        ts, _ = _ray_cast_many(model, U)
        hits.append(ts)
    return [float(np.max(np.abs(hits[k + 1] - hits[k])))
            for k in range(len(hits) - 1)]
