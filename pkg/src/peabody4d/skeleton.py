"""The embedded simplex, its 120 symmetries, and the curved 2-skeleton.

The skeleton replaces the flat 2-skeleton of the regular 4-simplex by twenty
curved faces: each edge p_i p_j is replaced by an ellipse arc E_ij (the
subarc of a transported copy of E between the two vertices, bulging away
from the simplex), and each triangle p_i p_j p_k by a hyperboloid patch
H_ijk (a curvilinear triangle on a transported copy of H).  All twenty are
images of the two base faces E_12 and H_345 under the symmetry group, which
is why the whole skeleton inherits the S5 symmetry of the simplex.

The crucial closure fact (special to a^2 = 3/2) is that the rotation taking
p1 -> p4, p2 -> p5 and fixing p3 maps E_12 onto the boundary curve that the
{4,5} cut plane carves out of the *base* hyperboloid -- the transported arcs
lie on H itself, so patch boundaries and edge arcs agree.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .focal import (
    OffArc,
    base_arc_contains,
    base_patch_contains,
    patch_cut_planes,
    standard_focal_pair,
)
from .geometry import (
    Isometry4,
    Quadric,
    as_vec4,
    base_ellipse,
    base_hyperboloid,
    isometry_from_vertex_permutation,
    quadric_residual,
    simplex_vertices,
)

_LABELS_EDGE = tuple(itertools.combinations(range(1, 6), 2))
_LABELS_TRI = tuple(itertools.combinations(range(1, 6), 3))
_ALL_PERMS = tuple(itertools.permutations(range(1, 6)))  # lexicographic


def dual_label(label):
    """The complementary label: {i,j} <-> {k,l,m} within {1..5}."""
    return tuple(k for k in range(1, 6) if k not in label)


@dataclass(frozen=True)
class Line4:
    """A straight line, stored as a point and a unit direction."""

    point: np.ndarray
    direction: np.ndarray

    def distance_to(self, p):
        d = as_vec4(p) - self.point
        return float(np.linalg.norm(d - (d @ self.direction) * self.direction))


@dataclass(frozen=True)
class Simplex4:
    """The focally embedded regular 4-simplex plus its derived anchors.

    vertices     (5, 4), rows p1..p5
    midpoints    {(i, j): p_ij}
    barycenters  {(i, j, k): p_ijk}
    centroid     g, on the x-axis
    axes         {(i, j): line through p_ij and the complementary barycenter}
    """

    constants: object
    vertices: np.ndarray
    midpoints: dict
    barycenters: dict
    centroid: np.ndarray
    axes: dict


def build_simplex(c):
    """Build the canonical Simplex4 from model constants and validate it."""
    V = simplex_vertices(c)
    edges = [np.linalg.norm(V[i] - V[j]) for i, j in itertools.combinations(range(5), 2)]
    if max(edges) - min(edges) > 1e-12:
        raise ValueError(f"edge spread {max(edges) - min(edges):.3e} too large")
    if max(abs(e - c.width) for e in edges) > 1e-12:
        raise ValueError("edges do not have length 2 z1")

    mid = {(i, j): 0.5 * (V[i - 1] + V[j - 1]) for i, j in _LABELS_EDGE}
    bary = {t: (V[t[0] - 1] + V[t[1] - 1] + V[t[2] - 1]) / 3.0 for t in _LABELS_TRI}
    g = V.mean(axis=0)
    axes = {}
    for i, j in _LABELS_EDGE:
        other = bary[dual_label((i, j))]
        d = other - mid[(i, j)]
        axes[(i, j)] = Line4(mid[(i, j)], d / np.linalg.norm(d))
    return Simplex4(constants=c, vertices=V, midpoints=mid,
                    barycenters=bary, centroid=g, axes=axes)


def build_symmetry_group(s):
    """All 120 motions realizing vertex permutations, in lexicographic order.

    Index k corresponds to the k-th permutation of (1,2,3,4,5) in
    lexicographic order, so callers can map permutations to motions.
    """
    return [isometry_from_vertex_permutation(s.vertices, p) for p in _ALL_PERMS]


# ============================================================================
# base-face sampling in parameter space
# ============================================================================

def base_arc_points(c, n):
    """n points of E_12 at symmetric eccentric angles (endpoints included)."""
    a = math.sqrt(c.a_sq)
    b = math.sqrt(c.a_sq - 1.0)
    t1 = math.acos(c.x1 / a)
    ts = np.linspace(-t1, t1, n)
    pts = np.zeros((n, 4))
    pts[:, 0] = a * np.cos(ts)
    pts[:, 2] = b * np.sin(ts)
    return pts


def base_patch_grid_params(c, nx, ntheta, tol=1e-9):
    """Clipped (x, theta) grid of the base patch: (params (N, 2), points (N, 4)).

    The product grid over [1, x0] x [0, 2pi) is clipped to the patch by the
    three cut planes.  ntheta should be divisible by 3 so the grid is
    exactly invariant under the patch's own dihedral symmetry -- that makes
    transported face samples agree across group motions to roundoff instead
    of to grid resolution.
    """
    xs = np.linspace(1.0, c.x0, nx)
    thetas = 2.0 * math.pi * np.arange(ntheta) / ntheta
    rho = np.sqrt((c.a_sq - 1.0) * (xs * xs - 1.0))
    X = np.repeat(xs, ntheta)
    R = np.repeat(rho, ntheta)
    T = np.tile(thetas, nx)
    pts = np.column_stack([X, R * np.cos(T), np.zeros_like(X), R * np.sin(T)])
    keep = np.ones(len(pts), dtype=bool)
    for nrm, p0 in patch_cut_planes(c):
        keep &= (pts - p0) @ nrm >= -tol
    return np.column_stack([X, T])[keep], pts[keep]


def base_patch_grid(c, nx, ntheta, tol=1e-9):
    """Grid samples of the base patch H345, shape (N, 4)."""
    return base_patch_grid_params(c, nx, ntheta, tol)[1]


# ============================================================================
# skeleton faces
# ============================================================================

@dataclass(frozen=True)
class SkeletonFace:
    """One curved face of the skeleton: an edge arc or a triangle patch.

    label       sorted vertex tuple: (i, j) for an arc, (i, j, k) for a patch
    kind        'edge-arc' or 'triangle-patch'
    quadric     the transported ellipse / hyperboloid carrying the face
    generator   motion taking the base face (E_12 or H_345) onto this face
    focus_plus  transported near focus -- center of the tangent circle/sphere
    r_splus     radius of that tangent circle/sphere
    cut_planes  for patches: three (normal, point) world-frame half-space
                boundaries; empty for arcs
    constants   the ModelConstants the skeleton was built from
    """

    label: tuple
    kind: str
    quadric: Quadric
    generator: Isometry4
    focus_plus: np.ndarray
    r_splus: float
    cut_planes: tuple
    constants: object

    # ---- chain radius law -------------------------------------------------
    def radius(self, p):
        """Chain radius at center(s) p; works on a single point or (N, 4)."""
        a = np.asarray(p, dtype=float)
        d = np.linalg.norm(a - self.focus_plus, axis=-1)
        return self.r_splus - d

    # ---- membership -------------------------------------------------------
    def contains(self, p, tol=1e-9):
        """Face membership, decided in the base frame via the generator."""
        v = self.generator.inverse().apply(as_vec4(p))
        c = self.constants
        mc = None if c.a_sq == 1.5 else c
        if self.kind == "triangle-patch":
            return base_patch_contains(v, tol, mc=mc)
        return base_arc_contains(v, tol, mc=mc)

    # ---- sampling ---------------------------------------------------------
    def points(self, n):
        """n parameter-space samples for an arc face (world coordinates)."""
        if self.kind != "edge-arc":
            raise ValueError("points(n) is for arc faces; use grid_points")
        return self.generator.apply(base_arc_points(self.constants, n))

    def grid_points(self, nx, ntheta):
        """Clipped (x, theta) grid samples for a patch face (world coords)."""
        if self.kind != "triangle-patch":
            raise ValueError("grid_points is for patch faces; use points(n)")
        return self.generator.apply(base_patch_grid(self.constants, nx, ntheta))


@dataclass(frozen=True)
class FocalSkeleton:
    """The twenty curved faces plus the data they were built from."""

    constants: object
    simplex: Simplex4
    group: list
    faces: list

    def face(self, label):
        return self._by_label[tuple(sorted(label))]

    def __post_init__(self):
        object.__setattr__(self, "_by_label", {f.label: f for f in self.faces})

    def edge_faces(self):
        return [f for f in self.faces if f.kind == "edge-arc"]

    def triangle_faces(self):
        return [f for f in self.faces if f.kind == "triangle-patch"]


def _lex_min_generator(group, base, target):
    """Motion of the lexicographically smallest permutation with
    perm(base) == target as sets."""
    bset, tset = set(base), set(target)
    for idx, perm in enumerate(_ALL_PERMS):
        if {perm[b - 1] for b in bset} == tset:
            return group[idx]
    raise ValueError(f"no permutation maps {base} to {target}")


def _make_face(label, c, group, e_base, h_base):
    if len(label) == 2:
        gen = _lex_min_generator(group, (1, 2), label)
        quadric = e_base.transformed(gen)
        focus = gen.apply(np.array([c.focus_e, 0.0, 0.0, 0.0]))
        return SkeletonFace(label=label, kind="edge-arc", quadric=quadric,
                            generator=gen, focus_plus=focus,
                            r_splus=c.r_splus_e, cut_planes=(), constants=c)
    gen = _lex_min_generator(group, (3, 4, 5), label)
    quadric = h_base.transformed(gen)
    focus = gen.apply(np.array([c.focus_h, 0.0, 0.0, 0.0]))
    planes = tuple((gen.linear @ nrm, gen.apply(p0))
                   for nrm, p0 in patch_cut_planes(c))
    return SkeletonFace(label=label, kind="triangle-patch", quadric=quadric,
                        generator=gen, focus_plus=focus,
                        r_splus=c.r_splus_h, cut_planes=planes, constants=c)


def _identity_only_group(s):
    # the base faces are fixed by the identity, which is lexicographically
    # first, so _lex_min_generator never looks past index 0
    ident = isometry_from_vertex_permutation(s.vertices, (1, 2, 3, 4, 5))
    return [ident] + [None] * (len(_ALL_PERMS) - 1)


def base_edge_arc(c, s):
    """The base edge arc E_12 (identity generator)."""
    return _make_face((1, 2), c, _identity_only_group(s),
                      base_ellipse(c.a_sq), base_hyperboloid(c.a_sq))


def base_triangle_patch(c, s):
    """The base triangle patch H_345 (identity generator)."""
    return _make_face((3, 4, 5), c, _identity_only_group(s),
                      base_ellipse(c.a_sq), base_hyperboloid(c.a_sq))


def build_focal_skeleton(c, s, group):
    """All twenty faces: ten edge arcs and ten triangle patches."""
    e_base = base_ellipse(c.a_sq)
    h_base = base_hyperboloid(c.a_sq)
    faces = [_make_face(lab, c, group, e_base, h_base) for lab in _LABELS_EDGE]
    faces += [_make_face(lab, c, group, e_base, h_base) for lab in _LABELS_TRI]
    return FocalSkeleton(constants=c, simplex=s, group=group, faces=faces)


def dual_focal_pair(skeleton, edge_label):
    """The validated FocalPair carried by an arc and its complementary patch.

    A permutation sends {1,2} to {i,j} exactly when it sends {3,4,5} to the
    complement, so dual faces share their lexicographic generator and the
    whole base pair transports by one motion.
    """
    arc = skeleton.face(edge_label)
    pair = standard_focal_pair(skeleton.constants.a_sq)
    return pair.transformed(arc.generator)


# ============================================================================
# closure and consistency checks
# ============================================================================

def rotation_closure_check(c, s, n=200):
    """Residual of the closure fact Phi(E_12) = H ∩ (cut plane of {4,5}).

    Phi is the rotation fixing p3 with p1 -> p4, p2 -> p5.  Returns the
    maximum hyperboloid residual over n sampled image points plus their
    maximum out-of-plane distance from the {4,5} cut plane.  Small only for
    a^2 = 3/2; order 1e-4 already at a^2 = 1.4.
    """
    phi = isometry_from_vertex_permutation(s.vertices, (4, 5, 3, 1, 2))
    img = phi.apply(base_arc_points(c, n))
    h = base_hyperboloid(c.a_sq)
    res = max(abs(quadric_residual(h, q)) for q in img)
    nrm, p0 = patch_cut_planes(c)[0]
    in_carrier = (img - p0) @ nrm       # offset inside the {x,y,w} space
    out_carrier = img[:, 2]             # z component
    plane_dist = float(np.max(np.hypot(in_carrier, out_carrier)))
    return float(res) + plane_dist


def tangent_slopes(c, s):
    """Three routes to the arc tangent slope at a vertex; all equal -3 z1/x1.

    Returns (base, transported, gradient):
      base         slope of E's tangent at p1 against the z axis, in {x,z};
      transported  slope of the Phi-image tangent at p4 against the w axis,
                   measured in the (dual-axis, w) plane of the {4,5} cut;
      gradient     the same slope obtained only from the hyperboloid's
                   implicit gradient at p4 -- no motion involved.
    """
    a = math.sqrt(c.a_sq)
    b = math.sqrt(c.a_sq - 1.0)
    t1 = math.acos(c.x1 / a)
    v_e = np.array([-a * math.sin(t1), 0.0, b * math.cos(t1), 0.0])
    slope_base = v_e[0] / v_e[2]

    phi = isometry_from_vertex_permutation(s.vertices, (4, 5, 3, 1, 2))
    v_t = phi.linear @ v_e
    p45 = s.midpoints[(4, 5)]
    bary = s.barycenters[(1, 2, 3)]
    u_l = (bary - p45) / np.linalg.norm(bary - p45)
    w_hat = np.array([0.0, 0.0, 0.0, 1.0])
    if v_t @ w_hat < 0.0:
        v_t = -v_t
    slope_transported = float((v_t @ u_l) / (v_t @ w_hat))

    p4 = s.vertices[3]
    grad = np.array([-2.0 * (c.a_sq - 1.0) * p4[0], 2.0 * p4[1], 0.0, 2.0 * p4[3]])
    slope_gradient = float(-(w_hat @ grad) / (u_l @ grad))
    return float(slope_base), slope_transported, slope_gradient


def radius_consistency_residual(skeleton, x, tol=1e-9):
    """Difference of the two radius laws at a point of E_45.

    E_45 bounds the patch H_345 but also carries its own elliptic chain (as
    the edge arc of the dual pair with H_123).  The elliptic radius of that
    chain and the hyperbolic radius of the base H chain must agree -- this
    is what lets the wedge pieces assemble seamlessly.
    """
    face45 = skeleton.face((4, 5))
    v = as_vec4(x)
    if not face45.contains(v, tol):
        raise OffArc(f"{v} is not on the arc between p4 and p5")
    r_elliptic = float(face45.radius(v))
    c = skeleton.constants
    f_h = np.array([math.sqrt(c.a_sq), 0.0, 0.0, 0.0])
    r_hyperbolic = c.r_splus_h - float(np.linalg.norm(v - f_h))
    return r_elliptic - r_hyperbolic
