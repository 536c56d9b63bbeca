"""Points, rigid motions from vertex permutations, and quadrics in 4-space.

World frame convention (fixed once, used everywhere):

  * the ellipse E lives in the {x, z} plane:   z^2 = (a^2-1)(1 - x^2/a^2)
  * the hyperboloid of revolution H lives in the {x, y, w} 3-space:
        y^2 + w^2 = (a^2-1)(x^2 - 1)        (only the x >= 1 sheet is used)
  * E has foci (+-1, 0, 0, 0); H has foci (+-a, 0, 0, 0); each focus lies on
    the other quadric, which is the focal property driving the construction.

The canonical simplex vertices in this frame are

    p1 = ( x1, 0,       z1, 0)        p4 = (x0, -y0/2, 0, -(sqrt3/2) y0)
    p2 = ( x1, 0,      -z1, 0)        p5 = (x0, -y0/2, 0, +(sqrt3/2) y0)
    p3 = ( x0, y0,       0, 0)

with p1, p2 on E and p3, p4, p5 on H.
"""

import math
from dataclasses import dataclass, field

import numpy as np


class DegenerateSimplex(Exception):
    """Vertex set does not span 4-space; the aligning motion is not unique."""


class OutOfDomain(Exception):
    """Parameter outside the quadric's parametrization domain."""


# ============================================================================
# points
# ============================================================================

@dataclass(frozen=True)
class Point4:
    """A point of R^4 with coordinate ordering (x, y, z, w)."""

    x: float
    y: float
    z: float
    w: float

    def __post_init__(self):
        for v in (self.x, self.y, self.z, self.w):
            if not math.isfinite(v):
                raise ValueError(f"non-finite coordinate in {self!r}")

    def as_array(self):
        return np.array([self.x, self.y, self.z, self.w], dtype=float)

    @staticmethod
    def from_array(a):
        a = np.asarray(a, dtype=float)
        return Point4(float(a[0]), float(a[1]), float(a[2]), float(a[3]))


def as_vec4(p):
    """Accept a Point4 or any length-4 array-like; return an ndarray copy."""
    if isinstance(p, Point4):
        return p.as_array()
    a = np.asarray(p, dtype=float)
    if a.shape != (4,):
        raise ValueError(f"expected a 4-vector, got shape {a.shape}")
    return a


# ============================================================================
# rigid motions
# ============================================================================

@dataclass(frozen=True)
class Isometry4:
    """Rigid motion x -> linear @ x + translation of R^4.

    linear must be orthogonal (to 1e-12 per entry) with determinant +-1;
    reflections are deliberately allowed, since odd vertex permutations of
    the simplex realize them.
    """

    linear: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        L = np.asarray(self.linear, dtype=float)
        t = np.asarray(self.translation, dtype=float)
        if L.shape != (4, 4) or t.shape != (4,):
            raise ValueError("linear must be 4x4 and translation a 4-vector")
        if np.max(np.abs(L.T @ L - np.eye(4))) > 1e-12:
            raise ValueError("linear part is not orthogonal to 1e-12")
        if abs(abs(np.linalg.det(L)) - 1.0) > 1e-12:
            raise ValueError("determinant must be +-1")
        object.__setattr__(self, "linear", L)
        object.__setattr__(self, "translation", t)

    @staticmethod
    def identity():
        return Isometry4(np.eye(4), np.zeros(4))

    def apply(self, pts):
        """Apply to a single 4-vector or an (N, 4) batch."""
        a = np.asarray(pts, dtype=float)
        return a @ self.linear.T + self.translation

    def apply_point(self, p):
        return Point4.from_array(self.apply(as_vec4(p)))

    def compose(self, other):
        """Motion equal to: first apply `other`, then self."""
        return Isometry4(self.linear @ other.linear,
                         self.linear @ other.translation + self.translation)

    def inverse(self):
        Lt = self.linear.T
        return Isometry4(Lt, -Lt @ self.translation)

    def det(self):
        return float(np.linalg.det(self.linear))


def simplex_vertices(mc):
    """The canonical vertex matrix, shape (5, 4), rows p1..p5 (see module doc)."""
    x0, x1, y0, z1 = mc.x0, mc.x1, mc.y0, mc.z1
    return np.array([
        [x1, 0.0, z1, 0.0],
        [x1, 0.0, -z1, 0.0],
        [x0, y0, 0.0, 0.0],
        [x0, -0.5 * y0, 0.0, -z1],
        [x0, -0.5 * y0, 0.0, z1],
    ])


def isometry_from_vertex_permutation(vertices, perm):
    """Rigid motion sending vertex i to vertex perm(i) for a regular simplex.

    Args:
        vertices: (5, 4) array (or 5 Point4) of regular-simplex vertices.
        perm: sequence of 5 integers, a permutation of 1..5; vertex k is
            mapped to vertex perm[k-1].

    Solved as an orthogonal alignment of the centroid-centered vertex sets
    (polar factor of the cross-covariance).  For a regular simplex this is
    exact up to roundoff; the motion fixes the centroid.

    Raises DegenerateSimplex when the centered vertex matrix has rank < 4.
    """
    if isinstance(vertices[0], Point4):
        V = np.stack([v.as_array() for v in vertices])
    else:
        V = np.asarray(vertices, dtype=float)
    if V.shape != (5, 4):
        raise ValueError("need exactly five 4-dimensional vertices")
    p = list(perm)
    if sorted(p) != [1, 2, 3, 4, 5]:
        raise ValueError(f"not a permutation of 1..5: {perm}")

    g = V.mean(axis=0)
    X = V - g                       # source, centered
    Y = V[[k - 1 for k in p]] - g   # target: row i must be the image of row i

    M = Y.T @ X                     # cross-covariance, maps source to target
    U, s, Vt = np.linalg.svd(M)
    if s[-1] <= 1e-8 * s[0]:
        raise DegenerateSimplex("centered vertices do not span 4-space")
    L = U @ Vt                      # nearest orthogonal matrix; det may be -1
    return Isometry4(L, g - L @ g)


# ============================================================================
# quadrics
# ============================================================================

_KINDS = ("ellipse", "hyperbola", "hyperboloid-of-revolution")


@dataclass(frozen=True)
class Quadric:
    """A focal conic / quadric of the construction, carried by its own frame.

    kind    'ellipse' (2-plane carrier, axes x and z of the frame),
            'hyperbola' (2-plane carrier, axes x and y), or
            'hyperboloid-of-revolution' (3-space carrier, axes x, y, w).
    origin  center, world coordinates.
    axes    4x4 row-orthonormal matrix; row i is the frame's i-th axis.
    a_sq    ellipse major-axis squared; also fixes the hyperbolic
            semi-axes (a_h = 1, b_h^2 = a_sq - 1) of the focal partner.
    """

    kind: str
    origin: np.ndarray
    axes: np.ndarray
    a_sq: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown quadric kind {self.kind!r}")
        o = np.asarray(self.origin, dtype=float)
        A = np.asarray(self.axes, dtype=float)
        if np.max(np.abs(A @ A.T - np.eye(4))) > 1e-12:
            raise ValueError("axes are not orthonormal to 1e-12")
        object.__setattr__(self, "origin", o)
        object.__setattr__(self, "axes", A)

    # ---- derived scalars --------------------------------------------------
    @property
    def b_sq(self):
        """Minor-axis squared (ellipse) / transverse b^2 (hyperbolic kinds)."""
        return self.a_sq - 1.0

    @property
    def c(self):
        """Focal distance from the center, along the shared x axis."""
        if self.kind == "ellipse":
            return 1.0
        return math.sqrt(self.a_sq)

    def foci(self):
        """The two foci as world-coordinate 4-vectors (+c first)."""
        ax = self.axes[0]
        return self.origin + self.c * ax, self.origin - self.c * ax

    # ---- coordinates ------------------------------------------------------
    def to_frame(self, pts):
        """World -> frame coordinates, batched."""
        a = np.asarray(pts, dtype=float)
        return (a - self.origin) @ self.axes.T

    def to_world(self, pts):
        a = np.asarray(pts, dtype=float)
        return a @ self.axes + self.origin

    def transformed(self, iso):
        """The image quadric under a rigid motion."""
        return Quadric(self.kind, iso.apply(self.origin),
                       self.axes @ iso.linear.T, self.a_sq)


def base_ellipse(a_sq=1.5):
    """E in the world {x, z} plane: z^2 = (a^2-1)(1 - x^2/a^2)."""
    return Quadric("ellipse", np.zeros(4), np.eye(4), a_sq)


def base_hyperboloid(a_sq=1.5):
    """H in the world {x, y, w} 3-space: y^2 + w^2 = (a^2-1)(x^2 - 1)."""
    return Quadric("hyperboloid-of-revolution", np.zeros(4), np.eye(4), a_sq)


def base_hyperbola(a_sq=1.5):
    """The w = 0 section of H in the {x, y} plane (the classical focal pair)."""
    return Quadric("hyperbola", np.zeros(4), np.eye(4), a_sq)


def quadric_residual(q, p):
    """Signed residual of the quadric's implicit equation at a world point.

    The point is moved into the quadric's frame first.  The residual is zero
    exactly on the quadric surface/curve; membership additionally requires
    lying in the carrier plane / 3-space, measured by carrier_distance.
    """
    xi, eta, zeta, nu = q.to_frame(as_vec4(p))
    k = q.a_sq - 1.0
    if q.kind == "ellipse":
        return zeta * zeta - k * (1.0 - xi * xi / q.a_sq)
    if q.kind == "hyperbola":
        return eta * eta - k * (xi * xi - 1.0)
    return eta * eta + nu * nu - k * (xi * xi - 1.0)


def carrier_distance(q, p):
    """Distance from a world point to the quadric's carrier plane / 3-space."""
    xi, eta, zeta, nu = q.to_frame(as_vec4(p))
    if q.kind == "ellipse":
        return math.hypot(eta, nu)
    if q.kind == "hyperbola":
        return math.hypot(zeta, nu)
    return abs(zeta)


def ellipse_point(q, t):
    """Point of an ellipse quadric at eccentric angle t (world coordinates).

    t = 0 is the vertex on the +x frame axis.
    """
    if q.kind != "ellipse":
        raise ValueError("ellipse_point needs an ellipse quadric")
    if not math.isfinite(t):
        raise OutOfDomain(f"bad eccentric angle {t}")
    a = math.sqrt(q.a_sq)
    b = math.sqrt(q.b_sq)
    v = q.origin + a * math.cos(t) * q.axes[0] + b * math.sin(t) * q.axes[2]
    return Point4.from_array(v)


def hyperboloid_point(q, x, theta):
    """Point of the right sheet of a hyperboloid quadric, world coordinates.

    The sheet is parametrized by the axial coordinate x >= 1 and the
    revolution angle theta; the radius of the circle at height x is
    rho = sqrt((a^2-1)(x^2-1)).
    """
    if q.kind != "hyperboloid-of-revolution":
        raise ValueError("hyperboloid_point needs a hyperboloid quadric")
    if not (math.isfinite(x) and math.isfinite(theta)):
        raise OutOfDomain(f"bad parameters x={x}, theta={theta}")
    if x < 1.0:
        raise OutOfDomain(f"x={x} is left of the sheet vertex (right sheet only)")
    rho = math.sqrt(q.b_sq * (x * x - 1.0))
    v = (q.origin + x * q.axes[0]
         + rho * math.cos(theta) * q.axes[1]
         + rho * math.sin(theta) * q.axes[3])
    return Point4.from_array(v)
