"""Focal-distance identities and Steiner-chain radius laws.

Two facts carry the whole construction:

  * the four-point identity: for a_e, b_e on the ellipse and a_h, b_h on one
    sheet of the hyperboloid,  a_e a_h + b_e b_h = a_h b_e + a_e b_h
    (distances between ellipse and hyperboloid points);
  * its two-point specialization obtained by substituting the two exchanged
    foci (the hyperboloid focus lies on the ellipse and vice versa):
        a_e a_h - a_h f_h - a_e f_e = -(f_h f_e),
    i.e. pairing each running point with its own curve's near focus yields a
    constant, -(sqrt(3/2) - 1) for the canonical pair.

The Steiner chains are kept implicit: a chain is its center locus (the arc
E12 or the patch H345) together with the radius law

    R_y = r_S+  - |y - f_e|   (circles inside S+, outside S-),
    Rx  = r_HS+ - |x - f_h|   (balls inside the sphere about f_h through C),

and the two laws interlock through the constant-sum identity
|x - y| + Rx + R_y = 2 z1, which is what makes the ball envelopes meet at
distance exactly 2 z1.
"""

import math

from dataclasses import dataclass

import numpy as np

from .geometry import (
    Point4,
    Quadric,
    as_vec4,
    base_ellipse,
    base_hyperboloid,
    carrier_distance,
    quadric_residual,
    simplex_vertices,
)
from .numerics import compute_model_constants


class NotSameComponent(Exception):
    """The two hyperboloid points lie on different sheets."""


class WrongComponent(Exception):
    """The hyperboloid point is on the sheet not used by the construction."""


class OffArc(Exception):
    """Point is not on the edge arc E12 (within tolerance)."""


class OffPatch(Exception):
    """Point is not on the triangle patch H345 (within tolerance)."""


# canonical configuration, used by the base-domain guards below
_MC = compute_model_constants()
_A = math.sqrt(_MC.a_sq)
_V = simplex_vertices(_MC)
_BASE_E = base_ellipse(_MC.a_sq)
_BASE_H = base_hyperboloid(_MC.a_sq)

_S5 = math.sqrt(5.0)
_S3 = math.sqrt(3.0)


def patch_cut_planes(mc=None):
    """The three planes bounding the triangle patch H345, as (normal, point).

    Each plane is spanned by an edge line of the vertex triangle and the
    dual axis line through that edge's midpoint and the opposite barycenter;
    it contains the corresponding boundary arc of the patch.  The normals
    point to the inside of the patch.  The {4,5} normal comes from the dual
    axis direction (2/3, sqrt5/3, 0, 0) -- a direction independent of the
    ellipse parameter -- and the other two are its images under the 2pi/3
    revolution that cycles p3 -> p5 -> p4.
    """
    v = _V if mc is None else simplex_vertices(mc)
    return (
        (np.array([-_S5, 2.0, 0.0, 0.0]) / 3.0, 0.5 * (v[3] + v[4])),
        (np.array([-_S5, -1.0, 0.0, _S3]) / 3.0, 0.5 * (v[2] + v[3])),
        (np.array([-_S5, -1.0, 0.0, -_S3]) / 3.0, 0.5 * (v[2] + v[4])),
    )


_CUT_PLANES = patch_cut_planes()


def base_arc_contains(y, tol=1e-9, mc=None):
    """True when y lies on the edge arc E12 (the x >= x1 piece of E)."""
    v = as_vec4(y)
    e = _BASE_E if mc is None else base_ellipse(mc.a_sq)
    x1 = _MC.x1 if mc is None else mc.x1
    if abs(quadric_residual(e, v)) > tol:
        return False
    if carrier_distance(e, v) > tol:
        return False
    return v[0] >= x1 - tol


def base_patch_contains(x, tol=1e-9, mc=None):
    """True when x lies on the triangle patch H345.

    The patch is the part of the right sheet of H cut out by the three
    boundary-arc planes; its corners are p3, p4, p5 and it contains the
    sheet vertex (1, 0, 0, 0).
    """
    v = as_vec4(x)
    h = _BASE_H if mc is None else base_hyperboloid(mc.a_sq)
    planes = _CUT_PLANES if mc is None else patch_cut_planes(mc)
    if abs(quadric_residual(h, v)) > tol:
        return False
    if carrier_distance(h, v) > tol:
        return False
    if v[0] < 1.0 - tol:
        return False
    for n, p in planes:
        if float(n @ (v - p)) < -tol:
            return False
    return True


def sheet_sign(h, p):
    """+1 / -1 for the right / left sheet, judged by the frame x-coordinate."""
    xi = float(h.to_frame(as_vec4(p))[0])
    return 1 if xi >= 0.0 else -1


# ============================================================================
# focal pair
# ============================================================================

@dataclass(frozen=True)
class FocalPair:
    """An ellipse and a hyperboloid of revolution focal to each other.

    The carrier plane of the ellipse and the carrier 3-space of the
    hyperboloid meet exactly in the common principal axis, and each quadric
    passes through the other's foci.  Invariants are checked at construction
    to 1e-12.
    """

    ellipse: Quadric
    hyperboloid: Quadric
    axis_point: np.ndarray
    axis_dir: np.ndarray

    def __post_init__(self):
        e, h = self.ellipse, self.hyperboloid
        if e.kind != "ellipse" or h.kind != "hyperboloid-of-revolution":
            raise ValueError("FocalPair needs an ellipse and a hyperboloid")
        p = np.asarray(self.axis_point, dtype=float)
        d = np.asarray(self.axis_dir, dtype=float)
        if abs(np.linalg.norm(d) - 1.0) > 1e-12:
            raise ValueError("axis direction must be a unit vector")
        for q in (e, h):
            ax = q.axes[0]
            if np.linalg.norm(ax - (ax @ d) * d) > 1e-12:
                raise ValueError("principal axis not parallel to the pair axis")
            off = q.origin - p
            if np.linalg.norm(off - (off @ d) * d) > 1e-12:
                raise ValueError("quadric center off the pair axis")
        # ellipse carrier (x,z-plane) meets hyperboloid carrier (x,y,w-space)
        # only along the axis
        if abs(e.axes[2] @ h.axes[1]) > 1e-12 or abs(e.axes[2] @ h.axes[3]) > 1e-12:
            raise ValueError("carriers are not orthogonal along the axis")
        for f in e.foci():
            if abs(quadric_residual(h, f)) > 1e-12 or carrier_distance(h, f) > 1e-12:
                raise ValueError("ellipse focus does not lie on the hyperboloid")
        for f in h.foci():
            if abs(quadric_residual(e, f)) > 1e-12 or carrier_distance(e, f) > 1e-12:
                raise ValueError("hyperboloid focus does not lie on the ellipse")
        object.__setattr__(self, "axis_point", p)
        object.__setattr__(self, "axis_dir", d)

    def transformed(self, iso):
        return FocalPair(self.ellipse.transformed(iso),
                         self.hyperboloid.transformed(iso),
                         iso.apply(self.axis_point),
                         iso.linear @ self.axis_dir)


def standard_focal_pair(a_sq=1.5):
    """The canonical world-frame pair: E in {x,z}, H in {x,y,w}."""
    return FocalPair(base_ellipse(a_sq), base_hyperboloid(a_sq),
                     np.zeros(4), np.array([1.0, 0.0, 0.0, 0.0]))


# ============================================================================
# chain radii
# ============================================================================

@dataclass(frozen=True)
class ChainRadii:
    """Radii and focus points fixing the two Steiner chains.

    r_splus_e   radius of the circle S+ about focus_e through p1, p2
    r_splus_h   radius of the sphere about focus_h through the vertex
                circle C (the circle carrying p3, p4, p5)
    """

    r_splus_e: float
    r_splus_h: float
    focus_e: Point4
    focus_h: Point4


def chain_radii(mc=None):
    """ChainRadii of the canonical configuration (or of a supplied one)."""
    mc = _MC if mc is None else mc
    a = math.sqrt(mc.a_sq)
    return ChainRadii(
        r_splus_e=mc.r_splus_e,
        r_splus_h=mc.r_splus_h,
        focus_e=Point4(mc.focus_e, 0.0, 0.0, 0.0),
        focus_h=Point4(a, 0.0, 0.0, 0.0),
    )


# ============================================================================
# residual oracles and radius laws
# ============================================================================

def focal_sum_residual(e, h, a_e, b_e, a_h, b_h):
    """Residual of the four-point identity on a candidate focal pair.

    Returns (a_e a_h + b_e b_h) - (a_h b_e + a_e b_h); at most ~1e-10 in
    magnitude when (e, h) really are focal.  a_h and b_h must lie on the
    same sheet of h.
    """
    va_e, vb_e = as_vec4(a_e), as_vec4(b_e)
    va_h, vb_h = as_vec4(a_h), as_vec4(b_h)
    if sheet_sign(h, va_h) != sheet_sign(h, vb_h):
        raise NotSameComponent("a_h and b_h lie on different sheets")
    lhs = np.linalg.norm(va_e - va_h) + np.linalg.norm(vb_e - vb_h)
    rhs = np.linalg.norm(va_h - vb_e) + np.linalg.norm(va_e - vb_h)
    return float(lhs - rhs)


def focal_const_residual(pair, a_e, a_h):
    """Residual of the two-point constant identity on a focal pair.

    Evaluates  a_e a_h - a_h f_h - a_e f_e + f_h f_e  where f_e, f_h are the
    near foci of the ellipse and hyperboloid (each point is paired with its
    own curve's focus -- the pairing produced by substituting the exchanged
    foci into the four-point identity, and the one its proof actually uses).
    Zero up to roundoff on a genuine pair; a_h must be on the near sheet.
    """
    va_e, va_h = as_vec4(a_e), as_vec4(a_h)
    if sheet_sign(pair.hyperboloid, va_h) < 0:
        raise WrongComponent("a_h is on the far sheet")
    f_e = pair.ellipse.foci()[0]
    f_h = pair.hyperboloid.foci()[0]
    return float(np.linalg.norm(va_e - va_h)
                 - np.linalg.norm(va_h - f_h)
                 - np.linalg.norm(va_e - f_e)
                 + np.linalg.norm(f_h - f_e))


def steiner_radius_elliptic(chain, y, tol=1e-9):
    """Radius R_y of the elliptic-chain circle centered at y on E12.

    R_y = r_S+ - |y - f_e|; nonnegative on the arc, zero at p1 and p2.
    """
    v = as_vec4(y)
    if not base_arc_contains(v, tol):
        raise OffArc(f"{v} is not on the edge arc")
    return float(chain.r_splus_e - np.linalg.norm(v - chain.focus_e.as_array()))


def steiner_radius_hyperbolic(chain, x, tol=1e-9):
    """Radius Rx of the hyperbolic-chain ball centered at x on H345.

    Rx = r_HS+ - |x - f_h|; nonnegative on the patch, zero exactly on the
    vertex circle C (in particular at p3, p4, p5).
    """
    v = as_vec4(x)
    if not base_patch_contains(v, tol):
        raise OffPatch(f"{v} is not on the triangle patch")
    return float(chain.r_splus_h - np.linalg.norm(v - chain.focus_h.as_array()))


def interlock_residual(x, y):
    """Residual of the interlock identity (|x-y| + Rx + R_y) - 2 z1.

    x must lie on the patch H345 and y on the arc E12 (domain errors from
    the radius laws propagate).  Zero up to roundoff: this is the identity
    that gives the assembled body its constant width.
    """
    chain = chain_radii()
    rx = steiner_radius_hyperbolic(chain, x)
    ry = steiner_radius_elliptic(chain, y)
    d = float(np.linalg.norm(as_vec4(x) - as_vec4(y)))
    return d + rx + ry - _MC.width
