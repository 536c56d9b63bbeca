import math

import numpy as np
import pytest
from scipy.optimize import brentq

from peabody4d.focal import (
    ChainRadii,
    FocalPair,
    NotSameComponent,
    OffArc,
    OffPatch,
    WrongComponent,
    base_arc_contains,
    base_patch_contains,
    chain_radii,
    interlock_residual,
    focal_const_residual,
    focal_sum_residual,
    standard_focal_pair,
    steiner_radius_elliptic,
    steiner_radius_hyperbolic,
)
from peabody4d.geometry import (
    Isometry4,
    Quadric,
    base_ellipse,
    base_hyperboloid,
    ellipse_point,
    hyperboloid_point,
    quadric_residual,
    simplex_vertices,
)

from frozen_values import FROZEN


@pytest.fixture(scope="module")
def chain():
    return chain_radii()


@pytest.fixture(scope="module")
def pair():
    return standard_focal_pair()


def arc_points(n, rng=None, t1=FROZEN["t1"]):
    """n points on the edge arc E12 (eccentric angles in [-t1, t1])."""
    E = base_ellipse()
    if rng is None:
        ts = np.linspace(-t1, t1, n)
    else:
        ts = rng.uniform(-t1, t1, n)
    return np.array([ellipse_point(E, t).as_array() for t in ts])


def patch_points(n, rng):
    """n rejection-sampled points of the triangle patch H345."""
    H = base_hyperboloid()
    x0 = FROZEN["x0"]
    out = []
    while len(out) < n:
        x = rng.uniform(1.0, x0)
        th = rng.uniform(0.0, 2.0 * math.pi)
        p = hyperboloid_point(H, x, th).as_array()
        if base_patch_contains(p):
            out.append(p)
    return np.array(out)


def random_rotation(rng):
    q, r = np.linalg.qr(rng.standard_normal((4, 4)))
    return q * np.sign(np.diag(r))


class TestFocalPair:
    def test_standard_pair_validates(self, pair):
        assert np.allclose(pair.axis_dir, [1, 0, 0, 0])
        assert pair.ellipse.c == 1.0
        assert abs(pair.hyperboloid.c - math.sqrt(1.5)) <= 1e-15

    def test_transported_pair_validates(self, pair):
        rng = np.random.default_rng(2)
        iso = Isometry4(random_rotation(rng), rng.standard_normal(4))
        moved = pair.transformed(iso)  # would raise if invariants broke
        assert abs(np.linalg.norm(moved.axis_dir) - 1.0) <= 1e-12

    def test_mismatched_quadrics_rejected(self):
        with pytest.raises(ValueError):
            FocalPair(base_ellipse(1.4), base_hyperboloid(1.5),
                      np.zeros(4), np.array([1.0, 0, 0, 0]))

    def test_off_axis_center_rejected(self):
        h = Quadric("hyperboloid-of-revolution",
                    np.array([0.0, 0.01, 0.0, 0.0]), np.eye(4), 1.5)
        with pytest.raises(ValueError):
            FocalPair(base_ellipse(), h, np.zeros(4), np.array([1.0, 0, 0, 0]))


class TestChainRadii:
    def test_frozen_values(self, chain):
        assert abs(chain.r_splus_e - FROZEN["r_splus_e"]) <= 1e-14
        assert abs(chain.r_splus_h - FROZEN["r_splus_h"]) <= 1e-14
        assert chain.focus_e.x == 1.0
        assert abs(chain.focus_h.x - FROZEN["a"]) <= 1e-15

    def test_radius_defining_distances(self, chain, constants):
        V = simplex_vertices(constants)
        fe = chain.focus_e.as_array()
        fh = chain.focus_h.as_array()
        d_e = [np.linalg.norm(V[i] - fe) for i in (0, 1)]
        d_h = [np.linalg.norm(V[i] - fh) for i in (2, 3, 4)]
        assert max(abs(d - chain.r_splus_e) for d in d_e) <= 1e-12
        assert max(abs(d - chain.r_splus_h) for d in d_h) <= 1e-12
        assert max(d_h) - min(d_h) <= 1e-12


class TestFocalSumResidual:
    def test_symmetric_configuration(self, constants):
        V = simplex_vertices(constants)
        mirror_p3 = V[2] * np.array([1.0, -1.0, 1.0, -1.0])
        r = focal_sum_residual(base_ellipse(), base_hyperboloid(),
                               V[0], V[1], V[2], mirror_p3)
        assert abs(r) <= 1e-14

    def test_random_tuples(self):
        E, H = base_ellipse(), base_hyperboloid()
        rng = np.random.default_rng(17)
        worst = 0.0
        for _ in range(200):
            a_e = ellipse_point(E, rng.uniform(0, 2 * math.pi)).as_array()
            b_e = ellipse_point(E, rng.uniform(0, 2 * math.pi)).as_array()
            a_h = hyperboloid_point(H, rng.uniform(1.0, 2.5),
                                    rng.uniform(0, 2 * math.pi)).as_array()
            b_h = hyperboloid_point(H, rng.uniform(1.0, 2.5),
                                    rng.uniform(0, 2 * math.pi)).as_array()
            worst = max(worst, abs(focal_sum_residual(E, H, a_e, b_e, a_h, b_h)))
        assert worst <= 1e-10

    def test_different_sheets_rejected(self, constants):
        V = simplex_vertices(constants)
        left = V[2] * np.array([-1.0, 1.0, 1.0, 1.0])  # mirrored to far sheet
        with pytest.raises(NotSameComponent):
            focal_sum_residual(base_ellipse(), base_hyperboloid(),
                               V[0], V[1], V[2], left)

    def test_perturbed_pair_fails(self):
        """Moving the hyperboloid (hence its foci) by 1e-3 breaks the identity."""
        E = base_ellipse()
        H_bad = Quadric("hyperboloid-of-revolution",
                        np.array([1e-3, 0.0, 0.0, 0.0]), np.eye(4), 1.5)
        rng = np.random.default_rng(17)
        worst = 0.0
        for _ in range(200):
            a_e = ellipse_point(E, rng.uniform(0, 2 * math.pi)).as_array()
            b_e = ellipse_point(E, rng.uniform(0, 2 * math.pi)).as_array()
            a_h = hyperboloid_point(H_bad, rng.uniform(1.0, 2.5),
                                    rng.uniform(0, 2 * math.pi)).as_array()
            b_h = hyperboloid_point(H_bad, rng.uniform(1.0, 2.5),
                                    rng.uniform(0, 2 * math.pi)).as_array()
            worst = max(worst, abs(focal_sum_residual(E, H_bad, a_e, b_e, a_h, b_h)))
        assert worst > 1e-5


class TestFocalConstResidual:
    def test_constant_value(self, pair, constants):
        """The two-point combination equals -(sqrt(3/2) - 1)."""
        V = simplex_vertices(constants)
        f_e = pair.ellipse.foci()[0]
        f_h = pair.hyperboloid.foci()[0]
        combo = (np.linalg.norm(V[0] - V[2])
                 - np.linalg.norm(V[2] - f_h)
                 - np.linalg.norm(V[0] - f_e))
        assert abs(combo - FROZEN["focal_const"]) <= 1e-12

    def test_vertex_pair(self, pair, constants):
        V = simplex_vertices(constants)
        assert abs(focal_const_residual(pair, V[0], V[2])) <= 1e-12

    def test_random_pairs(self, pair):
        E, H = pair.ellipse, pair.hyperboloid
        rng = np.random.default_rng(23)
        worst = 0.0
        for _ in range(500):
            a_e = ellipse_point(E, rng.uniform(0, 2 * math.pi)).as_array()
            a_h = hyperboloid_point(H, rng.uniform(1.0, 3.0),
                                    rng.uniform(0, 2 * math.pi)).as_array()
            worst = max(worst, abs(focal_const_residual(pair, a_e, a_h)))
        assert worst <= 1e-10

    def test_far_sheet_rejected(self, pair, constants):
        V = simplex_vertices(constants)
        left = V[2] * np.array([-1.0, 1.0, 1.0, 1.0])
        with pytest.raises(WrongComponent):
            focal_const_residual(pair, V[0], left)


class TestSteinerRadiusElliptic:
    def test_zero_at_arc_endpoints(self, chain, constants):
        V = simplex_vertices(constants)
        assert abs(steiner_radius_elliptic(chain, V[0])) <= 1e-12
        assert abs(steiner_radius_elliptic(chain, V[1])) <= 1e-12

    def test_value_at_arc_apex(self, chain):
        apex = np.array([math.sqrt(1.5), 0.0, 0.0, 0.0])
        r = steiner_radius_elliptic(chain, apex)
        assert abs(r - FROZEN["R_mid"]) <= 1e-12

    def test_range_over_arc(self, chain):
        pts = arc_points(501)  # odd count so the apex t=0 is on the grid
        rs = [steiner_radius_elliptic(chain, p) for p in pts]
        assert min(rs) >= -1e-12
        assert max(rs) <= 0.019
        assert abs(max(rs) - FROZEN["R_mid"]) <= 1e-9  # max at the apex

    def test_off_arc_rejected(self, chain):
        beyond = ellipse_point(base_ellipse(), 3.0 * FROZEN["t1"]).as_array()
        with pytest.raises(OffArc):
            steiner_radius_elliptic(chain, beyond)
        with pytest.raises(OffArc):
            steiner_radius_elliptic(chain, np.array([1.2, 0.0, 0.1, 0.0]))


class TestSteinerRadiusHyperbolic:
    def test_zero_at_patch_corners(self, chain, constants):
        V = simplex_vertices(constants)
        for i in (2, 3, 4):
            assert abs(steiner_radius_hyperbolic(chain, V[i])) <= 1e-12

    def test_value_at_edge_apex(self, chain):
        omega = np.array([FROZEN["omega_x"], FROZEN["omega_y"], 0.0, 0.0])
        r = steiner_radius_hyperbolic(chain, omega)
        assert abs(r - FROZEN["R_omega"]) <= 1e-12

    def test_value_at_sheet_vertex(self, chain):
        v = np.array([1.0, 0.0, 0.0, 0.0])
        r = steiner_radius_hyperbolic(chain, v)
        assert abs(r - FROZEN["hyper_radius_at_sheet_vertex"]) <= 1e-12

    def test_positive_inside(self, chain):
        rng = np.random.default_rng(31)
        for p in patch_points(200, rng):
            assert steiner_radius_hyperbolic(chain, p) >= -1e-12

    def test_off_patch_rejected(self, chain):
        # the hyperboloid focus is not on the sheet at all
        with pytest.raises(OffPatch):
            steiner_radius_hyperbolic(chain, np.array([math.sqrt(1.5), 0, 0, 0]))
        # on the sheet, but beyond the boundary arc between p4 and p5
        x_mid = 0.5 * (FROZEN["omega_x"] + FROZEN["x0"])
        outside = hyperboloid_point(base_hyperboloid(), x_mid, math.pi).as_array()
        with pytest.raises(OffPatch):
            steiner_radius_hyperbolic(chain, outside)
        # far sheet mirror of p3
        with pytest.raises(OffPatch):
            steiner_radius_hyperbolic(
                chain, np.array([-FROZEN["x0"], FROZEN["y0"], 0.0, 0.0]))

    def test_domain_membership_helpers(self, constants):
        V = simplex_vertices(constants)
        assert base_patch_contains(V[2])
        assert base_patch_contains([1.0, 0.0, 0.0, 0.0])
        assert not base_patch_contains(V[0])
        assert base_arc_contains(V[0])
        assert base_arc_contains([math.sqrt(1.5), 0.0, 0.0, 0.0])
        assert not base_arc_contains(V[2])


class TestInterlock:
    def test_vertex_pair(self, constants):
        V = simplex_vertices(constants)
        assert abs(interlock_residual(V[2], V[0])) <= 1e-12

    def test_apex_pair(self):
        omega = np.array([FROZEN["omega_x"], FROZEN["omega_y"], 0.0, 0.0])
        apex = np.array([math.sqrt(1.5), 0.0, 0.0, 0.0])
        assert abs(interlock_residual(omega, apex)) <= 1e-10

    def test_grid(self):
        rng = np.random.default_rng(41)
        xs = patch_points(40, rng)
        ys = arc_points(40, rng)
        worst = max(abs(interlock_residual(x, y)) for x in xs for y in ys)
        assert worst <= 1e-10

    def test_ball_pair_diameter(self, chain, constants):
        """Any point of B(x, Rx) and any of B(y, R_y) are within 2 z1."""
        rng = np.random.default_rng(43)
        xs = patch_points(25, rng)
        ys = arc_points(25, rng)
        worst = 0.0
        for x, y in zip(xs, ys):
            rx = steiner_radius_hyperbolic(chain, x)
            ry = steiner_radius_elliptic(chain, y)
            for _ in range(8):
                du = rng.standard_normal(4)
                dv = rng.standard_normal(4)
                u = x + rx * rng.uniform(0, 1) * du / np.linalg.norm(du)
                v = y + ry * rng.uniform(0, 1) * dv / np.linalg.norm(dv)
                worst = max(worst, np.linalg.norm(u - v))
        assert worst <= constants.width + 1e-12


class TestSteinerCenterLocus:
    def test_tangent_circle_centers_lie_on_ellipse(self, chain):
        """Circles tangent inside S+ and outside S- have centers on E.

        For a contact direction psi on S+, the center sits at
        f_e + (r_S+ - R) u(psi); R is solved from the S- tangency condition.
        """
        a = math.sqrt(1.5)
        b = math.sqrt(0.5)
        fe = np.array([1.0, 0.0])
        fm = np.array([-1.0, 0.0])
        r_plus = chain.r_splus_e
        r_minus = FROZEN["r_sminus_e"]

        def tangency_gap(R, u):
            center = fe + (r_plus - R) * u
            return np.linalg.norm(center - fm) - (r_minus + R)

        for psi in np.linspace(-0.55, 0.55, 41):
            u = np.array([math.cos(psi), math.sin(psi)])
            R = brentq(tangency_gap, 0.0, r_plus, args=(u,), xtol=1e-14)
            cx, cz = fe + (r_plus - R) * u
            # implicit-equation residual of E at the center
            assert abs(cz * cz - 0.5 * (1.0 - 2.0 * cx * cx / 3.0)) <= 1e-8
            # and the center is close to its eccentric-angle projection
            t = math.atan2(cz / b, cx / a)
            proj = np.array([a * math.cos(t), b * math.sin(t)])
            assert np.linalg.norm(proj - [cx, cz]) <= 1e-8
            assert R <= FROZEN["R_mid"] + 1e-12
