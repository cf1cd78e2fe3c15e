"""Geodesics and the distance function."""

import math
import random

import pytest

from nilcover import (NoSolutionError, distance, distance_to_origin,
                      geodesic_between, geodesic_xyz, line_reflect_y,
                      rotate_z, translate)


def rand_point(rng, scale=1.5):
    return tuple(rng.uniform(-scale, scale) for _ in range(3))


def test_geodesic_endpoint_exact():
    # alpha=pi/4, theta=0 stays in the xy-plane: a Euclidean straight line
    x, y, z = geodesic_xyz(math.pi / 4, 0.0, 2.0)
    assert abs(x - math.sqrt(2.0)) < 1e-12
    assert abs(y - math.sqrt(2.0)) < 1e-12
    assert abs(z - 1.0) < 1e-12


def test_geodesic_starts_at_origin():
    rng = random.Random(7)
    for _ in range(50):
        a = rng.uniform(-math.pi, math.pi)
        th = rng.uniform(-math.pi / 2, math.pi / 2)
        p = geodesic_xyz(a, th, 0.0)
        assert max(abs(v) for v in p) < 1e-12


def test_geodesic_unit_speed():
    # finite-difference velocity has norm 1 in the metric
    # dx^2 + dy^2 + (dz - x dy)^2
    rng = random.Random(11)
    h = 1e-5
    for _ in range(100):
        a = rng.uniform(-math.pi, math.pi)
        th = rng.uniform(-1.4, 1.4)
        s = rng.uniform(0.1, 2.0)
        p0 = geodesic_xyz(a, th, s - h)
        p1 = geodesic_xyz(a, th, s + h)
        vx = (p1[0] - p0[0]) / (2 * h)
        vy = (p1[1] - p0[1]) / (2 * h)
        vz = (p1[2] - p0[2]) / (2 * h)
        x = geodesic_xyz(a, th, s)[0]
        speed = math.sqrt(vx * vx + vy * vy + (vz - x * vy) ** 2)
        assert abs(speed - 1.0) < 1e-6


def test_distance_round_trip():
    # distance to a geodesic endpoint recovers arc length
    rng = random.Random(13)
    for _ in range(200):
        a = rng.uniform(-math.pi, math.pi)
        th = rng.uniform(-1.3, 1.3)
        s = rng.uniform(0.05, 2.6)
        p = geodesic_xyz(a, th, s)
        assert abs(distance_to_origin(p) - s) < 1e-8


def test_geodesic_between_residual():
    rng = random.Random(17)
    for _ in range(100):
        p = rand_point(rng)
        res = geodesic_between((0.0, 0.0, 0.0), p)
        assert res.residual < 1e-8
        q = geodesic_xyz(res.params.alpha, res.params.theta, res.params.s)
        assert math.dist(p, q) < 1e-8
        assert abs(res.params.s - distance_to_origin(p)) < 1e-10


def test_distance_symmetry():
    rng = random.Random(19)
    for _ in range(100):
        p = rand_point(rng)
        q = rand_point(rng)
        assert abs(distance(p, q) - distance(q, p)) < 1e-8


def test_distance_left_invariance():
    rng = random.Random(23)
    for _ in range(200):
        p = rand_point(rng)
        q = rand_point(rng)
        t = rand_point(rng)
        d = distance(p, q)
        assert abs(distance(translate(p, t), translate(q, t)) - d) < 1e-8


def test_distance_rotation_and_reflection_invariance():
    rng = random.Random(29)
    for _ in range(200):
        p = rand_point(rng)
        w = rng.uniform(-math.pi, math.pi)
        d = distance_to_origin(p)
        assert abs(distance_to_origin(rotate_z(p, w)) - d) < 1e-8
        assert abs(distance_to_origin(line_reflect_y(p)) - d) < 1e-8


def test_triangle_inequality():
    rng = random.Random(31)
    for _ in range(500):
        p = rand_point(rng)
        q = rand_point(rng)
        assert distance(p, q) <= distance_to_origin(p) + distance_to_origin(q) + 1e-9


def test_distance_continuity_near_plane():
    # crossing the sheared plane zeta = 0 must not jump
    rng = random.Random(37)
    for _ in range(50):
        x = rng.uniform(0.2, 1.5)
        y = rng.uniform(-1.5, 1.5)
        base = x * y / 2.0
        d_up = distance_to_origin((x, y, base + 1e-9))
        d_dn = distance_to_origin((x, y, base - 1e-9))
        assert abs(d_up - d_dn) < 1e-6


def test_on_axis_distance():
    assert abs(distance_to_origin((0.0, 0.0, 1.3)) - 1.3) < 1e-14
    assert abs(distance_to_origin((0.0, 0.0, -2.0)) - 2.0) < 1e-14
    with pytest.raises(NoSolutionError):
        distance_to_origin((0.0, 0.0, 2 * math.pi + 0.5))


def test_far_points_rejected():
    with pytest.raises(NoSolutionError):
        distance_to_origin((7.0, 0.0, 0.0))


def test_in_plane_distance_is_euclidean():
    rng = random.Random(41)
    for _ in range(50):
        x = rng.uniform(-2.0, 2.0)
        y = rng.uniform(-2.0, 2.0)
        # points on the sheared plane through the origin
        p = (x, y, x * y / 2.0)
        assert abs(distance_to_origin(p) - math.hypot(x, y)) < 1e-10


def test_known_lattice_distance():
    # generator of the best covering lattice
    t1 = (1.30633820, 0.0, 0.73894461)
    assert abs(distance_to_origin(t1) - 1.4778892262913008) < 1e-10
