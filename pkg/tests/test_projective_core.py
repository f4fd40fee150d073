from fractions import Fraction as F

import pytest

from arguesia.projective_core import (
    INF,
    AffineChart,
    GeometryError,
    LineMap,
    P3Plane,
    P3Point,
    PLine,
    PPoint,
    central_projection_3d,
    chart_through,
    collinear,
    cross_ratio,
    cross_ratio_params,
    default_chart,
    harmonic_partner_param,
    homography_from_three,
    identity_map,
    incident,
    infinity_point_of,
    join,
    meet,
    midpoint,
    perspective_map,
    plane_basis,
    plane_to_p2,
    p2_to_plane,
    project_point,
)
from arguesia.rng import SplitMix64

A = PPoint.affine_point
X_AXIS = PLine(0, 1, 0)


def rand_point(rng, bounds=20):
    return PPoint(rng.fraction(bounds), rng.fraction(bounds), 1)


# -- join / meet -------------------------------------------------------------


def test_join_examples():
    assert join(PPoint(1, 0, 1), PPoint(0, 1, 1)) == PLine(1, 1, -1)
    assert join(PPoint(1, 0, 0), PPoint(0, 1, 0)) == PLine(0, 0, 1)
    assert join(PPoint(0, 0, 1), PPoint(1, 0, 1)) == PLine(0, 1, 0)


def test_join_equal_points_rejected():
    with pytest.raises(GeometryError):
        join(PPoint(2, 4, 2), PPoint(1, 2, 1))


def test_meet_examples():
    assert meet(PLine(1, 0, 0), PLine(0, 1, 0)) == PPoint(0, 0, 1)
    assert meet(PLine(0, 1, -1), PLine(0, 1, -2)) == PPoint(1, 0, 0)
    assert meet(PLine(1, 1, -1), PLine(1, -1, 0)) == PPoint(1, 1, 2)


def test_join_meet_duality():
    rng = SplitMix64.for_kind("duality", 3)
    for _ in range(200):
        p, q, r = (rand_point(rng) for _ in range(3))
        if p == q or p == r or q == r or collinear(p, q, r):
            continue
        assert meet(join(p, q), join(p, r)) == p


def test_projective_equality_is_canonical():
    assert PPoint(2, 4, 6) == PPoint(1, 2, 3)
    assert PPoint(-1, -2, -3) == PPoint(1, 2, 3)
    assert len({PPoint(2, 4, 6), PPoint(1, 2, 3)}) == 1


# -- charts and cross-ratio ---------------------------------------------------


def test_chart_roundtrip():
    ch = default_chart(PLine(3, -2, 5))
    for t in (F(0), F(1), F(-7, 3), F(22, 5)):
        assert ch.coordinate(ch.point_at(t)) == t
    assert ch.coordinate(ch.infinity_point()) is INF
    assert ch.point_at(INF) == ch.infinity_point()


def test_chart_requires_finite_base_points():
    with pytest.raises(GeometryError):
        AffineChart(PLine(0, 1, 0), PPoint(1, 0, 0), PPoint(0, 0, 1))


def test_cross_ratio_examples():
    ch = default_chart(X_AXIS)
    pts = [ch.point_at(F(t)) for t in (0, 1, 2, 3)]
    assert cross_ratio(*pts) == F(4, 3)
    a, b, c = (ch.point_at(F(t)) for t in (0, 1, 2))
    assert cross_ratio(a, b, c, c) == 1
    pts = [ch.point_at(t) for t in (F(0), F(2), F(3), F(3, 2))]
    assert cross_ratio(*pts) == -1


def test_cross_ratio_infinite_value_when_d_equals_a():
    ch = default_chart(X_AXIS)
    a, b, c = (ch.point_at(F(t)) for t in (0, 1, 2))
    assert cross_ratio(a, b, c, a) is INF


def test_cross_ratio_rejects_bad_input():
    ch = default_chart(X_AXIS)
    a, b, c = (ch.point_at(F(t)) for t in (0, 1, 2))
    with pytest.raises(GeometryError):
        cross_ratio(a, a, b, c)
    with pytest.raises(GeometryError):
        cross_ratio(a, b, A(5, 5), c)


def test_cross_ratio_params_with_infinity():
    assert cross_ratio_params(F(0), F(1), F(2), INF) == F(2)
    assert cross_ratio_params(INF, F(0), F(1), F(2)) == F(2)


def test_harmonic_partner_param():
    assert harmonic_partner_param(F(0), F(2), F(3)) == F(3, 2)
    assert harmonic_partner_param(F(0), F(2), F(1)) is INF


# -- line maps ----------------------------------------------------------------


def test_perspective_identity_when_lines_equal():
    ch = default_chart(X_AXIS)
    m = perspective_map(A(0, 5), ch, ch)
    assert m.is_identity()


def test_perspective_vertical_projection():
    src = default_chart(PLine(0, 1, 0))
    dst = default_chart(PLine(0, 1, -1))
    m = perspective_map(PPoint(0, 1, 0), src, dst)
    for t in (F(0), F(5), F(-3, 2)):
        assert m.apply_param(t) == t


def test_perspective_matches_pointwise_meet_join():
    rng = SplitMix64.for_kind("persp-pointwise", 11)
    for trial in range(100):
        p1, p2, q1, q2, k = (rand_point(rng) for _ in range(5))
        try:
            src = default_chart(join(p1, p2))
            dst = default_chart(join(q1, q2))
            if src.line == dst.line or incident(k, src.line) or incident(k, dst.line):
                continue
            m = perspective_map(k, src, dst)
        except GeometryError:
            continue
        for t in (F(0), F(2), F(-1, 3)):
            p = src.point_at(t)
            assert m.apply_point(p) == project_point(k, p, dst.line)


def test_perspective_roundtrip_is_identity():
    rng = SplitMix64.for_kind("persp-roundtrip", 5)
    for _ in range(100):
        p1, p2, q1, q2, k = (rand_point(rng) for _ in range(5))
        try:
            src = default_chart(join(p1, p2))
            dst = default_chart(join(q1, q2))
            if src.line == dst.line or incident(k, src.line) or incident(k, dst.line):
                continue
            fwd = perspective_map(k, src, dst)
            back = perspective_map(k, dst, src)
        except GeometryError:
            continue
        assert back.compose(fwd).is_identity()


def test_cross_ratio_invariant_under_maps():
    # 500 random instances, exact equality
    rng = SplitMix64.for_kind("cr-invariance", 1)
    done = 0
    while done < 500:
        p1, p2, q1, q2, k = (rand_point(rng) for _ in range(5))
        try:
            src = default_chart(join(p1, p2))
            dst = default_chart(join(q1, q2))
            if src.line == dst.line or incident(k, src.line) or incident(k, dst.line):
                continue
            m = perspective_map(k, src, dst)
        except GeometryError:
            continue
        ts = []
        while len(ts) < 4:
            t = rng.fraction(20)
            if t not in ts:
                ts.append(t)
        pts = [src.point_at(t) for t in ts]
        imgs = [m.apply_point(p) for p in pts]
        try:
            assert cross_ratio(*pts) == cross_ratio(*imgs)
        except GeometryError:
            continue
        done += 1


def test_homography_from_three_examples():
    ch = default_chart(X_AXIS)
    ident = homography_from_three((F(0), F(1), INF), (F(0), F(1), INF), ch, ch)
    assert ident.is_identity()
    inv = homography_from_three((F(0), F(1), INF), (INF, F(1), F(0)), ch, ch)
    assert inv.matrix == (0, 1, 1, 0)
    again = homography_from_three((F(0), F(1), INF), (INF, F(1), F(0)), ch, ch)
    assert inv.matrix == again.matrix
    with pytest.raises(GeometryError):
        homography_from_three((F(0), F(0), INF), (F(1), F(2), F(3)), ch, ch)


def test_linemap_composition_matches_pointwise():
    rng = SplitMix64.for_kind("compose", 9)
    ch = default_chart(X_AXIS)
    for _ in range(100):
        m1 = _random_map(rng, ch)
        m2 = _random_map(rng, ch)
        m3 = _random_map(rng, ch)
        assert m3.compose(m2.compose(m1)).matrix == m3.compose(m2).compose(m1).matrix
        comp = m2.compose(m1)
        for t in (F(0), F(1), F(7, 2)):
            u = m1.apply_param(t)
            v = m2.apply_param(u)
            got = comp.apply_param(t)
            assert got == v or (got is INF and v is INF)


def _random_map(rng, ch):
    while True:
        m = tuple(rng.int_between(-9, 9) for _ in range(4))
        if m[0] * m[3] - m[1] * m[2] != 0:
            return LineMap(m, ch, ch)


# -- minimal 3d ---------------------------------------------------------------


def test_projection_fixes_points_of_the_plane():
    target = P3Plane(0, 0, 1, 0)
    apex = P3Point(0, 0, 2, 1)
    p = P3Point(3, -4, 0, 5)
    assert central_projection_3d(apex, target, p) == p


def test_projection_drops_z_from_infinite_apex():
    apex = P3Point(0, 0, 1, 0)
    target = P3Plane(0, 0, 1, 0)
    p = P3Point(2, 3, 7, 1)
    assert central_projection_3d(apex, target, p) == P3Point(2, 3, 0, 1)


def test_projection_roundtrip_identity():
    apex = P3Point(1, 2, 5, 1)
    pa = P3Plane(0, 0, 1, 0)
    pb = P3Plane(1, 1, 2, -3)
    rng = SplitMix64.for_kind("proj3d", 4)
    for _ in range(50):
        p = P3Point(rng.fraction(10), rng.fraction(10), 0, 1)
        if pb.contains(apex) or p == apex:
            continue
        up = central_projection_3d(apex, pb, p)
        down = central_projection_3d(apex, pa, up)
        assert down == p


def test_projection_errors():
    apex = P3Point(0, 0, 1, 1)
    with pytest.raises(GeometryError):
        central_projection_3d(apex, P3Plane(0, 0, 1, -1), apex)
    with pytest.raises(GeometryError):
        central_projection_3d(P3Point(0, 0, 0, 1), P3Plane(0, 0, 1, 0), P3Point(1, 1, 0, 1))


def test_plane_chart_roundtrip():
    plane = P3Plane(-1, 0, 2, -2)
    basis = plane_basis(plane)
    rng = SplitMix64.for_kind("plane-chart", 8)
    for _ in range(50):
        pp = PPoint(rng.fraction(15), rng.fraction(15), 1)
        lifted = p2_to_plane(basis, pp)
        assert plane.contains(lifted)
        assert plane_to_p2(basis, lifted) == pp


def test_plane_to_p2_rejects_off_plane_points():
    plane = P3Plane(0, 0, 1, 0)
    basis = plane_basis(plane)
    with pytest.raises(GeometryError):
        plane_to_p2(basis, P3Point(0, 0, 1, 1))


# -- misc helpers -------------------------------------------------------------


def test_midpoint_and_infinity_point():
    assert midpoint(A(0, 0), A(4, 2)) == A(2, 1)
    assert infinity_point_of(PLine(1, -1, 3)) == PPoint(-1, -1, 0)
    with pytest.raises(GeometryError):
        midpoint(A(0, 0), PPoint(1, 0, 0))
