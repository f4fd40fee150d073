from fractions import Fraction as F

import pytest

from arguesia.conics import Conic, ConicError, ConicParametrization, Pencil, pencil_member
from arguesia.instances import InstanceConfig, generate_instance, random_collineation
from arguesia.involution import NodeCouples, classify, classify_kind, equivalence_check
from arguesia.menelaus_engine import NonGenericError
from arguesia.projective_core import (
    INF,
    GeometryError,
    P3Plane,
    P3Point,
    PLine,
    PPoint,
    cross_ratio,
    default_chart,
    incident,
    join,
)
from arguesia.rng import SplitMix64
from arguesia.conics import apply_collineation_point
from arguesia.theorems import (
    QuadrangleConfig,
    beaugrand_replay,
    construct_involution_p13,
    desargues_involution_by_perspectives,
    harmonic_conjugate,
    parallel_bornales_identities,
    pascal_collinear,
    pencil_involution_check,
    quadrangle_involution,
    retablissement_demo,
    verify_bisector_case,
    verify_midpoint_case,
    verify_ramee,
)

A = PPoint.affine_point
CH = default_chart(PLine(0, 1, 0))
UC = Conic.unit_circle()
PAR = ConicParametrization(UC, A(-1, 0))


def pt(v):
    return CH.point_at(F(*v) if isinstance(v, tuple) else F(v))


# -- verify_ramee -------------------------------------------------------------


def arbre_4_over_x():
    return NodeCouples(CH, ((pt(1), pt(4)), (pt(8), pt((1, 2))), (pt(-1), pt(-4))))


def test_verify_ramee_generic():
    rep = verify_ramee(arbre_4_over_x(), A(2, 3), default_chart(join(A(0, 1), A(5, 2))))
    assert rep.verdict
    assert rep.trace is not None and len(rep.trace.steps) == 11
    labels = [c["label"] for c in rep.claims]
    assert "classification preserved" in labels


def test_verify_ramee_k_at_infinity_thales_path():
    rep = verify_ramee(arbre_4_over_x(), PPoint(1, 2, 0), default_chart(join(A(0, 1), A(5, 2))))
    assert rep.verdict
    assert rep.trace is None
    assert rep.notes["replay_skipped"] == "Thales case: parallel rameaux"


def test_verify_ramee_rejects_k_on_carrier():
    with pytest.raises(GeometryError):
        verify_ramee(arbre_4_over_x(), A(3, 0), default_chart(join(A(0, 1), A(5, 2))))


def test_verify_ramee_image_at_infinity_uses_souche():
    # image line through C=8's rameau direction: make the image of D infinite
    arbre = arbre_4_over_x()
    k = A(2, 3)
    d_pt = pt(-1)
    rameau = join(d_pt, k)
    # delta parallel to rameau DK, through a harmless finite point
    from arguesia.projective_core import infinity_point_of, parallel_line_through

    delta_line = parallel_line_through(rameau, A(0, 7))
    rep = verify_ramee(arbre, k, default_chart(delta_line))
    assert rep.verdict
    assert any("souche pairing" in c["label"] for c in rep.claims)


def test_verify_ramee_500_seed_property():
    for seed in range(1, 101):
        inst = generate_instance(InstanceConfig("ramee", seed))
        rep = verify_ramee(inst["arbre"], inst["k"], inst["delta"])
        assert rep.verdict


# -- harmonic conjugates --------------------------------------------------------


def test_harmonic_conjugate_example():
    f = harmonic_conjugate(pt(0), pt(2), pt(3))
    assert CH.coordinate(f) == F(3, 2)


def test_harmonic_conjugate_midpoint_gives_infinity():
    f = harmonic_conjugate(pt(0), pt(2), pt(1))
    assert f.is_at_infinity()


def test_harmonic_conjugate_involutive():
    f = harmonic_conjugate(pt(0), pt(2), pt(3))
    assert harmonic_conjugate(pt(0), pt(2), f) == pt(3)


def test_harmonic_two_paths_agree_on_200_seeds():
    rng = SplitMix64.for_kind("harmonic-paths", 1)
    done = 0
    while done < 200:
        try:
            inst = generate_instance(InstanceConfig("harmonic", rng.below(10**9)))
        except Exception:
            continue
        f = harmonic_conjugate(inst["b"], inst["c"], inst["d"])
        assert f == inst["f"]
        assert cross_ratio(inst["b"], inst["c"], inst["d"], f) == -1
        done += 1


# -- midpoint and bisector cases -------------------------------------------------


def test_midpoint_case_example():
    rep = verify_midpoint_case(pt(0), pt(2), pt(3), pt((3, 2)), A(1, 2))
    assert rep.verdict
    ratio_claim = next(c for c in rep.claims if "raison double" in c["label"])
    assert ratio_claim["lhs"] == "2/1"


def test_midpoint_case_rejects_non_harmonic():
    with pytest.raises(GeometryError):
        verify_midpoint_case(pt(0), pt(2), pt(3), pt(2), A(1, 2))
    with pytest.raises(GeometryError):
        verify_midpoint_case(pt(0), pt(2), pt(3), pt((7, 5)), A(1, 2))


def test_bisector_case_example():
    circ = Conic(1, 0, -1, 1, 0, 0)  # circle with diameter from (0,0) to (2,0)
    k = ConicParametrization(circ, A(0, 0)).point_at(F(2))
    rep = verify_bisector_case(pt(0), pt(2), pt(3), pt((3, 2)), k)
    assert rep.verdict


def test_bisector_case_negative_control():
    rep = verify_bisector_case(pt(0), pt(2), pt(3), pt((3, 2)), A(1, 5))
    assert not rep.verdict
    perp = next(c for c in rep.claims if "perpendicular KC" in c["label"])
    assert not perp["equal"]


# -- p13 construction -------------------------------------------------------------


def test_p13_construction_harmonic():
    rep = construct_involution_p13(A(0, 0), A(F(4, 3), 2), A(5, 1), A(2, 3))
    assert rep.verdict


def test_p13_rejects_g_on_bk():
    with pytest.raises(GeometryError):
        construct_involution_p13(A(0, 0), A(1, 1), A(2, 2), A(3, 3))


def test_p13_perturbed_midpoint_breaks_harmonicity():
    # replaying the construction with a fake midpoint destroys the cross-ratio
    from arguesia.projective_core import meet, midpoint, parallel_line_through

    b, k = A(0, 0), A(2, 3)
    h, g = A(F(4, 3), 2), A(5, 1)
    bad_f = midpoint(g, midpoint(g, h))  # not the midpoint of gh
    bg = join(b, g)
    big_f = meet(join(k, bad_f), bg)
    big_d = meet(parallel_line_through(join(g, h), k), bg)
    assert cross_ratio(b, g, big_d, big_f) != -1


# -- quadrangle suite --------------------------------------------------------------


def quad_config():
    return QuadrangleConfig(
        (A(0, 0), A(4, 1), A(3, 5), A(-1, 3)), default_chart(PLine(1, -3, 1))
    )


def test_quadrangle_involution_square_example():
    q = QuadrangleConfig(
        (A(-1, -1), A(1, -1), A(1, 1), A(-1, 1)),
        default_chart(PLine(F(1, 3), -1, F(1, 5))),
    )
    inv, rep = quadrangle_involution(q)
    assert rep.verdict


def test_quadrangle_and_perspectives_agree_200_seeds():
    for seed in range(1, 201):
        inst = generate_instance(InstanceConfig("quadrangle", seed))
        q = inst["quadrangle"]
        inv, rep = quadrangle_involution(q)
        assert rep.verdict
        other = desargues_involution_by_perspectives(q)
        assert other.map.matrix == inv.map.matrix
        assert other.map.compose(other.map).is_identity()


def test_perspectives_map_named_couples():
    q = quad_config()
    inv = desargues_involution_by_perspectives(q)
    from arguesia.involution import partner

    assert partner(inv, q.P) == q.Q
    assert partner(inv, q.K) == q.I
    assert partner(inv, q.G) == q.H
    assert partner(inv, q.H) == q.G


# -- pencil suite --------------------------------------------------------------------


def test_pencil_unit_circle_example():
    bornes = (A(1, 0), A(0, 1), A(-1, 0), A(0, -1))
    delta = default_chart(join(A(F(3, 5), F(4, 5)), A(F(-3, 5), F(4, 5))))
    q = QuadrangleConfig(bornes, delta, strict=False)
    rep = pencil_involution_check(q, UC)
    assert rep.verdict
    assert any("partner(L) = M" in c["label"] for c in rep.claims)


def test_pencil_members_and_tangency():
    inst = generate_instance(InstanceConfig("pencil", 3))
    q = inst["quadrangle"]
    for name, member in inst["members"]:
        rep = pencil_involution_check(q, member)
        assert rep.verdict, name
    # the third line pair reproduces the (G, H) couple
    third = inst["pencil"].third_degenerate()
    rep3 = pencil_involution_check(q, third)
    assert rep3.verdict
    assert any("couple GH" in c["label"] for c in rep3.claims)
    # the tangency point is a fixed point of the involution
    from arguesia.theorems import nc_involution
    from arguesia.involution import partner

    inv = nc_involution(q.node_couples())
    t = inst["tangency"]
    assert partner(inv, t) == t


def test_pencil_member_not_through_bornes_rejected():
    q = quad_config()
    with pytest.raises(ConicError):
        pencil_involution_check(q, UC)


def test_pencil_empty_chord_reported_not_error():
    # a member that misses the transversal is a reported observation
    bornes = (A(1, 0), A(0, 1), A(-1, 0), A(0, -1))
    delta = default_chart(PLine(0, 1, -2))  # y = 2 misses the unit circle
    q = QuadrangleConfig(bornes, delta, strict=False)
    rep = pencil_involution_check(q, UC)
    assert rep.verdict
    assert any("no real chord" in c["label"] for c in rep.claims)


def test_pencil_quadext_chord():
    # a member meeting the transversal in conjugate QuadExt points still has
    # its chord swapped by the involution
    bornes = (A(1, 0), A(0, 1), A(-1, 0), A(0, -1))
    delta = default_chart(join(A(F(1, 5), F(1, 2)), A(1, 3)))
    q = QuadrangleConfig(bornes, delta, strict=False)
    rep = pencil_involution_check(q, UC)
    assert rep.verdict


def test_hyperbolic_iff_two_tangent_members():
    # sign of the involution discriminant agrees with the existence of real
    # tangency (double-root) members of the pencil
    done = 0
    seed = 0
    while done < 40:
        seed += 1
        try:
            inst = generate_instance(InstanceConfig("quadrangle", seed))
        except Exception:
            continue
        q = inst["quadrangle"]
        from arguesia.theorems import nc_involution

        inv = nc_involution(q.node_couples())
        kind = classify_kind(inv)
        pen = Pencil.through(*q.bornes)
        disc = _tangency_discriminant(pen, q.transversal.line)
        assert (disc > 0) == (kind == "hyperbolic")
        assert (disc < 0) == (kind == "elliptic")
        done += 1


def _tangency_discriminant(pen, line):
    """Discriminant of the quadratic in (lam:mu) expressing tangency to line."""
    from arguesia.conics import _line_span, _bilinear

    p0, p1 = _line_span(line)

    def restriction(conic):
        a = conic.evaluate(p0)
        b = _bilinear(conic, p0.coords, p1.coords)
        c = conic.evaluate(p1)
        return a, b, c

    a1, b1, c1 = restriction(pen.gen1)
    a2, b2, c2 = restriction(pen.gen2)
    # disc(lam, mu) = (lam*b1 + mu*b2)^2 - (lam*a1 + mu*a2)(lam*c1 + mu*c2)
    # as a quadratic q_ll*lam^2 + q_lm*lam*mu + q_mm*mu^2
    q_ll = b1 * b1 - a1 * c1
    q_lm = 2 * b1 * b2 - a1 * c2 - a2 * c1
    q_mm = b2 * b2 - a2 * c2
    return q_lm * q_lm - 4 * q_ll * q_mm


# -- parallel bornales ------------------------------------------------------------


def test_parallel_bornales_trapezoid():
    q = QuadrangleConfig(
        (A(0, 0), A(0, 3), A(4, 5), A(4, -1)),
        default_chart(PLine(1, -3, -1)),
        strict=False,
    )
    rep = parallel_bornales_identities(q)
    assert rep.verdict
    assert len(rep.claims) == 4


def test_parallel_bornales_rejects_non_parallel():
    with pytest.raises(GeometryError):
        parallel_bornales_identities(quad_config())


# -- beaugrand ----------------------------------------------------------------------


def beaugrand_instance():
    k, n, o, v = (PAR.point_at(F(*t)) for t in ((0, 1), (1, 2), (2, 1), (-1, 3)))
    from arguesia.projective_core import meet, parallel_line_through

    q0 = PAR.point_at(F(4))
    mu = parallel_line_through(join(n, v), q0)
    c_pt = meet(mu, join(k, o))
    f_pt = PAR.point_at(F(-3))
    return k, n, o, v, join(c_pt, f_pt)


def test_beaugrand_trace_structure():
    k, n, o, v, trans = beaugrand_instance()
    trace = beaugrand_replay(UC, k, n, o, v, trans)
    assert trace.verdict
    kinds = [s.meta["kind"] for s in trace.steps]
    assert kinds.count("apollonius") == 2
    assert kinds.count("menelaus") == 2
    assert kinds.count("analogy") == 2
    assert kinds.count("final") == 1


def test_beaugrand_couples_in_involution():
    # the three analogies close into a genuine involution on the transversal
    k, n, o, v, trans = beaugrand_instance()
    trace = beaugrand_replay(UC, k, n, o, v, trans)
    pts = {nm: PPoint.from_json(val) for nm, val in trace.notes["points"].items()}
    chart = default_chart(trans)
    nc = NodeCouples(
        chart,
        (
            (pts["A"], pts["C"]),
            (pts["B"], pts["E"]),
            (pts["F"], pts["G"]),
        ),
    )
    assert equivalence_check(nc)["equivalent"]


def test_beaugrand_rejects_point_off_conic():
    k, n, o, v, trans = beaugrand_instance()
    with pytest.raises(ConicError):
        beaugrand_replay(UC, k, n, o, A(5, 5), trans)


def test_beaugrand_rejects_irrational_transversal():
    k, n, o, v, _ = beaugrand_instance()
    with pytest.raises(ConicError):
        beaugrand_replay(UC, k, n, o, v, PLine(1, -1, F(1, 3)))


# -- pascal ---------------------------------------------------------------------------


def test_pascal_params_0_to_5():
    pts = [PAR.point_at(F(t)) for t in (0, 1, 2, 3, 4, 5)]
    rep = pascal_collinear(UC, *pts)
    assert rep.verdict
    assert rep.trace is not None and rep.trace.verdict


def test_pascal_rejects_coincident_vertices():
    pts = [PAR.point_at(F(t)) for t in (0, 1, 2, 3, 4, 4)]
    with pytest.raises(GeometryError):
        pascal_collinear(UC, *pts)


def test_pascal_collineation_images():
    pts = [PAR.point_at(F(t)) for t in (0, 1, 2, 3, 4, 5)]
    rng = SplitMix64.for_kind("pascal-collineation", 1)
    for _ in range(20):
        t_rows = random_collineation(rng)
        image_conic = UC.apply_collineation(t_rows)
        image_pts = [apply_collineation_point(t_rows, p) for p in pts]
        try:
            rep = pascal_collinear(image_conic, *image_pts)
        except NonGenericError:
            continue
        assert rep.claims[0]["equal"]  # collinearity of M, S, X


# -- retablissement ----------------------------------------------------------------


def test_retablissement_cone_example():
    rep = retablissement_demo(
        P3Point(0, 0, 2, 1),
        P3Plane(0, 0, 1, 0),
        P3Plane(-1, 0, 2, -2),
        [F(0), F(1), F(-1, 2), F(3), F(1, 5), F(-4)],
    )
    assert rep.verdict


def test_retablissement_identity_transport():
    base = P3Plane(0, 0, 1, 0)
    rep = retablissement_demo(
        P3Point(0, 0, 2, 1), base, base, [F(0), F(1), F(-1, 2), F(3), F(1, 5), F(-4)]
    )
    assert rep.verdict


def test_retablissement_apex_on_plane_rejected():
    with pytest.raises(GeometryError):
        retablissement_demo(
            P3Point(0, 0, 0, 1),
            P3Plane(0, 0, 1, 0),
            P3Plane(-1, 0, 2, -2),
            [F(0), F(1), F(2), F(3), F(4), F(5)],
        )
