from fractions import Fraction as F

import pytest

from arguesia.involution import NodeCouples, equivalence_check
from arguesia.instances import InstanceConfig, generate_instance
from arguesia.menelaus_engine import (
    NonGenericError,
    Ratio,
    RatioChain,
    SectorFigure,
    decompose_ratio,
    menelaus_product,
    replay_quadrangle_proof,
    replay_ramee_proof,
)
from arguesia.projective_core import (
    PLine,
    PPoint,
    default_chart,
    incident,
    join,
)
from arguesia.rng import SplitMix64
from arguesia.theorems import QuadrangleConfig

A = PPoint.affine_point
CH = default_chart(PLine(0, 1, 0))


def x_axis_arbre(vals):
    return NodeCouples(
        CH,
        tuple(
            (CH.point_at(F(*a) if isinstance(a, tuple) else F(a)),
             CH.point_at(F(*b) if isinstance(b, tuple) else F(b)))
            for a, b in vals
        ),
    )


ARBRE = x_axis_arbre([(1, 4), (8, (1, 2)), (-1, -4)])


def triangle_figure():
    return SectorFigure.from_triangle(A(0, 0), A(4, 0), A(0, 4), PLine(1, -1, -1))


# -- menelaus product ----------------------------------------------------------


def test_menelaus_product_is_one_on_the_triangle():
    assert menelaus_product(triangle_figure()) == 1


def test_menelaus_product_one_on_500_random_figures():
    done = 0
    seed = 0
    while done < 500:
        seed += 1
        try:
            inst = generate_instance(InstanceConfig("menelaus", seed))
        except Exception:
            continue
        assert menelaus_product(inst["figure"]) == 1
        done += 1


def test_menelaus_converse_perturbation_breaks_product():
    fig = triangle_figure()
    n1, n2, n3 = fig.nodes
    a, b, c = fig.vertices()
    # move the third noeud along its ray, off the tronc: the signed product
    # of the same three ratios is then no longer 1
    ray_chart = default_chart(fig.rays[2])
    moved = ray_chart.point_at(ray_chart.coordinate(n3) + 1)
    assert not incident(moved, fig.tronc)
    product = (
        Ratio(n1, b, c).value()
        * Ratio(n2, c, a).value()
        * Ratio(moved, a, b).value()
    )
    assert product != 1


def test_classical_minus_one_convention_conversion():
    # vertex-anchored ratios give the classical -1; noeud-anchored give +1
    fig = triangle_figure()
    n1, n2, n3 = fig.nodes
    a, b, c = fig.vertices()
    # (bN1/N1c)(cN2/N2a)(aN3/N3b) = -1 with signed ratios
    r1 = _span_ratio(b, n1, n1, c)
    r2 = _span_ratio(c, n2, n2, a)
    r3 = _span_ratio(a, n3, n3, b)
    assert r1 * r2 * r3 == -1
    assert menelaus_product(fig) == 1


def _span_ratio(p, q, r, s):
    """(q - p)/(s - r) on a common line, via chart parameters."""
    chart = default_chart(join(p, s) if p != s else join(p, q))
    tp, tq, tr, ts = (chart.coordinate(x) for x in (p, q, r, s))
    return (tq - tp) / (ts - tr)


# -- decomposition ---------------------------------------------------------------


def test_decompose_ratio_all_nodes_and_inverse():
    fig = triangle_figure()
    for node in (1, 2, 3):
        ident = decompose_ratio(fig, node)
        assert ident.equal
        inv = decompose_ratio(fig, node, inverted=True)
        assert inv.equal
        assert inv.lhs_value() == 1 / ident.lhs_value()


def test_decompose_ratio_concrete_values():
    fig = triangle_figure()
    ident = decompose_ratio(fig, 1)
    n1 = fig.nodes[0]
    a, b, c = fig.vertices()
    assert ident.lhs.origin == n1 and ident.lhs.num_end == b and ident.lhs.den_end == c
    assert ident.rhs.factors[0].origin == fig.nodes[2]
    assert ident.rhs.factors[1].origin == fig.nodes[1]
    assert ident.lhs_value() == ident.rhs.factors[0].value() * ident.rhs.factors[1].value()


def test_decompose_ratio_is_chart_independent():
    # the identity is between ratio values, which do not depend on a chart
    rng = SplitMix64.for_kind("decompose", 6)
    done = 0
    while done < 50:
        try:
            inst = generate_instance(InstanceConfig("menelaus", rng.below(10**6)))
            ident = decompose_ratio(inst["figure"], 1 + rng.below(3))
        except Exception:
            continue
        assert ident.equal
        done += 1


# -- the ramee replay ------------------------------------------------------------


def test_ramee_replay_eleven_steps():
    k = A(2, 3)
    delta = default_chart(join(A(0, 1), A(5, 2)))
    trace = replay_ramee_proof(ARBRE, k, delta)
    assert trace.verdict
    assert len(trace.steps) == 11
    assert len(trace.menelaus_steps()) == 8
    series = [s.meta["series"] for s in trace.menelaus_steps()]
    assert series == [1, 1, 1, 1, 2, 2, 2, 2]
    assert [s.cite for s in trace.steps[-3:]] == ["p.12 l.11", "p.12 l.7", "p.12 l.26"]


def test_ramee_replay_rejects_k_on_tronc():
    with pytest.raises(NonGenericError):
        replay_ramee_proof(ARBRE, A(2, 0), default_chart(join(A(0, 1), A(5, 2))))


def test_ramee_replay_rejects_infinite_k():
    with pytest.raises(NonGenericError):
        replay_ramee_proof(ARBRE, PPoint(1, 1, 0), default_chart(join(A(0, 1), A(5, 2))))


def test_ramee_shortcut_through_d():
    d_pt = CH.point_at(F(-1))
    delta = default_chart(join(d_pt, A(0, 5)))
    k = A(2, 3)
    trace = replay_ramee_proof(ARBRE, k, delta)
    assert trace.verdict
    assert trace.notes["shortcut"]
    assert len(trace.steps) == 7
    assert len(trace.menelaus_steps()) == 4
    # image couples (D,f),(2,5),(3,4) are in involution on the image line
    imgs = trace.notes["images"]
    pts = {nm: delta.point_at(t) for nm, t in imgs.items()}
    nc = NodeCouples(
        delta,
        ((pts["D"], pts["f"]), (pts["2"], pts["5"]), (pts["3"], pts["4"])),
    )
    assert equivalence_check(nc)["equivalent"]


def test_ramee_replay_on_random_generic_instances():
    for seed in range(1, 51):
        inst = generate_instance(InstanceConfig("ramee", seed))
        trace = replay_ramee_proof(inst["arbre"], inst["k"], inst["delta"])
        assert trace.verdict and len(trace.steps) == 11


# -- the quadrangle replay --------------------------------------------------------


def quad_config():
    return QuadrangleConfig((A(0, 0), A(4, 1), A(3, 5), A(-1, 3)),
                            default_chart(PLine(1, -3, 1)))


def test_quadrangle_replay_structure():
    trace = replay_quadrangle_proof(quad_config())
    assert trace.verdict
    assert len(trace.steps) == 6
    men = trace.menelaus_steps()
    assert [s.meta["X"] for s in men] == ["I", "K", "G", "H"]
    assert [s.meta["couple"] for s in men] == [
        ("C", "B"), ("D", "E"), ("D", "B"), ("C", "E"),
    ]


def test_quadrangle_transversal_through_borne_rejected():
    bornes = (A(0, 0), A(4, 1), A(3, 5), A(-1, 3))
    through_b = join(A(0, 0), A(1, 7))
    with pytest.raises(NonGenericError):
        QuadrangleConfig(bornes, default_chart(through_b))


def test_quadrangle_transversal_through_diagonal_point_rejected():
    bornes = (A(0, 0), A(4, 1), A(3, 5), A(-1, 3))
    q = quad_config()
    f_pt = q.pivot
    bad = join(f_pt, A(100, 3))
    with pytest.raises(NonGenericError):
        QuadrangleConfig(bornes, default_chart(bad))


def test_ratio_validation():
    with pytest.raises(NonGenericError):
        Ratio(A(0, 0), A(1, 1), A(0, 0))  # zero denominator segment
    with pytest.raises(NonGenericError):
        Ratio(A(0, 0), A(1, 1), A(2, 0))  # not collinear
    r = Ratio(A(0, 0), A(2, 2), A(3, 3))
    assert r.value() == F(2, 3)
    assert RatioChain((r, r.inverse())).value() == 1
