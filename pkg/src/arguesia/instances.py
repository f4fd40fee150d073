"""Seeded instance generation for every verification suite.

``generate_instance`` maps an InstanceConfig (kind, seed, bounds) to a
concrete configuration that satisfies the target operation's
preconditions, by rejection-resampling from the kind's deterministic
SplitMix64 stream.  The same config always regenerates the identical
instance; exhausting the retry budget is an error that reports the last
failing precondition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from arguesia.conics import Conic, ConicError, ConicParametrization, Pencil, pencil_member
from arguesia.involution import Involution, InvolutionError, NodeCouples
from arguesia.menelaus_engine import NonGenericError, SectorFigure, replay_ramee_proof
from arguesia.projective_core import (
    INF,
    AffineChart,
    GeometryError,
    LineMap,
    P3Plane,
    P3Point,
    PLine,
    PPoint,
    default_chart,
    incident,
    join,
    meet,
    parallel_line_through,
)
from arguesia.rng import SplitMix64
from arguesia.theorems import QuadrangleConfig, harmonic_conjugate, retablissement_demo

KINDS = (
    "menelaus",
    "ramee",
    "quadrangle",
    "pencil",
    "pascal",
    "beaugrand",
    "harmonic",
    "bisector",
    "parallel_bornales",
    "retablissement",
    "p13",
)

MAX_RETRIES = 400


class InstanceError(ValueError):
    """Instance generation failed (bad kind, bounds, or retries exhausted)."""


@dataclass(frozen=True)
class InstanceConfig:
    kind: str
    seed: int
    bounds: int = 32
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InstanceError(f"unknown instance kind {self.kind!r}")
        if not 0 <= self.seed < (1 << 64):
            raise InstanceError("seed must fit in 64 bits")

    def to_json(self) -> dict:
        return {"kind": self.kind, "seed": self.seed, "bounds": self.bounds}


def generate_instance(cfg: InstanceConfig) -> dict:
    """Deterministic, generic instance for the named theorem suite."""
    if cfg.bounds < 8:
        raise InstanceError(
            f"retry budget exhausted: bounds {cfg.bounds} too tight "
            "(coordinate bounds below 8 cannot clear the genericity checks)"
        )
    rng = SplitMix64.for_kind(cfg.kind, cfg.seed)
    maker = _MAKERS[cfg.kind]
    last_error = "no attempt made"
    for _ in range(MAX_RETRIES):
        try:
            inst = maker(rng, cfg.bounds)
        except (GeometryError, InvolutionError, ConicError, ZeroDivisionError) as exc:
            last_error = str(exc)
            continue
        inst["config"] = cfg.to_json()
        return inst
    raise InstanceError(
        f"retry budget exhausted for kind {cfg.kind!r}: last failure: {last_error}"
    )


# ---------------------------------------------------------------------------
# draw helpers


def _point(rng: SplitMix64, bounds: int) -> PPoint:
    return PPoint(rng.fraction(bounds), rng.fraction(bounds), 1)


def _distinct_points(rng: SplitMix64, bounds: int, n: int) -> list[PPoint]:
    pts: list[PPoint] = []
    while len(pts) < n:
        p = _point(rng, bounds)
        if p not in pts:
            pts.append(p)
    return pts


def _line(rng: SplitMix64, bounds: int) -> PLine:
    p, q = _distinct_points(rng, bounds, 2)
    return join(p, q)


def _chart(rng: SplitMix64, bounds: int) -> AffineChart:
    return default_chart(_line(rng, bounds))


def _distinct_params(rng: SplitMix64, bounds: int, n: int) -> list[Fraction]:
    vals: list[Fraction] = []
    while len(vals) < n:
        t = rng.fraction(bounds)
        if t not in vals:
            vals.append(t)
    return vals


# ---------------------------------------------------------------------------
# kind makers


def _make_menelaus(rng: SplitMix64, bounds: int) -> dict:
    p, q, r = _distinct_points(rng, bounds, 3)
    transversal = _line(rng, bounds)
    figure = SectorFigure.from_triangle(p, q, r, transversal)
    for node in figure.nodes:
        if node.is_at_infinity():
            raise NonGenericError("noeud at infinity")
    for vertex in figure.vertices():
        if vertex.is_at_infinity():
            raise NonGenericError("vertex at infinity")
    return {"figure": figure, "triangle": (p, q, r), "transversal": transversal}


def _make_ramee(rng: SplitMix64, bounds: int) -> dict:
    chart = _chart(rng, bounds)
    a = rng.int_between(-bounds, bounds)
    b = rng.int_between(-bounds, bounds)
    c = rng.int_between(-bounds, bounds)
    if c == 0 or a * a + b * c == 0:
        raise NonGenericError("degenerate involution matrix")
    inv = Involution(LineMap((a, b, c, -a), chart, chart))
    params = _distinct_params(rng, bounds, 3)
    pairs = []
    for t in params:
        u = inv.map.apply_param(t)
        if u is INF or u == t:
            raise NonGenericError("couple hit infinity or a fixed point")
        pairs.append((chart.point_at(t), chart.point_at(u)))
    arbre = NodeCouples(chart, tuple(pairs))
    k = _point(rng, bounds)
    delta = _chart(rng, bounds)
    if incident(k, chart.line) or incident(k, delta.line):
        raise NonGenericError("projection point on a carrier line")
    if delta.line == chart.line:
        raise NonGenericError("image line equals the tronc")
    for p, q in pairs:
        if incident(p, delta.line) or incident(q, delta.line):
            raise NonGenericError("image line through a noeud: shortcut case")
    replay_ramee_proof(arbre, k, delta)  # precondition probe only
    return {"arbre": arbre, "k": k, "delta": delta, "involution": inv}


def _make_quadrangle(rng: SplitMix64, bounds: int) -> dict:
    bornes = tuple(_distinct_points(rng, bounds, 4))
    transversal = default_chart(_line(rng, bounds))
    q = QuadrangleConfig(bornes, transversal)
    if q.pivot.is_at_infinity():
        raise NonGenericError("pivot F at infinity")
    for name, p in q.diagonal_points().items():
        if name != "N" and p.is_at_infinity():
            raise NonGenericError(f"diagonal point {name} at infinity")
    return {"quadrangle": q}


def _make_parallel_bornales(rng: SplitMix64, bounds: int) -> dict:
    b, c, d = _distinct_points(rng, bounds, 3)
    bc = join(b, c)
    if incident(d, bc):
        raise NonGenericError("D on line BC")
    lam = rng.nonzero_fraction(bounds)
    e = PPoint(
        Fraction(d.x, d.z) + lam * (Fraction(c.x, c.z) - Fraction(b.x, b.z)),
        Fraction(d.y, d.z) + lam * (Fraction(c.y, c.z) - Fraction(b.y, b.z)),
        1,
    )
    transversal = default_chart(_line(rng, bounds))
    q = QuadrangleConfig((b, c, d, e), transversal, strict=False)
    if q.pivot.is_at_infinity():
        raise NonGenericError("pivot at infinity")
    for pt in (q.I, q.K, q.P, q.Q):
        if pt.is_at_infinity():
            raise NonGenericError("couple point at infinity")
    return {"quadrangle": q}


def _make_pencil(rng: SplitMix64, bounds: int) -> dict:
    circle = Conic.unit_circle()
    par = ConicParametrization(circle, PPoint(-1, 0, 1))
    t0, t1, t2, t3, t4 = _distinct_params(rng, bounds, 5)
    tangency = par.point_at(t0)
    delta_line = circle.polar_line(tangency)
    bornes = tuple(par.point_at(t) for t in (t1, t2, t3, t4))
    if tangency in bornes:
        raise NonGenericError("tangency point among the bornes")
    chart = default_chart(delta_line)
    q = QuadrangleConfig(bornes, chart, strict=False)
    pencil = Pencil.through(*bornes)
    members = [("line pair IK", pencil.gen1), ("line pair PQ", pencil.gen2)]
    w_params = _distinct_params(rng, bounds, 2)
    for wt in w_params:
        w = chart.point_at(wt)
        if w == tangency or w in bornes or circle.contains(w):
            raise NonGenericError("bad through-point for a generic member")
        member = pencil_member(pencil, w)
        if member.is_degenerate():
            raise NonGenericError("generic member degenerated")
        members.append((f"member through t={wt}", member))
    members.append(("tangent member", circle))
    return {
        "quadrangle": q,
        "pencil": pencil,
        "members": members,
        "tangency": tangency,
    }


def _make_pascal(rng: SplitMix64, bounds: int) -> dict:
    circle = Conic.unit_circle()
    par = ConicParametrization(circle, PPoint(-1, 0, 1))
    params = _distinct_params(rng, bounds, 6)
    pts = tuple(par.point_at(t) for t in params)
    if len(set(pts)) != 6:
        raise NonGenericError("hexagon points collide")
    return {"conic": circle, "hexagon": pts, "params": params}


def _make_beaugrand(rng: SplitMix64, bounds: int) -> dict:
    circle = Conic.unit_circle()
    par = ConicParametrization(circle, PPoint(-1, 0, 1))
    tk, tn, to_, tv, tq, tf = _distinct_params(rng, bounds, 6)
    k, n, o, v = (par.point_at(t) for t in (tk, tn, to_, tv))
    q0 = par.point_at(tq)
    f_pt = par.point_at(tf)
    if len({k, n, o, v, q0, f_pt}) != 6:
        raise NonGenericError("conic points collide")
    nv, ko = join(n, v), join(k, o)
    mu = parallel_line_through(nv, q0)
    c_pt = meet(mu, ko)
    if c_pt.is_at_infinity() or c_pt == f_pt or circle.contains(c_pt):
        raise NonGenericError("auxiliary point C degenerate")
    transversal = join(c_pt, f_pt)
    return {
        "conic": circle,
        "bornes": (k, n, o, v),
        "transversal": transversal,
    }


def _make_harmonic(rng: SplitMix64, bounds: int) -> dict:
    chart = _chart(rng, bounds)
    tb, tc, td = _distinct_params(rng, bounds, 3)
    if td == (tb + tc) / 2:
        raise NonGenericError("D at the midpoint: F would be infinite")
    b, c, d = (chart.point_at(t) for t in (tb, tc, td))
    f = harmonic_conjugate(b, c, d)
    k = _point(rng, bounds)
    if incident(k, chart.line):
        raise NonGenericError("K on the carrier line")
    return {"chart": chart, "b": b, "c": c, "d": d, "f": f, "k": k}


def _make_bisector(rng: SplitMix64, bounds: int) -> dict:
    chart = _chart(rng, bounds)
    tb, tc, td = _distinct_params(rng, bounds, 3)
    if td == (tb + tc) / 2:
        raise NonGenericError("D at the midpoint")
    b, c, d = (chart.point_at(t) for t in (tb, tc, td))
    if b.is_at_infinity() or c.is_at_infinity():
        raise NonGenericError("B or C at infinity")
    f = harmonic_conjugate(b, c, d)
    if f.is_at_infinity() or d.is_at_infinity():
        raise NonGenericError("harmonic couple not finite")
    bx, by = b.affine()
    cx, cy = c.affine()
    thales = Conic(
        1,
        0,
        Fraction(-(bx + cx), 2),
        1,
        Fraction(-(by + cy), 2),
        bx * cx + by * cy,
    )
    par = ConicParametrization(thales, b)
    k = par.point_at(rng.fraction(bounds))
    if k in (b, c) or incident(k, chart.line) or k.is_at_infinity():
        raise NonGenericError("K degenerate on the Thales circle")
    return {"chart": chart, "b": b, "c": c, "d": d, "f": f, "k": k}


def _make_retablissement(rng: SplitMix64, bounds: int) -> dict:
    apex = P3Point(rng.fraction(bounds), rng.fraction(bounds), rng.int_between(1, bounds), 1)
    base = P3Plane(0, 0, 1, 0)
    cut = P3Plane(
        rng.int_between(-4, 4),
        rng.int_between(-4, 4),
        rng.int_between(1, 4),
        rng.int_between(-bounds, bounds),
    )
    if base.contains(apex) or cut.contains(apex):
        raise NonGenericError("apex on a plane")
    if cut.coeffs == base.coeffs:
        raise NonGenericError("cut equals base")
    params = tuple(_distinct_params(rng, bounds, 6))
    retablissement_demo(apex, base, cut, params)  # precondition probe
    return {"apex": apex, "base": base, "cut": cut, "params": params}


def _make_p13(rng: SplitMix64, bounds: int) -> dict:
    b, k = _distinct_points(rng, bounds, 2)
    t = rng.fraction(bounds)
    if t in (0, 1):
        raise NonGenericError("h coincides with B or K")
    bx, by = b.affine()
    kx, ky = k.affine()
    h = PPoint(bx + t * (kx - bx), by + t * (ky - by), 1)
    g = _point(rng, bounds)
    if incident(g, join(b, k)):
        raise NonGenericError("G on line BK")
    return {"b": b, "h": h, "g": g, "k": k}


_MAKERS = {
    "menelaus": _make_menelaus,
    "ramee": _make_ramee,
    "quadrangle": _make_quadrangle,
    "pencil": _make_pencil,
    "pascal": _make_pascal,
    "beaugrand": _make_beaugrand,
    "harmonic": _make_harmonic,
    "bisector": _make_bisector,
    "parallel_bornales": _make_parallel_bornales,
    "retablissement": _make_retablissement,
    "p13": _make_p13,
}


def random_collineation(rng: SplitMix64, bounds: int = 5):
    """Random invertible 3x3 integer matrix (rows), for transport tests."""
    while True:
        rows = tuple(
            tuple(rng.int_between(-bounds, bounds) for _ in range(3)) for _ in range(3)
        )
        det = (
            rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
        )
        if det != 0:
            return rows
