"""Menelaus' theorem the way Desargues wields it.

A sector figure is a tronc carrying three noeuds, each emitting a deployed
ray; the rays pairwise meet in the vertices a, b, c.  With all ratios
anchored at their noeud (the common-origin signed convention) the Menelaus
product is exactly 1, and the combinatorial decomposition of any brin ratio
into two ratios on the other rays is automatic: the missing vertex is
inserted, each factor anchored at the noeud whose ray carries its pair of
vertices.

``replay_ramee_proof`` and ``replay_quadrangle_proof`` machine-replay the
historical derivations step by step, evaluating every claimed identity
exactly and logging it with its Brouillon citation tag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from arguesia.exact_scalar import Rat, rat_str
from arguesia.involution import NodeCouples
from arguesia.projective_core import (
    INF,
    AffineChart,
    GeometryError,
    PLine,
    PPoint,
    collinear,
    default_chart,
    incident,
    join,
    meet,
    project_point,
)


class NonGenericError(GeometryError):
    """A required incidence or ratio is missing; the configuration is not
    generic for the requested replay."""


@dataclass(frozen=True)
class SectorFigure:
    """Tronc with three noeuds and three deployed rays (figure secteur)."""

    tronc: PLine
    nodes: tuple[PPoint, PPoint, PPoint]
    rays: tuple[PLine, PLine, PLine]

    def __post_init__(self):
        n1, n2, n3 = self.nodes
        if len({n1, n2, n3}) != 3:
            raise NonGenericError("noeuds must be pairwise distinct")
        for n, r in zip(self.nodes, self.rays):
            if r == self.tronc:
                raise NonGenericError("ray folded onto the tronc (not deployed)")
            if not incident(n, self.tronc) or not incident(n, r):
                raise NonGenericError("each noeud must lie on tronc and its ray")
        if len(set(self.rays)) != 3:
            raise NonGenericError("rays must be pairwise distinct")
        for v in self.vertices():
            if incident(v, self.tronc):
                raise NonGenericError("a vertex fell on the tronc")

    def vertices(self) -> tuple[PPoint, PPoint, PPoint]:
        """(a, b, c) = (r2^r3, r1^r3, r1^r2)."""
        r1, r2, r3 = self.rays
        return meet(r2, r3), meet(r1, r3), meet(r1, r2)

    @staticmethod
    def from_triangle(p: PPoint, q: PPoint, r: PPoint, transversal: PLine) -> "SectorFigure":
        """Sector figure of a triangle cut by a transversal line.

        The rays are the triangle's side lines; the noeuds are their
        intersections with the transversal (the tronc).
        """
        sides = (join(q, r), join(r, p), join(p, q))
        # label rays so that vertex a = r2^r3 etc. works out: node i on ray i
        r1, r2, r3 = sides[0], sides[1], sides[2]
        nodes = tuple(meet(s, transversal) for s in (r1, r2, r3))
        return SectorFigure(transversal, nodes, (r1, r2, r3))


@dataclass(frozen=True)
class Ratio:
    """Signed ratio origin->num_end : origin->den_end on one line."""

    origin: PPoint
    num_end: PPoint
    den_end: PPoint

    def __post_init__(self):
        if self.origin == self.den_end:
            raise NonGenericError("ratio with zero denominator segment")
        if not collinear(self.origin, self.den_end, self.num_end):
            raise NonGenericError("ratio of non-collinear points")

    def value(self) -> Rat:
        """Chart-independent signed value; requires finite points."""
        base = join(self.origin, self.den_end)
        chart = default_chart(base)
        ts = []
        for p in (self.origin, self.num_end, self.den_end):
            t = chart.coordinate(p)
            if t is INF:
                raise NonGenericError("ratio endpoint at infinity")
            ts.append(t)
        to, tn, td = ts
        return (tn - to) / (td - to)

    def inverse(self) -> "Ratio":
        if self.origin == self.num_end:
            raise NonGenericError("cannot invert a zero ratio")
        return Ratio(self.origin, self.den_end, self.num_end)


@dataclass(frozen=True)
class RatioChain:
    """Ordered product of ratios."""

    factors: tuple[Ratio, ...]

    def value(self) -> Rat:
        v = Fraction(1)
        for f in self.factors:
            v *= f.value()
        return v


@dataclass(frozen=True)
class ProofStep:
    label: str
    lhs: Rat
    rhs: Rat
    cite: str
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "lhs": rat_str(self.lhs),
            "rhs": rat_str(self.rhs),
            "equal": self.equal,
            "cite": self.cite,
            **({"meta": self.meta} if self.meta else {}),
        }


@dataclass
class ProofTrace:
    name: str
    steps: list[ProofStep] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return all(s.equal for s in self.steps)

    def add(self, label: str, lhs: Rat, rhs: Rat, cite: str, **meta) -> ProofStep:
        step = ProofStep(label, lhs, rhs, cite, dict(meta))
        self.steps.append(step)
        return step

    def menelaus_steps(self) -> list[ProofStep]:
        return [s for s in self.steps if s.meta.get("kind") == "menelaus"]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "steps": [s.to_json() for s in self.steps],
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# the theorem and its combinatorics


def menelaus_product(sf: SectorFigure) -> Rat:
    """Ratio(N1;b,c) * Ratio(N2;c,a) * Ratio(N3;a,b); always exactly 1."""
    n1, n2, n3 = sf.nodes
    a, b, c = sf.vertices()
    chain = RatioChain((Ratio(n1, b, c), Ratio(n2, c, a), Ratio(n3, a, b)))
    return chain.value()


@dataclass(frozen=True)
class DecompositionIdentity:
    lhs: Ratio
    rhs: RatioChain

    def lhs_value(self) -> Rat:
        return self.lhs.value()

    def rhs_value(self) -> Rat:
        return self.rhs.value()

    @property
    def equal(self) -> bool:
        return self.lhs_value() == self.rhs_value()


def decompose_ratio(sf: SectorFigure, exergue_node: int, inverted: bool = False) -> DecompositionIdentity:
    """Automatic decomposition of the brin ratio at one noeud (1, 2 or 3).

    For noeud N1 the identity reads  N1b/N1c = (N3b/N3a)(N2a/N2c): the
    missing vertex a is inserted, and each factor is anchored at the noeud
    whose ray carries its two vertices.  Other noeuds follow by cycling;
    the inverted form flips the ratio and both factors.
    """
    if exergue_node not in (1, 2, 3):
        raise ValueError("exergue_node must be 1, 2 or 3")
    n = sf.nodes
    a, b, c = sf.vertices()
    if exergue_node == 1:
        lhs = Ratio(n[0], b, c)
        factors = (Ratio(n[2], b, a), Ratio(n[1], a, c))
    elif exergue_node == 2:
        lhs = Ratio(n[1], c, a)
        factors = (Ratio(n[0], c, b), Ratio(n[2], b, a))
    else:
        lhs = Ratio(n[2], a, b)
        factors = (Ratio(n[1], a, c), Ratio(n[0], c, b))
    if inverted:
        lhs = lhs.inverse()
        factors = tuple(f.inverse() for f in reversed(factors))
    ident = DecompositionIdentity(lhs, RatioChain(factors))
    if not ident.equal:
        raise NonGenericError("decomposition identity failed to verify")
    return ident


# ---------------------------------------------------------------------------
# the ramee replay


def _finite_projection(center: PPoint, p: PPoint, target: PLine, what: str) -> PPoint:
    q = project_point(center, p, target)
    if q.is_at_infinity():
        raise NonGenericError(f"image {what} at infinity; configuration not generic")
    return q


def replay_ramee_proof(arbre: NodeCouples, k: PPoint, delta: AffineChart) -> ProofTrace:
    """Machine-replay of the ramee derivation: two series of four Menelaus
    applications through the intermediate line of the mixed couple (D, f),
    then the alpha aggregations and the conclusion.

    When the image line passes through D the trace degenerates to the
    single-series shortcut ending in the involution (D,f),(2,5),(3,4).
    """
    tronc = arbre.chart.line
    if incident(k, tronc) or incident(k, delta.line):
        raise NonGenericError("projection point lies on a carrier line")
    if k.is_at_infinity():
        raise NonGenericError(
            "projection point at infinity: Thales case, no Menelaus replay"
        )
    if tronc == delta.line:
        raise NonGenericError("image line equals the tronc")
    (B, H), (C, G), (D, F) = arbre.pairs
    if D.is_at_infinity() or F.is_at_infinity():
        raise NonGenericError("mixed couple (D, F) must be finite for the replay")

    if incident(D, delta.line):
        return _replay_ramee_shortcut(arbre, k, delta)

    img = {
        name: _finite_projection(k, p, delta.line, name.lower())
        for name, p in (("B", B), ("H", H), ("C", C), ("G", G), ("D", D), ("F", F))
    }
    b, h, c, g, d, f = (img[n] for n in "BHCGDF")
    if len({b, h, c, g, d, f}) != 6:
        raise NonGenericError("image points are not pairwise distinct")

    inter = join(D, f)
    if incident(k, inter):
        raise NonGenericError("projection point on the intermediate line")
    n2, n3, n4, n5 = (
        _finite_projection(k, p, inter, nm)
        for p, nm in ((B, "2"), (C, "3"), (G, "4"), (H, "5"))
    )

    trace = ProofTrace("ramee")
    trace.notes["images"] = {
        nm: delta.coordinate(pt) for nm, pt in zip("bhcgdf", (b, h, c, g, d, f))
    }
    trace.notes["shortcut"] = False

    kd_over_kD = Ratio(k, d, D)
    first = {}
    for x_pt, n_pt, xn, nn, cite in (
        (g, n4, "g", "4", "p.11 l.38"),
        (c, n3, "c", "3", "p.11 l.40"),
        (b, n2, "b", "2", "p.11 l.42"),
        (h, n5, "h", "5", "p.11 l.44"),
    ):
        lhs = Ratio(x_pt, d, f)
        rhs = RatioChain((kd_over_kD, Ratio(n_pt, D, f)))
        first[nn] = (lhs.value(), Ratio(n_pt, D, f).value())
        trace.add(
            f"{xn}d/{xn}f = (Kd/KD)({nn}D/{nn}f)",
            lhs.value(),
            rhs.value(),
            cite,
            kind="menelaus",
            series=1,
            tronc=f"{xn}K{nn}",
        )

    kF_over_kf = Ratio(k, F, f)
    for n_pt, x_pt, nn, xn, cite in (
        (n4, G, "4", "G", "p.11 l.45"),
        (n3, C, "3", "C", "p.11 l.47"),
        (n2, B, "2", "B", "p.11 l.49"),
        (n5, H, "5", "H", "p.11 l.51"),
    ):
        lhs = Ratio(n_pt, D, f)
        rhs = RatioChain((Ratio(x_pt, D, F), kF_over_kf))
        trace.add(
            f"{nn}D/{nn}f = ({xn}D/{xn}F)(KF/Kf)",
            lhs.value(),
            rhs.value(),
            cite,
            kind="menelaus",
            series=2,
            tronc=f"{nn}K{xn}",
        )

    alpha = (kd_over_kD.value() ** 2) * (kF_over_kf.value() ** 2)
    trace.notes["alpha"] = rat_str(alpha)

    lhs_gc = Ratio(g, d, f).value() * Ratio(c, d, f).value()
    rhs_gc = alpha * Ratio(G, D, F).value() * Ratio(C, D, F).value()
    trace.add(
        "dg.dc/(fg.fc) = a.DG.DC/(FG.FC)",
        lhs_gc,
        rhs_gc,
        "p.12 l.11",
        kind="aggregation",
    )
    lhs_bh = Ratio(b, d, f).value() * Ratio(h, d, f).value()
    rhs_bh = alpha * Ratio(B, D, F).value() * Ratio(H, D, F).value()
    trace.add(
        "db.dh/(fb.fh) = a.DB.DH/(FB.FH)",
        lhs_bh,
        rhs_bh,
        "p.12 l.7",
        kind="aggregation",
    )
    trace.add(
        "dg.dc/(fg.fc) = db.dh/(fb.fh)",
        lhs_gc,
        lhs_bh,
        "p.12 l.26",
        kind="conclusion",
        couples="df, cg, bh",
    )
    return trace


def _replay_ramee_shortcut(arbre: NodeCouples, k: PPoint, delta: AffineChart) -> ProofTrace:
    """Projection onto a line through D: one series of four suffices and the
    image couples are (D, f), (2, 5), (3, 4)."""
    (B, H), (C, G), (D, F) = arbre.pairs
    f = _finite_projection(k, F, delta.line, "f")
    n2, n3, n4, n5 = (
        _finite_projection(k, p, delta.line, nm)
        for p, nm in ((B, "2"), (C, "3"), (G, "4"), (H, "5"))
    )
    if len({D, f, n2, n3, n4, n5}) != 6:
        raise NonGenericError("image points are not pairwise distinct")

    trace = ProofTrace("ramee")
    trace.notes["shortcut"] = True
    trace.notes["images"] = {
        nm: delta.coordinate(pt)
        for nm, pt in (("D", D), ("f", f), ("2", n2), ("3", n3), ("4", n4), ("5", n5))
    }

    kF_over_kf = Ratio(k, F, f)
    for n_pt, x_pt, nn, xn, cite in (
        (n4, G, "4", "G", "p.11 l.45"),
        (n3, C, "3", "C", "p.11 l.47"),
        (n2, B, "2", "B", "p.11 l.49"),
        (n5, H, "5", "H", "p.11 l.51"),
    ):
        lhs = Ratio(n_pt, D, f)
        rhs = RatioChain((Ratio(x_pt, D, F), kF_over_kf))
        trace.add(
            f"{nn}D/{nn}f = ({xn}D/{xn}F)(KF/Kf)",
            lhs.value(),
            rhs.value(),
            cite,
            kind="menelaus",
            series=1,
            tronc=f"{nn}K{xn}",
        )

    beta = kF_over_kf.value() ** 2
    lhs_25 = Ratio(n2, D, f).value() * Ratio(n5, D, f).value()
    rhs_25 = beta * Ratio(B, D, F).value() * Ratio(H, D, F).value()
    trace.add(
        "D2.D5/(f2.f5) = (KF/Kf)^2.DB.DH/(FB.FH)",
        lhs_25,
        rhs_25,
        "p.12 l.7",
        kind="aggregation",
    )
    lhs_34 = Ratio(n3, D, f).value() * Ratio(n4, D, f).value()
    rhs_34 = beta * Ratio(C, D, F).value() * Ratio(G, D, F).value()
    trace.add(
        "D3.D4/(f3.f4) = (KF/Kf)^2.DC.DG/(FC.FG)",
        lhs_34,
        rhs_34,
        "p.12 l.11",
        kind="aggregation",
    )
    trace.add(
        "D2.D5/(f2.f5) = D3.D4/(f3.f4)",
        lhs_25,
        lhs_34,
        "p.12 l.26",
        kind="conclusion",
        couples="Df, 25, 34",
    )
    return trace


# ---------------------------------------------------------------------------
# the quadrangle replay


def replay_quadrangle_proof(q) -> ProofTrace:
    """Four Menelaus applications with pivot F, then the two aggregations.

    ``q`` must expose bornes B, C, D, E, the diagonal point F = BE^DC and
    the transversal intersections I, K, P, Q, G, H (see QuadrangleConfig).
    """
    B, C, D, E = q.bornes
    F = q.pivot
    I, K, P, Q, G, H = q.I, q.K, q.P, q.Q, q.G, q.H

    trace = ProofTrace("quadrangle")
    factors = {}
    for X, alpha, beta, xn, an, bn, cite in (
        (I, C, B, "I", "C", "B", "p.17 l.7"),
        (K, D, E, "K", "D", "E", "p.17 l.9"),
        (G, D, B, "G", "D", "B", "p.17 l.16"),
        (H, C, E, "H", "C", "E", "p.17 l.18"),
    ):
        lhs = Ratio(X, Q, P)
        ra = Ratio(alpha, Q, F)
        rb = Ratio(beta, F, P)
        factors[xn] = lhs.value()
        trace.add(
            f"{xn}Q/{xn}P = ({an}Q/{an}F)({bn}F/{bn}P)",
            lhs.value(),
            RatioChain((ra, rb)).value(),
            cite,
            kind="menelaus",
            X=xn,
            couple=(an, bn),
        )

    common = (
        Ratio(C, Q, F).value()
        * Ratio(B, F, P).value()
        * Ratio(D, Q, F).value()
        * Ratio(E, F, P).value()
    )
    trace.add(
        "QI.QK/(PI.PK) = (CQ/CF)(BF/BP)(DQ/DF)(EF/EP)",
        factors["I"] * factors["K"],
        common,
        "p.17 l.11",
        kind="aggregation",
    )
    trace.add(
        "QG.QH/(PG.PH) = (CQ/CF)(BF/BP)(DQ/DF)(EF/EP)",
        factors["G"] * factors["H"],
        common,
        "p.17 l.20",
        kind="aggregation",
    )
    return trace
