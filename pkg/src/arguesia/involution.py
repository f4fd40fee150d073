"""Desargues' involution on a line, in both historical and modern form.

Historical form: three couples of points (B,H), (C,G), (D,F) on a tronc
satisfy the three rectangle-product identities

    GF.GD/(CF.CD) = GB.GH/(CB.CH)
    FC.FG/(DC.DG) = FB.FH/(DB.DH)
    HC.HG/(BC.BG) = HD.HF/(BD.BF)

evaluated here with signed chart differences (each side is sign-invariant).
Modern form: the couples are swapped by an involutive homography of the
line, which a trace-zero 2x2 matrix realizes.  ``equivalence_check``
asserts that the two characterizations agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from arguesia._kernel import mat2_mul
from arguesia.exact_scalar import QuadExt, Rat, quad_sqrt, rat_str
from arguesia.projective_core import (
    INF,
    AffineChart,
    GeometryError,
    LineMap,
    PPoint,
    cross_ratio_pairs,
    incident,
    param_str,
)


class InvolutionError(GeometryError):
    """Data does not determine (or violates) an involution."""


@dataclass(frozen=True)
class NodeCouples:
    """Three couples of noeuds on one charted tronc.

    A couple may be doubled (both members equal: a noeud moyen double), but
    the three couples must be pairwise distinct as unordered pairs and no
    point of one couple may equal a point of a different couple.
    """

    chart: AffineChart
    pairs: tuple[tuple[PPoint, PPoint], ...]

    def __post_init__(self):
        if len(self.pairs) != 3:
            raise InvolutionError("exactly three couples are required")
        for p, q in self.pairs:
            if not (incident(p, self.chart.line) and incident(q, self.chart.line)):
                raise InvolutionError("all noeuds must lie on the tronc")
        unordered = [frozenset((p, q)) for p, q in self.pairs]
        if len(set(unordered)) != 3:
            raise InvolutionError("couples must be pairwise distinct")
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                for pt in self.pairs[i]:
                    if pt in self.pairs[j]:
                        raise InvolutionError(
                            "a point of one couple equals a point of another"
                        )

    def params(self):
        """Chart parameters of the six points, couple by couple."""
        return [
            (self.chart.coordinate(p), self.chart.coordinate(q))
            for p, q in self.pairs
        ]

    def param_pairs(self):
        return [
            (self.chart.param_pair(p), self.chart.param_pair(q))
            for p, q in self.pairs
        ]


@dataclass(frozen=True)
class Involution:
    """An involutive homography of a line (trace zero, non-identity)."""

    map: LineMap

    def __post_init__(self):
        m = self.map
        if m.src != m.dst:
            raise InvolutionError("an involution maps a line to itself")
        if m.trace() != 0:
            raise InvolutionError("matrix is not involutive (nonzero trace)")
        if m.det() == 0:
            raise InvolutionError("degenerate matrix")

    @property
    def chart(self) -> AffineChart:
        return self.map.src

    def discriminant(self) -> Rat:
        """-det of the trace-zero matrix; sign classifies the involution."""
        return Fraction(-self.map.det())

    def __repr__(self):
        return f"Involution{self.map.matrix}"


def partner(inv: Involution, p: PPoint) -> PPoint:
    """The couple partner of p; exact involution (partner(partner(p)) = p)."""
    if not incident(p, inv.chart.line):
        raise InvolutionError("point off the involution's line")
    return inv.map.apply_point(p)


def partner_param(inv: Involution, t):
    return inv.map.apply_param(t)


def involution_from_pairs(p1, p2, chart: AffineChart) -> Involution:
    """The unique involution swapping two couples of chart points.

    Couples are (PPoint, PPoint) pairs on the chart's line.  Rejected: equal
    unordered couples, cross-coincidences, and two doubled couples (fixed
    points only), which the contract treats as under-determined.
    """
    for a, b in (p1, p2):
        if not (incident(a, chart.line) and incident(b, chart.line)):
            raise InvolutionError("couple points must lie on the chart line")
    if frozenset(p1) == frozenset(p2):
        raise InvolutionError("coincident couples cannot determine an involution")
    if set(p1) & set(p2):
        raise InvolutionError("cross-coincident couples")
    if p1[0] == p1[1] and p2[0] == p2[1]:
        raise InvolutionError(
            "two doubled couples: under-determined without a third datum"
        )
    rows = []
    for a, b in (p1, p2):
        (u1, v1), (u2, v2) = chart.param_pair(a), chart.param_pair(b)
        rows.append((u1 * v2 + v1 * u2, v1 * v2, -u1 * u2))
    r, s = rows
    sol = (
        r[1] * s[2] - r[2] * s[1],
        r[2] * s[0] - r[0] * s[2],
        r[0] * s[1] - r[1] * s[0],
    )
    if sol == (0, 0, 0):
        raise InvolutionError("couples do not determine a unique involution")
    a, b, c = sol
    matrix = (a, b, c, -a)
    if a * (-a) - b * c == 0:
        raise InvolutionError("data admits only a degenerate involutive matrix")
    return Involution(LineMap(matrix, chart, chart))


# ---------------------------------------------------------------------------
# the rectangle identities


_IDENTITY_SCHEMES = (
    # (eval couple index, lhs couple index, rhs couple index)
    # identity 1: at G and C, products over (D,F) vs (B,H)
    (1, 2, 0),
    # identity 2: at F and D, products over (C,G) vs (B,H)
    (2, 1, 0),
    # identity 3: at H and B, products over (C,G) vs (D,F)
    (0, 1, 2),
)


def _rect_side(e1, e2, w1, w2):
    """(e1-w1)(e1-w2) / ((e2-w1)(e2-w2)) over chart parameters."""
    num = (w1 - e1) * (w2 - e1)
    den = (w1 - e2) * (w2 - e2)
    if den == 0:
        raise InvolutionError("zero denominator in rectangle identity")
    return num / den


def rectangle_identity_check(nc: NodeCouples) -> tuple[bool, list[dict]]:
    """Evaluate the three rectangle-product identities exactly.

    Returns (all_equal, report); the report lists each identity with both
    sides as canonical rationals.  Requires finite noeuds (a couple with a
    point at infinity is checked through the homography form instead).
    """
    params = nc.params()
    for p, q in params:
        if p is INF or q is INF:
            raise InvolutionError(
                "rectangle identities need finite noeuds; use the homography form"
            )
    labels = (
        "GF.GD/(CF.CD) = GB.GH/(CB.CH)",
        "FC.FG/(DC.DG) = FB.FH/(DB.DH)",
        "HC.HG/(BC.BG) = HD.HF/(BD.BF)",
    )
    report = []
    ok = True
    for (ev, lhs_c, rhs_c), label in zip(_IDENTITY_SCHEMES, labels):
        e2, e1 = params[ev]  # evaluate at the second member first (G before C)
        l1, l2 = params[lhs_c]
        r1, r2 = params[rhs_c]
        lhs = _rect_side(e1, e2, l1, l2)
        rhs = _rect_side(e1, e2, r1, r2)
        report.append(
            {
                "label": label,
                "lhs": rat_str(lhs),
                "rhs": rat_str(rhs),
                "equal": lhs == rhs,
            }
        )
        ok = ok and lhs == rhs
    return ok, report


def arrangement(nc: NodeCouples) -> str:
    """Classify the couple arrangement: "meles", "demeles" or "mixed".

    Two couples interleave when each separates the other on the projective
    line, i.e. the cross-ratio [a,a';b,b'] is negative; for finite couples
    this is the usual interval test (exactly one endpoint of one couple
    strictly inside the other).  A couple containing the point at infinity
    is handled by the same projective criterion.
    """
    pairs = nc.param_pairs()
    interleaved = []
    for i in range(3):
        for j in range(i + 1, 3):
            (a1, a2), (b1, b2) = pairs[i], pairs[j]
            cr = cross_ratio_pairs(a1, a2, b1, b2)
            if cr is INF or cr == 0:
                raise InvolutionError("ambiguous arrangement: coincident points")
            interleaved.append(cr < 0)
    if all(interleaved):
        return "meles"
    if not any(interleaved):
        return "demeles"
    return "mixed"


def classify_kind(inv: Involution) -> str:
    """Hyperbolic or elliptic by the discriminant sign alone.

    Avoids the square-root extraction, so it stays cheap for involutions
    whose matrices carry large composed coefficients.
    """
    a, b, c, d = inv.map.matrix
    disc = a * a + b * c
    if disc == 0:
        raise InvolutionError("zero discriminant: degenerate (parabolic) map")
    return "hyperbolic" if disc > 0 else "elliptic"


def classify(inv: Involution) -> dict:
    """Hyperbolic (two exact fixed points) or elliptic (none).

    Fixed points solve m10*t^2 + (m11 - m00)*t - m01 = 0; with a trace-zero
    matrix ((a,b),(c,-a)) the discriminant is a^2 + bc = -det, so the sign
    of -det decides the class.  Zero discriminant contradicts the
    Involution invariant and is rejected.
    """
    a, b, c, d = inv.map.matrix
    disc = Fraction(a * a + b * c)
    if disc == 0:
        raise InvolutionError("zero discriminant: degenerate (parabolic) map")
    if disc < 0:
        return {"kind": "elliptic", "fixed_points": (), "discriminant": disc}
    root = quad_sqrt(disc)
    if c != 0:
        f1 = (a + root) / c
        f2 = (a - root) / c
        fixed = (f1, f2)
    else:
        fixed = (Fraction(-b, 2 * a), INF)
    return {"kind": "hyperbolic", "fixed_points": fixed, "discriminant": disc}


def is_fixed_param(inv: Involution, t) -> bool:
    return partner_param(inv, t) == t if t is not INF else partner_param(inv, t) is INF


def equivalence_check(nc: NodeCouples) -> dict:
    """Desargues' equivalence: rectangle identities <-> involutive homography.

    Builds the involution from two couples (preferring non-doubled ones) and
    checks it swaps the third; also evaluates the rectangle identities when
    all noeuds are finite and asserts the two verdicts agree.
    """
    doubled = sum(1 for p, q in nc.pairs if p == q)
    if doubled >= 3:
        raise InvolutionError("three doubled couples cannot be in involution")
    idx = sorted(range(3), key=lambda i: nc.pairs[i][0] == nc.pairs[i][1])
    c1, c2, c3 = (nc.pairs[i] for i in idx)
    homographic = True
    try:
        inv = involution_from_pairs(c1, c2, nc.chart)
    except InvolutionError:
        homographic = False
        inv = None
    if inv is not None:
        d, f = c3
        if d == f:
            homographic = is_fixed_param(inv, nc.chart.coordinate(d))
        else:
            homographic = partner(inv, d) == f
    rectangles = None
    report = []
    if all(not p.is_at_infinity() and not q.is_at_infinity() for p, q in nc.pairs):
        rectangles, report = rectangle_identity_check(nc)
        if rectangles != homographic:
            raise InvolutionError(
                "rectangle identities and homography check disagree "
                f"(rectangles={rectangles}, homography={homographic})"
            )
    return {
        "equivalent": homographic,
        "rectangle_identities": rectangles,
        "identities": report,
        "involution": inv,
    }


def involution_json(inv: Involution, with_fixed_points: bool = False) -> dict:
    """Serializable involution summary.

    Fixed points need a square-root extraction, so they are included only
    on request (QuadExt values go out as {a, b, d} dicts).
    """
    a, b, c, d = inv.map.matrix
    out = {
        "matrix": [str(a), str(b), str(c), str(d)],
        "kind": classify_kind(inv),
        "souche": param_str(partner_param(inv, INF)),
    }
    if with_fixed_points:
        out["fixed_points"] = [
            t.to_json() if isinstance(t, QuadExt) else param_str(t)
            for t in classify(inv)["fixed_points"]
        ]
    return out
