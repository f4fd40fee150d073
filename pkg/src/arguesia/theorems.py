"""End-to-end verifiers for each theorem, special case and replayed proof.

Every operation returns a TheoremReport: the echoed inputs, a list of
claims with both sides evaluated exactly, an overall verdict, and an
optional step-by-step ProofTrace.  Verification never rounds; a claim is
either exactly true or the report says it is not.

Metric claims (midpoints, perpendicularity, bisectors, power of a point)
live in the standard euclidean chart z = 1 and are flagged by their
labels; everything else is projective.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from arguesia.exact_scalar import QuadExt, Rat, rat_str, scalar_str
from arguesia.conics import (
    Conic,
    ConicError,
    ConicParametrization,
    Pencil,
    conic_line_intersection,
    pencil_member,
    second_intersection,
)
from arguesia.involution import (
    Involution,
    InvolutionError,
    NodeCouples,
    classify,
    classify_kind,
    equivalence_check,
    involution_from_pairs,
    involution_json,
    partner,
    partner_param,
    rectangle_identity_check,
)
from arguesia.menelaus_engine import (
    NonGenericError,
    ProofTrace,
    Ratio,
    replay_quadrangle_proof,
    replay_ramee_proof,
)
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
    default_chart,
    directions_parallel,
    displacement,
    dot2,
    harmonic_partner_param,
    incident,
    infinity_point_of,
    join,
    meet,
    midpoint,
    parallel_line_through,
    parallel_ratio,
    param_str,
    perspective_map,
    plane_basis,
    plane_to_p2,
    p2_to_plane,
    project_point,
    reflect_direction,
)


def _show(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is INF:
        return "inf"
    if isinstance(v, (Fraction, int)):
        return rat_str(Fraction(v))
    if isinstance(v, QuadExt):
        return scalar_str(v)
    if isinstance(v, PPoint):
        return repr(v)
    return str(v)


@dataclass
class TheoremReport:
    name: str
    inputs: dict = field(default_factory=dict)
    claims: list = field(default_factory=list)
    trace: ProofTrace | None = None
    notes: dict = field(default_factory=dict)

    def claim(self, label: str, lhs, rhs) -> bool:
        equal = lhs == rhs or (lhs is INF and rhs is INF)
        self.claims.append(
            {"label": label, "lhs": _show(lhs), "rhs": _show(rhs), "equal": equal}
        )
        return equal

    def claim_true(self, label: str, value: bool) -> bool:
        return self.claim(label, value, True)

    @property
    def verdict(self) -> bool:
        ok = all(c["equal"] for c in self.claims)
        if self.trace is not None:
            ok = ok and self.trace.verdict
        return ok

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "inputs": self.inputs,
            "claims": self.claims,
            "verdict": self.verdict,
        }
        if self.notes:
            out["notes"] = self.notes
        if self.trace is not None:
            out["trace"] = self.trace.to_json()
        return out


# ---------------------------------------------------------------------------
# quadrangle configuration


@dataclass(frozen=True)
class QuadrangleConfig:
    """Complete quadrangle B, C, D, E with a generic transversal.

    Bornales come in the three opposite couples (BC, ED), (BE, DC),
    (BD, CE), meeting in the diagonal points N, F, R; the transversal cuts
    them in the couples (I, K), (P, Q), (G, H).  Generic means: no three
    bornes collinear, the transversal is parallel to no bornale and avoids
    the bornes and diagonal points.
    """

    bornes: tuple[PPoint, PPoint, PPoint, PPoint]
    transversal: AffineChart
    strict: bool = True

    def __post_init__(self):
        b, c, d, e = self.bornes
        if len(set(self.bornes)) != 4:
            raise NonGenericError("bornes must be distinct")
        for skip in range(4):
            rest = [p for i, p in enumerate(self.bornes) if i != skip]
            if collinear(*rest):
                raise NonGenericError("three bornes are collinear")
        delta = self.transversal.line
        for name, line in self.bornales().items():
            if line == delta:
                raise NonGenericError(f"transversal equals bornale {name}")
            if self.strict and meet(delta, line).is_at_infinity():
                raise NonGenericError(f"transversal parallel to bornale {name}")
        for p in self.bornes + tuple(self.diagonal_points().values()):
            if incident(p, delta):
                raise NonGenericError("transversal through a special point")

    def bornales(self) -> dict[str, PLine]:
        b, c, d, e = self.bornes
        return {
            "BC": join(b, c),
            "ED": join(e, d),
            "BE": join(b, e),
            "DC": join(d, c),
            "BD": join(b, d),
            "CE": join(c, e),
        }

    def diagonal_points(self) -> dict[str, PPoint]:
        ln = self.bornales()
        return {
            "N": meet(ln["BC"], ln["ED"]),
            "F": meet(ln["BE"], ln["DC"]),
            "R": meet(ln["BD"], ln["CE"]),
        }

    @property
    def pivot(self) -> PPoint:
        return self.diagonal_points()["F"]

    def _cut(self, name: str) -> PPoint:
        return meet(self.transversal.line, self.bornales()[name])

    @property
    def I(self) -> PPoint:
        return self._cut("BC")

    @property
    def K(self) -> PPoint:
        return self._cut("ED")

    @property
    def P(self) -> PPoint:
        return self._cut("BE")

    @property
    def Q(self) -> PPoint:
        return self._cut("DC")

    @property
    def G(self) -> PPoint:
        return self._cut("BD")

    @property
    def H(self) -> PPoint:
        return self._cut("CE")

    def couples(self):
        return ((self.I, self.K), (self.P, self.Q), (self.G, self.H))

    def node_couples(self) -> NodeCouples:
        return NodeCouples(self.transversal, self.couples())

    def to_json(self) -> dict:
        return {
            "bornes": [p.to_json() for p in self.bornes],
            "transversal": self.transversal.to_json(),
        }


# ---------------------------------------------------------------------------
# the ramee theorem


def verify_ramee(nc: NodeCouples, k: PPoint, delta: AffineChart) -> TheoremReport:
    """Project the six noeuds from K and verify the images stay in involution.

    Claims: the image couples pass both the rectangle-identity and the
    homography checks; the hyperbolic/elliptic class is preserved; each
    fixed point maps exactly to a fixed point.  An image couple containing
    the point at infinity is checked through its souche instead of the
    rectangle form.  Finite K in generic position also attaches the full
    Menelaus replay trace.
    """
    tronc = nc.chart.line
    if incident(k, tronc) or incident(k, delta.line):
        raise GeometryError("projection point lies on a carrier line")
    if tronc == delta.line:
        raise GeometryError("image line equals the tronc")

    report = TheoremReport(
        "ramee",
        inputs={
            "couples": [[p.to_json(), q.to_json()] for p, q in nc.pairs],
            "k": k.to_json(),
            "delta": delta.to_json(),
        },
    )
    report.notes["k_at_infinity"] = k.is_at_infinity()

    pi = perspective_map(k, nc.chart, delta)
    image_pairs = tuple(
        (pi.apply_point(p), pi.apply_point(q)) for p, q in nc.pairs
    )
    source_inv = nc_involution(nc)
    phi_conjugate = Involution(pi.compose(source_inv.map).compose(pi.inverse()))

    all_finite = all(
        not p.is_at_infinity() and not q.is_at_infinity() for p, q in image_pairs
    )
    if all_finite:
        image_nc = NodeCouples(delta, image_pairs)
        eq = equivalence_check(image_nc)
        for ident in eq["identities"]:
            report.claims.append(
                {
                    "label": "image " + ident["label"],
                    "lhs": ident["lhs"],
                    "rhs": ident["rhs"],
                    "equal": ident["equal"],
                }
            )
        report.claim_true("image couples in involution (homography)", eq["equivalent"])
        if eq["involution"] is not None:
            report.claim(
                "conjugate involution equals image involution",
                phi_conjugate.map.matrix,
                eq["involution"].map.matrix,
            )
    else:
        # souche characterization replaces the rectangle form
        for (p, q), name in zip(image_pairs, ("bh", "cg", "df")):
            if p.is_at_infinity() or q.is_at_infinity():
                fin = q if p.is_at_infinity() else p
                souche = phi_conjugate.map.apply_param(INF)
                report.claim(
                    f"souche pairing for image couple {name}",
                    souche,
                    delta.coordinate(fin),
                )
            else:
                report.claim(
                    f"image couple {name} swapped by conjugate involution",
                    partner(phi_conjugate, p),
                    q,
                )

    src_cls = classify(source_inv)
    report.claim(
        "classification preserved", src_cls["kind"], classify_kind(phi_conjugate)
    )
    for t in src_cls["fixed_points"]:
        t_img = pi.apply_param(t)
        report.claim(
            f"fixed point {param_str(t)} transported to a fixed point",
            partner_param(phi_conjugate, t_img),
            t_img,
        )

    if not k.is_at_infinity():
        try:
            report.trace = replay_ramee_proof(nc, k, delta)
        except NonGenericError as exc:
            report.notes["replay_skipped"] = str(exc)
    else:
        report.notes["replay_skipped"] = "Thales case: parallel rameaux"
    return report


def nc_involution(nc: NodeCouples) -> Involution:
    """The involution determined by a NodeCouples (must be consistent)."""
    eq = equivalence_check(nc)
    if not eq["equivalent"] or eq["involution"] is None:
        raise InvolutionError("couples are not in involution")
    return eq["involution"]


# ---------------------------------------------------------------------------
# harmonic conjugates and the four-point special cases


def harmonic_conjugate(b: PPoint, c: PPoint, d: PPoint) -> PPoint:
    """The point F with cross-ratio [B,C;D,F] = -1, computed two ways.

    Closed form from the cross-ratio equation, and the ruler construction:
    a secant through D carrying two points with D as midpoint, their joins
    to B and C meeting in K, then F on BC along the parallel to the secant
    through K.  Both must agree exactly; D at the midpoint of BC yields the
    point at infinity, which is a result, not an error.
    """
    if len({b, c, d}) != 3:
        raise GeometryError("harmonic conjugate needs three distinct points")
    if not collinear(b, c, d):
        raise GeometryError("harmonic conjugate needs collinear points")
    base = join(b, c)
    chart = default_chart(base)
    t = harmonic_partner_param(
        chart.coordinate(b), chart.coordinate(c), chart.coordinate(d)
    )
    f_closed = chart.point_at(t)
    f_built = _harmonic_by_construction(b, c, d, base)
    if f_built is not None and f_built != f_closed:
        raise GeometryError("harmonic constructions disagree")
    return f_closed


def harmonic_construction_data(b: PPoint, c: PPoint, d: PPoint):
    """The ruler construction of the harmonic conjugate, with its pieces.

    Returns {secant, lo, hi, k, f} for a deterministic secant through D
    carrying two points with D as midpoint, or None when no listed secant
    direction works (never for finite inputs in practice).
    """
    if b.is_at_infinity() or c.is_at_infinity() or d.is_at_infinity():
        return None
    base = join(b, c)
    for direction in ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2)):
        dir_pt = PPoint(direction[0], direction[1], 0)
        if incident(dir_pt, base):
            continue
        secant = join(d, dir_pt)
        lo = PPoint(d.x + direction[0] * d.z, d.y + direction[1] * d.z, d.z)
        hi = PPoint(d.x - direction[0] * d.z, d.y - direction[1] * d.z, d.z)
        if lo in (b, c) or hi in (b, c):
            continue
        try:
            k = meet(join(lo, b), join(hi, c))
            f = meet(base, parallel_line_through(secant, k))
        except GeometryError:
            continue
        return {"secant": secant, "lo": lo, "hi": hi, "k": k, "f": f}
    return None


def _harmonic_by_construction(b: PPoint, c: PPoint, d: PPoint, base: PLine):
    data = harmonic_construction_data(b, c, d)
    return None if data is None else data["f"]


def verify_midpoint_case(b: PPoint, c: PPoint, d: PPoint, f: PPoint, k: PPoint) -> TheoremReport:
    """Four-point involution B=H, C=G, D, F projected onto the line through
    C parallel to the rameau DK: the image f must be the exact midpoint of
    cb, the composed ratio (BC/BD)(FD/FC) must be the raison double 2, and
    conversely the midpoint property must force d to infinity.
    """
    base = join(b, c)
    if not (incident(d, base) and incident(f, base)):
        raise GeometryError("the four points must be collinear")
    if cross_ratio(b, c, d, f) != -1:
        raise GeometryError("input points are not harmonic")
    if incident(k, base):
        raise GeometryError("projection point on the tronc")
    for p in (b, c, d, f):
        if p.is_at_infinity():
            raise GeometryError("finite harmonic points required here")

    report = TheoremReport(
        "midpoint_case",
        inputs={p_name: p.to_json() for p_name, p in zip("BCDF", (b, c, d, f))}
        | {"K": k.to_json()},
    )

    rameau = join(d, k)
    image_line = parallel_line_through(rameau, c)
    c_img = project_point(k, c, image_line)
    b_img = project_point(k, b, image_line)
    f_img = project_point(k, f, image_line)
    d_img = project_point(k, d, image_line)
    report.claim("projection fixes c on the image line", c_img, c)
    report.claim("f is the midpoint of cb (metric)", f_img, midpoint(c_img, b_img))
    report.claim(
        "composed ratio (BC/BD)(FD/FC) is the raison double",
        Ratio(b, c, d).value() * Ratio(f, d, c).value(),
        Fraction(2),
    )
    report.claim_true("d at infinity (image line parallel to DK)", d_img.is_at_infinity())

    # converse on a control line through C not parallel to DK: the image
    # quadruple stays harmonic, so f' is the midpoint exactly when d' is
    # at infinity; on a non-parallel line both must fail together
    control = _control_line(c, k, rameau, base)
    cb2 = project_point(k, b, control)
    cf2 = project_point(k, f, control)
    cd2 = project_point(k, d, control)
    report.claim(
        "harmonic transported to the control line",
        cross_ratio(cb2, c, cd2, cf2),
        Fraction(-1),
    )
    mid_holds = (not cb2.is_at_infinity()) and cf2 == midpoint(c, cb2)
    report.claim(
        "converse: midpoint property iff image of D at infinity (control line)",
        mid_holds,
        cd2.is_at_infinity(),
    )
    return report


def _control_line(c: PPoint, k: PPoint, rameau: PLine, base: PLine) -> PLine:
    for direction in ((1, 0), (0, 1), (1, 1), (1, -1), (2, 1)):
        dir_pt = PPoint(direction[0], direction[1], 0)
        cand = join(c, dir_pt)
        if cand in (base, rameau):
            continue
        if incident(k, cand) or incident(dir_pt, rameau):
            continue
        return cand
    raise GeometryError("no control line found")


def verify_bisector_case(b: PPoint, c: PPoint, d: PPoint, f: PPoint, k: PPoint) -> TheoremReport:
    """Perpendicular correspondent rameaux are the two bisectors (metric).

    With B=H, C=G doubled and (B,C;D,F) harmonic: if KB is perpendicular to
    KC then reflecting the direction KD across KC (and across KB) yields
    the direction KF exactly; conversely a bisecting KG is perpendicular to
    KB.  Non-perpendicular K is reported false, not rejected.
    """
    base = join(b, c)
    if not (incident(d, base) and incident(f, base)):
        raise GeometryError("the four points must be collinear")
    if cross_ratio(b, c, d, f) != -1:
        raise GeometryError("input points are not harmonic")
    if incident(k, base):
        raise GeometryError("projection point on the tronc")
    for p in (b, c, d, f, k):
        if p.is_at_infinity():
            raise GeometryError("metric case needs finite points")

    report = TheoremReport(
        "bisector_case",
        inputs={p_name: p.to_json() for p_name, p in zip("BCDF", (b, c, d, f))}
        | {"K": k.to_json()},
    )
    kb = displacement(k, b)
    kc = displacement(k, c)
    kd = displacement(k, d)
    kf = displacement(k, f)
    perp = dot2(kb, kc) == 0
    report.claim("KB perpendicular KC (metric)", dot2(kb, kc), Fraction(0))
    bisects_c = directions_parallel(reflect_direction(kc, kd), kf)
    bisects_b = directions_parallel(reflect_direction(kb, kd), kf)
    report.claim_true("reflection across KC maps line KD to line KF", bisects_c)
    report.claim_true("reflection across KB maps line KD to line KF", bisects_b)
    report.claim("converse: KG bisects DKF iff KG perpendicular KB", bisects_c, perp)
    return report


def construct_involution_p13(b: PPoint, h: PPoint, g: PPoint, k: PPoint) -> TheoremReport:
    """The page-13 construction: h on BK, f the midpoint of Gh, F on Kf^BG
    and D on the parallel to Gh through K; then B, D, G, F are four points
    in involution (B and G doubled), i.e. [B,G;D,F] = -1.
    """
    if b == k:
        raise GeometryError("B and K must differ")
    bk = join(b, k)
    if not incident(h, bk):
        raise GeometryError("h must lie on the line BK")
    if h in (b, k):
        raise GeometryError("h must differ from B and K")
    if incident(g, bk):
        raise GeometryError("G on line BK: degenerate")
    for p in (b, h, g, k):
        if p.is_at_infinity():
            raise GeometryError("finite input points required")

    report = TheoremReport(
        "p13_construction",
        inputs={"B": b.to_json(), "h": h.to_json(), "G": g.to_json(), "K": k.to_json()},
    )
    f_mid = midpoint(g, h)
    gh = join(g, h)
    bg = join(b, g)
    big_f = meet(join(k, f_mid), bg)
    big_d = meet(parallel_line_through(gh, k), bg)
    report.notes["F"] = big_f.to_json()
    report.notes["D"] = big_d.to_json()
    report.claim(
        "secant harmonic: [G,h; f, inf] = -1",
        cross_ratio(g, h, f_mid, infinity_point_of(gh)),
        Fraction(-1),
    )
    report.claim(
        "four points in involution: [B,G;D,F] = -1",
        cross_ratio(b, g, big_d, big_f),
        Fraction(-1),
    )
    return report


# ---------------------------------------------------------------------------
# the quadrangle involution theorem


def quadrangle_involution(q: QuadrangleConfig):
    """The three transversal couples are in involution; returns the
    involution (built from two couples) plus a report carrying the
    rectangle identities and the pivot-based Menelaus replay."""
    report = TheoremReport("quadrangle_involution", inputs=q.to_json())
    nc = q.node_couples()
    eq = equivalence_check(nc)
    for ident in eq["identities"]:
        report.claims.append(dict(ident))
    report.claim_true("couples (I,K), (P,Q), (G,H) in involution", eq["equivalent"])
    inv = eq["involution"]
    if inv is None:
        raise InvolutionError("quadrangle couples did not determine an involution")
    report.claim("involution swaps G and H", partner(inv, q.G), q.H)
    report.notes["involution"] = involution_json(inv)
    try:
        report.trace = replay_quadrangle_proof(q)
    except NonGenericError as exc:
        # pivot F at infinity (parallel bornale couple): the identities above
        # still decide the theorem, only the pivot replay is unavailable
        report.notes["replay_skipped"] = str(exc)
    return inv, report


def desargues_involution_by_perspectives(q: QuadrangleConfig) -> Involution:
    """The quadrangle involution as a composition of three perspectives:
    center D from the transversal to CE, center P from CE to BD, center C
    from BD back to the transversal."""
    b, c, d, e = q.bornes
    ce = default_chart(join(c, e))
    bd = default_chart(join(b, d))
    s1 = perspective_map(d, q.transversal, ce)
    s2 = perspective_map(q.P, ce, bd)
    s3 = perspective_map(c, bd, q.transversal)
    composed = s3.compose(s2.compose(s1))
    return Involution(composed)


def pencil_involution_check(q: QuadrangleConfig, member: Conic) -> TheoremReport:
    """One conic of the pencil through the bornes cuts the transversal in a
    couple of the same involution; a tangent member's double point is a
    fixed point.  For a nondegenerate member the conic-induced map sigma
    (pencils at E and D) must satisfy sigma(P)=G, sigma(H)=Q and fix the
    chord points.
    """
    for p in q.bornes:
        if not member.contains(p):
            raise ConicError("member does not pass through all four bornes")
    report = TheoremReport(
        "pencil_involution",
        inputs=q.to_json() | {"member": member.to_json()},
    )
    inv = nc_involution(q.node_couples())
    delta = q.transversal

    if member.is_degenerate():
        pair = _degenerate_chord(q, member)
        if pair is None:
            raise ConicError("degenerate member is not a bornale pair")
        name, (l_pt, m_pt) = pair
        report.notes["member_kind"] = f"line pair {name}"
        report.claim(f"line-pair chord = couple {name}", partner(inv, l_pt), m_pt)
        return report

    hit = conic_line_intersection(member, delta.line)
    report.notes["discriminant"] = rat_str(hit.discriminant)
    if hit.count == 0:
        report.claim_true(
            "no real chord (transversal misses the member)", hit.discriminant < 0
        )
        return report

    if hit.rational_points() is not None:
        if hit.is_tangent():
            t_pt = hit.points[0]
            report.claim("tangency double point is a fixed point", partner(inv, t_pt), t_pt)
            sigma_pts = (t_pt,)
        else:
            l_pt, m_pt = hit.points
            report.claim("chord couple swapped: partner(L) = M", partner(inv, l_pt), m_pt)
            sigma_pts = (l_pt, m_pt)
        b, c, d, e = q.bornes
        sigma = lambda x: meet(join(d, second_intersection(member, e, x)), delta.line)
        report.claim("sigma(a) = c  [sigma(P) = G]", sigma(q.P), q.G)
        report.claim("sigma(c') = a'  [sigma(H) = Q]", sigma(q.H), q.Q)
        for i, pt in enumerate(sigma_pts):
            report.claim(f"sigma fixes chord point {i + 1}", sigma(pt), pt)
    else:
        tl, tm = (delta.coordinate_generic(p) for p in hit.points)
        report.claim(
            "chord couple swapped over QuadExt: partner(L) = M",
            partner_param(inv, tl),
            tm,
        )
    return report


def _degenerate_chord(q: QuadrangleConfig, member: Conic):
    b, c, d, e = q.bornes
    pairs = {
        "IK": (join(b, c), join(e, d), (q.I, q.K)),
        "PQ": (join(b, e), join(d, c), (q.P, q.Q)),
        "GH": (join(b, d), join(c, e), (q.G, q.H)),
    }
    for name, (l1, l2, couple) in pairs.items():
        if Conic.from_lines(l1, l2) == member:
            return name, couple
    return None


def parallel_bornales_identities(q: QuadrangleConfig) -> TheoremReport:
    """The trapezoid case BC parallel to ED: the three Thales-derived
    rectangle identities, one per choice of the non-parallel line playing
    the tronc role."""
    b, c, d, e = q.bornes
    if meet(join(b, c), join(e, d)) != infinity_point_of(join(b, c)):
        raise GeometryError("BC and ED must be parallel (N at infinity)")
    report = TheoremReport("parallel_bornales", inputs=q.to_json())
    i_pt, k_pt = q.I, q.K
    p_pt, q_pt = q.P, q.Q
    f_pt = q.pivot

    def prod(o, x, y):
        return dot2(displacement(o, x), displacement(o, y))

    report.claim(
        "Thales at Q: IC/KD = IQ/KQ",
        parallel_ratio(i_pt, c, k_pt, d),
        parallel_ratio(i_pt, q_pt, k_pt, q_pt),
    )
    report.claim(
        "IC.IB/(KD.KE) = IQ.IP/(KQ.KP)",
        Fraction(prod(i_pt, c, b)) / prod(k_pt, d, e),
        Fraction(prod(i_pt, q_pt, p_pt)) / prod(k_pt, q_pt, p_pt),
    )
    report.claim(
        "CI.CB/(DK.DE) = CQ.CF/(DQ.DF)",
        Fraction(prod(c, i_pt, b)) / prod(d, k_pt, e),
        Fraction(prod(c, q_pt, f_pt)) / prod(d, q_pt, f_pt),
    )
    report.claim(
        "BI.BC/(EK.ED) = BF.BP/(EF.EP)",
        Fraction(prod(b, i_pt, c)) / prod(e, k_pt, d),
        Fraction(prod(b, f_pt, p_pt)) / prod(e, f_pt, p_pt),
    )
    return report


# ---------------------------------------------------------------------------
# Beaugrand's derivation


def beaugrand_replay(conic: Conic, k: PPoint, n: PPoint, o: PPoint, v: PPoint, transversal: PLine) -> ProofTrace:
    """Beaugrand's proof of the involution theorem on a conic: two
    applications of Apollonius III.17, two of Menelaus, the final identity
    and the two remaining analogies he proved separately.

    The transversal must meet the conic in rational points F, G, and the
    auxiliary parallel through C must cut the conic rationally; otherwise
    the caller should regenerate the instance.
    """
    for p in (k, n, o, v):
        if not conic.contains(p):
            raise ConicError("the four bornes must lie on the conic")
    hit = conic_line_intersection(conic, transversal)
    if hit.rational_points() is None or hit.count != 2:
        raise ConicError(
            f"transversal chord is not two rational points (disc {hit.discriminant})"
        )
    f_pt, g_pt = hit.points

    kn, ko, vn, vo = join(k, n), join(k, o), join(v, n), join(v, o)
    b_pt = meet(transversal, kn)
    e_pt = meet(transversal, vo)
    c_pt = meet(transversal, ko)
    a_pt = meet(transversal, vn)
    p_pt = meet(ko, vn)
    mu = parallel_line_through(vn, c_pt)
    mu_hit = conic_line_intersection(conic, mu)
    if mu_hit.rational_points() is None or mu_hit.count != 2:
        raise ConicError(
            f"auxiliary parallel chord irrational (disc {mu_hit.discriminant})"
        )
    q_pt, r_pt = mu_hit.points
    pts = [k, n, o, v, f_pt, g_pt, a_pt, b_pt, c_pt, e_pt, p_pt, q_pt, r_pt]
    if any(p.is_at_infinity() for p in pts):
        raise NonGenericError("a named point fell at infinity")
    if len(set(pts)) != len(pts):
        raise NonGenericError("named points are not pairwise distinct")

    def prod(origin, x, y):
        return dot2(displacement(origin, x), displacement(origin, y))

    trace = ProofTrace("beaugrand")
    trace.notes["points"] = {
        "F": f_pt.to_json(),
        "G": g_pt.to_json(),
        "A": a_pt.to_json(),
        "B": b_pt.to_json(),
        "C": c_pt.to_json(),
        "E": e_pt.to_json(),
        "P": p_pt.to_json(),
    }

    trace.add(
        "NP.PV/(QC.CR) = KP.PO/(KC.CO)",
        Fraction(prod(p_pt, n, v)) / prod(c_pt, q_pt, r_pt),
        Fraction(prod(p_pt, k, o)) / prod(c_pt, k, o),
        "Advis p.5 l.25",
        kind="apollonius",
    )
    lhs2 = Fraction(prod(a_pt, n, v)) / prod(c_pt, q_pt, r_pt)
    rhs2 = (Fraction(prod(a_pt, n, v)) / prod(p_pt, n, v)) * (
        Fraction(prod(p_pt, k, o)) / prod(c_pt, k, o)
    )
    trace.add("AN.AV/(QC.CR) = (AN.AV/(PN.PV))(PK.PO/(CK.CO))", lhs2, rhs2, "Advis p.5 l.26", kind="composition")
    trace.add(
        "AN.AV/(AF.AG) = CQ.CR/(CF.CG)",
        Fraction(prod(a_pt, n, v)) / prod(a_pt, f_pt, g_pt),
        Fraction(prod(c_pt, q_pt, r_pt)) / prod(c_pt, f_pt, g_pt),
        "Advis p.5 l.28",
        kind="apollonius",
    )
    trace.add(
        "BA/BC = (NA/NP)(KP/KC)",
        Ratio(b_pt, a_pt, c_pt).value(),
        Ratio(n, a_pt, p_pt).value() * Ratio(k, p_pt, c_pt).value(),
        "Advis p.5 l.33",
        kind="menelaus",
    )
    trace.add(
        "EA/EC = (VA/VP)(OP/OC)",
        Ratio(e_pt, a_pt, c_pt).value(),
        Ratio(v, a_pt, p_pt).value() * Ratio(o, p_pt, c_pt).value(),
        "Advis p.5 l.34",
        kind="menelaus",
    )
    trace.add(
        "(AN.AV/(PN.PV))(PK.PO/(CK.CO)) = BA.AE/(BC.CE)",
        rhs2,
        Fraction(prod(a_pt, b_pt, e_pt)) / prod(c_pt, b_pt, e_pt),
        "Advis p.5 l.35",
        kind="composition",
    )
    trace.add(
        "FA.AG/(FC.CG) = BA.AE/(BC.CE)",
        Fraction(prod(a_pt, f_pt, g_pt)) / prod(c_pt, f_pt, g_pt),
        Fraction(prod(a_pt, b_pt, e_pt)) / prod(c_pt, b_pt, e_pt),
        "Advis p.5 l.38",
        kind="final",
    )
    trace.add(
        "BF.BG/(EF.EG) = BA.BC/(EA.EC)",
        Fraction(prod(b_pt, f_pt, g_pt)) / prod(e_pt, f_pt, g_pt),
        Fraction(prod(b_pt, a_pt, c_pt)) / prod(e_pt, a_pt, c_pt),
        "Advis p.5 l.40",
        kind="analogy",
    )
    trace.add(
        "FA.FC/(GA.GC) = FB.FE/(GB.GE)",
        Fraction(prod(f_pt, a_pt, c_pt)) / prod(g_pt, a_pt, c_pt),
        Fraction(prod(f_pt, b_pt, e_pt)) / prod(g_pt, b_pt, e_pt),
        "Advis p.6 l.20",
        kind="analogy",
    )
    trace.notes["couples"] = "A,C; B,E; F,G"
    return trace


# ---------------------------------------------------------------------------
# Pascal's hexagram lemma


def pascal_collinear(conic: Conic, p: PPoint, k: PPoint, v: PPoint, o: PPoint, n: PPoint, q_pt: PPoint) -> TheoremReport:
    """Pascal's Lemme I in the coupling (P,O; V,K; N,Q): the intersections
    M = PK^VO, S = NK^VQ, X = NO^PQ are exactly collinear.

    For a circle the historical proof is replayed: two Menelaus
    decompositions, three power-of-a-point identities, the substitution
    steps, and the cross-ratio equality that triggers Pappus collinearity.
    """
    six = (p, k, v, o, n, q_pt)
    if len(set(six)) != 6:
        raise GeometryError("hexagon needs six distinct points")
    for pt in six:
        if not conic.contains(pt):
            raise ConicError("hexagon vertex not on the conic")
    if conic.is_degenerate():
        raise ConicError("hexagram needs a nondegenerate conic")

    m_pt = meet(join(p, k), join(v, o))
    s_pt = meet(join(n, k), join(v, q_pt))
    x_pt = meet(join(n, o), join(p, q_pt))
    if len({m_pt, s_pt, x_pt}) < 3:
        raise NonGenericError("degenerate hexagon: two intersection points merge")

    report = TheoremReport(
        "pascal",
        inputs={"hexagon": [pt.to_json() for pt in six], "conic": conic.to_json()},
    )
    report.claim_true("M, S, X collinear", collinear(m_pt, s_pt, x_pt))
    report.notes["pascal_line"] = join(m_pt, s_pt).to_json()
    report.notes["M"] = m_pt.to_json()
    report.notes["S"] = s_pt.to_json()
    report.notes["X"] = x_pt.to_json()

    if conic.is_circle():
        _pascal_circle_replay(report, conic, p, k, v, o, n, q_pt, m_pt, s_pt)
    return report


def _pascal_circle_replay(report, circle, p, k, v, o, n, q_pt, m_pt, s_pt):
    no_line = join(n, o)
    pk_line = join(p, k)
    qv_line = join(q_pt, v)
    alpha = meet(no_line, pk_line)
    beta = meet(no_line, qv_line)
    a_pt = meet(pk_line, qv_line)
    named = (alpha, beta, a_pt, m_pt, s_pt)
    if any(pt.is_at_infinity() for pt in named):
        report.notes["circle_replay"] = "skipped: auxiliary point at infinity"
        return
    if len(set(named)) != 5:
        report.notes["circle_replay"] = "skipped: auxiliary points merge"
        return

    trace = ProofTrace("pascal_circle")

    def pw(origin, x, y):
        return dot2(displacement(origin, x), displacement(origin, y))

    trace.add(
        "MA/Malpha = (VA/Vbeta)(Obeta/Oalpha)",
        Ratio(m_pt, a_pt, alpha).value(),
        Ratio(v, a_pt, beta).value() * Ratio(o, beta, alpha).value(),
        "sector A,M,alpha,beta,O,V",
        kind="menelaus",
    )
    trace.add(
        "SA/Sbeta = (KA/Kalpha)(Nalpha/Nbeta)",
        Ratio(s_pt, a_pt, beta).value(),
        Ratio(k, a_pt, alpha).value() * Ratio(n, alpha, beta).value(),
        "sector A,K,alpha,beta,N,S",
        kind="menelaus",
    )
    trace.add(
        "Kalpha.Palpha = Nalpha.Oalpha",
        Fraction(pw(alpha, k, p)),
        Fraction(pw(alpha, n, o)),
        "Euclid III.35/36",
        kind="power",
    )
    trace.add(
        "Nbeta.Obeta = Vbeta.Qbeta",
        Fraction(pw(beta, n, o)),
        Fraction(pw(beta, v, q_pt)),
        "Euclid III.35/36",
        kind="power",
    )
    trace.add(
        "PA.KA = QA.VA",
        Fraction(pw(a_pt, p, k)),
        Fraction(pw(a_pt, q_pt, v)),
        "Euclid III.35/36",
        kind="power",
    )
    trace.add(
        "Palpha/PA = (Nalpha/QA)(Oalpha/VA)(KA/Kalpha)",
        Ratio(p, alpha, a_pt).value(),
        Fraction(pw(alpha, n, o)) / pw(a_pt, q_pt, v) * Ratio(k, a_pt, alpha).value(),
        "substitution",
        kind="substitution",
    )
    trace.add(
        "Qbeta/QA = (Nbeta/PA)(Obeta/KA)(VA/Vbeta)",
        Ratio(q_pt, beta, a_pt).value(),
        Fraction(pw(beta, n, o)) / pw(a_pt, p, k) * Ratio(v, a_pt, beta).value(),
        "substitution",
        kind="substitution",
    )
    cr1 = cross_ratio(a_pt, alpha, m_pt, p)
    cr2 = cross_ratio(a_pt, beta, s_pt, q_pt)
    trace.add(
        "[A,alpha,M,P] = [A,beta,S,Q]",
        cr1,
        cr2,
        "Pappus, Collection 142",
        kind="cross_ratio",
    )
    report.trace = trace


# ---------------------------------------------------------------------------
# the 3d retablissement


def retablissement_demo(apex: P3Point, base: P3Plane, cut: P3Plane, params) -> TheoremReport:
    """Transport a quadrangle-with-transversal configuration between the
    cutting plane of a cone and its base plane, through the apex.

    ``params`` are six distinct rational slopes: four bornes and the two
    transversal chord points, all on the base conic (the unit circle in
    the base plane's chart).  Claims: the cut-plane bornes project onto
    the base conic, bornale intersections project to bornale
    intersections, and the involution on the base transversal pulls back
    exactly to an involution on the cut transversal.
    """
    if base.contains(apex) or cut.contains(apex):
        raise GeometryError("apex must be off both planes")
    if len(set(params)) != 6:
        raise GeometryError("six distinct parameters required")

    base_basis = plane_basis(base)
    cut_basis = plane_basis(cut)
    circle = Conic.unit_circle()
    par = ConicParametrization(circle, PPoint(-1, 0, 1))

    base_pts2 = [par.point_at(t) for t in params]
    base_pts3 = [p2_to_plane(base_basis, pt) for pt in base_pts2]
    cut_pts3 = [central_projection_3d(apex, cut, p3) for p3 in base_pts3]
    cut_pts2 = [plane_to_p2(cut_basis, p3) for p3 in cut_pts3]

    report = TheoremReport(
        "retablissement",
        inputs={
            "apex": [str(c) for c in apex.coords],
            "base": [str(c) for c in base.coeffs],
            "cut": [str(c) for c in cut.coeffs],
            "params": [rat_str(Fraction(t)) for t in params],
        },
    )

    # round trip: cut-plane bornes project back onto the base conic
    for i, p3 in enumerate(cut_pts3):
        back = central_projection_3d(apex, base, p3)
        back2 = plane_to_p2(base_basis, back)
        report.claim(f"borne {i + 1} projects onto the base conic", circle.evaluate(back2), 0)

    b2, c2, d2, e2, l2, m2 = base_pts2
    bb, cc, dd, ee, ll, mm = cut_pts2

    def transport(pt2_cut: PPoint) -> PPoint:
        p3 = p2_to_plane(cut_basis, pt2_cut)
        down = central_projection_3d(apex, base, p3)
        return plane_to_p2(base_basis, down)

    for name, (x1, y1), (x2, y2) in (
        ("BC^ED", (bb, cc), (ee, dd)),
        ("BE^DC", (bb, ee), (dd, cc)),
        ("BD^CE", (bb, dd), (cc, ee)),
    ):
        cut_meet = meet(join(x1, y1), join(x2, y2))
        base_pair = {
            "BC^ED": (join(b2, c2), join(e2, d2)),
            "BE^DC": (join(b2, e2), join(d2, c2)),
            "BD^CE": (join(b2, d2), join(c2, e2)),
        }[name]
        report.claim(
            f"bornale intersection {name} transports exactly",
            transport(cut_meet),
            meet(*base_pair),
        )

    base_delta = default_chart(join(l2, m2))
    cut_delta = default_chart(join(ll, mm))
    base_q = QuadrangleConfig((b2, c2, d2, e2), base_delta)
    cut_q = QuadrangleConfig((bb, cc, dd, ee), cut_delta)

    base_eq = equivalence_check(base_q.node_couples())
    report.claim_true("base couples in involution", base_eq["equivalent"])
    base_inv = base_eq["involution"]
    report.claim("base chord couple swapped", partner(base_inv, l2), m2)

    cut_eq = equivalence_check(cut_q.node_couples())
    report.claim_true("cut couples in involution (pullback)", cut_eq["equivalent"])
    cut_inv = cut_eq["involution"]
    report.claim("cut chord couple swapped", partner(cut_inv, ll), mm)

    report.claim(
        "classification transported",
        classify_kind(base_inv),
        classify_kind(cut_inv),
    )
    return report
