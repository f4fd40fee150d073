"""Conics as symmetric matrices over exact rationals.

A conic is the canonical integer 6-tuple (m00, m01, m02, m11, m12, m22) of
its symmetric matrix; a point lies on it iff p.M.p = 0.  The module covers
five-point construction by exact nullspace, pencils through four base
points with their three degenerate line-pair members, line intersection
over the quadratic extension, the rational parametrization used to
generate exact instances, and the power-of-a-point identities of Euclid
III.35/36 for circles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from arguesia._kernel import conic_eval, conic_polar, cross3
from arguesia.exact_scalar import QuadExt, Rat, quad_sqrt, rat_str
from arguesia.projective_core import (
    INF,
    GeometryError,
    PLine,
    PPoint,
    collinear,
    displacement,
    dot2,
    incident,
    join,
)


class ConicError(GeometryError):
    """Ill-posed conic construction or query."""


def _norm6(entries) -> tuple[int, ...]:
    from math import gcd

    xs = [Fraction(e) for e in entries]
    den = 1
    for e in xs:
        den = den * e.denominator // gcd(den, e.denominator)
    ints = [int(e * den) for e in xs]
    g = 0
    for e in ints:
        g = gcd(g, abs(e))
    if g == 0:
        raise ConicError("zero conic matrix")
    ints = [e // g for e in ints]
    for lead in ints:
        if lead != 0:
            if lead < 0:
                ints = [-e for e in ints]
            break
    return tuple(ints)


@dataclass(frozen=True)
class Conic:
    """Symmetric conic matrix, canonical up to scale.

    Entries are the upper triangle row-major: (m00, m01, m02, m11, m12, m22).
    """

    m: tuple[int, int, int, int, int, int]

    def __init__(self, m00, m01, m02, m11, m12, m22):
        object.__setattr__(self, "m", _norm6((m00, m01, m02, m11, m12, m22)))

    def rows(self):
        m00, m01, m02, m11, m12, m22 = self.m
        return ((m00, m01, m02), (m01, m11, m12), (m02, m12, m22))

    def evaluate(self, p: PPoint) -> int:
        return conic_eval(self.m, p.coords)

    def evaluate_triple(self, triple):
        """Exact form value on a scalar triple (QuadExt allowed)."""
        x, y, z = triple
        m00, m01, m02, m11, m12, m22 = self.m
        return (
            x * (m00 * x + m01 * y + m02 * z)
            + y * (m01 * x + m11 * y + m12 * z)
            + z * (m02 * x + m12 * y + m22 * z)
        )

    def contains(self, p: PPoint) -> bool:
        return self.evaluate(p) == 0

    def det(self) -> int:
        r = self.rows()
        return (
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        )

    def is_degenerate(self) -> bool:
        return self.det() == 0

    def is_circle(self) -> bool:
        m00, m01, m02, m11, m12, m22 = self.m
        return m00 == m11 and m01 == 0 and m00 != 0

    def polar_line(self, p: PPoint) -> PLine:
        """Polar of p; for p on the conic this is the tangent there."""
        u, v, w = conic_polar(self.m, p.coords)
        return PLine(u, v, w)

    def to_json(self) -> list[str]:
        return [rat_str(Fraction(e)) for e in self.m]

    @staticmethod
    def from_lines(l: PLine, m: PLine) -> "Conic":
        """Degenerate conic that is the union of two lines."""
        (u1, v1, w1), (u2, v2, w2) = l.coeffs, m.coeffs
        return Conic(
            2 * u1 * u2,
            u1 * v2 + v1 * u2,
            u1 * w2 + w1 * u2,
            2 * v1 * v2,
            v1 * w2 + w1 * v2,
            2 * w1 * w2,
        )

    @staticmethod
    def combine(lam, g1: "Conic", mu, g2: "Conic") -> "Conic":
        entries = [lam * a + mu * b for a, b in zip(g1.m, g2.m)]
        return Conic(*entries)

    @staticmethod
    def unit_circle() -> "Conic":
        return Conic(1, 0, 0, 1, 0, -1)

    def apply_collineation(self, t_rows) -> "Conic":
        """Image conic under p -> T.p for an invertible integer matrix T."""
        a = _adjugate(t_rows)
        m = self.rows()
        prod = _mat3_mul(_mat3_mul(_transpose(a), m), a)
        return Conic(prod[0][0], prod[0][1], prod[0][2], prod[1][1], prod[1][2], prod[2][2])


def _transpose(m):
    return tuple(zip(*m))


def _mat3_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def _adjugate(t):
    def minor(i, j):
        rows = [r for k, r in enumerate(t) if k != i]
        cols = [[e for k, e in enumerate(r) if k != j] for r in rows]
        return cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0]

    return tuple(
        tuple((-1) ** (i + j) * minor(j, i) for j in range(3)) for i in range(3)
    )


def apply_collineation_point(t_rows, p: PPoint) -> PPoint:
    c = p.coords
    return PPoint(*(sum(t_rows[i][k] * c[k] for k in range(3)) for i in range(3)))


# ---------------------------------------------------------------------------
# five-point construction


def _conic_row(p: PPoint):
    x, y, z = p.coords
    return [
        Fraction(x * x),
        Fraction(2 * x * y),
        Fraction(2 * x * z),
        Fraction(y * y),
        Fraction(2 * y * z),
        Fraction(z * z),
    ]


def _nullspace(rows):
    """Basis of the nullspace of a small exact matrix (list of Fraction rows)."""
    m = [list(r) for r in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [e * inv for e in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def conic_through_five(points) -> Conic:
    """Unique conic through five points; exact nullspace computation.

    Rank-deficient input (for instance a repeated point, or four collinear
    points) is rejected as ambiguous.  Three collinear points are fine and
    produce the corresponding degenerate line pair.
    """
    pts = list(points)
    if len(pts) != 5:
        raise ConicError("exactly five points required")
    basis = _nullspace([_conic_row(p) for p in pts])
    if len(basis) != 1:
        raise ConicError(f"ambiguous conic: nullspace dimension {len(basis)}")
    conic = Conic(*basis[0])
    for p in pts:
        if not conic.contains(p):
            raise ConicError("constructed conic misses an input point")
    return conic


# ---------------------------------------------------------------------------
# pencils


@dataclass(frozen=True)
class Pencil:
    """Linear pencil of conics through four base points in general position."""

    base: tuple[PPoint, PPoint, PPoint, PPoint]
    gen1: Conic
    gen2: Conic

    @staticmethod
    def through(b: PPoint, c: PPoint, d: PPoint, e: PPoint) -> "Pencil":
        pts = (b, c, d, e)
        if len(set(pts)) != 4:
            raise ConicError("base points must be distinct")
        for skip in range(4):
            rest = [p for i, p in enumerate(pts) if i != skip]
            if collinear(*rest):
                raise ConicError("three base points are collinear")
        g1 = Conic.from_lines(join(b, c), join(e, d))
        g2 = Conic.from_lines(join(b, e), join(d, c))
        return Pencil(pts, g1, g2)

    def member(self, lam, mu) -> Conic:
        if lam == 0 and mu == 0:
            raise ConicError("zero pencil coefficients")
        return Conic.combine(lam, self.gen1, mu, self.gen2)

    def third_degenerate(self) -> Conic:
        b, c, d, e = self.base
        return Conic.from_lines(join(b, d), join(c, e))


def pencil_member(pencil: Pencil, through: PPoint) -> Conic:
    """The unique pencil member through one extra point."""
    v1 = pencil.gen1.evaluate(through)
    v2 = pencil.gen2.evaluate(through)
    if v1 == 0 and v2 == 0:
        raise ConicError("every member passes through a base point: ambiguous")
    return pencil.member(-v2, v1)


# ---------------------------------------------------------------------------
# line intersection


@dataclass(frozen=True)
class ChordIntersection:
    """Conic-line intersection: discriminant sign decides 0, 1 or 2 points.

    Rational points come back as PPoint; irrational ones as triples of
    QuadExt scalars (same radicand), each satisfying the conic exactly.
    """

    discriminant: Rat
    points: tuple

    @property
    def count(self) -> int:
        return len(self.points)

    def is_tangent(self) -> bool:
        return self.discriminant == 0

    def rational_points(self):
        if all(isinstance(p, PPoint) for p in self.points):
            return self.points
        return None


def _line_span(l: PLine):
    u, v, w = l.coeffs
    candidates = [(0, w, -v), (-w, 0, u), (v, -u, 0)]
    pts = []
    for cand in candidates:
        if cand != (0, 0, 0):
            p = PPoint(*cand)
            if p not in pts:
                pts.append(p)
        if len(pts) == 2:
            return pts
    raise ConicError("degenerate line span")


def conic_line_intersection(c: Conic, l: PLine) -> ChordIntersection:
    """Intersect a nondegenerate conic with a line, exactly.

    The line is parametrized by two canonical points, the form restricted
    to a binary quadratic, and the roots solved over Rat or QuadExt.
    """
    if c.is_degenerate():
        raise ConicError("degenerate conic: split it into its two lines")
    p0, p1 = _line_span(l)
    a = c.evaluate(p0)
    b = _bilinear(c, p0.coords, p1.coords)
    cc = c.evaluate(p1)
    disc = Fraction(b * b - a * cc)
    if disc < 0:
        return ChordIntersection(disc, ())
    roots = []
    if a == 0:
        roots.append((1, 0))
        if b != 0:
            roots.append((-cc, 2 * b))
        elif cc == 0:
            raise ConicError("line lies on the conic (impossible if nondegenerate)")
        else:
            roots.append((1, 0))
    else:
        root = quad_sqrt(disc)
        if isinstance(root, QuadExt):
            s1 = (-b + root) / a
            s2 = (-b - root) / a
            pts = tuple(
                tuple(s * x0 + x1 for x0, x1 in zip(p0.coords, p1.coords))
                for s in (s1, s2)
            )
            for t in pts:
                if c.evaluate_triple(t) != 0:
                    raise ConicError("QuadExt intersection failed exactness check")
            return ChordIntersection(disc, pts)
        r = Fraction(root)
        roots.append(((-b + r).numerator, (-b + r).denominator * a))
        if disc != 0:
            roots.append(((-b - r).numerator, (-b - r).denominator * a))
    pts = []
    for s, t in roots:
        coords = tuple(s * x0 + t * x1 for x0, x1 in zip(p0.coords, p1.coords))
        pt = PPoint(*coords)
        if not c.contains(pt):
            raise ConicError("rational intersection failed exactness check")
        pts.append(pt)
    if disc == 0:
        pts = pts[:1]
    return ChordIntersection(disc, tuple(pts))


def _bilinear(c: Conic, p, q) -> int:
    r = c.rows()
    return sum(p[i] * sum(r[i][j] * q[j] for j in range(3)) for i in range(3))


def second_intersection(c: Conic, on_point: PPoint, other: PPoint) -> PPoint:
    """Second meeting of the conic with line(on_point, other).

    on_point must lie on the conic; returns on_point itself when the line
    is tangent there.
    """
    if not c.contains(on_point):
        raise ConicError("base point of the chord is not on the conic")
    if on_point == other:
        raise ConicError("chord needs two distinct points")
    b = _bilinear(c, on_point.coords, other.coords)
    cc = c.evaluate(other)
    if b == 0 and cc == 0:
        raise ConicError("degenerate chord")
    coords = tuple(-cc * x0 + 2 * b * x1 for x0, x1 in zip(on_point.coords, other.coords))
    if all(e == 0 for e in coords):
        return on_point
    pt = PPoint(*coords)
    if not c.contains(pt):
        raise ConicError("second intersection failed exactness check")
    return pt


# ---------------------------------------------------------------------------
# rational parametrization


@dataclass(frozen=True)
class ConicParametrization:
    """Slope parametrization of a nondegenerate conic from a rational point.

    Parameter t is the slope of the chord through the seed; t = INF is the
    vertical chord, and the tangent slope returns the seed itself, so the
    map covers every point of the conic exactly once.
    """

    conic: Conic
    seed: PPoint

    def __post_init__(self):
        if self.conic.is_degenerate():
            raise ConicError("parametrization needs a nondegenerate conic")
        if not self.conic.contains(self.seed):
            raise ConicError("seed point is not on the conic")

    def point_at(self, t) -> PPoint:
        if t is INF:
            direction = PPoint(0, 1, 0)
        else:
            t = Fraction(t)
            direction = PPoint(t.denominator, t.numerator, 0)
        if direction == self.seed:
            return self.seed
        return second_intersection(self.conic, self.seed, direction)

    def parameter_of(self, p: PPoint):
        """Recover the slope that yields p; tangent slope for the seed."""
        if not self.conic.contains(p):
            raise ConicError("point is not on the conic")
        if p == self.seed:
            tangent = self.conic.polar_line(self.seed)
            u, v, _ = tangent.coeffs
            if v == 0:
                return INF
            return Fraction(-u, v)
        dx = p.x * self.seed.z - self.seed.x * p.z
        dy = p.y * self.seed.z - self.seed.y * p.z
        if dx == 0:
            return INF
        return Fraction(dy, dx)


# ---------------------------------------------------------------------------
# power of a point (Euclid III.35 / III.36)


def chord_power(circle: Conic, p: PPoint, chord: PLine) -> Rat:
    """Signed product of the two chord segments from p, exactly.

    Uses the chord's own direction scale consistently: the value is
    t1*t2*|dir|^2 for affine parameters p + t*dir, which makes products on
    different chords through the same circle comparable.
    """
    if not incident(p, chord):
        raise ConicError("point not on the chord")
    hit = conic_line_intersection(circle, chord)
    if hit.rational_points() is None or hit.count == 0:
        raise ConicError(
            f"irrational or empty chord (discriminant {hit.discriminant})"
        )
    pts = hit.points if hit.count == 2 else (hit.points[0], hit.points[0])
    u, v, _ = chord.coeffs
    direction = (Fraction(v), Fraction(-u))
    scale = dot2(direction, direction)
    ts = []
    for q in pts:
        d = displacement(p, q)
        t = d[0] / direction[0] if direction[0] != 0 else d[1] / direction[1]
        ts.append(t)
    return ts[0] * ts[1] * scale


def power_identity_check(circle: Conic, p: PPoint, chord1: PLine, chord2: PLine) -> dict:
    """Verify QA.QB = QC.QD for two chords of a circle through p.

    Interior and exterior positions are unified by the signed convention;
    p on the circle is rejected (zero power carries no information here).
    """
    if not circle.is_circle():
        raise ConicError("power identity is stated for circles only")
    if circle.contains(p):
        raise ConicError("point lies on the circle")
    if p.is_at_infinity():
        raise ConicError("power of an infinite point is not defined here")
    if chord1 == chord2:
        raise ConicError("chords must be distinct")
    v1 = chord_power(circle, p, chord1)
    v2 = chord_power(circle, p, chord2)
    return {
        "label": "QA.QB = QC.QD",
        "lhs": rat_str(v1),
        "rhs": rat_str(v2),
        "equal": v1 == v2,
    }
