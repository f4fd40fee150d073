"""The projective plane over exact rationals.

Points and lines are canonical integer triples (denominators cleared,
divided by the gcd, first nonzero entry positive), so projective equality
is tuple equality and everything hashes.  Charts give exact affine
parameters on a line, with the line's point at infinity mapped to a
dedicated ``INF`` symbol; homographies of a line act on parameters through
2x2 integer matrices applied to projective parameter pairs, which makes the
limit cases exact rather than special-cased.

A minimal projective 3-space (quadruples, planes, central projection, exact
coordinatization of a plane) supports transporting configurations between
the base and cutting planes of a cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from arguesia._kernel import (
    cross3,
    det3,
    dot3,
    mat2_mul,
    mat2_pair,
    norm2,
    norm3,
    norm_mat2,
)
from arguesia.exact_scalar import QuadExt, Rat, rat_str


class GeometryError(ValueError):
    """Construction impossible for the given data (coincident points,
    point off a line, degenerate map, ...)."""


class _Infinity:
    """The parameter value of a line's point at infinity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = _Infinity()


def param_str(t) -> str:
    if t is INF:
        return "inf"
    if isinstance(t, QuadExt):
        return repr(t)
    return rat_str(Fraction(t))


def _clear_triple(coords) -> tuple[int, int, int]:
    xs = [Fraction(c) for c in coords]
    den = 1
    for c in xs:
        den = den * c.denominator // _gcd(den, c.denominator)
    return tuple(int(c * den) for c in xs)


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


@dataclass(frozen=True)
class PPoint:
    """Point (x : y : z); z = 0 marks a point at infinity."""

    coords: tuple[int, int, int]

    def __init__(self, x, y, z):
        t = _clear_triple((x, y, z))
        try:
            object.__setattr__(self, "coords", norm3(*t))
        except ValueError:
            raise GeometryError("point with all coordinates zero")

    @property
    def x(self):
        return self.coords[0]

    @property
    def y(self):
        return self.coords[1]

    @property
    def z(self):
        return self.coords[2]

    def is_at_infinity(self) -> bool:
        return self.coords[2] == 0

    def affine(self) -> tuple[Rat, Rat]:
        if self.is_at_infinity():
            raise GeometryError(f"{self} has no affine coordinates")
        return Fraction(self.x, self.z), Fraction(self.y, self.z)

    def to_json(self) -> list[str]:
        return [rat_str(Fraction(c)) for c in self.coords]

    @staticmethod
    def from_json(data) -> "PPoint":
        from arguesia.exact_scalar import rat_parse

        return PPoint(*(rat_parse(c) for c in data))

    @staticmethod
    def affine_point(x, y) -> "PPoint":
        return PPoint(Fraction(x), Fraction(y), 1)

    def __repr__(self):
        return f"({self.coords[0]}:{self.coords[1]}:{self.coords[2]})"


@dataclass(frozen=True)
class PLine:
    """Line (u : v : w), incidence u*x + v*y + w*z = 0."""

    coeffs: tuple[int, int, int]

    def __init__(self, u, v, w):
        t = _clear_triple((u, v, w))
        try:
            object.__setattr__(self, "coeffs", norm3(*t))
        except ValueError:
            raise GeometryError("line with all coefficients zero")

    def is_infinity_line(self) -> bool:
        return self.coeffs[0] == 0 and self.coeffs[1] == 0

    def to_json(self) -> list[str]:
        return [rat_str(Fraction(c)) for c in self.coeffs]

    def __repr__(self):
        u, v, w = self.coeffs
        return f"[{u}:{v}:{w}]"


LINE_AT_INFINITY = PLine(0, 0, 1)


def incident(p: PPoint, l: PLine) -> bool:
    return dot3(p.coords, l.coeffs) == 0


def join(p: PPoint, q: PPoint) -> PLine:
    """Line through two distinct points."""
    if p == q:
        raise GeometryError(f"join of equal points {p}")
    return PLine(*cross3(p.coords, q.coords))


def meet(l: PLine, m: PLine) -> PPoint:
    """Common point of two distinct lines; parallels meet at z = 0."""
    if l == m:
        raise GeometryError(f"meet of equal lines {l}")
    return PPoint(*cross3(l.coeffs, m.coeffs))


def collinear(*points: PPoint) -> bool:
    if len(points) < 3:
        return True
    a, b = points[0], points[1]
    if a == b:
        raise GeometryError("collinearity test needs distinct base points")
    base = join(a, b)
    return all(incident(p, base) for p in points[2:])


def infinity_point_of(l: PLine) -> PPoint:
    """Where the line meets the line at infinity (its direction)."""
    if l.is_infinity_line():
        raise GeometryError("the infinity line has no single direction")
    u, v, w = l.coeffs
    return PPoint(v, -u, 0)


def parallel_line_through(l: PLine, p: PPoint) -> PLine:
    """The line through p with the direction of l."""
    d = infinity_point_of(l)
    if p == d:
        raise GeometryError("cannot draw a parallel through the direction itself")
    return join(p, d)


def midpoint(p: PPoint, q: PPoint) -> PPoint:
    if p.is_at_infinity() or q.is_at_infinity():
        raise GeometryError("midpoint needs finite points")
    return PPoint(
        p.x * q.z + q.x * p.z,
        p.y * q.z + q.y * p.z,
        2 * p.z * q.z,
    )


# ---------------------------------------------------------------------------
# charts and parameters


@dataclass(frozen=True)
class AffineChart:
    """Affine coordinate on a line: origin at 0, unit at 1, infinity at INF.

    Origin and unit must be finite so the chart's infinity agrees with the
    geometric point at infinity; signed parameter differences then measure
    segment ratios along the line.
    """

    line: PLine
    origin: PPoint
    unit: PPoint

    def __post_init__(self):
        if self.origin == self.unit:
            raise GeometryError("chart origin and unit coincide")
        if self.origin.is_at_infinity() or self.unit.is_at_infinity():
            raise GeometryError("chart origin and unit must be finite")
        if not (incident(self.origin, self.line) and incident(self.unit, self.line)):
            raise GeometryError("chart base points must lie on the chart line")

    def contains(self, p: PPoint) -> bool:
        return incident(p, self.line)

    def param_pair(self, p: PPoint) -> tuple[int, int]:
        """Projective parameter pair (u : v) with t = u/v and INF = (1 : 0)."""
        if not incident(p, self.line):
            raise GeometryError(f"{p} not on chart line {self.line}")
        o, u = self.origin.coords, self.unit.coords
        c_ou = cross3(o, u)
        i = _first_nonzero(c_ou)
        a_num, a_den = cross3(p.coords, u)[i], c_ou[i]
        b_num, b_den = cross3(p.coords, o)[i], cross3(u, o)[i]
        # p ~ a*O + b*U ; affine weights are a*O_z and b*U_z
        alpha = a_num * b_den * o[2]
        beta = b_num * a_den * u[2]
        return norm2(beta, alpha + beta)

    def coordinate(self, p: PPoint):
        u, v = self.param_pair(p)
        if v == 0:
            return INF
        return Fraction(u, v)

    def point_at(self, t) -> PPoint:
        if t is INF:
            return self.infinity_point()
        t = Fraction(t)
        return self.point_at_pair((t.numerator, t.denominator))

    def point_at_pair(self, pair: tuple[int, int]) -> PPoint:
        u, v = pair
        if u == 0 and v == 0:
            raise GeometryError("zero parameter pair")
        o, un = self.origin.coords, self.unit.coords
        coords = tuple(
            (v - u) * un[2] * o[k] + u * o[2] * un[k] for k in range(3)
        )
        return PPoint(*coords)

    def infinity_point(self) -> PPoint:
        return infinity_point_of(self.line)

    def coordinate_generic(self, triple):
        """Chart coordinate of a point given by exact scalars (QuadExt ok)."""
        o, u = self.origin.coords, self.unit.coords
        c_ou = cross3(o, u)
        i = _first_nonzero(c_ou)
        pu = _gcross(triple, u)
        po = _gcross(triple, o)
        a = pu[i] / Fraction(c_ou[i])
        b = po[i] / Fraction(cross3(u, o)[i])
        alpha = a * o[2]
        beta = b * u[2]
        den = alpha + beta
        if den == 0:
            return INF
        return beta / den

    def to_json(self) -> dict:
        return {
            "line": self.line.to_json(),
            "origin": self.origin.to_json(),
            "unit": self.unit.to_json(),
        }

    def __repr__(self):
        return f"AffineChart({self.line}, O={self.origin}, U={self.unit})"


def _first_nonzero(t) -> int:
    for i, c in enumerate(t):
        if c != 0:
            return i
    raise GeometryError("degenerate span")


def _gcross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


@lru_cache(maxsize=None)
def default_chart(line: PLine) -> AffineChart:
    """Deterministic chart on any line that has finite points."""
    u, v, w = line.coeffs
    if line.is_infinity_line():
        raise GeometryError("no affine chart on the line at infinity")
    if v != 0:
        origin = PPoint(0, -w, v)
    else:
        origin = PPoint(-w, 0, u)
    x0, y0, z0 = origin.coords
    unit = PPoint(x0 + v * z0, y0 - u * z0, z0)
    return AffineChart(line, origin, unit)


def chart_through(p: PPoint, q: PPoint) -> AffineChart:
    """Chart on join(p, q) with origin p and unit q (both finite)."""
    return AffineChart(join(p, q), p, q)


# ---------------------------------------------------------------------------
# homographies of a line


@dataclass(frozen=True)
class LineMap:
    """Homography between charted lines: t -> (m00*t + m01)/(m10*t + m11)."""

    matrix: tuple[int, int, int, int]
    src: AffineChart
    dst: AffineChart

    def __init__(self, matrix, src: AffineChart, dst: AffineChart):
        m = norm_mat2(tuple(int(e) for e in matrix))
        if m[0] * m[3] - m[1] * m[2] == 0:
            raise GeometryError("singular line map")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)

    def apply_pair(self, pair: tuple[int, int]) -> tuple[int, int]:
        a, b, c, d = self.matrix
        u, v = pair
        return norm2(a * u + b * v, c * u + d * v)

    def apply_param(self, t):
        """Image of a parameter; exact for Rat, QuadExt and INF alike."""
        a, b, c, d = self.matrix
        if t is INF:
            if c == 0:
                return INF
            return Fraction(a, c)
        num = a * t + b
        den = c * t + d
        if den == 0:
            return INF
        return num / den

    def apply_point(self, p: PPoint) -> PPoint:
        return self.dst.point_at_pair(self.apply_pair(self.src.param_pair(p)))

    def compose(self, inner: "LineMap") -> "LineMap":
        """self o inner; inner acts first."""
        if inner.dst != self.src:
            raise GeometryError("chart mismatch in composition")
        return LineMap(mat2_mul(self.matrix, inner.matrix), inner.src, self.dst)

    def inverse(self) -> "LineMap":
        a, b, c, d = self.matrix
        return LineMap((d, -b, -c, a), self.dst, self.src)

    def is_identity(self) -> bool:
        a, b, c, d = self.matrix
        return self.src == self.dst and b == 0 and c == 0 and a == d

    def trace(self) -> int:
        return self.matrix[0] + self.matrix[3]

    def det(self) -> int:
        a, b, c, d = self.matrix
        return a * d - b * c

    def same_map(self, other: "LineMap") -> bool:
        """Projective equality of matrices on identical charts."""
        return (
            self.src == other.src
            and self.dst == other.dst
            and self.matrix == other.matrix
        )

    def __repr__(self):
        a, b, c, d = self.matrix
        return f"LineMap[({a},{b});({c},{d})]"


def identity_map(chart: AffineChart) -> LineMap:
    return LineMap((1, 0, 0, 1), chart, chart)


def _matrix_sending_012inf(pairs) -> tuple[int, int, int, int]:
    """2x2 integer matrix sending (0:1), (1:1), (1:0) to the given pairs."""
    a, b, c = pairs  # images of 0, 1, infinity
    det_ca = c[0] * a[1] - c[1] * a[0]
    if det_ca == 0:
        raise GeometryError("degenerate triple: images of 0 and inf coincide")
    lam = b[0] * a[1] - b[1] * a[0]
    mu = c[0] * b[1] - c[1] * b[0]
    if lam == 0 or mu == 0:
        raise GeometryError("degenerate triple: repeated image point")
    return (lam * c[0], mu * a[0], lam * c[1], mu * a[1])


def _as_pair(t) -> tuple[int, int]:
    if t is INF:
        return (1, 0)
    t = Fraction(t)
    return (t.numerator, t.denominator)


def homography_from_three(src_params, dst_params, src: AffineChart, dst: AffineChart) -> LineMap:
    """The unique LineMap sending three distinct parameters to three others."""
    for triple in (src_params, dst_params):
        pairs = [_as_pair(t) for t in triple]
        for i in range(3):
            for j in range(i + 1, 3):
                if pairs[i][0] * pairs[j][1] == pairs[i][1] * pairs[j][0]:
                    raise GeometryError("repeated point in homography data")
    m_src = _matrix_sending_012inf([_as_pair(t) for t in src_params])
    m_dst = _matrix_sending_012inf([_as_pair(t) for t in dst_params])
    a, b, c, d = m_src
    inv_src = (d, -b, -c, a)
    return LineMap(mat2_mul(m_dst, inv_src), src, dst)


def project_point(center: PPoint, p: PPoint, target: PLine) -> PPoint:
    """Central projection of one point onto a line."""
    if incident(center, target):
        raise GeometryError("projection center on the target line")
    if p == center:
        raise GeometryError("cannot project the center itself")
    return meet(join(center, p), target)


def perspective_map(center: PPoint, src: AffineChart, dst: AffineChart) -> LineMap:
    """The projection of center K from one charted line to another.

    Agrees pointwise with meet(join(center, P), dst.line) and therefore
    preserves cross-ratios.
    """
    if incident(center, src.line) or incident(center, dst.line):
        raise GeometryError("perspective center lies on a carrier line")
    images = []
    for t in (Fraction(0), Fraction(1), INF):
        q = project_point(center, src.point_at(t), dst.line)
        images.append(dst.param_pair(q))
    return LineMap(_matrix_sending_012inf(images), src, dst)


# ---------------------------------------------------------------------------
# cross-ratio


def _pair_det(x, y) -> int:
    return x[0] * y[1] - x[1] * y[0]


def cross_ratio_pairs(a, b, c, d):
    """[a,b;c,d] from projective parameter pairs; INF on zero denominator."""
    num = _pair_det(c, a) * _pair_det(d, b)
    den = _pair_det(c, b) * _pair_det(d, a)
    if den == 0:
        return INF
    return Fraction(num, den)


def cross_ratio(a: PPoint, b: PPoint, c: PPoint, d: PPoint):
    """Cross-ratio [a,b;c,d] = ((c-a)/(c-b)) / ((d-a)/(d-b)).

    Needs four collinear points with a, b, c pairwise distinct; the value
    is INF exactly when d = a.
    """
    if a == b or a == c or b == c:
        raise GeometryError("cross-ratio needs a, b, c pairwise distinct")
    base = join(a, b)
    if not (incident(c, base) and incident(d, base)):
        raise GeometryError("cross-ratio of non-collinear points")
    chart = default_chart(base)
    pa, pb, pc, pd = (chart.param_pair(p) for p in (a, b, c, d))
    return cross_ratio_pairs(pa, pb, pc, pd)


def cross_ratio_params(a, b, c, d):
    """Cross-ratio of four parameters (Rat or INF) on one chart."""
    return cross_ratio_pairs(_as_pair(a), _as_pair(b), _as_pair(c), _as_pair(d))


def harmonic_partner_param(a, b, c):
    """The parameter d with [a,b;c,d] = -1, for distinct a, b, c."""
    pa, pb, pc = _as_pair(a), _as_pair(b), _as_pair(c)
    # solve det(c,a)*det(d,b) + det(c,b)*det(d,a) = 0 for the pair d
    k1 = _pair_det(pc, pa)
    k2 = _pair_det(pc, pb)
    if k1 == 0 or k2 == 0:
        raise GeometryError("harmonic partner needs three distinct parameters")
    # d satisfies  u*(k1*pb[1] + k2*pa[1]) - v*(k1*pb[0] + k2*pa[0]) = 0
    u = k1 * pb[0] + k2 * pa[0]
    v = k1 * pb[1] + k2 * pa[1]
    if u == 0 and v == 0:
        raise GeometryError("degenerate harmonic configuration")
    if v == 0:
        return INF
    return Fraction(u, v)


# ---------------------------------------------------------------------------
# euclidean helpers (z = 1 chart)


def displacement(p: PPoint, q: PPoint) -> tuple[Rat, Rat]:
    """Affine vector from p to q; both points must be finite."""
    px, py = p.affine()
    qx, qy = q.affine()
    return qx - px, qy - py


def dot2(v, w) -> Rat:
    return v[0] * w[0] + v[1] * w[1]


def chord_product(origin: PPoint, p: PPoint, q: PPoint) -> Rat:
    """Signed euclidean product origin->p . origin->q for collinear data.

    For three collinear finite points this is the power-of-a-point style
    product of signed lengths times the (positive) squared direction scale,
    so equalities of such products are scale-consistent within one figure.
    """
    return dot2(displacement(origin, p), displacement(origin, q))


def parallel_ratio(p1: PPoint, p2: PPoint, q1: PPoint, q2: PPoint) -> Rat:
    """t with vector(p1->p2) = t * vector(q1->q2); segments must be parallel."""
    v = displacement(p1, p2)
    w = displacement(q1, q2)
    if v[0] * w[1] != v[1] * w[0]:
        raise GeometryError("segments are not parallel")
    if w[0] != 0:
        return v[0] / w[0]
    if w[1] != 0:
        return v[1] / w[1]
    raise GeometryError("zero reference segment")


def perpendicular(v, w) -> bool:
    return dot2(v, w) == 0


def reflect_direction(axis, v):
    """Reflect direction v across the line direction axis (both 2-vectors)."""
    ax, ay = axis
    n = ax * ax + ay * ay
    if n == 0:
        raise GeometryError("zero axis direction")
    rx = ((ax * ax - ay * ay) * v[0] + 2 * ax * ay * v[1]) / n
    ry = (2 * ax * ay * v[0] + (ay * ay - ax * ax) * v[1]) / n
    return rx, ry


def directions_parallel(v, w) -> bool:
    return v[0] * w[1] == v[1] * w[0]


# ---------------------------------------------------------------------------
# minimal projective 3-space


def _clear_quad(coords) -> tuple[int, int, int, int]:
    xs = [Fraction(c) for c in coords]
    den = 1
    for c in xs:
        den = den * c.denominator // _gcd(den, c.denominator)
    return tuple(int(c * den) for c in xs)


def _norm4(t):
    from math import gcd

    g = 0
    for c in t:
        g = gcd(g, abs(c))
    if g == 0:
        raise GeometryError("zero homogeneous quadruple")
    t = tuple(c // g for c in t)
    for lead in t:
        if lead != 0:
            return t if lead > 0 else tuple(-c for c in t)
    raise GeometryError("zero homogeneous quadruple")


@dataclass(frozen=True)
class P3Point:
    coords: tuple[int, int, int, int]

    def __init__(self, x, y, z, w):
        object.__setattr__(self, "coords", _norm4(_clear_quad((x, y, z, w))))

    def __repr__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class P3Plane:
    coeffs: tuple[int, int, int, int]

    def __init__(self, a, b, c, d):
        object.__setattr__(self, "coeffs", _norm4(_clear_quad((a, b, c, d))))

    def contains(self, p: P3Point) -> bool:
        return sum(a * x for a, x in zip(self.coeffs, p.coords)) == 0

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coeffs) + "]"


def central_projection_3d(apex: P3Point, target: P3Plane, p: P3Point) -> P3Point:
    """Intersection of line(apex, p) with the target plane."""
    if target.contains(apex):
        raise GeometryError("apex lies on the target plane")
    if p == apex:
        raise GeometryError("cannot project the apex")
    ip = sum(a * x for a, x in zip(target.coeffs, p.coords))
    ia = sum(a * x for a, x in zip(target.coeffs, apex.coords))
    coords = tuple(ip * ax - ia * px for ax, px in zip(apex.coords, p.coords))
    if all(c == 0 for c in coords):
        raise GeometryError("projection degenerates: point equals apex")
    return P3Point(*coords)


def plane_basis(plane: P3Plane) -> tuple[P3Point, P3Point, P3Point]:
    """Three independent points spanning the plane, deterministically."""
    u = plane.coeffs
    k = _first_nonzero(u + (0,))
    basis = []
    for j in range(4):
        if j == k:
            continue
        vec = [0, 0, 0, 0]
        vec[j] = u[k]
        vec[k] = -u[j]
        basis.append(P3Point(*vec))
    return tuple(basis)


def plane_to_p2(basis, p: P3Point) -> PPoint:
    """Coordinates of a plane point in the given basis, as a plane PPoint."""
    b0, b1, b2 = (b.coords for b in basis)
    rows = None
    for drop in range(4):
        idx = [i for i in range(4) if i != drop]
        m = [(b0[i], b1[i], b2[i]) for i in idx]
        d = det3(*m)
        if d != 0:
            rows = idx
            break
    if rows is None:
        raise GeometryError("degenerate plane basis")
    pv = tuple(p.coords[i] for i in rows)
    m = [(b0[i], b1[i], b2[i]) for i in rows]
    # Cramer on the 3x3 subsystem (det of the transpose equals the det)
    col = lambda j: tuple(m[i][j] for i in range(3))
    d0 = det3(pv, col(1), col(2))
    d1 = det3(col(0), pv, col(2))
    d2 = det3(col(0), col(1), pv)
    point = PPoint(d0, d1, d2)
    rec = [d0 * b0[i] + d1 * b1[i] + d2 * b2[i] for i in range(4)]
    if not _proportional4(rec, p.coords):
        raise GeometryError("point not on the plane of the basis")
    return point


def _proportional4(a, b) -> bool:
    for i in range(4):
        for j in range(i + 1, 4):
            if a[i] * b[j] != a[j] * b[i]:
                return False
    return True


def p2_to_plane(basis, pp: PPoint) -> P3Point:
    b0, b1, b2 = (b.coords for b in basis)
    a, b, c = pp.coords
    return P3Point(*(a * b0[i] + b * b1[i] + c * b2[i] for i in range(4)))
