# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernel``.

Operates on Python big integers, so the speedup comes from removing
interpreter dispatch in the innermost tuple arithmetic, not from C integer
types.  Keep every function semantically identical to the pure version.
"""

from math import gcd

BACKEND = "cython"


def norm3(x, y, z):
    cdef object g = gcd(gcd(abs(x), abs(y)), abs(z))
    if g == 0:
        raise ValueError("zero homogeneous triple")
    x //= g
    y //= g
    z //= g
    lead = x if x != 0 else (y if y != 0 else z)
    if lead < 0:
        return (-x, -y, -z)
    return (x, y, z)


def cross3(a, b):
    cdef object a0 = a[0], a1 = a[1], a2 = a[2]
    cdef object b0 = b[0], b1 = b[1], b2 = b[2]
    return (a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)


def dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def det3(a, b, c):
    cdef object b0 = b[0], b1 = b[1], b2 = b[2]
    cdef object c0 = c[0], c1 = c[1], c2 = c[2]
    return (
        a[0] * (b1 * c2 - b2 * c1)
        - a[1] * (b0 * c2 - b2 * c0)
        + a[2] * (b0 * c1 - b1 * c0)
    )


def norm2(u, v):
    cdef object g = gcd(abs(u), abs(v))
    if g == 0:
        raise ValueError("zero projective pair")
    u //= g
    v //= g
    lead = u if u != 0 else v
    if lead < 0:
        return (-u, -v)
    return (u, v)


def norm_mat2(m):
    cdef object a = m[0], b = m[1], c = m[2], d = m[3]
    cdef object g = gcd(gcd(abs(a), abs(b)), gcd(abs(c), abs(d)))
    if g == 0:
        raise ValueError("zero matrix")
    a //= g
    b //= g
    c //= g
    d //= g
    for lead in (a, b, c, d):
        if lead != 0:
            if lead < 0:
                return (-a, -b, -c, -d)
            return (a, b, c, d)
    raise ValueError("zero matrix")


def mat2_mul(m, n):
    cdef object m0 = m[0], m1 = m[1], m2 = m[2], m3 = m[3]
    cdef object n0 = n[0], n1 = n[1], n2 = n[2], n3 = n[3]
    return (m0 * n0 + m1 * n2, m0 * n1 + m1 * n3, m2 * n0 + m3 * n2, m2 * n1 + m3 * n3)


def mat2_pair(m, u, v):
    return (m[0] * u + m[1] * v, m[2] * u + m[3] * v)


def conic_eval(m6, p):
    cdef object x = p[0], y = p[1], z = p[2]
    cdef object m00 = m6[0], m01 = m6[1], m02 = m6[2]
    cdef object m11 = m6[3], m12 = m6[4], m22 = m6[5]
    return (
        x * (m00 * x + m01 * y + m02 * z)
        + y * (m01 * x + m11 * y + m12 * z)
        + z * (m02 * x + m12 * y + m22 * z)
    )


def conic_polar(m6, p):
    cdef object x = p[0], y = p[1], z = p[2]
    cdef object m00 = m6[0], m01 = m6[1], m02 = m6[2]
    cdef object m11 = m6[3], m12 = m6[4], m22 = m6[5]
    return (
        m00 * x + m01 * y + m02 * z,
        m01 * x + m11 * y + m12 * z,
        m02 * x + m12 * y + m22 * z,
    )
