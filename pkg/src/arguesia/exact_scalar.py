"""Exact scalars: arbitrary-precision rationals and one quadratic extension.

``Rat`` is the standard-library :class:`fractions.Fraction`, which already
maintains the canonical reduced form (positive denominator, coprime
numerator/denominator) and exact field arithmetic.  This module adds the
strict textual form used in configs and reports, and a quadratic extension
``QuadExt`` for the square roots that appear at involution fixed points and
conic chords.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

Rat = Fraction

_RAT_RE = re.compile(r"^-?\d+(/\d+)?$")


class ScalarError(ValueError):
    """Raised for malformed rational text or an impossible square root."""


def rat_parse(text: str) -> Rat:
    """Parse ``digits`` or ``digits/digits`` (optional leading minus).

    The result is canonical: reduced, denominator positive, zero as 0/1.
    """
    if not isinstance(text, str) or not _RAT_RE.match(text.strip()):
        raise ScalarError(f"malformed rational: {text!r}")
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ScalarError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text), 1)


def rat_str(x: Rat) -> str:
    """Canonical ``p/q`` form, always with the denominator."""
    return f"{x.numerator}/{x.denominator}"


def square_free_decomposition(n: int) -> tuple[int, int]:
    """Write n > 0 as s**2 * d with d squarefree; returns (s, d).

    Trial division; adequate at desk scale (the instance generators keep
    magnitudes small, and a perfect-square cofactor is caught by isqrt).
    """
    if n <= 0:
        raise ScalarError("square_free_decomposition needs a positive integer")
    s, d = 1, 1
    r = isqrt(n)
    if r * r == n:
        return r, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    if n > 1:
        r = isqrt(n)
        if r * r == n:
            s *= r
        else:
            d *= n
    return s, d


@dataclass(frozen=True)
class QuadExt:
    """Exact value a + b*sqrt(d) with a, b rational and d a squarefree int > 1.

    Arithmetic is closed within one radicand; mixing distinct radicands is
    rejected rather than coerced.  Values with b = 0 are never built: those
    collapse to plain ``Rat`` at construction time, so equality with an
    embedded rational works through :func:`quad_make`.
    """

    a: Rat
    b: Rat
    d: int

    def __post_init__(self):
        if self.b == 0:
            raise ScalarError("QuadExt with b = 0 must be a plain Rat")
        if self.d <= 1 or square_free_decomposition(self.d)[1] != self.d:
            raise ScalarError(f"radicand must be squarefree > 1, got {self.d}")

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Rat:
        return self.a * self.a - self.b * self.b * self.d

    def __add__(self, other):
        a, b, d = _coerce_pair(self, other)
        return quad_make(self.a + a, self.b + b, d if d else self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadExt) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ScalarError("mixed radicands")
            return quad_make(
                self.a * other.a + self.b * other.b * self.d,
                self.a * other.b + self.b * other.a,
                self.d,
            )
        other = Fraction(other)
        return quad_make(self.a * other, self.b * other, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ScalarError("mixed radicands")
            n = other.norm()
            if n == 0:
                raise ZeroDivisionError("division by zero QuadExt")
            return (self * other.conjugate()) / n
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError
        return quad_make(self.a / other, self.b / other, self.d)

    def __rtruediv__(self, other):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero-norm QuadExt")
        return (self.conjugate() * Fraction(other)) / n

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))"

    def to_json(self) -> dict:
        return {"a": rat_str(self.a), "b": rat_str(self.b), "d": str(self.d)}


def _coerce_pair(x: QuadExt, other):
    if isinstance(other, QuadExt):
        if other.d != x.d:
            raise ScalarError("mixed radicands")
        return other.a, other.b, other.d
    return Fraction(other), Fraction(0), 0


def quad_make(a: Rat, b: Rat, d: int):
    """Build a + b*sqrt(d), collapsing to Rat when b = 0 or d = 1."""
    if b == 0:
        return a
    if d == 1:
        return a + b
    return QuadExt(a, b, d)


def quad_sqrt(x: Rat):
    """Exact square root of a nonnegative rational.

    Returns a ``Rat`` when x is a perfect square, otherwise ``QuadExt``
    b*sqrt(d) with d squarefree.  A negative argument signals the elliptic
    case: there is no real root, and we refuse rather than approximate.
    """
    x = Fraction(x)
    if x < 0:
        raise ScalarError("negative radicand: elliptic case, no real root")
    if x == 0:
        return Fraction(0)
    # sqrt(n/m) = sqrt(n*m)/m
    n = x.numerator * x.denominator
    s, d = square_free_decomposition(n)
    root = quad_make(Fraction(0), Fraction(s, x.denominator), d)
    if root * root != x:  # decomposition is checked, never trusted
        raise ScalarError(f"square root extraction failed for {x}")
    return root


def scalar_str(x) -> str:
    """Canonical string for Rat or QuadExt report fields."""
    if isinstance(x, QuadExt):
        return f"{rat_str(x.a)}+{rat_str(x.b)}*sqrt({x.d})"
    return rat_str(Fraction(x))
