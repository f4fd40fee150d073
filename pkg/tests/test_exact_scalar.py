from fractions import Fraction

import pytest

from arguesia.exact_scalar import (
    QuadExt,
    ScalarError,
    quad_make,
    quad_sqrt,
    rat_parse,
    rat_str,
    square_free_decomposition,
)
from arguesia.rng import SplitMix64


def test_rat_parse_reduction():
    assert rat_parse("3/6") == Fraction(1, 2)


def test_rat_parse_sign_normalization():
    v = rat_parse("-4/2")
    assert v == Fraction(-2, 1)
    assert rat_str(v) == "-2/1"


def test_rat_parse_zero_canonical():
    v = rat_parse("0/7")
    assert v.numerator == 0 and v.denominator == 1


@pytest.mark.parametrize("bad", ["", "1/0", "a/2", "1.5", "2/-3", "--1", "1/2/3"])
def test_rat_parse_rejects_malformed(bad):
    with pytest.raises(ScalarError):
        rat_parse(bad)


def test_quad_sqrt_perfect_square():
    assert quad_sqrt(Fraction(9, 4)) == Fraction(3, 2)


def test_quad_sqrt_eight():
    r = quad_sqrt(Fraction(8))
    assert isinstance(r, QuadExt)
    assert (r.a, r.b, r.d) == (Fraction(0), Fraction(2), 2)
    assert r * r == 8


def test_quad_sqrt_zero():
    assert quad_sqrt(Fraction(0)) == 0


def test_quad_sqrt_negative_is_elliptic_error():
    with pytest.raises(ScalarError):
        quad_sqrt(Fraction(-1))


def test_quad_sqrt_squares_back_property():
    rng = SplitMix64.for_kind("sqrt-prop", 7)
    for _ in range(300):
        x = Fraction(rng.below(10**6), rng.below(10**6) + 1)
        r = quad_sqrt(x)
        assert r * r == x


def test_square_free_decomposition():
    assert square_free_decomposition(1) == (1, 1)
    assert square_free_decomposition(8) == (2, 2)
    assert square_free_decomposition(360) == (6, 10)
    assert square_free_decomposition(10**6) == (1000, 1)


def test_quadext_conjugate_and_norm():
    v = QuadExt(Fraction(3), Fraction(2), 5)
    assert v.conjugate() == QuadExt(Fraction(3), Fraction(-2), 5)
    assert v.norm() == 9 - 4 * 5
    assert v * v.conjugate() == v.norm()


def test_quadext_embeds_rationals():
    # b = 0 collapses to the plain rational, so comparisons work
    assert quad_make(Fraction(7, 3), Fraction(0), 5) == Fraction(7, 3)
    v = QuadExt(Fraction(1), Fraction(1), 2)
    assert v - QuadExt(Fraction(0), Fraction(1), 2) == Fraction(1)


def test_quadext_mixed_radicands_rejected():
    a = QuadExt(Fraction(0), Fraction(1), 2)
    b = QuadExt(Fraction(0), Fraction(1), 3)
    with pytest.raises(ScalarError):
        _ = a + b
    with pytest.raises(ScalarError):
        _ = a * b


def test_quadext_requires_squarefree_radicand():
    with pytest.raises(ScalarError):
        QuadExt(Fraction(0), Fraction(1), 4)
    with pytest.raises(ScalarError):
        QuadExt(Fraction(1), Fraction(0), 2)


def test_quadext_division():
    v = QuadExt(Fraction(1), Fraction(1), 2)
    w = QuadExt(Fraction(3), Fraction(-2), 2)
    assert (v * w) / w == v
    assert 1 / v * v == 1


def _random_rat(rng, span=10**6):
    num = rng.int_between(-span, span)
    den = rng.int_between(1, span)
    return Fraction(num, den)


def test_field_axioms_on_random_rats():
    # 1000 random pairs: Fraction really is an exact field
    rng = SplitMix64.for_kind("field-axioms", 1)
    for _ in range(1000):
        a = _random_rat(rng)
        b = _random_rat(rng)
        c = _random_rat(rng)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == 0
        if a != 0:
            assert a * (1 / a) == 1


def test_field_axioms_on_quadext():
    rng = SplitMix64.for_kind("quadext-axioms", 2)
    for _ in range(200):
        d = 2
        mk = lambda: quad_make(
            Fraction(rng.int_between(-50, 50), rng.int_between(1, 9)),
            Fraction(rng.int_between(-50, 50), rng.int_between(1, 9)),
            d,
        )
        a, b, c = mk(), mk(), mk()
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        if a != 0 and not (isinstance(a, QuadExt) and a.norm() == 0):
            assert (b / a) * a == b


def test_canonical_uniqueness():
    assert Fraction(2, 4) == Fraction(1, 2)
    assert (Fraction(2, 4).numerator, Fraction(2, 4).denominator) == (1, 2)
    v = QuadExt(Fraction(2, 4), Fraction(6, 4), 3)
    w = QuadExt(Fraction(1, 2), Fraction(3, 2), 3)
    assert v == w and hash(v) == hash(w)
