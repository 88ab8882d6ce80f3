import random
from fractions import Fraction

import pytest

from superelliptic import QQ, Poly, PrimeField, TruncatedSeries
from superelliptic.errors import PrecisionError, RootExtractionError

F7 = PrimeField(7)


def _series(field, coeffs, offset=0, prec=None):
    prec = prec if prec is not None else offset + len(coeffs)
    return TruncatedSeries(field, [field(c) for c in coeffs], offset, prec)


def test_valuation():
    s = _series(QQ, [1, 2], offset=3, prec=10)
    assert s.valuation() == 3


def test_valuation_zero_to_precision_raises():
    s = TruncatedSeries.zero_to(QQ, 5)
    with pytest.raises(PrecisionError):
        s.valuation()


def test_geometric_series_inverse():
    s = TruncatedSeries.from_poly(Poly(QQ, [1, -1]), 6)
    inv = s.inverse()
    assert all(inv.coefficient(k) == QQ(1) for k in range(6))


def test_inverse_precision_cost():
    # inverting valuation v costs 2v of absolute precision
    s = _series(QQ, [1, 1], offset=2, prec=8)
    inv = s.inverse()
    assert inv.offset == -2
    assert inv.prec == 8 - 2 * 2


def test_mul_precision_rule():
    a = _series(QQ, [1], offset=1, prec=5)
    b = _series(QQ, [1], offset=2, prec=7)
    c = a * b
    assert c.offset == 3
    assert c.prec == min(1 + 7, 2 + 5)


def test_sqrt_of_1_plus_t():
    s = TruncatedSeries.from_poly(Poly(QQ, [1, 1]), 9)
    r = s.nth_root(2)
    expect = [1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16), Fraction(-5, 128)]
    for k, c in enumerate(expect):
        assert r.coefficient(k) == QQ(c)
    sq = r * r
    for k in range(sq.prec):
        assert sq.coefficient(k) == s.coefficient(k)


def test_nth_root_pow_identity_random():
    rng = random.Random(20)
    for n in (2, 3, 5):
        for _ in range(10):
            coeffs = [QQ(1)] + [QQ(Fraction(rng.randint(-4, 4), rng.randint(1, 3))) for _ in range(7)]
            s = _series(QQ, [c.value for c in coeffs], prec=8)
            r = s.nth_root(n)
            p = r**n
            for k in range(min(p.prec, 8)):
                assert p.coefficient(k) == s.coefficient(k)


def test_nth_root_over_finite_field():
    rng = random.Random(21)
    for _ in range(10):
        coeffs = [F7(1)] + [F7.random(rng) for _ in range(6)]
        s = TruncatedSeries(F7, coeffs, 0, 7)
        r = s.nth_root(3)
        p = r**3
        for k in range(min(p.prec, 7)):
            assert p.coefficient(k) == s.coefficient(k)


def test_nth_root_failure():
    s = TruncatedSeries.from_poly(Poly(QQ, [2, 1]), 6)
    with pytest.raises(RootExtractionError):
        s.nth_root(2)  # 2 is not a rational square
    t = _series(QQ, [1, 1], offset=1, prec=6)
    with pytest.raises(RootExtractionError):
        t.nth_root(2)  # odd valuation


def test_laurent_shift_and_derivative():
    s = _series(QQ, [3, 0, 2], offset=-2, prec=4)  # 3 t^-2 + 2
    d = s.derivative()
    assert d.coefficient(-3) == QQ(-6)
    assert d.valuation() == -3
    sh = s.shift(5)
    assert sh.valuation() == 3


def test_derivative_drops_exponent_multiples_of_p():
    s = _series(F7, [1, 0, 0, 0, 0, 0, 0, 1], offset=0, prec=9)  # 1 + t^7
    d = s.derivative()
    assert d.is_zero_to_precision()  # 7 t^6 = 0 mod 7


def test_compose():
    # (1/(1-u)) o (t + t^2) agrees with direct expansion
    outer = TruncatedSeries.from_poly(Poly(QQ, [1, -1]), 6).inverse()
    inner = TruncatedSeries.from_poly(Poly(QQ, [0, 1, 1]), 6)
    comp = outer.compose(inner)
    direct = TruncatedSeries.from_poly(Poly(QQ, [1, -1, -1]), 6).inverse()
    for k in range(min(comp.prec, direct.prec)):
        assert comp.coefficient(k) == direct.coefficient(k)


def test_add_alignment_and_cancellation():
    a = _series(QQ, [1, 1], offset=0, prec=6)
    b = _series(QQ, [-1, 2], offset=0, prec=6)
    c = a + b
    assert c.valuation() == 1
    assert c.coefficient(1) == QQ(3)
