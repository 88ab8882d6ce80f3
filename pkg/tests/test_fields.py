import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superelliptic import QQ, ExtensionField, PrimeField, field_from_obj
from superelliptic.errors import DomainError


F7 = PrimeField(7)
F11 = PrimeField(11)
F25 = ExtensionField(5, 2, modulus=[2, 0, 1])


def test_rational_addition():
    assert QQ(Fraction(1, 2)) + QQ(Fraction(1, 3)) == QQ(Fraction(5, 6))


def test_rational_canonical_form():
    a = QQ(Fraction(4, -6))
    assert a.value == Fraction(-2, 3)
    assert a.value.denominator > 0


def test_prime_field_inverse():
    assert F7(3).inverse() == F7(5)  # 3 * 5 = 15 = 1 mod 7


def test_prime_field_residues_normalized():
    assert F7(-1).value == 6
    assert F7(21).value == 0


def test_extension_multiplication_reduces():
    # (x+1)(x+4) in F5[x]/(x^2+2): x^2+5x+4 = x^2+4 = (x^2+2) + 2 -> 2
    g = F25.generator
    assert (g + 1) * (g + 4) == F25(2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        F7(0).inverse()
    with pytest.raises(ZeroDivisionError):
        QQ(1) / QQ(0)
    with pytest.raises(ZeroDivisionError):
        F25.zero.inverse()


def test_domain_mismatch():
    with pytest.raises(DomainError):
        F7(1) + F11(1)
    with pytest.raises(DomainError):
        QQ(1) + F7(1)


@given(st.fractions(), st.fractions(), st.fractions())
@settings(max_examples=60, deadline=None)
def test_field_axioms_rationals(a, b, c):
    x, y, z = QQ(a), QQ(b), QQ(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == QQ(0)
    if b != 0:
        assert y * y.inverse() == QQ(1)


def _axiom_check(field, rng, rounds=40):
    for _ in range(rounds):
        x, y, z = (field.random(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + (-x) == field.zero
        assert x * field.one == x
        if y != field.zero:
            assert y * y.inverse() == field.one


def test_field_axioms_prime_field():
    _axiom_check(F11, random.Random(1))


def test_field_axioms_extension_field():
    _axiom_check(F25, random.Random(2))
    _axiom_check(ExtensionField(3, 4), random.Random(3))


def test_frobenius_additive():
    rng = random.Random(4)
    for field in (F25, ExtensionField(7, 3)):
        for _ in range(30):
            a, b = field.random(rng), field.random(rng)
            assert field.frobenius(a + b) == field.frobenius(a) + field.frobenius(b)
            assert field.frobenius(a * b) == field.frobenius(a) * field.frobenius(b)


def test_nth_root_rationals():
    assert QQ.nth_root(QQ(Fraction(4, 9)), 2) == QQ(Fraction(2, 3))
    assert QQ.nth_root(QQ(Fraction(-8, 27)), 3) == QQ(Fraction(-2, 3))
    assert QQ.nth_root(QQ(2), 2) is None
    assert QQ.nth_root(QQ(-4), 2) is None


def test_nth_root_finite_fields():
    # squares mod 11: 1, 3, 4, 5, 9
    r = F11.sqrt(F11(5))
    assert r is not None and r * r == F11(5)
    assert F11.sqrt(F11(2)) is None
    # cube roots in F25: the cube map is onto (gcd(3, 24) = 3 needs residue check)
    rng = random.Random(5)
    for _ in range(10):
        a = F25.random(rng)
        r = F25.nth_root(a, 3)
        if r is not None:
            assert r**3 == a


def test_nth_root_deterministic():
    a = F11(3)
    r1 = F11.nth_root(a, 5, seed=0)
    r2 = F11.nth_root(a, 5, seed=0)
    assert r1 == r2


def test_extension_modulus_is_pinned_and_serialized():
    e1 = ExtensionField(5, 3, seed=0)
    e2 = ExtensionField(5, 3, seed=0)
    assert e1.modulus == e2.modulus
    obj = e1.to_obj()
    e3 = field_from_obj(obj)
    assert e3 == e1


def test_element_serialization_round_trip():
    for field, vals in (
        (QQ, ["-3/4", "5", "0"]),
        (F7, ["0", "3", "6"]),
    ):
        for s in vals:
            a = field(s)
            assert field.element_from_obj(field.element_to_obj(a)) == a
    a = F25((3, 4))
    assert F25.element_from_obj(F25.element_to_obj(a)) == a


def test_rational_string_forms():
    assert QQ.element_to_str(QQ(Fraction(5, 6))) == "5/6"
    assert QQ.element_to_str(QQ(7)) == "7"


def test_field_descriptor_round_trip():
    for field in (QQ, F11, F25):
        assert field_from_obj(field.to_obj()) == field


def test_non_prime_modulus_rejected():
    with pytest.raises(DomainError):
        PrimeField(15)
    with pytest.raises(DomainError):
        ExtensionField(5, 2, modulus=[1, 0, 1])  # x^2+1 = (x+2)(x+3) over F5
