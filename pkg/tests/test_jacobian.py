import random

import pytest

from superelliptic import (
    MumfordClass,
    Poly,
    PrimeField,
    QQ,
    SuperellipticCurve,
    build_trigonal,
    cantor_add,
    cantor_mul,
    class_of_difference,
    normalize_odd_model,
    split_hyperelliptic,
    verify_trigonal_3torsion,
    weierstrass_subgroup_2torsion,
    zeta,
)
from superelliptic.errors import BudgetExceededError, ModelError, NeedsFieldExtension
from superelliptic.factor import roots
from superelliptic.jacobian import class_of_point, random_class

F11 = PrimeField(11)


def c_f11():
    return SuperellipticCurve(2, Poly(F11, [1, 0, 0, 0, 0, 1]))  # y^2 = x^5+1


def test_mumford_validation():
    curve = c_f11()
    u = Poly(F11, [-F11(2), F11.one])
    with pytest.raises(ValueError):
        MumfordClass(curve, u, Poly(F11, [1]))  # 1 != h(2) = 33 = 0 mod 11... v^2 != h mod u
    r = roots(curve.h)[0][0]
    ok = MumfordClass(curve, Poly(F11, [-r, F11.one]), Poly(F11))
    assert not ok.is_identity()
    with pytest.raises(ValueError):
        MumfordClass(curve, Poly(F11, [0, 0, 0, 1]), Poly(F11))  # deg u > g


def test_identity_laws():
    curve = c_f11()
    ident = MumfordClass.identity(curve)
    rng = random.Random(0)
    for _ in range(20):
        a = random_class(curve, rng)
        assert cantor_add(curve, a, ident) == a
        assert cantor_add(curve, a, -a) == ident


def test_group_laws_random_triples():
    curve = c_f11()
    rng = random.Random(1)
    for _ in range(60):
        a, b, c = (random_class(curve, rng) for _ in range(3))
        assert cantor_add(curve, a, b) == cantor_add(curve, b, a)
        assert cantor_add(curve, cantor_add(curve, a, b), c) == cantor_add(
            curve, a, cantor_add(curve, b, c)
        )


def test_inverse_is_negated_v():
    curve = c_f11()
    rng = random.Random(2)
    for _ in range(10):
        a = random_class(curve, rng)
        neg = -a
        assert neg.u == a.u
        if a.u.degree:
            assert neg.v == (-a.v) % a.u


def test_two_torsion_sum_rule():
    # ((x-r,0)) + ((x-r,0)) = identity; distinct roots multiply the u parts
    curve = c_f11()
    rs = [r for r, _ in roots(curve.h)]
    g1 = MumfordClass(curve, Poly(F11, [-rs[0], F11.one]), Poly(F11))
    g2 = MumfordClass(curve, Poly(F11, [-rs[1], F11.one]), Poly(F11))
    assert cantor_add(curve, g1, g1) == MumfordClass.identity(curve)
    s = cantor_add(curve, g1, g2)
    assert s.u == Poly(F11, [-rs[0], F11.one]) * Poly(F11, [-rs[1], F11.one])
    assert s.v.is_zero()


def test_class_of_difference():
    curve = c_f11()
    r = roots(curve.h)[0][0]
    pr = curve.branch_place_over(r)
    pinf = curve.infinite_places()[0]
    cls = class_of_difference(curve, pr, pinf)
    assert cls.u == Poly(F11, [-r, F11.one]) and cls.v.is_zero()
    assert class_of_difference(curve, pr, pr).is_identity()
    # P = (r1,0), Q = (r2,0): self-inverse classes multiply
    r2 = roots(curve.h)[1][0]
    pr2 = curve.branch_place_over(r2)
    d = class_of_difference(curve, pr, pr2)
    assert d.u == Poly(F11, [-r, F11.one]) * Poly(F11, [-r2, F11.one])


def test_class_of_rational_point():
    curve = c_f11()
    from superelliptic import places_over

    pl = [p for p in places_over(curve, Poly(F11, [0, 1])) if p.y_data[0] == "value"][0]
    cls = class_of_point(curve, pl)
    assert cls.u == Poly(F11, [0, 1])
    assert cls.v == Poly(F11, [pl.y_data[1]])


def test_prop5_subgroup_f11():
    verdict = weierstrass_subgroup_2torsion(c_f11())
    assert verdict.verdict
    assert verdict.extras["subgroup_size"] == 16
    names = [n for n, _, _ in verdict.assertions]
    assert "generators_order_2" in names
    assert "div_y_relation_sum_identity" in names


def test_prop5_genus3_split_family():
    # y^2 = x (x-1) ... (x-6) over F17: h splits by construction, g = 3
    f17 = PrimeField(17)
    h = Poly.from_roots(f17, [f17(i) for i in range(7)])
    curve = SuperellipticCurve(2, h)
    assert curve.genus == 3
    verdict = weierstrass_subgroup_2torsion(curve)
    assert verdict.verdict and verdict.extras["subgroup_size"] == 64


def test_prop5_needs_split_field():
    curve = SuperellipticCurve(2, Poly(PrimeField(7), [3, 1, 0, 0, 0, 1]))
    with pytest.raises(NeedsFieldExtension):
        weierstrass_subgroup_2torsion(curve)
    curve2, _ = split_hyperelliptic(curve)
    verdict = weierstrass_subgroup_2torsion(curve2)
    assert verdict.verdict and verdict.extras["subgroup_size"] == 16


def test_prop6_over_q_small_genus():
    v = verify_trigonal_3torsion(3, QQ)
    assert v.verdict
    assert v.extras["weights"][0] >= 1 and v.extras["weights"][1] >= 1
    obj = v.to_obj()
    assert obj["proposition"] == "prop6" and obj["verdict"] is True


def test_prop6_rejects_genus_2():
    with pytest.raises(ModelError):
        verify_trigonal_3torsion(2, QQ)


def test_prop6_mod_p_matches_q():
    # the same check mod a good prime: torsion order is stable (injectivity
    # of reduction on torsion)
    vq = verify_trigonal_3torsion(3, QQ)
    vp = verify_trigonal_3torsion(3, PrimeField(101))
    assert vq.verdict and vp.verdict
    assert vq.extras["weights"] == vp.extras["weights"]


def test_zeta_elliptic_hand_count():
    # y^2 = x^3 + x over F5: affine points (0,0), (2,0), (3,0) plus infinity
    curve = SuperellipticCurve(2, Poly(PrimeField(5), [0, 1, 0, 1]))
    z = zeta(curve)
    assert z.counts == [4]
    assert z.coefficients == [1, -2, 5]
    assert z.order == 4


def test_zeta_g2_invariants_and_lagrange():
    curve = c_f11()
    z = zeta(curve)
    assert z.counts[0] == 8  # hand count: 5 points with y = 0, (0, +-1), infinity
    b = z.coefficients
    g, p = 2, 11
    assert b[0] == 1 and b[4] == p**2 and b[3] == p * b[1]
    assert (z.counts[0] - (p + 1)) ** 2 <= 4 * g * g * p
    rng = random.Random(3)
    ident = MumfordClass.identity(curve)
    for _ in range(20):
        cls = random_class(curve, rng)
        assert cantor_mul(curve, cls, z.order) == ident


def test_zeta_budget():
    curve = c_f11()
    with pytest.raises(BudgetExceededError):
        zeta(curve, budget=100)


def test_orders_divide_jacobian_order():
    curve = c_f11()
    z = zeta(curve)
    verdict = weierstrass_subgroup_2torsion(curve)
    assert z.order % verdict.extras["subgroup_size"] == 0


def test_even_model_normalization():
    curve = SuperellipticCurve(2, Poly(QQ, [0, -1, 0, 0, 0, 0, 1]))  # y^2 = x^6 - x
    odd, moved = normalize_odd_model(curve)
    assert odd.m_inf % 2 == 1
    assert odd.genus == curve.genus
    assert moved is not None
    already_odd, r = normalize_odd_model(c_f11())
    assert r is None and already_odd is c_f11() or already_odd == c_f11()


def test_even_model_without_rational_branch_point_rejected():
    curve = SuperellipticCurve(2, Poly(QQ, [1, 0, 0, 1, 0, 0, 1]))  # x^6+x^3+1
    with pytest.raises(ModelError):
        normalize_odd_model(curve)


def test_cantor_requires_odd_model():
    even = SuperellipticCurve(2, Poly(QQ, [1, 0, 0, 0, 0, 0, 1]))
    with pytest.raises(ModelError):
        MumfordClass.identity(even)
        cantor_add(even, MumfordClass.identity(even), MumfordClass.identity(even))
