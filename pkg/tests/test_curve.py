import pytest

from superelliptic import (
    AT_INFINITY,
    Divisor,
    Poly,
    PrimeField,
    QQ,
    SuperellipticCurve,
    build_trigonal,
    places_over,
)
from superelliptic.errors import BadReductionError, ModelError

F11 = PrimeField(11)
F101 = PrimeField(101)


def hyp_g2():
    return SuperellipticCurve(2, Poly(QQ, [1, 0, 0, 0, 0, 1]))  # y^2 = x^5 + 1


def test_genus_trigonal_family():
    # g = s + t - 2 with t = 1 - g mod 3, s = g - t + 2
    for g, (s, t) in {3: (4, 1), 4: (6, 0), 5: (5, 2), 6: (7, 1), 7: (9, 0), 8: (8, 2)}.items():
        curve, params, p1, p2 = build_trigonal(g, QQ)
        assert curve.genus == g
        assert (params.s, params.t) == (s, t)
        assert p1.e == 3 and p1.degree == 1
        assert p2.e == 3 and p2.degree == 1


def test_genus_hyperelliptic():
    assert hyp_g2().genus == 2
    assert SuperellipticCurve(2, Poly(QQ, [1, 1, 0, 0, 0, 0, 0, 1])).genus == 3


def test_genus_matches_differential_count():
    # oracle for the genus: the number of independent holomorphic differentials
    from superelliptic import differential_basis

    for curve in (hyp_g2(), build_trigonal(3, QQ)[0], build_trigonal(5, QQ)[0]):
        assert len(differential_basis(curve)) == curve.genus


def test_reducible_model_rejected():
    with pytest.raises(ModelError):
        SuperellipticCurve(2, Poly(QQ, [1, 2, 1]))  # y^2 = (x+1)^2


def test_multiplicity_divisible_by_n_rejected():
    with pytest.raises(ModelError):
        SuperellipticCurve.from_branch(3, QQ, [(0, 3), (1, 1)])


def test_split_branch_place_rejected():
    # gcd(4, 2) = 2: the finite branch place would split
    with pytest.raises(ModelError):
        SuperellipticCurve.from_branch(4, QQ, [(0, 2), (1, 1), (2, 1)])


def test_small_characteristic_rejected():
    with pytest.raises(ModelError):
        SuperellipticCurve(2, Poly(PrimeField(3), [1, 0, 0, 0, 0, 1]))  # p = 3 <= 2g = 4
    with pytest.raises(ModelError):
        SuperellipticCurve(3, Poly(PrimeField(3), [1, 1, 1, 1]))  # p | n


def test_trigonal_requires_genus_3():
    with pytest.raises(ModelError):
        build_trigonal(2, QQ)


def test_trigonal_tiny_field_rejected():
    with pytest.raises(ModelError):
        build_trigonal(8, PrimeField(7))  # needs 10 distinct branch values and p > 16


def test_places_over_branch_value():
    curve, params, p1, p2 = build_trigonal(3, QQ)
    pls = places_over(curve, Poly(QQ, [0, 1]))  # x - alpha_1, alpha_1 = 0
    assert pls == [p1]
    assert pls[0].e == 3 and pls[0].degree == 1


def test_places_over_infinity_trigonal():
    # d_inf = 3: z^3 - 1 = (z - 1)(z^2 + z + 1) over Q
    curve, _, _, _ = build_trigonal(3, QQ)
    pls = places_over(curve, AT_INFINITY)
    assert [p.degree for p in pls] == [1, 2]
    assert all(p.e == 1 for p in pls)
    assert sum(p.e * p.degree for p in pls) == 3


def test_places_over_split_fiber():
    # y^2 = x^5 + 1 at x = 0: h(0) = 1 is a square, two rational places
    curve = hyp_g2()
    pls = places_over(curve, Poly(QQ, [0, 1]))
    assert len(pls) == 2
    assert sorted(p.y_data[1].value for p in pls) == [-1, 1]
    assert all(p.e == 1 and p.degree == 1 for p in pls)


def test_places_over_inert_fiber():
    # h(1) = 2 is not a square in Q: one place of residue degree 2
    curve = hyp_g2()
    pls = places_over(curve, Poly(QQ, [-1, 1]))
    assert len(pls) == 1 and pls[0].degree == 2


def test_places_degree_sum():
    # sum e * f = n deg(x0) over every fiber
    curve = SuperellipticCurve(2, Poly(F11, [1, 0, 0, 0, 0, 1]))
    for x0c in range(11):
        x0 = Poly(F11, [-F11(x0c), F11.one])
        pls = places_over(curve, x0)
        assert sum(p.e * p.degree for p in pls) == 2
    assert sum(p.e * p.degree for p in places_over(curve, AT_INFINITY)) == 2


def test_places_over_closed_point_f11():
    curve = SuperellipticCurve(2, Poly(F11, [1, 0, 0, 0, 0, 1]))
    q = Poly(F11, [1, 0, 1])  # irreducible over F11? -1 = 10 is not a square mod 11
    pls = places_over(curve, q)
    assert sum(p.e * p.degree for p in pls) == 2 * q.degree


def test_places_over_reducible_rejected():
    curve = hyp_g2()
    with pytest.raises(ValueError):
        places_over(curve, Poly(QQ, [-1, 0, 1]))  # x^2 - 1 = (x-1)(x+1)


def test_infinite_places_odd_hyperelliptic():
    curve = hyp_g2()
    pls = curve.infinite_places()
    assert len(pls) == 1 and pls[0].e == 2 and pls[0].degree == 1


def test_divisor_arithmetic():
    curve, _, p1, p2 = build_trigonal(3, QQ)
    d = Divisor([(p1, 3), (p2, -3)])
    assert d.degree == 0
    assert (d + (-d)).degree == 0 and len(d + (-d)) == 0
    assert (2 * d)[p1] == 6
    assert d - d == Divisor()
    assert not d.is_effective()
    assert Divisor([(p1, 1)]).is_effective()


def test_reduce_mod_good_prime():
    curve, params, _, _ = build_trigonal(3, QQ)
    curve11, red = curve.reduce_mod(11)
    assert curve11.genus == 3
    assert [(s.degree, m) for s, m in curve11.branch] == [(s.degree, m) for s, m in curve.branch]


def test_reduce_mod_bad_primes():
    curve, _, _, _ = build_trigonal(3, QQ)
    with pytest.raises(BadReductionError):
        curve.reduce_mod(3)  # p | n
    with pytest.raises(BadReductionError):
        curve.reduce_mod(2)  # branch values 0..4 collide mod 2 (and p <= 2g)


def test_base_change_splits_branch_pieces():
    curve = SuperellipticCurve(2, Poly(PrimeField(7), [3, 1, 0, 0, 0, 1]))
    from superelliptic import ExtensionField
    from superelliptic.fields import embedding

    big = ExtensionField(7, 5)
    curve2, emb = curve.base_change(big)
    assert curve2.genus == curve.genus
    assert all(piece.degree == 1 for piece, _, _ in curve2.branch_pieces())


def test_curve_file_round_trip():
    curve = hyp_g2()
    obj = curve.to_obj()
    again = SuperellipticCurve.from_obj(obj)
    assert again == curve
    trig, _, _, _ = build_trigonal(4, PrimeField(101))
    assert SuperellipticCurve.from_obj(trig.to_obj()) == trig
