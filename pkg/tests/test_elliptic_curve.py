"""Weierstrass models: invariants, group law, torsion, minimal models."""

from hypothesis import given, settings, strategies as st

from isodescent.elliptic.curve import (
    CurvePoint,
    IDENTITY,
    ModelChange,
    WeierstrassCurve,
    curve_from_list,
    division_polynomial,
    is_minimal,
    minimal_model,
    points_with_x,
    torsion_subgroup,
    two_torsion_poly,
    x_coordinates_of_n_torsion,
)
from isodescent.polyq import peval, roots_rational
from isodescent.ratmath import QQ

E37 = curve_from_list([0, 0, 1, -1, 0])          # conductor 37, rank 1
E36 = curve_from_list([0, 1])                    # y^2 = x^3 + 1, torsion Z/6
E1950 = curve_from_list([1, 0, 0, -355303, -89334583])
E1230 = curve_from_list([1, 0, 0, 2305, -15975])
EBIG5 = curve_from_list([1, 1, 1, -12241995603, 781027222459441])

P37 = E37.point(0, 0)


def test_invariants_37a1():
    assert E37.b2 == 0
    assert E37.b4 == -2
    assert E37.b6 == 1
    assert E37.b8 == -1
    assert E37.c4 == 48
    assert E37.c6 == -216
    assert E37.disc == 37
    assert E37.j == QQ(48 ** 3, 37)


def test_point_normalization():
    assert CurvePoint(4, 6, 2) == CurvePoint(2, 3, 1)
    assert CurvePoint(0, 5, 0) == IDENTITY
    assert IDENTITY.is_identity
    assert not CurvePoint(2, 3, 1).is_identity


def test_short_form_constructor():
    E = curve_from_list([4, 0])
    assert E.a_list() == [0, 0, 0, QQ(4), 0]


def test_known_multiples_on_37a1():
    # frozen from the standard generator data for this curve
    want = {
        1: (0, 0),
        2: (1, 0),
        3: (-1, -1),
        4: (2, -3),
        5: (QQ(1, 4), QQ(-5, 8)),
        6: (6, 14),
    }
    for n, xy in want.items():
        Q = E37.mul(n, P37)
        assert Q.xy() == (QQ(xy[0]), QQ(xy[1])), "wrong %d-th multiple" % n
    assert E37.mul(0, P37) == IDENTITY
    assert E37.add(E37.mul(3, P37), E37.neg(E37.mul(3, P37))) == IDENTITY


def test_negation_and_subtraction():
    Q = E37.mul(4, P37)
    assert E37.sub(Q, P37) == E37.mul(3, P37)
    R = E37.neg(P37)
    assert R.xy() == (0, -1)
    assert E37.contains(R)


@settings(max_examples=40, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9))
def test_mul_is_homomorphism(n, m):
    left = E37.mul(n + m, P37)
    right = E37.add(E37.mul(n, P37), E37.mul(m, P37))
    assert left == right


@settings(max_examples=25, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_add_associative_commutative(a, b, c):
    Pa, Pb, Pc = (E37.mul(k, P37) for k in (a, b, c))
    assert E37.add(Pa, Pb) == E37.add(Pb, Pa)
    assert E37.add(E37.add(Pa, Pb), Pc) == E37.add(Pa, E37.add(Pb, Pc))


def test_point_constructor_rejects_off_curve():
    try:
        E37.point(1, 1)
    except AssertionError:
        pass
    else:
        raise AssertionError("expected an off-curve point to be rejected")


# -- coordinate changes ------------------------------------------------------

rat9 = st.fractions(min_value=-9, max_value=9, max_denominator=4)
rat_u = rat9.filter(lambda u: u != 0)


@settings(max_examples=30, deadline=None)
@given(rat_u, rat9, rat9, rat9)
def test_model_change_roundtrip(u, r, s, t):
    ch = ModelChange(u, r, s, t)
    E2 = ch.apply(E37)
    assert E2.j == E37.j
    assert E2.disc == E37.disc / QQ(u) ** 12
    for n in (1, 2, 5):
        P = E37.mul(n, P37)
        Q = ch.push(P)
        assert E2.contains(Q)
        assert ch.pull(Q) == P
    assert ch.inverse().apply(E2) == E37


@settings(max_examples=25, deadline=None)
@given(rat_u, rat9, rat_u, rat9, rat9, rat9)
def test_model_change_compose(u1, r1, u2, r2, s2, t2):
    c1 = ModelChange(u1, r1, 1, -2)
    c2 = ModelChange(u2, r2, s2, t2)
    c12 = c1.compose(c2)
    assert c12.apply(E37) == c2.apply(c1.apply(E37))
    P = E37.mul(3, P37)
    assert c12.push(P) == c2.push(c1.push(P))


def test_model_change_identity_and_inverse_compose():
    ch = ModelChange(QQ(2, 3), 1, -4, QQ(5, 2))
    both = ch.compose(ch.inverse())
    assert both == ModelChange(1, 0, 0, 0)


# -- division polynomials ----------------------------------------------------


def test_division_polynomial_degree_and_lead():
    # y-free convention: odd n keeps the full polynomial, even n drops the
    # factor (2y + a1 x + a3); the degrees and leading terms follow suit.
    for n in range(2, 10):
        f = division_polynomial(E37, n)
        if n % 2:
            assert len(f) - 1 == (n * n - 1) // 2
            assert f[-1] == n
        else:
            assert len(f) - 1 == (n * n - 4) // 2
            assert f[-1] == QQ(n, 2)


def test_division_polynomial_vanishes_at_torsion():
    f5 = division_polynomial(E1950, 5)
    assert peval(f5, QQ(2678)) == 0
    f7 = division_polynomial(E1230, 7)
    assert peval(f7, QQ(10)) == 0
    f3 = division_polynomial(E36, 3)
    assert peval(f3, QQ(0)) == 0


def test_division_polynomial_nonzero_off_torsion():
    # the generator of 37a1 has infinite order, so no f_n may kill it
    for n in range(2, 9):
        assert peval(division_polynomial(E37, n), QQ(0)) != 0


def test_x_coordinates_of_n_torsion():
    assert QQ(2678) in x_coordinates_of_n_torsion(E1950, 5)
    assert QQ(10) in x_coordinates_of_n_torsion(E1230, 7)
    # y^2 = x^3 + 1: 2-torsion at x = -1, 3-torsion at x = 0
    assert x_coordinates_of_n_torsion(E36, 2) == [QQ(-1)]
    assert QQ(0) in x_coordinates_of_n_torsion(E36, 3)


def test_points_with_x():
    pts = points_with_x(E37, 0)
    assert {P.xy() for P in pts} == {(QQ(0), QQ(0)), (QQ(0), QQ(-1))}
    assert points_with_x(E37, 3) == []       # 27 - 3 = 24 is not a square
    only = points_with_x(E36, -1)
    assert len(only) == 1 and only[0].xy() == (QQ(-1), QQ(0))


# -- torsion -----------------------------------------------------------------


def _lutz_nagell_points(a: int, b: int):
    """Independent torsion enumeration for y^2 = x^3 + ax + b: integral
    points with y = 0 or y^2 dividing the discriminant, filtered by order."""
    E = curve_from_list([a, b])
    disc = abs(int(E.disc))
    ys = [0]
    d = 1
    while d * d <= disc:
        if disc % (d * d) == 0:
            ys.extend((d, -d))
        d += 1
    pts = set()
    for y in ys:
        for x in roots_rational([QQ(b - y * y), QQ(a), QQ(0), QQ(1)]):
            P = CurvePoint(x, y, 1)
            if E.contains(P) and E.order_of_point(P, cap=16) is not None:
                pts.add(P.xy())
    return pts


def test_torsion_against_lutz_nagell():
    expect = {
        (0, 1): (6,),       # (2,3) generates; (-1,0), (0,±1), (2,±3)
        (-1, 0): (2, 2),    # full 2-torsion: x = -1, 0, 1
        (0, 4): (3,),       # (0,±2)
        (4, 0): (4,),       # (2,±4) over (0,0)
    }
    for (a, b), invs in expect.items():
        E = curve_from_list([a, b])
        T = torsion_subgroup(E)
        assert T.invariants == invs, "wrong structure for y^2=x^3+%dx+%d" % (a, b)
        got = {P.xy() for P in T.points if not P.is_identity}
        assert got == _lutz_nagell_points(a, b)
        for g, n in zip(T.generators, invs):
            assert E.order_of_point(g) == n


def test_torsion_of_descent_curves():
    T = torsion_subgroup(E1950)
    assert T.invariants == (5,)
    assert E1950.point(2678, -136123) in T.points
    T = torsion_subgroup(E1230)
    assert T.invariants == (7,)
    assert E1230.point(10, -95) in T.points
    T = torsion_subgroup(EBIG5)
    assert T.invariants == (5,)
    assert EBIG5.order_of_point(EBIG5.point(-49091, 35573052)) == 5


def test_torsion_trivial_on_rank_one_curve():
    T = torsion_subgroup(E37)
    assert T.invariants == () and T.order == 1 and T.points == (IDENTITY,)
    assert T.is_cyclic()


def test_torsion_survives_bad_models():
    # same curve, ugly coordinates
    ch = ModelChange(QQ(1, 6), 3, 2, -5)
    T = torsion_subgroup(ch.apply(E36))
    assert T.invariants == (6,)


# -- minimal models ----------------------------------------------------------


def test_minimal_model_fixed_points():
    for E in (E37, E1950, E1230, E36):
        assert is_minimal(E)
        Emin, ch = minimal_model(E)
        assert Emin == E
        assert ch == ModelChange(1, 0, 0, 0)


def test_minimal_model_recovers_scaled_curve():
    for E in (E37, E1950):
        ch = ModelChange(QQ(1, 6), 12, 3, QQ(7, 2))
        Ebad = ch.apply(E)
        Emin, back = minimal_model(Ebad)
        assert Emin == E, "minimal model is unique, so we must get back the input"
        assert back.apply(Ebad) == E
        assert Emin.j == Ebad.j


def test_minimal_model_strips_twelfth_powers():
    # y^2 = x^3 + 5^6 is 5-scaled from y^2 = x^3 + 1
    E = curve_from_list([0, 5 ** 6])
    Emin, _ = minimal_model(E)
    assert Emin == E36
    assert abs(int(Emin.disc)) == 432


def test_two_torsion_poly_matches_square():
    # (2y + a1 x + a3)^2 = F(x) on the curve
    for n in (1, 3, 7):
        P = E37.mul(n, P37)
        x, y = P.xy()
        lhs = (2 * y + E37.a1 * x + E37.a3) ** 2
        assert lhs == peval(two_torsion_poly(E37), x)
