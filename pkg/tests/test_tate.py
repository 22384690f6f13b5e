"""Local reduction data: Kodaira types, Tamagawa numbers, conductors."""

import random

from isodescent.elliptic.curve import ModelChange, curve_from_list, minimal_model
from isodescent.elliptic.tate import (
    all_local_data,
    bad_reduction_primes,
    conductor,
    tamagawa_product,
    tate_local,
)
from isodescent.ratmath import QQ

E37 = curve_from_list([0, 0, 1, -1, 0])
E1950 = curve_from_list([1, 0, 0, -355303, -89334583])
E1230 = curve_from_list([1, 0, 0, 2305, -15975])


def _vp(n: int, p: int) -> int:
    v = 0
    while n and n % p == 0:
        n //= p
        v += 1
    return v


def test_good_reduction():
    loc = tate_local(E37, 2)
    assert loc.kodaira == "I0" and loc.is_good and loc.f == 0 and loc.tamagawa == 1


def test_37a1_at_37():
    loc = tate_local(E37, 37)
    assert loc.kodaira == "I1"
    assert loc.tamagawa == 1
    assert loc.f == 1
    assert loc.vdisc == 1
    assert conductor(E37) == 37


def test_conductor_anchors():
    # classical small-conductor curves
    want = {
        (0, -1, 1, -10, -20): 11,
        (1, 0, 1, 4, -6): 14,
        (1, 1, 1, -10, -10): 15,
        (0, 0, 1, 0, -7): 27,
        (0, 0, 0, 4, 0): 32,
        (0, 0, 0, 0, 1): 36,
        (0, 0, 1, -1, 0): 37,
        (0, 0, 0, -4, 0): 64,
        (0, 1, 1, -2, 0): 389,
        (0, 0, 1, -7, 6): 5077,
    }
    for coeffs, N in want.items():
        assert conductor(curve_from_list(coeffs)) == N, "conductor of %r" % (coeffs,)


def test_11a1_multiplicative():
    E = curve_from_list([0, -1, 1, -10, -20])
    loc = tate_local(E, 11)
    assert loc.kodaira == "I5"
    assert loc.reduction == "split multiplicative"
    assert loc.tamagawa == 5 and loc.f == 1 and loc.vdisc == 5


def test_1950y1_local_data():
    data = all_local_data(E1950)
    assert sorted(data) == [2, 3, 5, 13]
    assert (data[2].kodaira, data[2].tamagawa) == ("I20", 20)
    assert data[2].reduction == "split multiplicative"
    assert (data[3].kodaira, data[3].tamagawa) == ("I10", 10)
    assert data[3].reduction == "split multiplicative"
    assert (data[5].kodaira, data[5].tamagawa, data[5].f) == ("II", 1, 2)
    assert (data[13].kodaira, data[13].tamagawa) == ("I5", 5)
    assert data[13].reduction == "split multiplicative"
    assert conductor(E1950) == 1950
    assert tamagawa_product(E1950) == 20 * 10 * 5


def test_1230k1_local_data():
    data = all_local_data(E1230)
    assert sorted(data) == [2, 3, 5, 41]
    for p in (2, 3, 5):
        assert data[p].kodaira == "I7"
        assert data[p].reduction == "split multiplicative"
        assert data[p].tamagawa == 7
    assert data[41].kodaira == "I1"
    assert data[41].reduction == "nonsplit multiplicative"
    assert data[41].tamagawa == 1
    assert conductor(E1230) == 1230
    assert tamagawa_product(E1230) == 343


def test_36a1_additive_fibers():
    E = curve_from_list([0, 1])
    data = all_local_data(E)
    assert (data[2].kodaira, data[2].tamagawa, data[2].f) == ("IV", 3, 2)
    assert (data[3].kodaira, data[3].tamagawa, data[3].f) == ("III", 2, 2)


def test_star_fibers_at_two():
    loc = tate_local(curve_from_list([0, 0, 0, 4, 0]), 2)      # conductor 32
    assert (loc.kodaira, loc.tamagawa, loc.f, loc.vdisc) == ("I3*", 4, 5, 12)
    loc = tate_local(curve_from_list([0, 0, 0, -4, 0]), 2)     # conductor 64
    assert (loc.kodaira, loc.tamagawa, loc.f, loc.vdisc) == ("I2*", 4, 6, 12)


def _quadratic_twist(E, d: int):
    return curve_from_list([0, 0, 0, -27 * E.c4 * d * d, -54 * E.c6 * d ** 3])


def test_ramified_twist_of_multiplicative_fiber():
    # twisting split I5 at 11 by a ramified quadratic character gives I5*;
    # the two twist classes split the component-group action between them,
    # so one has all four components rational and the other only two.
    E = curve_from_list([0, -1, 1, -10, -20])
    cs = set()
    for d in (11, -11):
        loc = tate_local(_quadratic_twist(E, d), 11)
        assert loc.kodaira == "I5*"
        assert loc.f == 2
        assert loc.vdisc == 11
        cs.add(loc.tamagawa)
    assert cs == {2, 4}


def test_iv_star_fiber():
    # y^2 = x^3 + 5^4 at 5: v(disc) = 8 with c4 = 0 lands on IV*, and the
    # deciding quadratic Y^2 - 1 splits mod 5, so three components are
    # rational
    loc = tate_local(curve_from_list([0, 625]), 5)
    assert (loc.kodaira, loc.tamagawa, loc.f, loc.vdisc) == ("IV*", 3, 2, 8)


def test_wild_fiber_at_three():
    # y^2 = x^3 + 3 has v3(a6) = 1 at the singular point, so the type is II
    # with a wild conductor part: f = v(disc) = 5
    loc = tate_local(curve_from_list([0, 3]), 3)
    assert (loc.kodaira, loc.tamagawa, loc.f, loc.vdisc) == ("II", 1, 5, 5)


def test_kodaira_table_at_large_primes():
    # for p >= 5 the type is a function of (v(c4), v(disc)) on a minimal
    # model; spot-check every additive fiber of a batch of twisted curves
    table_by_vdisc = {2: "II", 3: "III", 4: "IV", 8: "IV*", 9: "III*", 10: "II*"}
    rng = random.Random(11)
    for _ in range(12):
        p = rng.choice((5, 7, 13))
        a4 = rng.randint(-6, 6) * p ** rng.choice((0, 1, 2))
        a6 = rng.randint(-6, 6) * p
        try:
            E = curve_from_list([0, 0, 0, a4, a6])
        except AssertionError:
            continue
        Emin, _ = minimal_model(E)
        for q, loc in all_local_data(Emin).items():
            if q < 5 or loc.reduction != "additive":
                continue
            vc4 = _vp(int(Emin.c4), q) if Emin.c4 != 0 else 99
            if loc.vdisc == 6 + (loc.vdisc - 6) and loc.kodaira.endswith("*") \
                    and loc.kodaira not in ("IV*", "III*", "II*"):
                m = int(loc.kodaira[1:-1])
                if m == 0:
                    assert loc.vdisc == 6
                else:
                    assert vc4 == 2 and loc.vdisc == 6 + m
            else:
                assert table_by_vdisc[loc.vdisc] == loc.kodaira


def test_transform_invariance():
    ch = ModelChange(QQ(1, 10), 4, 1, QQ(3, 2))
    Ebad = ch.apply(E1950)
    for p in (2, 3, 5, 13):
        assert tate_local(Ebad, p) == tate_local(E1950, p)


def test_conductor_exponent_bounds():
    rng = random.Random(7)
    for _ in range(15):
        coeffs = [rng.randint(-4, 4) for _ in range(5)]
        try:
            E = curve_from_list(coeffs)
        except AssertionError:
            continue
        for p, loc in all_local_data(E).items():
            cap = 8 if p == 2 else (5 if p == 3 else 2)
            assert 1 <= loc.f <= cap
            assert loc.f <= loc.vdisc


def test_bad_primes_divide_discriminant():
    for E in (E37, E1950, E1230):
        Emin, _ = minimal_model(E)
        d = abs(int(Emin.disc))
        for p in bad_reduction_primes(E):
            assert d % p == 0
