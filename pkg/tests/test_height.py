"""Canonical height: anchors, the defining limit as an oracle, and the
quadratic-form identities that pin the normalization."""

import math

from isodescent.elliptic import (
    ModelChange,
    canonical_height,
    curve_from_list,
    velu_quotient,
)
from isodescent.ratmath import QQ, denom, numer


E37 = curve_from_list([0, 0, 1, -1, 0])
E389 = curve_from_list([0, 1, 1, -2, 0])


def naive_x_height(P) -> float:
    x = P.xy()[0]
    return math.log(max(abs(int(numer(x))), int(denom(x))))


def test_identity_and_torsion_vanish():
    assert canonical_height(E37, E37.identity()) == 0.0
    E36 = curve_from_list([0, 0, 0, 0, 1])
    assert canonical_height(E36, E36.point(2, 3)) == 0.0
    assert canonical_height(E36, E36.point(0, 1)) == 0.0
    E1950 = curve_from_list([1, 0, 0, -355303, -89334583])
    assert canonical_height(E1950, E1950.point(2678, -136123)) == 0.0


def test_generator_of_37a1_anchor():
    # frozen: the x-asymptotic canonical height of the 37a1 generator
    h = canonical_height(E37, E37.point(0, 0))
    assert abs(h - 0.05111140823996884) < 1e-8


def test_defining_limit_is_the_oracle():
    # h(P) = lim 4^{-n} h_x(2^n P); seven doublings already give ~1e-4
    for E, P in [
        (E37, E37.point(0, 0)),
        (curve_from_list([0, 0, 0, 0, -2]), None),
        (E389, E389.point(0, 0)),
    ]:
        if P is None:
            P = E.point(3, 5)
        h = canonical_height(E, P)
        Q = P
        for _ in range(7):
            Q = E.add(Q, Q)
        direct = naive_x_height(Q) / 4**7
        assert abs(h - direct) < 2e-3, (h, direct)


def test_quadraticity():
    for E, P in [
        (E37, E37.point(0, 0)),
        (curve_from_list([0, 0, 0, 0, -2]), None),
        (curve_from_list([0, 0, 0, -25, 0]), None),
    ]:
        if P is None:
            P = E.point(3, 5) if E.a4 == 0 else E.point(-4, 6)
        h1 = canonical_height(E, P)
        assert h1 > 0.01, "expected infinite order"
        Q = E.identity()
        for n in range(1, 6):
            Q = E.add(Q, P)
            hn = canonical_height(E, Q)
            assert abs(hn - n * n * h1) < 1e-9, (n, hn, n * n * h1)


def test_parallelogram_law_rank_two():
    P = E389.point(0, 0)
    Q = E389.point(1, 0)
    hP = canonical_height(E389, P)
    hQ = canonical_height(E389, Q)
    S = E389.add(P, Q)
    D = E389.sub(P, Q)
    lhs = canonical_height(E389, S) + canonical_height(E389, D)
    assert abs(lhs - 2 * hP - 2 * hQ) < 1e-9
    for a, b in [(2, 1), (1, 2), (3, 2)]:
        aP = P
        for _ in range(a - 1):
            aP = E389.add(aP, P)
        bQ = Q
        for _ in range(b - 1):
            bQ = E389.add(bQ, Q)
        lhs = canonical_height(E389, E389.add(aP, bQ)) + canonical_height(
            E389, E389.sub(aP, bQ)
        )
        rhs = 2 * a * a * hP + 2 * b * b * hQ
        assert abs(lhs - rhs) < 1e-8, (a, b, lhs, rhs)


def test_model_invariance():
    P = E37.point(0, 0)
    h = canonical_height(E37, P)
    for u, r, s, t in [(QQ(1, 6), 0, 0, 0), (QQ(2, 5), 3, 1, QQ(-7, 2)), (3, -1, 2, 5)]:
        ch = ModelChange(QQ(u), QQ(r), QQ(s), QQ(t))
        E2 = ch.apply(E37)
        P2 = ch.push(P)
        assert E2.contains(P2)
        assert abs(canonical_height(E2, P2) - h) < 1e-10


def test_isogeny_multiplies_height_by_degree():
    # 3-isogeny from y^2 = x^3 + 9 with kernel x = 0; (-2, 1) has infinite order
    E = curve_from_list([0, 0, 0, 0, 9])
    P = E.point(-2, 1)
    phi = velu_quotient(E, (QQ(0), QQ(1)))
    h = canonical_height(E, P)
    assert h > 0.01
    h2 = canonical_height(phi.codomain, phi.map_point(P))
    assert abs(h2 - 3 * h) < 1e-9, (h, h2)


def test_precision_parameter_stability():
    P = E37.point(0, 0)
    a = canonical_height(E37, P, digits=24)
    b = canonical_height(E37, P, digits=44)
    assert abs(a - b) < 1e-12


def test_negative_x_and_two_torsion_nearby():
    # congruent-number curve n = 5, generator (-4, 6); full rational 2-torsion
    E = curve_from_list([0, 0, 0, -25, 0])
    P = E.point(-4, 6)
    h = canonical_height(E, P)
    assert h > 0.01
    Q = E.add(P, P)
    assert abs(canonical_height(E, Q) - 4 * h) < 1e-9
