"""Root extraction: planted roots must be recovered exactly, and
non-powers must be refused with a certificate where one exists."""

import random

from isodescent.numfield.field import NumberField
from isodescent.numfield.roots import (
    INCONCLUSIVE,
    NO_BY_SYMBOL,
    NO_BY_VALUATION,
    ROOT,
    lth_root,
    polynomial_roots,
    rational_lth_root,
)
from isodescent.ratmath import QQ


def quintic():
    return NumberField([-2, 0, 0, 0, 0, 1])


def septic():
    return NumberField([-9, 0, 0, 0, 0, 0, 0, 1])


def test_rational_roots():
    assert rational_lth_root(QQ(32), 5) == 2
    assert rational_lth_root(QQ(-243, 32), 5) == QQ(-3, 2)
    assert rational_lth_root(QQ(33), 5) is None


def test_planted_fifth_powers():
    K = quintic()
    rng = random.Random(11)
    for _ in range(4):
        y = tuple(QQ(rng.randint(-3, 3)) for _ in range(5))
        if K.is_zero(y):
            continue
        x = K.pow(y, 5)
        got, status = lth_root(K, x, 5)
        assert status == ROOT
        assert K.pow(got, 5) == x


def test_planted_root_with_denominator():
    K = quintic()
    y = (QQ(1, 2), QQ(3), QQ(0), QQ(-1, 3), QQ(2))
    x = K.pow(y, 5)
    got, status = lth_root(K, x, 5)
    assert status == ROOT
    assert K.pow(got, 5) == x


def test_non_power_certified():
    K = quintic()
    # theta has valuation 1 at the prime over 2, not divisible by 5
    got, status = lth_root(K, K.gen, 5)
    assert got is None
    assert status == NO_BY_VALUATION
    # a unit-like element that is no fifth power: theta - 1 is a fundamental
    # unit, so certificates must come from residue symbols
    got, status = lth_root(K, K.add(K.gen, K.from_rational(-1)), 5)
    assert got is None
    assert status in (NO_BY_SYMBOL, INCONCLUSIVE)
    # 2 = theta^5 is a fifth power
    got, status = lth_root(K, K.from_rational(2), 5)
    assert status == ROOT
    assert got == K.gen or K.pow(got, 5) == K.from_rational(2)


def test_septic_planted_power():
    K = septic()
    y = K.add(K.pow(K.gen, 2), K.from_rational(-1))  # eta^2 - 1
    x = K.pow(y, 7)
    got, status = lth_root(K, x, 7)
    assert status == ROOT
    assert K.pow(got, 7) == x


def test_lth_root_multiplicative_sanity():
    K = quintic()
    y = K.add(K.gen, K.from_rational(1))
    x = K.pow(y, 5)
    x2 = K.scale(x, QQ(1, 32))  # divide by 2^5
    got, status = lth_root(K, x2, 5)
    assert status == ROOT
    assert K.pow(got, 5) == x2


def test_polynomial_roots_planted():
    K = quintic()
    th = K.gen
    # (x - theta)(x - 2)(x - (theta^2+1)) expanded over K
    from isodescent.kpoly import fp_mul
    lin1 = [K.neg(th), K.one]
    lin2 = [K.from_rational(-2), K.one]
    lin3 = [K.neg(K.add(K.mul(th, th), K.one)), K.one]
    poly = fp_mul(K, fp_mul(K, lin1, lin2), lin3)
    roots = polynomial_roots(K, poly)
    assert len(roots) == 3
    assert any(r == th for r in roots)
    assert any(r == K.from_rational(2) for r in roots)
    assert any(r == K.add(K.mul(th, th), K.one) for r in roots)


def test_polynomial_roots_with_scaling():
    K = quintic()
    th = K.gen
    # 6*(x - theta/2)*(x - 1/3): non-monic with rational content
    from isodescent.kpoly import fp_mul
    a = [K.neg(K.scale(th, QQ(1, 2))), K.one]
    b = [K.from_rational(QQ(-1, 3)), K.one]
    poly = [K.scale(c, 6) for c in fp_mul(K, a, b)]
    roots = polynomial_roots(K, poly)
    assert len(roots) == 2
    assert any(r == K.scale(th, QQ(1, 2)) for r in roots)
    assert any(r == K.from_rational(QQ(1, 3)) for r in roots)


def test_polynomial_no_roots():
    K = quintic()
    # x^2 - theta has no root in K: theta is theta^1 and a square root of
    # theta would generate a degree-10 field
    poly = [K.neg(K.gen), K.zero, K.one]
    roots = polynomial_roots(K, poly)
    assert roots == []


def test_polynomial_repeated_root_squarefree_handling():
    K = quintic()
    from isodescent.kpoly import fp_mul
    lin = [K.neg(K.gen), K.one]
    poly = fp_mul(K, lin, lin)
    roots = polynomial_roots(K, poly)
    assert len(roots) == 1 and roots[0] == K.gen
