"""Prime splitting, valuations, residue fields.

Expected splitting data is derived here by elementary means (mod-p polynomial
factorization where the power basis is p-maximal, Newton polygon slopes for
totally ramified cases, multiplicative orders for the unramified pattern) and
frozen as literals, so the library is checked against independent arithmetic.
"""

import random

from isodescent.numfield.field import NumberField, field_from_power
from isodescent.numfield.primes import (
    PrimeIdeal,
    primes_above,
    ramified_primes,
    split_prime,
)
from isodescent.polyq import factor_mod_p
from isodescent.ratmath import QQ


def quintic():
    # x^5 - 2, power basis is maximal
    return NumberField([-2, 0, 0, 0, 0, 1])


def septic_nine():
    # x^7 - 9: index 27, so p = 3 exercises the quotient-algebra splitting
    return NumberField([-9, 0, 0, 0, 0, 0, 0, 1])


def septic_three():
    # x^7 - 3: power basis is maximal; same field as x^7 - 9 abstractly
    return NumberField([-3, 0, 0, 0, 0, 0, 0, 1])


def test_totally_ramified_small():
    K = quintic()
    pr = split_prime(K, 2)
    # Newton polygon of x^5 - 2 at 2: single slope 1/5, so e=5, f=1
    assert len(pr) == 1
    P = pr[0]
    assert (P.e, P.f) == (5, 1)
    assert P.norm() == 2
    th = K.gen
    assert P.valuation(th) == 1
    assert P.valuation(K.from_rational(2)) == 5
    assert P.valuation(K.from_rational(QQ(1, 2))) == -5
    assert P.valuation(K.mul(th, th)) == 2


def test_inert_prime_quintic():
    K = quintic()
    # 11 = 1 mod 5 and 2^((11-1)/5) = 4 != 1 mod 11, so x^5 - 2 stays
    # irreducible mod 11: a single unramified prime of degree 5
    pr = split_prime(K, 11)
    assert len(pr) == 1
    assert (pr[0].e, pr[0].f) == (1, 5)
    assert pr[0].norm() == 11 ** 5


def test_split_pattern_matches_mod_p_factorization():
    K = quintic()
    for p in [3, 5, 7, 13, 31, 41]:
        pr = split_prime(K, p)
        n = sum(P.e * P.f for P in pr)
        assert n == 5
        if p != 5 and p != 2:
            # power basis is maximal, so the factor degrees are the residue
            # degrees and multiplicities are ramification indices
            _, fac = factor_mod_p(K.fz, p)
            degs = sorted((len(g) - 1, e) for g, e in fac)
            got = sorted((P.f, P.e) for P in pr)
            assert degs == got, (p, degs, got)


def test_index_prime_splitting_matches_isomorphic_field():
    # x^7 - 9 and x^7 - 3 define the same field (9 = 3^2 and 2*4 = 1 mod 7),
    # so every rational prime must have identical splitting data in both.
    K9 = septic_nine()
    K3 = septic_three()
    assert K9.maximal_order()[2] == 27
    assert K3.maximal_order()[2] == 1
    for p in [2, 3, 5, 7, 13, 29, 41]:
        d9 = sorted((P.e, P.f) for P in split_prime(K9, p))
        d3 = sorted((P.e, P.f) for P in split_prime(K3, p))
        assert d9 == d3, (p, d9, d3)


def test_wild_and_tame_ramification_septic():
    K = septic_nine()
    pr3 = split_prime(K, 3)
    # eta^7 = 9 gives 7 v(eta) = 2 v(3), so v(3) = 7: totally ramified
    assert len(pr3) == 1 and (pr3[0].e, pr3[0].f) == (7, 1)
    eta = K.gen
    assert pr3[0].valuation(eta) == 2
    # eta^4 / 3 is integral of valuation 8 - 7 = 1: a uniformizer
    u = K.scale(K.pow(eta, 4), QQ(1, 3))
    assert pr3[0].valuation(u) == 1
    pr7 = split_prime(K, 7)
    # x^7 - 2 = (x - 2)^7 mod 7 by Fermat: wildly ramified
    assert len(pr7) == 1 and (pr7[0].e, pr7[0].f) == (7, 1)
    pr41 = split_prime(K, 41)
    # 41 has order 2 mod 7 and x -> x^7 is a bijection on F_41, so the
    # pattern is one linear factor and three quadratics
    assert sorted((P.e, P.f) for P in pr41) == [(1, 1), (1, 2), (1, 2), (1, 2)]


def test_valuation_additive():
    K = quintic()
    rng = random.Random(7)
    primes = split_prime(K, 2) + split_prime(K, 3) + split_prime(K, 5)
    for _ in range(12):
        x = tuple(QQ(rng.randint(-6, 6)) for _ in range(5))
        y = tuple(QQ(rng.randint(-6, 6)) for _ in range(5))
        if K.is_zero(x) or K.is_zero(y):
            continue
        for P in primes:
            assert P.valuation(K.mul(x, y)) == P.valuation(x) + P.valuation(y)


def test_valuations_recover_norm():
    # |N(x)| = prod over primes of N(P)^(v_P(x)) at the primes dividing it
    K = quintic()
    x = K.add(K.pow(K.gen, 3), K.from_rational(2))  # theta^3 + 2
    nx = K.norm(x)
    val = int(nx if nx > 0 else -nx)
    total = 1
    from isodescent.ratmath import factorize, numer
    for p in factorize(int(numer(val))):
        for P in split_prime(K, p):
            v = P.valuation(x)
            assert v >= 0
            total *= P.norm() ** v
    assert total == val


def test_residue_field_basic():
    K = quintic()
    # at p = 3 theta has a linear factor x - 2 (2^5 = 32 = 2 mod 3)
    pr = split_prime(K, 3)
    lin = [P for P in pr if P.f == 1]
    assert lin
    P = lin[0]
    rf = P.residue_field()
    th_red = rf.reduce_coords([int(c) for c in [0, 1, 0, 0, 0]])
    # theta = 2 at this place, so 2 theta^2 = 8 = 2 mod 3
    two_th2 = rf.mul(rf.mul(th_red, th_red), rf.reduce_coords([2, 0, 0, 0, 0]))
    expect = rf.reduce_coords([2, 0, 0, 0, 0])
    assert two_th2 == expect
    one = rf.one()
    assert rf.mul(one, th_red) == th_red
    inv = rf.inverse(th_red)
    assert rf.mul(inv, th_red) == one


def test_residue_field_inert_arithmetic():
    K = quintic()
    P = split_prime(K, 7)[-1]
    rf = P.residue_field()
    q = rf.q
    assert q == 7 ** P.f
    g = rf.generator()
    # generator order is exactly q - 1
    assert rf.pow(g, q - 1) == rf.one()
    from isodescent.ratmath import factorize
    for r in factorize(q - 1):
        assert rf.pow(g, (q - 1) // r) != rf.one()


def test_residue_symbol_rational_prime():
    # degree-1 field: the symbol is the classical power residue character
    K = NumberField([QQ(-1), QQ(1)], check_irreducible=False)  # x - 1
    P = split_prime(K, 11)[0]
    ell = 5
    # fifth powers mod 11 are {1, 10}: dlog 0 exactly on those
    seen = {}
    for a in range(1, 11):
        d = P.residue_symbol_dlog(K.from_rational(a), ell)
        seen[a] = d
    fifth_powers = sorted({pow(a, 5, 11) for a in range(1, 11)})
    for a in range(1, 11):
        assert (seen[a] == 0) == (a in fifth_powers)
    # multiplicativity
    for a in range(1, 11):
        for b in range(1, 11):
            assert (seen[a] + seen[b]) % ell == seen[a * b % 11]


def test_residue_symbol_multiplicative_in_field():
    K = quintic()
    P = split_prime(K, 11)[0]
    ell = 5
    assert (P.norm() - 1) % ell == 0
    rng = random.Random(23)
    elts = []
    while len(elts) < 6:
        x = tuple(QQ(rng.randint(-4, 4)) for _ in range(5))
        if not K.is_zero(x):
            elts.append(x)
    ds = [P.residue_symbol_dlog(x, ell) for x in elts]
    for i in range(len(elts)):
        for j in range(len(elts)):
            prod = K.mul(elts[i], elts[j])
            assert P.residue_symbol_dlog(prod, ell) == (ds[i] + ds[j]) % ell
    # ell-th powers of units land at dlog 0
    x = K.add(K.gen, K.from_rational(3))
    assert P.residue_symbol_dlog(K.pow(x, 5), 5) == 0


def test_unit_residue_with_valuation():
    K = quintic()
    P = split_prime(K, 2)[0]
    rf = P.residue_field()
    # theta has valuation 1; unit part of theta^3 * 5 is 5 * (unit of theta)^3
    x = K.scale(K.pow(K.gen, 3), 5)
    assert P.valuation(x) == 3
    u = P.unit_residue(x)
    assert not rf.is_zero(u)
    # consistency: unit_residue(x * theta) = unit_residue(x) * unit_residue(theta)
    ut = P.unit_residue(K.gen)
    x2 = K.mul(x, K.gen)
    assert P.unit_residue(x2) == rf.mul(u, ut)


def test_uniformizer_properties():
    K = quintic()
    for p in [2, 3, 5, 13]:
        for P in split_prime(K, p):
            pi = P.uniformizer()
            assert P.valuation(pi) == 1
            for Q in split_prime(K, p):
                if Q is not P:
                    assert Q.valuation(pi) == 0


def test_primes_above_and_ramified():
    K = quintic()
    assert ramified_primes(K) == [2, 5]
    pr = primes_above(K, [2, 3, 5, 13])
    assert sum(P.e * P.f for P in pr if P.p == 13) == 5
    assert all(isinstance(P, PrimeIdeal) for P in pr)


def test_degree_one_field_primes():
    K = NumberField([QQ(-1), QQ(1)], check_irreducible=False)
    P = split_prime(K, 7)[0]
    assert (P.e, P.f) == (1, 1)
    assert P.valuation(K.from_rational(49)) == 2
    assert P.valuation(K.from_rational(QQ(3, 7))) == -1
    rf = P.residue_field()
    assert rf.mul(rf.reduce_coords([3]), rf.reduce_coords([5])) == rf.reduce_coords([1])
