"""S-unit bases: shapes, certificates, and exact discrete logs."""

import random
from functools import lru_cache

from isodescent.flinalg import fl_rank
from isodescent.numfield.field import cached_field
from isodescent.numfield.primes import primes_above
from isodescent.numfield.sunits import s_unit_group, unit_rank


@lru_cache(maxsize=None)
def quintic_basis():
    K = cached_field((-2, 0, 0, 0, 0, 1))
    return K, s_unit_group(K, primes_above(K, [2, 3, 5, 13]), 5)


@lru_cache(maxsize=None)
def septic_basis():
    K = cached_field((-3, 0, 0, 0, 0, 0, 0, 1))
    return K, s_unit_group(K, primes_above(K, [2, 3, 5, 7, 41]), 7)


def test_gaussian_field_split_prime():
    K = cached_field((1, 0, 1))
    B = s_unit_group(K, primes_above(K, [5]), 3)
    assert B.certified
    assert unit_rank(K) == 0
    assert B.rank == 2 and B.s_powers == (1, 1)
    # 5 = product of the two split prime generators times a torsion unit,
    # and every torsion unit of Q(i) is a cube there
    c = B.discrete_log(K.from_rational(5))
    assert c == [1, 1]


def test_real_quadratic_unit_slot():
    K = cached_field((-2, 0, 1))
    B = s_unit_group(K, primes_above(K, [7]), 3)
    assert B.certified
    assert len(B.fund_units) == 1 and len(B.s_gens) == 2
    u = B.fund_units[0]
    assert abs(K.norm(u)) == 1
    c = B.discrete_log(K.pow(u, 4))
    assert c is not None and c[0] == 1 and c[1:] == [0, 0]


def test_quintic_basis_shape():
    K, B = quintic_basis()
    assert B.certified
    assert B.rank == 8 and len(B.fund_units) == 2
    assert B.s_powers == (1,) * 6
    for u in B.fund_units:
        assert abs(K.norm(u)) == 1
    for i, (g, P) in enumerate(zip(B.s_gens, B.primes)):
        assert P.valuation(g) == 1
        for j, Q in enumerate(B.primes):
            if j != i:
                assert Q.valuation(g) == 0


def test_quintic_dlog_roundtrip():
    K, B = quintic_basis()
    rng = random.Random(7)
    for _ in range(3):
        e = [rng.randrange(5) for _ in range(B.rank)]
        f = [rng.randrange(3) for _ in range(B.rank)]
        x = K.mul(B.element_from_exponents(e), K.pow(B.element_from_exponents(f), 5))
        assert B.discrete_log(x) == [v % 5 for v in e]


def test_quintic_generator_is_fifth_power_aware():
    # theta**5 = 2, so the class of 2 is trivial
    K, B = quintic_basis()
    assert B.discrete_log(K.from_rational(2)) == [0] * 8


def test_quintic_rational_span():
    K, B = quintic_basis()
    rows = [B.discrete_log(K.from_rational(p)) for p in (2, 3, 5, 13)]
    assert all(r is not None for r in rows)
    assert fl_rank(rows, 5) == 3


def test_quintic_rejects_non_s_unit():
    K, B = quintic_basis()
    # N(theta + 3) = -245 = -5 * 7**2 brings in a prime above 7
    assert B.discrete_log(K.add(K.gen, K.from_rational(3))) is None


def test_septic_basis_certified():
    K, B = septic_basis()
    assert B.certified
    assert B.rank == 14 and len(B.fund_units) == 3
    assert all(abs(K.norm(u)) == 1 for u in B.fund_units)


def test_septic_rational_span():
    K, B = septic_basis()
    rows = [B.discrete_log(K.from_rational(p)) for p in (2, 3, 5, 7, 41)]
    assert all(r is not None for r in rows)
    # 3 = theta**7 kills one dimension
    assert B.discrete_log(K.from_rational(3)) == [0] * 14
    assert fl_rank(rows, 7) == 4


def test_septic_dlog_roundtrip():
    K, B = septic_basis()
    rng = random.Random(11)
    e = [rng.randrange(7) for _ in range(B.rank)]
    x = B.element_from_exponents(e)
    assert B.discrete_log(x) == [v % 7 for v in e]
