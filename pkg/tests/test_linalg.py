"""Exact linear algebra checks, including randomized verification."""

import random

from isodescent.linalg import (
    SparseEchelon, charpoly, det, hnf, identity, kernel_basis, mat_inverse,
    mat_mul, mat_vec, rank, rref, snf_diagonal, solve, solve_via_crt,
)
from isodescent.ratmath import QQ, QQ0, QQ1


def rand_matrix(rng, n, m, lo=-9, hi=9):
    return [[QQ(rng.randint(lo, hi), rng.randint(1, 4)) for _ in range(m)]
            for _ in range(n)]


def test_rref_simple():
    m = [[QQ(1), QQ(2), QQ(3)], [QQ(2), QQ(4), QQ(6)], [QQ(1), QQ(0), QQ(1)]]
    red, piv = rref(m)
    assert piv == [0, 1]
    assert rank(m) == 2


def test_kernel_annihilates():
    rng = random.Random(11)
    for _ in range(20):
        m = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
        for v in kernel_basis(m):
            assert all(x == 0 for x in mat_vec(m, v))
        assert rank(m) + len(kernel_basis(m)) == len(m[0])


def test_solve_consistent_and_not():
    m = [[QQ(2), QQ(1)], [QQ(4), QQ(2)]]
    assert solve(m, [QQ(3), QQ(6)]) is not None
    assert solve(m, [QQ(3), QQ(7)]) is None
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 5)
        a = rand_matrix(rng, n, n)
        x = [QQ(rng.randint(-5, 5)) for _ in range(n)]
        b = mat_vec(a, x)
        s = solve(a, b)
        assert s is not None
        assert mat_vec(a, s) == b


def test_det_and_inverse():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(1, 5)
        a = rand_matrix(rng, n, n)
        d = det(a)
        if d == 0:
            continue
        inv = mat_inverse(a)
        assert mat_mul(a, inv) == identity(n)


def test_det_multiplicative():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(1, 4)
        a = rand_matrix(rng, n, n)
        b = rand_matrix(rng, n, n)
        assert det(mat_mul(a, b)) == det(a) * det(b)


def test_charpoly_cayley_hamilton():
    rng = random.Random(13)
    for _ in range(8):
        n = rng.randint(1, 4)
        a = rand_matrix(rng, n, n, lo=-4, hi=4)
        cp = charpoly(a)
        assert len(cp) == n + 1
        assert cp[-1] == 1  # monic
        # Cayley-Hamilton: cp(a) = 0
        acc = [[QQ0] * n for _ in range(n)]
        power = identity(n)
        for c in cp:
            for i in range(n):
                for j in range(n):
                    acc[i][j] += c * power[i][j]
            power = mat_mul(power, a)
        assert all(all(x == 0 for x in row) for row in acc)
        # constant term is (-1)^n det
        assert cp[0] == det(a) * QQ(-1) ** n


def test_solve_via_crt_matches_exact():
    rng = random.Random(17)
    for _ in range(10):
        n = rng.randint(1, 6)
        a = rand_matrix(rng, n, n, lo=-50, hi=50)
        x = [QQ(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(n)]
        b = mat_vec(a, x)
        s = solve_via_crt(a, b)
        assert s is not None
        assert mat_vec(a, s) == b
    # inconsistent system
    m = [[QQ(1), QQ(1)], [QQ(1), QQ(1)]]
    assert solve_via_crt(m, [QQ(0), QQ(1)]) is None


def test_sparse_echelon_matches_dense_rank():
    rng = random.Random(23)
    for _ in range(15):
        rows = rng.randint(1, 8)
        cols = rng.randint(1, 8)
        dense = [[QQ(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]
        ech = SparseEchelon()
        for r in dense:
            ech.add({j: v for j, v in enumerate(r) if v != 0})
        assert ech.rank == rank(dense)
        # membership: every original row reduces to zero
        for r in dense:
            assert ech.contains({j: v for j, v in enumerate(r) if v != 0})


def test_hnf_properties():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    h = hnf(m)
    # upper triangular pattern in echelon sense, nonneg pivots
    last = -1
    for row in h:
        lead = next(i for i, x in enumerate(row) if x != 0)
        assert lead > last
        assert row[lead] > 0
        last = lead
    # same lattice: each original row is an integer combination of h rows
    import itertools
    for row in m:
        r = list(row)
        for hrow in h:
            lead = next(i for i, x in enumerate(hrow) if x != 0)
            if r[lead] % hrow[lead] == 0:
                q = r[lead] // hrow[lead]
                r = [a - q * b for a, b in zip(r, hrow)]
        assert all(x == 0 for x in r), "row not in HNF lattice"
    _ = itertools


def test_snf_known():
    assert snf_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert snf_diagonal([[1, 0], [0, 1]]) == [1, 1]
    assert snf_diagonal([[2, 0], [0, 3]]) == [1, 6]


def test_snf_divisibility_and_det():
    rng = random.Random(31)
    for _ in range(10):
        n = rng.randint(1, 4)
        a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        d = snf_diagonal(a)
        for i in range(len(d) - 1):
            assert d[i + 1] % d[i] == 0
        dd = det([[QQ(x) for x in row] for row in a])
        prod = 1
        for x in d:
            prod *= x
        if len(d) == n:
            assert abs(dd) == prod
        else:
            assert dd == 0
