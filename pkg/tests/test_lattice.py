"""Lattice reduction and enumeration against brute-force oracles."""

import itertools
import random

from isodescent.lattice import gram_matrix, lll_reduce, lovasz_check, short_vectors
from isodescent.ratmath import QQ


def brute_force_shortest(basis, box=6):
    """Oracle: shortest nonzero vector norm^2 over a coefficient box."""
    n = len(basis)
    best = None
    for coeffs in itertools.product(range(-box, box + 1), repeat=n):
        if not any(coeffs):
            continue
        v = [sum(c * basis[i][j] for i, c in enumerate(coeffs))
             for j in range(len(basis[0]))]
        norm = sum(x * x for x in v)
        if best is None or norm < best:
            best = norm
    return best


def test_lll_certificate_and_quality():
    rng = random.Random(101)
    for _ in range(12):
        n = rng.randint(2, 4)
        basis = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
        # ensure full rank
        from isodescent.linalg import det
        if det([[QQ(x) for x in row] for row in basis]) == 0:
            continue
        red, u = lll_reduce(basis)
        assert lovasz_check(red), "reduced basis fails its own certificate"
        # unimodular transform preserves the lattice: U * basis = red
        for i in range(n):
            got = [sum(u[i][k] * basis[k][j] for k in range(n)) for j in range(n)]
            assert got == red[i]
        # the first reduced vector is within the LLL quality bound of the
        # true shortest vector (search a generous coefficient box)
        b1 = sum(x * x for x in red[0])
        shortest = brute_force_shortest(red, box=3)
        assert b1 <= (2 ** (n - 1)) * shortest


def test_lovasz_check_rejects_unreduced():
    basis = [[1, 0], [1000, 1]]
    # this basis is size-unreduced
    assert not lovasz_check(basis)
    red, _ = lll_reduce(basis)
    assert lovasz_check(red)


def test_short_vectors_against_enumeration():
    rng = random.Random(57)
    for _ in range(8):
        n = rng.randint(2, 3)
        basis = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        from isodescent.linalg import det
        if det([[QQ(x) for x in row] for row in basis]) == 0:
            continue
        g = gram_matrix(basis)
        bound = QQ(rng.randint(5, 40))
        got = short_vectors(g, bound)
        # oracle: enumerate coefficient box, collect norms <= bound, up to sign
        seen = set()
        for coeffs in itertools.product(range(-12, 13), repeat=n):
            if not any(coeffs):
                continue
            norm = sum(
                coeffs[i] * coeffs[j] * g[i][j]
                for i in range(n) for j in range(n))
            if norm <= bound:
                key = tuple(coeffs)
                nkey = tuple(-c for c in coeffs)
                if nkey not in seen:
                    seen.add(key)
        got_norms = sorted(
            sum(v[i] * v[j] * g[i][j] for i in range(n) for j in range(n))
            for v in got)
        oracle_norms = sorted(
            sum(v[i] * v[j] * g[i][j] for i in range(n) for j in range(n))
            for v in seen)
        assert got_norms == oracle_norms, "short vector sets differ"


def test_short_vectors_respects_limit():
    g = [[QQ(1), QQ(0)], [QQ(0), QQ(1)]]
    out = short_vectors(g, QQ(100), limit=5)
    assert 0 < len(out) <= 5
