"""Integer lattice reduction and enumeration, all in exact arithmetic.

LLL on rational Gram data (delta = 3/4 by default), a Lovasz-condition
checker usable as an independent certificate, and Fincke-Pohst style
enumeration of short vectors with respect to a positive definite rational
Gram matrix.
"""

from .ratmath import QQ, QQ0, QQ1, qq_round


def gram_matrix(basis, inner=None):
    if inner is None:
        def inner(u, v):
            return sum((QQ(a) * QQ(b) for a, b in zip(u, v)), QQ0)
    n = len(basis)
    return [[inner(basis[i], basis[j]) for j in range(n)] for i in range(n)]


def _gso_from_gram(g):
    """Gram-Schmidt data from a Gram matrix: mu (lower unitriangular) and
    squared lengths B[i] of the orthogonalized vectors."""
    n = len(g)
    mu = [[QQ0] * n for _ in range(n)]
    bstar = [QQ0] * n
    for i in range(n):
        for j in range(i):
            s = g[i][j]
            for k in range(j):
                s -= mu[i][k] * mu[j][k] * bstar[k]
            mu[i][j] = s / bstar[j] if bstar[j] != 0 else QQ0
        s = g[i][i]
        for k in range(i):
            s -= mu[i][k] * mu[i][k] * bstar[k]
        bstar[i] = s
        mu[i][i] = QQ1
    return mu, bstar


def lll_reduce(basis, delta=QQ(3, 4), inner=None):
    """LLL-reduce a list of integer/rational vectors.  Returns (new_basis, U)
    with new_basis = U * basis as row operations, U unimodular (list of int
    rows)."""
    b = [list(v) for v in basis]
    n = len(b)
    if n == 0:
        return [], []
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def g(i, j):
        if inner is not None:
            return inner(b[i], b[j])
        return sum((QQ(x) * QQ(y) for x, y in zip(b[i], b[j])), QQ0)

    gram = [[g(i, j) for j in range(n)] for i in range(n)]

    mu, bstar = _gso_from_gram(gram)

    def size_reduce(k, j):
        if 2 * abs(mu[k][j]) > 1:
            q = qq_round(mu[k][j])
            qr = QQ(q)
            b[k] = [x - q * y for x, y in zip(b[k], b[j])]
            u[k] = [x - q * y for x, y in zip(u[k], u[j])]
            new_diag = gram[k][k] - 2 * qr * gram[k][j] + qr * qr * gram[j][j]
            for t in range(n):
                if t != k:
                    gram[k][t] = gram[k][t] - qr * gram[j][t]
                    gram[t][k] = gram[k][t]
            gram[k][k] = new_diag
            for t in range(j):
                mu[k][t] = mu[k][t] - qr * mu[j][t]
            mu[k][j] = mu[k][j] - qr
            return True
        return False

    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            size_reduce(k, j)
        if bstar[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]:
            b[k - 1], b[k] = b[k], b[k - 1]
            u[k - 1], u[k] = u[k], u[k - 1]
            gram[k - 1], gram[k] = gram[k], gram[k - 1]
            for row in gram:
                row[k - 1], row[k] = row[k], row[k - 1]
            mu, bstar = _gso_from_gram(gram)
            k = max(k - 1, 1)
        else:
            k += 1
    return b, u


def lovasz_check(basis, delta=QQ(3, 4), inner=None):
    """Exact verification that a basis is LLL-reduced (size + Lovasz)."""
    g = gram_matrix(basis, inner=inner)
    mu, bstar = _gso_from_gram(g)
    n = len(g)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > QQ(1, 2):
                return False
    for k in range(1, n):
        if bstar[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]:
            return False
    return True


def short_vectors(gram, bound, limit=None):
    """All nonzero integer vectors x with x^T G x <= bound, up to sign
    (returns one of each +-pair).  G must be positive definite, rational.

    Fincke-Pohst backtracking on the Cholesky-like decomposition
    Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
    """
    n = len(gram)
    q = [[QQ(gram[i][j]) for j in range(n)] for i in range(n)]
    # rational LDL^T
    for i in range(n):
        assert q[i][i] > 0, "matrix not positive definite"
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for m2 in range(k, n):
                q[k][m2] = q[k][m2] - q[k][i] * q[i][m2]
    out = []
    x = [0] * n
    bound = QQ(bound)

    def floor_sqrt_ratio(t, d):
        # largest integer s with s^2 <= t/d for rationals t >= 0, d > 0
        import math as _math
        from .ratmath import denom as _de, numer as _nu
        num = int(_nu(t)) * int(_de(d)) * int(_de(t)) * int(_nu(d))
        den = (int(_de(t)) * int(_nu(d))) ** 2
        if num <= 0:
            return 0
        lo = _math.isqrt(num // den)
        while (lo + 1) * (lo + 1) * den <= num:
            lo += 1
        while lo * lo * den > num:
            lo -= 1
        return lo

    def rec(i, remaining):
        if limit is not None and len(out) >= limit:
            return
        if i < 0:
            if any(x):
                out.append(x[:])
            return
        center = sum((q[i][j] * x[j] for j in range(i + 1, n)), QQ0)
        radius = floor_sqrt_ratio(remaining, q[i][i])
        from .ratmath import qq_floor
        mid = qq_floor(-center)
        # (xi + center)^2 * q_ii <= remaining holds only inside
        # [-center - s, -center + s]; bracket that interval in integers
        for xi in range(mid - radius - 1, mid + radius + 2):
            val = QQ(xi) + center
            t = q[i][i] * val * val
            if t <= remaining:
                x[i] = xi
                rec(i - 1, remaining - t)
                x[i] = 0
            if limit is not None and len(out) >= limit:
                return

    rec(n - 1, bound)
    # deduplicate sign pairs deterministically
    seen = set()
    uniq = []
    for v in out:
        key = tuple(v)
        nkey = tuple(-c for c in v)
        if key in seen or nkey in seen:
            continue
        seen.add(key)
        uniq.append(v)
    return uniq
