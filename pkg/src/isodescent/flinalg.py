"""Linear algebra over small prime fields F_l.

Vectors and matrices are plain lists of ints reduced mod l.  These are the
exponent-space computations of the descent sieve, so everything here is small
and dense.
"""


def fl_rref(mat, l):
    """RREF mod l.  Returns (rref, pivot_columns)."""
    a = [[x % l for x in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c] % l:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, l)
        a[r] = [x * inv % l for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % l for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def fl_rank(mat, l):
    return len(fl_rref(mat, l)[1]) if mat else 0


def fl_kernel(mat, l):
    """Basis of {v : mat v = 0 mod l}."""
    if not mat:
        return []
    cols = len(mat[0])
    red, pivots = fl_rref(mat, l)
    free = [c for c in range(cols) if c not in pivots]
    out = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][fc]) % l
        out.append(v)
    return out


def fl_solve(mat, rhs, l):
    """One solution of mat x = rhs mod l, or None."""
    if not mat:
        return [] if all(b % l == 0 for b in rhs) else None
    cols = len(mat[0])
    aug = [row[:] + [b] for row, b in zip(mat, rhs)]
    red, pivots = fl_rref(aug, l)
    pivots = [c for c in pivots if c < cols]
    x = [0] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    for row, b in zip(mat, rhs):
        if sum(c * v for c, v in zip(row, x)) % l != b % l:
            return None
    return x


def fl_span_contains(basis, v, l):
    """Is v in the F_l-span of the given vectors?"""
    if not basis:
        return all(x % l == 0 for x in v)
    mat = [[basis[i][j] for i in range(len(basis))] for j in range(len(basis[0]))]
    return fl_solve(mat, v, l) is not None


def fl_span_basis(vectors, l):
    """Reduced basis of the span; drops dependent vectors."""
    if not vectors:
        return []
    red, pivots = fl_rref(vectors, l)
    return [red[i] for i in range(len(pivots))]


def fl_matmul(a, b, l):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            c = a[i][t] % l
            if c:
                for j in range(m):
                    out[i][j] = (out[i][j] + c * b[t][j]) % l
    return out


def fl_matvec(a, v, l):
    return [sum(c * x for c, x in zip(row, v)) % l for row in a]
