"""Exact linear algebra over the rationals and over the integers.

Dense rational elimination for the modest systems, a sparse elimination for
graded polynomial pieces, and a modular (CRT + verification) solver for the
larger exact solves.  Integer lattices get Hermite and Smith normal forms.
"""

import math

import numpy as np

from .ratmath import QQ, QQ0, QQ1, crt_pair, denom, numer, rational_reconstruct


def mat_copy(m):
    return [row[:] for row in m]


def identity(n):
    return [[QQ1 if i == j else QQ0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k, "dimension mismatch"
    out = [[QQ0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c == 0:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j] != 0:
                    oi[j] += c * bt[j]
    return out


def mat_vec(a, v):
    return [sum((c * x for c, x in zip(row, v) if c != 0 and x != 0), QQ0) for row in a]


def rref(m, ncols=None):
    """Reduced row echelon form.  Returns (rref_matrix, pivot_columns)."""
    a = mat_copy(m)
    rows = len(a)
    cols = ncols if ncols is not None else (len(a[0]) if rows else 0)
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = QQ1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m):
    if not m:
        return 0
    return len(rref(m)[1])


def kernel_basis(m):
    """Basis of the right kernel {v : m v = 0} over QQ."""
    if not m:
        return []
    cols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [QQ0] * cols
        v[fc] = QQ1
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(m, rhs):
    """One solution of m x = rhs, or None if inconsistent."""
    if not m:
        return None if any(x != 0 for x in rhs) else []
    cols = len(m[0])
    aug = [row[:] + [b] for row, b in zip(m, rhs)]
    red, pivots = rref(aug, ncols=cols)
    x = [QQ0] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    for r in range(len(pivots), len(red)):
        if red[r][cols] != 0:
            return None
    # rows below pivot count are zero rows in the coefficient part
    for r in range(len(red)):
        lhs = sum((c * v for c, v in zip(red[r][:cols], x) if c != 0), QQ0)
        if lhs != red[r][cols]:
            return None
    return x


def det(m):
    a = mat_copy(m)
    n = len(a)
    sign = 1
    out = QQ1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            return QQ0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        out *= a[c][c]
        inv = QQ1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out * sign


def mat_inverse(m):
    n = len(m)
    aug = [row[:] + ident_row for row, ident_row in zip(mat_copy(m), identity(n))]
    red, pivots = rref(aug, ncols=n)
    assert len(pivots) == n, "matrix not invertible"
    return [row[n:] for row in red]


def charpoly(m):
    """Characteristic polynomial det(xI - m), coefficients low-to-high degree.

    Lagrange interpolation on n+1 integer nodes keeps the elimination simple.
    """
    n = len(m)
    nodes = list(range(n + 1))
    values = []
    for t in nodes:
        a = [[(QQ(t) if i == j else QQ0) - m[i][j] for j in range(n)] for i in range(n)]
        values.append(det(a))
    # Newton's divided differences, then expand.
    coeffs = [[v] for v in values]
    dd = values[:]
    table = [dd[:]]
    for k in range(1, n + 1):
        prev = table[-1]
        cur = []
        for i in range(len(prev) - 1):
            cur.append((prev[i + 1] - prev[i]) / QQ(nodes[i + k] - nodes[i]))
        table.append(cur)
    poly = [QQ0] * (n + 1)
    basis = [QQ1]  # product (x - x_0)...(x - x_{k-1}) coefficients
    for k in range(n + 1):
        c = table[k][0]
        for i, b in enumerate(basis):
            poly[i] += c * b
        new_basis = [QQ0] * (len(basis) + 1)
        for i, b in enumerate(basis):
            new_basis[i] -= QQ(nodes[k]) * b
            new_basis[i + 1] += b
        basis = new_basis
    _ = coeffs
    return poly


# ---------------------------------------------------------------------------
# sparse rational elimination for graded ideal pieces


class SparseEchelon:
    """Incremental echelon form of sparse rows over any exact field.

    Rows are dicts {column: coefficient}; coefficients need +, -, *, ** -1
    and == 0.  reduce() returns the residual of a row against the rows
    absorbed so far; add() absorbs the residual if it is nonzero.  Pivot of
    each stored row is its smallest column index (columns must be orderable).
    """

    def __init__(self):
        self.rows = {}  # pivot column -> normalized row dict

    def reduce(self, row):
        row = {c: v for c, v in row.items() if v != 0}
        while row:
            p = min(row)
            piv = self.rows.get(p)
            if piv is None:
                return row
            f = row[p]
            for c, v in piv.items():
                fv = f * v
                nv = (row[c] - fv) if c in row else -fv
                if nv == 0:
                    row.pop(c, None)
                else:
                    row[c] = nv
        return row

    def add(self, row) -> bool:
        res = self.reduce(row)
        if not res:
            return False
        p = min(res)
        inv = res[p] ** (-1)
        norm = {c: v * inv for c, v in res.items()}
        # back-substitute into existing rows to keep full reduction
        for q, r in self.rows.items():
            if p in r:
                f = r[p]
                for c, v in norm.items():
                    fv = f * v
                    nv = (r[c] - fv) if c in r else -fv
                    if nv == 0:
                        r.pop(c, None)
                    else:
                        r[c] = nv
        self.rows[p] = norm
        return True

    def contains(self, row) -> bool:
        return not self.reduce(row)

    @property
    def rank(self):
        return len(self.rows)


# ---------------------------------------------------------------------------
# modular acceleration: solve over QQ via several word-size primes + CRT


_MOD_PRIMES = [2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
               2147483543, 2147483497, 2147483489, 2147483477, 2147483423]


def _to_mod_matrix(m, p, denominators_ok=True):
    rows = len(m)
    cols = len(m[0]) if rows else 0
    out = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        for j, v in enumerate(m[i]):
            if v == 0:
                continue
            n, d = numer(v), denom(v)
            if d % p == 0:
                if not denominators_ok:
                    raise ZeroDivisionError
                return None
            out[i, j] = n % p * pow(d % p, -1, p) % p
    return out


def mod_rref(a: np.ndarray, p: int):
    """RREF of an integer matrix mod p (vectorized).  Returns (rref, pivots)."""
    a = a % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def solve_via_crt(m, rhs, max_primes=60):
    """Exact solution of m x = rhs using modular images + rational lifting.

    Falls back to returning None when inconsistent.  The reconstructed result
    is verified exactly against the original system.
    """
    if not m:
        return None if any(x != 0 for x in rhs) else []
    cols = len(m[0])
    aug = [row[:] + [b] for row, b in zip(m, rhs)]
    pivots = None
    sol_mod = {}
    modulus = 1
    used = 0
    for p in _MOD_PRIMES * 6:
        if used >= max_primes:
            break
        a = _to_mod_matrix(aug, p)
        if a is None:
            continue
        red, piv = mod_rref(a, p)
        piv = [c for c in piv if c < cols]
        for r in range(len(piv), red.shape[0]):
            if red[r, cols] % p != 0 and not np.any(red[r, :cols] % p):
                return None
        if pivots is None or len(piv) > len(pivots):
            pivots = piv
            sol_mod = {}
            modulus = 1
        if piv != pivots:
            continue
        xs = {}
        for r, pc in enumerate(pivots):
            xs[pc] = int(red[r, cols])
        if modulus == 1:
            sol_mod = xs
            modulus = p
        else:
            for pc in pivots:
                r, mmod = crt_pair(sol_mod[pc], modulus, xs[pc], p)
                sol_mod[pc] = r
            modulus *= p
        used += 1
        # attempt reconstruction
        x = [QQ0] * cols
        ok = True
        for pc in pivots:
            q = rational_reconstruct(sol_mod[pc], modulus)
            if q is None:
                ok = False
                break
            x[pc] = q
        if ok:
            good = True
            for row, b in zip(m, rhs):
                lhs = sum((c * v for c, v in zip(row, x) if c != 0 and v != 0), QQ0)
                if lhs != b:
                    good = False
                    break
            if good:
                return x
    # modular route failed to stabilize; do it exactly
    return solve(m, rhs)


# ---------------------------------------------------------------------------
# integer matrices: HNF and SNF


def hnf(mat):
    """Row-style Hermite normal form of an integer matrix (rows span lattice).

    Returns the HNF with nonnegative pivots, zero rows dropped.
    """
    a = [list(map(int, row)) for row in mat]
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        # gcd elimination below pivot
        for i in range(r + 1, rows):
            while a[i][c] != 0:
                q = a[r][c] // a[i][c]
                a[r] = [x - q * y for x, y in zip(a[r], a[i])]
                a[r], a[i] = a[i], a[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return [row for row in a[:r]]


def snf_diagonal(mat):
    """Diagonal of the Smith normal form of an integer matrix."""
    a = [list(map(int, row)) for row in mat]
    if not a or not a[0]:
        return []
    rows, cols = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        # find nonzero pivot
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            # clear column t
            done = True
            for i in range(rows):
                if i != t and a[i][t] != 0:
                    done = False
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
            for j in range(cols):
                if j != t and a[t][j] != 0:
                    done = False
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j] != 0:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
            if done:
                break
        # ensure divisibility by absorbing offending entries
        dval = abs(a[t][t])
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % dval != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            continue
        diag.append(dval)
        t += 1
    return diag
