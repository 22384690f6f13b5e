"""Absolute number fields Q[x]/(f) with exact arithmetic.

Elements are coefficient tuples on the power basis.  The maximal order is
computed by repeated radical/multiplier-ring enlargement at every prime
whose square divides the polynomial discriminant, with the Dedekind
criterion as a fast p-maximality test.  Degree-1 fields degrade gracefully
to plain rational arithmetic.
"""

import math
from functools import lru_cache

from ..linalg import (
    hnf, identity, kernel_basis, mat_inverse, mat_mul, mat_vec, rref, solve,
)
from ..polyq import (
    discriminant, factor_mod_p, is_irreducible, pdeg, pdivmod, pmod, pmul,
    pnormalize, resultant, zp_divmod, zp_gcd, zp_mul, zp_normalize, zp_sub,
)
from ..ratmath import QQ, QQ0, QQ1, denom, factorize, is_prime, numer


class NumberField:
    """Q[x]/(f) for a monic irreducible integer polynomial f."""

    def __init__(self, f, check_irreducible=True):
        f = [QQ(c) for c in f]
        assert f and f[-1] == 1, "defining polynomial must be monic"
        assert all(denom(c) == 1 for c in f), "defining polynomial must be integral"
        if check_irreducible and pdeg(f) > 1:
            assert is_irreducible(f), "not a field"
        self.f = f
        self.n = pdeg(f)
        self.fz = [int(numer(c)) for c in f]
        # reduction table: theta^k for k = n .. 2n-2 as power-basis vectors
        self._red = []
        cur = [-c for c in f[:-1]]  # theta^n
        for _ in range(self.n - 1):
            self._red.append(tuple(cur))
            # multiply by theta
            nxt = [QQ0] + cur[:-1]
            top = cur[-1]
            if top != 0:
                nxt = [a + top * b for a, b in zip(nxt + [QQ0], [-c for c in f[:-1]] + [QQ0])][:self.n]
            cur = nxt
        self.one = self.from_list([QQ1])
        self.zero = (QQ0,) * self.n
        self.gen = self.from_list([QQ0, QQ1]) if self.n > 1 else self.from_list([-f[0]])
        self._traces = None
        self._maximal = None
        self.poly_disc = discriminant(self.f)
        assert self.poly_disc != 0, "defining polynomial not separable"

    # -- element constructors ------------------------------------------------

    def from_list(self, coeffs):
        coeffs = [QQ(c) for c in coeffs]
        if len(coeffs) > self.n:
            coeffs = pmod(coeffs, self.f)
        coeffs = list(coeffs) + [QQ0] * (self.n - len(coeffs))
        return tuple(coeffs[:self.n])

    def from_rational(self, a):
        return self.from_list([QQ(a)])

    def element_poly(self, x):
        return pnormalize(list(x))

    # -- ring operations -----------------------------------------------------

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def mul(self, x, y):
        n = self.n
        if n == 1:
            return (x[0] * y[0],)
        prod = [QQ0] * (2 * n - 1)
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b != 0:
                    prod[i + j] += a * b
        out = list(prod[:n])
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c != 0:
                red = self._red[k - n]
                for i in range(n):
                    if red[i] != 0:
                        out[i] += c * red[i]
        return tuple(out)

    def scale(self, x, a):
        a = QQ(a)
        return tuple(c * a for c in x)

    def is_zero(self, x):
        return all(c == 0 for c in x)

    def is_rational(self, x):
        return all(c == 0 for c in x[1:])

    def inverse(self, x):
        assert not self.is_zero(x), "division by zero"
        if self.n == 1:
            return (QQ1 / x[0],)
        if self.is_rational(x):
            return self.from_list([QQ1 / x[0]])
        # solve (mul by x) * y = 1 via the multiplication matrix
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.n)]
        mat = [[cols[j][i] for j in range(self.n)] for i in range(self.n)]
        rhs = [QQ1] + [QQ0] * (self.n - 1)
        y = solve(mat, rhs)
        assert y is not None, "element not invertible (inconsistent state)"
        return tuple(y)

    def div(self, x, y):
        return self.mul(x, self.inverse(y))

    def pow(self, x, e):
        e = int(e)
        if e < 0:
            return self.pow(self.inverse(x), -e)
        out = self.one
        base = x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def basis_vector(self, j):
        return tuple(QQ1 if i == j else QQ0 for i in range(self.n))

    # -- invariants ----------------------------------------------------------

    def trace_powers(self):
        """Traces of theta^k for k = 0..2n-2 (via companion-matrix powers)."""
        if self._traces is None:
            n = self.n
            comp = [[QQ0] * n for _ in range(n)]
            for i in range(1, n):
                comp[i][i - 1] = QQ1
            for i in range(n):
                comp[i][n - 1] = -self.f[i]
            traces = []
            m = identity(n)
            for _ in range(2 * n - 1):
                traces.append(sum((m[i][i] for i in range(n)), QQ0))
                m = mat_mul(m, comp)
            self._traces = traces
        return self._traces

    def trace(self, x):
        t = self.trace_powers()
        return sum((c * t[k] for k, c in enumerate(x) if c != 0), QQ0)

    def norm(self, x):
        g = self.element_poly(x)
        if not g:
            return QQ0
        if pdeg(g) == 0:
            return g[0] ** self.n
        return resultant(self.f, g)

    def charpoly_of(self, x):
        """Characteristic polynomial of x (degree n, monic)."""
        mp = self.minpoly_of(x)
        d = pdeg(mp)
        assert self.n % d == 0
        out = [QQ1]
        for _ in range(self.n // d):
            out = pmul(out, mp)
        return out if self.n // d > 1 else mp

    def minpoly_of(self, x):
        """Monic minimal polynomial of x over Q."""
        rows = []
        cur = self.one
        for k in range(self.n + 1):
            rows.append(list(cur))
            mat = [[rows[i][j] for j in range(self.n)] for i in range(len(rows))]
            ker = kernel_basis([[mat[i][j] for i in range(len(rows))] for j in range(self.n)])
            if ker:
                v = ker[0]
                lead = v[-1]
                poly = pnormalize([c / lead for c in v])
                if poly[-1] != 1:
                    poly = [c / poly[-1] for c in poly]
                # verify
                acc = self.zero
                for c in reversed(poly):
                    acc = self.add(self.mul(acc, x), self.from_rational(c))
                assert self.is_zero(acc), "minimal polynomial failed verification"
                return poly
            cur = self.mul(cur, x)
        raise AssertionError("no minimal polynomial found (impossible)")

    def signature(self):
        """(r1, r2) via an exact Sturm chain on the defining polynomial."""
        r1 = count_real_roots(self.f)
        assert (self.n - r1) % 2 == 0
        return r1, (self.n - r1) // 2

    # -- maximal order ---------------------------------------------------------

    def maximal_order(self):
        """Rows of the integral basis over the power basis, plus disc and index.

        Returns (basis_matrix, field_discriminant, index).
        """
        if self._maximal is not None:
            return self._maximal
        n = self.n
        if n == 1:
            self._maximal = ([[QQ1]], QQ(1), 1)
            return self._maximal
        disc_poly = int(numer(self.poly_disc))
        assert denom(self.poly_disc) == 1
        basis = identity(n)
        fac = factorize(abs(disc_poly))
        for p in sorted(fac):
            if fac[p] < 2:
                continue
            if dedekind_is_p_maximal(self.fz, p):
                continue
            basis = _enlarge_at_p(self, basis, p)
        index = _order_index(basis)
        disc_field = self.poly_disc / QQ(index * index)
        assert denom(disc_field) == 1, "index must divide the discriminant squarely"
        self._maximal = (basis, disc_field, index)
        return self._maximal

    @property
    def disc(self):
        return self.maximal_order()[1]

    def integral_basis(self):
        return self.maximal_order()[0]

    def is_integral(self, x):
        """Is x in the maximal order?"""
        w = self.maximal_order()[0]
        mat = [[w[j][i] for j in range(self.n)] for i in range(self.n)]
        c = solve(mat, list(x))
        assert c is not None
        return all(denom(v) == 1 for v in c)

    def to_order_coords(self, x):
        """Coordinates of x on the integral basis."""
        w = self.maximal_order()[0]
        mat = [[w[j][i] for j in range(self.n)] for i in range(self.n)]
        c = solve(mat, list(x))
        assert c is not None
        return c

    def from_order_coords(self, c):
        w = self.maximal_order()[0]
        out = self.zero
        for ci, row in zip(c, w):
            if ci != 0:
                out = self.add(out, self.scale(tuple(row), ci))
        return out

    def order_mult_table(self):
        """w_i * w_j on the integral basis; entries exact integers."""
        w = self.maximal_order()[0]
        n = self.n
        table = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                prod = self.mul(tuple(w[i]), tuple(w[j]))
                c = self.to_order_coords(prod)
                assert all(denom(v) == 1 for v in c), "order not closed under product"
                table[i][j] = table[j][i] = [int(numer(v)) for v in c]
        return table

    def denominator_of(self, x):
        out = 1
        for c in x:
            out = out * int(denom(c)) // math.gcd(out, int(denom(c)))
        return out

    def conjugates_matrix(self, prec=80):
        """Complex embeddings of theta (mpmath, for float guidance only)."""
        import mpmath
        mpmath.mp.dps = prec
        coeffs = [mpmath.mpf(int(numer(c))) / int(denom(c)) for c in self.f]
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=200)
        return roots

    def __repr__(self):
        return "NumberField(%s)" % (self.fz,)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.fz == other.fz

    def __hash__(self):
        return hash(tuple(self.fz))


# ---------------------------------------------------------------------------
# Sturm chain real-root count


def count_real_roots(f):
    from ..polyq import pderiv
    chain = [pnormalize(f), pderiv(f)]
    while chain[-1]:
        r = pmod(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()

    def sign_changes_at_inf(sgn):
        vals = []
        for g in chain:
            if not g:
                continue
            lead = g[-1]
            s = 1 if lead > 0 else -1
            if sgn < 0 and (pdeg(g) % 2 == 1):
                s = -s
            vals.append(s)
        changes = 0
        for a, b in zip(vals, vals[1:]):
            if a * b < 0:
                changes += 1
        return changes

    return sign_changes_at_inf(-1) - sign_changes_at_inf(1)


# ---------------------------------------------------------------------------
# Dedekind p-maximality criterion for Z[theta]


def dedekind_is_p_maximal(fz, p):
    """True iff Z[x]/(f) is p-maximal, by the gcd test on the lifted
    radical data."""
    fp = zp_normalize(fz, p)
    _, fac = factor_mod_p(fp, p)
    gbar = [1]
    for poly, _ in fac:
        gbar = zp_mul(gbar, poly, p)
    hbar = zp_divmod(fp, gbar, p)[0]
    # integral lifts
    g = [c if c <= p // 2 else c - p for c in gbar]
    h = [c if c <= p // 2 else c - p for c in hbar]
    gh = [0] * (len(g) + len(h) - 1)
    for i, a in enumerate(g):
        for j, b in enumerate(h):
            gh[i + j] += a * b
    diff = [(a - b) for a, b in zip(gh + [0] * len(fz), list(fz) + [0] * len(gh))][:max(len(gh), len(fz))]
    assert all(c % p == 0 for c in diff), "g*h != f mod p (internal error)"
    t = zp_normalize([c // p for c in diff], p)
    d = zp_gcd(zp_gcd(t, gbar, p), hbar, p)
    return len(d) == 1


# ---------------------------------------------------------------------------
# order enlargement machinery (radical + multiplier ring), HNF based


def _order_index(basis):
    """Index [O : Z[theta]]^{-1} bookkeeping: determinant of the basis matrix
    is 1/index, so return the inverse of |det|."""
    from ..linalg import det
    d = det(basis)
    assert d != 0
    inv = QQ1 / abs(d)
    assert denom(inv) == 1
    return int(numer(inv))


def _mult_table_for_basis(K, basis):
    """b_i * b_j in basis coordinates; asserts closure (integer entries)."""
    n = K.n
    mat = [[basis[j][i] for j in range(n)] for i in range(n)]
    inv = mat_inverse(mat)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        bi = tuple(basis[i])
        for j in range(i + 1):
            prod = K.mul(bi, tuple(basis[j]))
            c = mat_vec(inv, list(prod))
            assert all(denom(v) == 1 for v in c), "basis not multiplicatively closed"
            table[i][j] = table[j][i] = [int(numer(v)) for v in c]
    return table


def _enlarge_at_p(K, basis, p):
    """Repeat radical/multiplier enlargement until the order is p-maximal."""
    n = K.n
    while True:
        table = _mult_table_for_basis(K, basis)
        rad = _p_radical(table, n, p)
        mult = _multiplier_kernel(table, rad, n, p)
        # new order basis: (1/p) * HNF of [p*I ; lifts of mult kernel]
        rows = [[p if i == j else 0 for j in range(n)] for i in range(n)]
        rows += [list(v) for v in mult]
        h = hnf(rows)
        assert len(h) == n
        if all(h[i][i] == p for i in range(n)):
            return basis  # multiplier ring equals the order: p-maximal
        # convert to power-basis coordinates: new rows = (h/p) * basis
        new_basis = []
        for row in h:
            acc = [QQ0] * n
            for ci, brow in zip(row, basis):
                if ci:
                    acc = [a + QQ(ci, p) * b for a, b in zip(acc, brow)]
            new_basis.append(acc)
        basis = new_basis


def _table_mul(table, x, y, p, n):
    out = [0] * n
    for i in range(n):
        if x[i] % p == 0:
            continue
        for j in range(n):
            if y[j] % p:
                c = x[i] * y[j] % p
                row = table[i][j]
                for k in range(n):
                    out[k] = (out[k] + c * row[k]) % p
    return out


def _p_radical(table, n, p):
    """Basis (mod-p row vectors) of the radical of O/pO."""
    m = 1
    q = p
    while q < n:
        q *= p
        m += 1
    # Frobenius^m as a linear map: e_i -> e_i^(p^m)
    rows = []
    for i in range(n):
        x = [1 if j == i else 0 for j in range(n)]
        acc = x
        for _ in range(m):
            # acc = acc^p by repeated multiplication (p small)
            base = acc
            out = base
            for _ in range(p - 1):
                out = _table_mul(table, out, base, p, n)
            acc = out
        rows.append(acc)
    # kernel of the map v -> sum v_i rows[i]
    from ..flinalg import fl_kernel
    mat = [[rows[i][j] for i in range(n)] for j in range(n)]
    return fl_kernel(mat, p)


def _multiplier_kernel(table, rad_basis, n, p):
    """Vectors y (mod p, in order coords) with y * I_p ⊆ p*I_p, where I_p is
    the radical lattice spanned by rad_basis together with p*O."""
    # lattice basis of I_p over Z (in order coordinates)
    rows = [[p if i == j else 0 for j in range(n)] for i in range(n)]
    rows += [list(v) for v in rad_basis]
    g = hnf(rows)
    assert len(g) == n
    gmat = [[QQ(g[i][j]) for j in range(n)] for i in range(n)]
    ginv = mat_inverse([[gmat[j][i] for j in range(n)] for i in range(n)])
    # conditions: for each order basis vector e_i and each radical gen gamma_j:
    # coords of e_i*gamma_j in I_p basis must vanish mod p
    conds = []  # rows of a matrix acting on y in F_p^n
    gens = [list(v) for v in rad_basis] + [[p if i == j else 0 for j in range(n)] for i in range(n)]
    for gamma in gens:
        # mult by gamma as integer matrix on order coords
        cols = []
        for i in range(n):
            prod = [0] * n
            for j in range(n):
                if gamma[j]:
                    row = table[i][j]
                    for k in range(n):
                        prod[k] += gamma[j] * row[k]
            cols.append(prod)
        # e_i * gamma = cols[i]; express in I_p basis: ginv * cols[i]
        for t in range(n):
            cond = []
            for i in range(n):
                v = sum((ginv[t][k] * QQ(cols[i][k]) for k in range(n)), QQ0)
                assert denom(v) == 1, "product left the radical lattice"
                cond.append(int(numer(v)) % p)
            conds.append(cond)
    from ..flinalg import fl_kernel
    ker = fl_kernel(conds, p)
    return ker


@lru_cache(maxsize=None)
def cached_field(coeff_tuple):
    return NumberField(list(coeff_tuple))


def field_from_power(ell, d):
    """The pure field Q(d^(1/ell)) on a canonical small generator.

    Returns (K, theta_d) where theta_d ∈ K satisfies theta_d^ell = d.
    The defining polynomial is x^ell - d0 for the power-class representative
    d0 of smallest absolute value among the powers d^k (k coprime to ell),
    made ell-th-power-free.
    """
    from ..ratmath import power_free_part
    d = QQ(d)
    assert d != 0
    num = int(numer(d))
    den = int(denom(d))
    dz = power_free_part(num * den ** (ell - 1), ell)
    assert dz != 0
    if abs(dz) == 1:
        # d is an ell-th power (times a sign for even...; ell odd so -1 = (-1)^ell)
        K = cached_field((QQ(-dz), QQ1))
        # degenerate: field is Q; theta_d = d^(1/ell) rational
        root = _exact_qq_root(d, ell)
        assert root is not None
        return K, (root,)
    best = None
    for k in range(1, ell):
        if math.gcd(k, ell) != 1:
            continue
        cand = power_free_part(dz ** k, ell)
        if best is None or abs(cand) < abs(best[1]):
            best = (k, cand)
    k, d0 = best
    fz = [-d0] + [0] * (ell - 1) + [1]
    K = NumberField(fz, check_irreducible=False)
    # theta_d = r * eta^j with theta_d^ell = d: find j, r exactly
    # eta^ell = d0; d = dz * s^ell; dz^k = d0 * t^ell
    # solve k*j ≡ 1 mod ell: then dz = d0^j * u^ell with u rational
    j = pow(k, -1, ell)
    u_ell = d / QQ(d0) ** j
    u = _exact_qq_root(u_ell, ell)
    assert u is not None, "power-class bookkeeping failed"
    theta = K.scale(K.pow(K.gen, j), u)
    assert K.pow(theta, ell) == K.from_rational(d), "generator does not match"
    return K, theta


def _exact_qq_root(a, k):
    """Exact k-th root of a rational, or None."""
    from ..ratmath import is_perfect_power
    a = QQ(a)
    if a == 0:
        return QQ0
    n, d = int(numer(a)), int(denom(a))
    rn = is_perfect_power(n, k)
    rd = is_perfect_power(d, k)
    if rn is None or rd is None:
        return None
    return QQ(rn, rd)
