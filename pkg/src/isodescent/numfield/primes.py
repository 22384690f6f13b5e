"""Prime ideals of maximal orders: splitting, valuations, residue fields.

Splitting uses the mod-p factorization of the defining polynomial away from
index primes; at index primes the quotient algebra O/pO is decomposed by
Frobenius fixed-point splitting.  Valuations are membership tests against
cached powers of the prime lattice, so every answer is an exact integer
computation.
"""

import random

from ..flinalg import fl_kernel, fl_solve
from ..linalg import hnf
from ..polyq import factor_mod_p
from ..ratmath import QQ, denom, factorize, is_prime, numer


class PrimeIdeal:
    """A prime of the maximal order of K above the rational prime p.

    The lattice is stored as a row-HNF integer matrix in integral-basis
    coordinates.  e and f are the ramification index and residue degree.
    """

    def __init__(self, K, p, lattice, e, f, second_gen):
        self.K = K
        self.p = int(p)
        self.lattice = lattice
        self.e = int(e)
        self.f = int(f)
        self.second_gen = second_gen  # field element g with P = (p, g)
        self._powers = {1: lattice}
        self._residue = None
        self._uniformizer = None

    def norm(self):
        return self.p ** self.f

    def __repr__(self):
        return "PrimeIdeal(p=%d, e=%d, f=%d)" % (self.p, self.e, self.f)

    def sort_key(self):
        return (self.p, self.f, self.e, [list(map(int, r)) for r in self.lattice])

    # -- lattice machinery ---------------------------------------------------

    def power_lattice(self, k):
        assert k >= 1
        if k not in self._powers:
            best = max(i for i in self._powers if i <= k)
            cur = self._powers[best]
            while best < k:
                cur = _lattice_product(self.K, cur, self.lattice)
                best += 1
                self._powers[best] = cur
        return self._powers[k]

    def contains_coords(self, coords, k=1):
        """Is the order element with the given integral-basis coords in P^k?"""
        return _lattice_membership(self.power_lattice(k), coords) is not None

    def contains(self, x, k=1):
        """Is the field element x (assumed integral) in P^k?"""
        c = self.K.to_order_coords(x)
        assert all(denom(v) == 1 for v in c), "element not integral"
        return self.contains_coords([int(numer(v)) for v in c], k)

    def valuation(self, x):
        """Exact valuation v_P(x) for any nonzero field element x."""
        K = self.K
        assert not K.is_zero(x), "valuation of zero"
        D = K.denominator_of(x)
        y = K.scale(x, D)
        vd = 0
        if D % self.p == 0:
            dfac = factorize(D)
            vd = dfac.get(self.p, 0) * self.e
        c = K.to_order_coords(y)
        coords = [int(numer(v)) for v in c]
        if not self.contains_coords(coords, 1):
            return -vd
        # strip p-content first to keep the lattice powers small
        v = 0
        while all(ci % self.p == 0 for ci in coords):
            coords = [ci // self.p for ci in coords]
            v += self.e
        lo = 0
        while self.contains_coords(coords, lo + 1):
            lo += 1
        return v + lo - vd

    # -- uniformizer ----------------------------------------------------------

    def uniformizer(self):
        """Element pi with v_P(pi) = 1 and v_Q(pi) = 0 at other primes above p."""
        if self._uniformizer is not None:
            return self._uniformizer
        K = self.K
        others = [Q for Q in split_prime(K, self.p) if Q.lattice != self.lattice]
        rng = random.Random(1729)
        rows = self.lattice
        n = K.n

        def ok(cand):
            if self.contains_coords(cand, 2):
                return False
            for Q in others:
                if Q.contains_coords(cand, 1):
                    return False
            return True

        for row in rows:
            if ok(list(row)):
                self._uniformizer = K.from_order_coords([QQ(c) for c in row])
                return self._uniformizer
        for _ in range(4000):
            cand = [0] * n
            for row in rows:
                c = rng.randint(0, self.p)
                if c:
                    cand = [a + c * b for a, b in zip(cand, row)]
            if any(cand) and ok(cand):
                self._uniformizer = K.from_order_coords([QQ(c) for c in cand])
                return self._uniformizer
        raise AssertionError("no uniformizer found (should not happen)")

    # -- residue field ---------------------------------------------------------

    def residue_field(self):
        if self._residue is None:
            self._residue = ResidueField(self)
        return self._residue

    def unit_residue(self, x):
        """Residue of the unit part x * pi^(-v) in O/P, as a residue element.

        Computed by solving u * pi^v ≡ x in P^v / P^(v+1), which avoids any
        division in the field.
        """
        K = self.K
        v = self.valuation(x)
        D = K.denominator_of(x)
        # clear the denominator with a P-unit scalar: D = p^a * D', and the
        # prime-to-P part D'' of D is invertible mod P
        y = K.scale(x, D)
        rf = self.residue_field()
        if v == 0 and D == 1:
            c = [int(numer(t)) for t in K.to_order_coords(y)]
            return rf.reduce_coords(c)
        # x = y / D with y, D integral: unit parts divide in the residue field
        vy = self.valuation(y)
        uy = self._unit_residue_integral(y, vy)
        delt = K.from_rational(D)
        ud = self._unit_residue_integral(delt, self.valuation(delt))
        return rf.mul(uy, rf.inverse(ud))

    def _unit_residue_integral(self, y, v):
        K = self.K
        rf = self.residue_field()
        if v == 0:
            c = [int(numer(t)) for t in K.to_order_coords(y)]
            return rf.reduce_coords(c)
        pi = self.uniformizer()
        piv = K.pow(pi, v)
        # basis of O/P as order elements
        reps = rf.basis_reps()
        targets = []
        for b in reps:
            prod = K.mul(b, piv)
            targets.append(_int_coords(K, prod))
        ycoords = _int_coords(K, y)
        # coordinates in P^v basis, then mod P^(v+1) expressed over F_p
        hv = self.power_lattice(v)
        hv1 = self.power_lattice(v + 1)
        rel = _express_in_lattice_fp(hv, hv1, targets + [ycoords], self.p)
        cols = rel[:-1]
        rhs = rel[-1]
        mat = [[cols[t][i] for t in range(len(cols))] for i in range(len(rhs))]
        sol = fl_solve(mat, rhs, self.p)
        assert sol is not None, "unit residue solve failed"
        return tuple(s % self.p for s in sol)

    def residue_symbol_dlog(self, x, ell):
        """dlog of the ell-th power residue symbol of the unit part of x.

        Returns k ∈ {0..ell-1} with u^((q-1)/ell) = zeta^k for the fixed
        generator-based zeta; requires ell | q - 1 (else returns 0: every
        unit is an ell-th power).
        """
        q = self.norm()
        if (q - 1) % ell != 0:
            return 0
        rf = self.residue_field()
        u = self.unit_residue(x)
        t = rf.pow(u, (q - 1) // ell)
        return rf.dlog_in_mu(t, ell)


def _int_coords(K, x):
    c = K.to_order_coords(x)
    assert all(denom(v) == 1 for v in c), "element not integral"
    return [int(numer(v)) for v in c]


class ResidueField:
    """O/P as an explicit finite field F_{p^f}.

    Since pO is contained in P, reduction mod P is F_p-linear on coordinates
    mod p: eliminate against the echelon form of the lattice mod p, and read
    off the free columns.
    """

    def __init__(self, P):
        self.P = P
        self.K = P.K
        self.p = P.p
        self.f = P.f
        self.q = P.p ** P.f
        n = self.K.n
        from ..flinalg import fl_rref
        self._ech, self._piv = fl_rref([[c % self.p for c in row]
                                        for row in P.lattice], self.p)
        self._ech = self._ech[:len(self._piv)]
        self.free_cols = [i for i in range(n) if i not in self._piv]
        assert len(self.free_cols) == self.f, "lattice index mismatch"
        self._table = self.K.order_mult_table()
        self._gen = None

    def reduce_coords(self, coords):
        """Residue of an order element given by integer coordinates."""
        c = [x % self.p for x in coords]
        for row, pc in zip(self._ech, self._piv):
            if c[pc]:
                t = c[pc]
                c = [(a - t * b) % self.p for a, b in zip(c, row)]
        return tuple(c[i] for i in self.free_cols)

    def lift(self, r):
        """An order-coordinate lift of a residue element."""
        n = self.K.n
        c = [0] * n
        for val, i in zip(r, self.free_cols):
            c[i] = int(val)
        return c

    def basis_reps(self):
        """Field elements lifting the F_p-basis of O/P."""
        out = []
        for i in self.free_cols:
            c = [QQ(0)] * self.K.n
            c[i] = QQ(1)
            out.append(self.K.from_order_coords(c))
        return out

    def zero(self):
        return (0,) * self.f

    def one(self):
        return self.reduce_coords(_int_coords(self.K, self.K.one))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        la, lb = self.lift(a), self.lift(b)
        n = self.K.n
        prod = [0] * n
        for i in range(n):
            if la[i]:
                row_set = self._table[i]
                for j in range(n):
                    if lb[j]:
                        c = la[i] * lb[j]
                        row = row_set[j]
                        for k in range(n):
                            prod[k] += c * row[k]
        return self.reduce_coords(prod)

    def pow(self, a, e):
        e = int(e)
        assert e >= 0
        out = self.one()
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inverse(self, a):
        assert any(a), "division by zero in residue field"
        return self.pow(a, self.q - 2)

    def is_zero(self, a):
        return not any(a)

    def generator(self):
        """A generator of the cyclic group F_q^*."""
        if self._gen is not None:
            return self._gen
        fac = factorize(self.q - 1)
        rng = random.Random(99)
        n = self.K.n
        for attempt in range(1000):
            c = [rng.randrange(self.p) for _ in range(n)]
            a = self.reduce_coords(c)
            if self.is_zero(a):
                continue
            if all(not self.is_zero(self.sub_one(self.pow(a, (self.q - 1) // r)))
                   for r in fac):
                self._gen = a
                return a
        raise AssertionError("no generator found")

    def sub_one(self, a):
        one = self.one()
        return tuple((x - y) % self.p for x, y in zip(a, one))

    def dlog_in_mu(self, t, ell):
        """k with t = zeta^k, zeta = g^((q-1)/ell); requires t ∈ mu_ell."""
        assert (self.q - 1) % ell == 0
        g = self.generator()
        zeta = self.pow(g, (self.q - 1) // ell)
        cur = self.one()
        for k in range(ell):
            if cur == t:
                return k
            cur = self.mul(cur, zeta)
        raise AssertionError("element not in mu_ell")


# ---------------------------------------------------------------------------
# lattice helpers (integer row-HNF matrices in order coordinates)


def _lattice_product(K, A, B):
    """HNF of the product ideal, from generator products."""
    table = K.order_mult_table()
    n = K.n
    rows = []
    for a in A:
        for b in B:
            prod = [0] * n
            for i in range(n):
                if a[i]:
                    for j in range(n):
                        if b[j]:
                            c = a[i] * b[j]
                            row = table[i][j]
                            for k in range(n):
                                prod[k] += c * row[k]
            rows.append(prod)
    return hnf(rows)


def _lattice_membership(H, coords):
    """Coefficients expressing coords over the HNF rows, or None.

    Rows have increasing pivot columns and support only to the right of the
    pivot, so elimination runs in forward row order.
    """
    c = list(coords)
    n = len(c)
    out = [0] * len(H)
    for i, row in enumerate(H):
        j = next((t for t, x in enumerate(row) if x != 0), None)
        assert j is not None
        if c[j] % row[j] != 0:
            return None
        q = c[j] // row[j]
        out[i] = q
        if q:
            for t in range(j, n):
                c[t] -= q * row[t]
    if any(c):
        return None
    return out


def _express_in_lattice_fp(Hv, Hv1, vectors, p):
    """F_p-linear coordinates of vectors (members of lattice Hv) in the
    elementary abelian quotient Hv/Hv1."""
    from ..flinalg import fl_rref
    # rows of Hv1 in Hv-coordinates; p*Hv ⊆ Hv1 makes the quotient a vector
    # space over F_p, so elimination mod p is the full reduction
    R = []
    for row in Hv1:
        coef = _lattice_membership(Hv, row)
        assert coef is not None, "power lattice not nested"
        R.append([x % p for x in coef])
    ech, piv = fl_rref(R, p)
    ech = ech[:len(piv)]
    out = []
    for v in vectors:
        coef = _lattice_membership(Hv, v)
        assert coef is not None, "vector not in the expected lattice power"
        c = [x % p for x in coef]
        for row, pc in zip(ech, piv):
            if c[pc]:
                t = c[pc]
                c = [(a - t * b) % p for a, b in zip(c, row)]
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# splitting


_SPLIT_CACHE = {}


def split_prime(K, p):
    """All primes of the maximal order of K above p, canonically sorted."""
    key = (K, int(p))
    if key in _SPLIT_CACHE:
        return _SPLIT_CACHE[key]
    assert is_prime(p), "p must be prime"
    n = K.n
    if n == 1:
        P = PrimeIdeal(K, p, [[p]], 1, 1, K.from_rational(p))
        out = [P]
        _SPLIT_CACHE[key] = out
        return out
    _, _, index = K.maximal_order()
    out = []
    if index % p != 0:
        _, fac = factor_mod_p(K.fz, p)
        for g, e in fac:
            gx = K.from_list([QQ(c) for c in g])
            rows = []
            w = K.integral_basis()
            for i in range(n):
                rows.append([p if j == i else 0 for j in range(n)])
            for i in range(n):
                prod = K.mul(gx, tuple(w[i]))
                rows.append(_int_coords(K, prod))
            lat = hnf(rows)
            f = len(g) - 1
            out.append(PrimeIdeal(K, p, lat, e, f, gx))
    else:
        out = _split_index_prime(K, p)
    total = sum(P.e * P.f for P in out)
    assert total == n, "splitting bookkeeping failed: sum ef = %d != %d" % (total, n)
    for P in out:
        det = 1
        for i in range(n):
            det *= P.lattice[i][i]
        assert det == p ** P.f, "prime norm mismatch"
    out.sort(key=lambda P: P.sort_key())
    _SPLIT_CACHE[key] = out
    return out


def _split_index_prime(K, p):
    """Primes above p when p divides the index: decompose O/pO."""
    n = K.n
    table = K.order_mult_table()

    def amul(x, y):
        out = [0] * n
        for i in range(n):
            if x[i] % p:
                for j in range(n):
                    if y[j] % p:
                        c = x[i] * y[j] % p
                        row = table[i][j]
                        for k in range(n):
                            out[k] = (out[k] + c * row[k]) % p
        return out

    def apow(x, e):
        one = _int_coords(K, K.one)
        out = [c % p for c in one]
        base = x
        while e:
            if e & 1:
                out = amul(out, base)
            base = amul(base, base)
            e >>= 1
        return out

    # radical of O/pO: kernel of frobenius^m
    m, q = 1, p
    while q < n:
        q *= p
        m += 1
    frob_rows = []
    for i in range(n):
        x = [1 if j == i else 0 for j in range(n)]
        frob_rows.append(apow(x, p ** m))
    rad = fl_kernel([[frob_rows[i][j] for i in range(n)] for j in range(n)], p)

    # semisimple quotient B = A / rad: work with coset representatives.
    # B's elements are A-vectors; equality mod rad via reduction against the
    # radical's echelon form.
    from ..flinalg import fl_rref
    rad_red, rad_piv = fl_rref(rad, p) if rad else ([], [])

    def mod_rad(x):
        x = [c % p for c in x]
        for r, pc in enumerate(rad_piv):
            if x[pc]:
                f0 = x[pc]
                x = [(a - f0 * b) % p for a, b in zip(x, rad_red[r])]
        return x

    comp_basis = [i for i in range(n) if i not in rad_piv]

    # split B into fields via Frobenius fixed points
    def component_split(basis_vecs):
        """basis_vecs: list of A-vectors spanning a unital subalgebra of B
        (mod rad).  Returns list of (idempotent, field-component basis)."""
        dim = len(basis_vecs)
        # Frobenius on the component, in the given basis
        frob_cols = []
        for v in basis_vecs:
            fv = mod_rad(apow(v, p))
            frob_cols.append(_in_span_coords(basis_vecs, fv, p, mod_rad))
        fixed = fl_kernel(
            [[(frob_cols[j][i] - (1 if i == j else 0)) % p for j in range(dim)]
             for i in range(dim)], p)
        r = len(fixed)
        assert r >= 1
        if r == 1:
            return [basis_vecs]
        # find a fixed vector with a split minimal polynomial
        for coeffs in fixed:
            v = [0] * n
            for c, bv in zip(coeffs, basis_vecs):
                if c:
                    v = [(a + c * b) % p for a, b in zip(v, bv)]
            v = mod_rad(v)
            # minimal polynomial of v over F_p: powers 1, v, v^2, ...
            one = mod_rad([c % p for c in _int_coords(K, K.one)])
            powers = [one]
            cur = one
            dep = None
            for k in range(1, dim + 2):
                cur = mod_rad(amul(cur, v))
                mat = [[powers[t][i] for t in range(len(powers))] for i in range(n)]
                sol = fl_solve(mat, cur, p)
                if sol is not None:
                    dep = sol
                    break
                powers.append(cur)
            assert dep is not None
            # min poly: x^k - sum dep_t x^t
            mp = [(-c) % p for c in dep] + [1]
            _, fac = factor_mod_p(mp, p)
            if len(fac) == 1:
                continue
            g1 = fac[0][0]
            g2 = [1]
            from ..polyq import zp_mul as _zm
            for poly, mult in fac[1:]:
                for _ in range(mult):
                    g2 = _zm(g2, poly, p)
            for _ in range(fac[0][1] - 1):
                g1 = _zm(g1, fac[0][0], p)
            # Bezout: u*g1 + w*g2 = 1 mod p
            u, w = _poly_bezout(g1, g2, p)
            e_vec = _eval_poly_at(amul, mod_rad, _zm_list(u, g1, p), v, one, p)
            # e = (u*g1)(v): idempotent projecting onto the g2-part
            comp1 = _idempotent_component(e_vec, basis_vecs, amul, mod_rad, p)
            one_minus_e = [(a - b) % p for a, b in zip(one, e_vec)]
            comp2 = _idempotent_component(one_minus_e, basis_vecs, amul, mod_rad, p)
            out = []
            out.extend(component_split(comp1))
            out.extend(component_split(comp2))
            return out
        raise AssertionError("no splitting element found in fixed algebra")

    full_basis = []
    # basis of B: unit vectors at non-pivot coords (coset reps)
    for i in comp_basis:
        v = [0] * n
        v[i] = 1
        full_basis.append(mod_rad(v))
    comps = component_split(full_basis)

    out = []
    for comp in comps:
        f = len(comp)
        # maximal ideal = {y in A : y*b projects to 0 on this component for
        # every component basis vector b}: one F_p-condition per (b, coord)
        dim = len(comp)
        mat_rows = []
        for bidx, b in enumerate(comp):
            percoord = [[0] * n for _ in range(dim)]
            for i in range(n):
                ei = [1 if j == i else 0 for j in range(n)]
                prod = mod_rad(amul(ei, b))
                crd = _full_project(comps, comp, prod, p, mod_rad)
                for t in range(dim):
                    percoord[t][i] = crd[t]
            mat_rows.extend(percoord)
        ker = fl_kernel(mat_rows, p)
        rows = [[p if i == j else 0 for j in range(n)] for i in range(n)]
        rows += [list(v) for v in ker]
        lat = hnf(rows)
        det = 1
        for i in range(n):
            det *= lat[i][i]
        assert det == p ** f, "maximal ideal lattice has wrong index"
        P = PrimeIdeal(K, p, lat, 0, f, None)
        out.append(P)
    # ramification indices: e = max k with p ∈ P^k, then adjusted to satisfy
    # sum e*f = n
    for P in out:
        pcoords = _int_coords(K, K.from_rational(p))
        e = 1
        while P.contains_coords(pcoords, e + 1):
            e += 1
        P.e = e
        # second generator: a lattice row that is not in p*O
        for row in P.lattice:
            if any(c % p for c in row):
                P.second_gen = K.from_order_coords([QQ(c) for c in row])
                break
    return out


def _in_span_coords(basis_vecs, v, p, mod_rad, allow_fail=False):
    n = len(v)
    mat = [[basis_vecs[t][i] for t in range(len(basis_vecs))] for i in range(n)]
    sol = fl_solve(mat, v, p)
    if sol is None:
        if allow_fail:
            return None
        raise AssertionError("vector not in component span")
    return sol


def _full_project(comps, comp, v, p, mod_rad):
    """Coordinates of v on `comp` within the direct sum of all components."""
    all_vecs = []
    for c in comps:
        all_vecs.extend(c)
    n = len(v)
    mat = [[all_vecs[t][i] for t in range(len(all_vecs))] for i in range(n)]
    sol = fl_solve(mat, v, p)
    assert sol is not None, "vector not in the semisimple span"
    # slice out this component's coordinates
    start = 0
    for c in comps:
        if c is comp:
            return sol[start:start + len(c)]
        start += len(c)
    raise AssertionError("component not found")


def _poly_bezout(g1, g2, p):
    from ..polyq import zp_divmod, zp_mul, zp_normalize, zp_sub
    r0, r1 = zp_normalize(g1, p), zp_normalize(g2, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        qp, r = zp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, zp_sub(s0, zp_mul(qp, s1, p), p)
        t0, t1 = t1, zp_sub(t0, zp_mul(qp, t1, p), p)
    assert len(r0) == 1, "factors not coprime"
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def _zm_list(u, g1, p):
    from ..polyq import zp_mul
    return zp_mul(u, g1, p)


def _eval_poly_at(amul, mod_rad, poly, v, one, p):
    out = [0] * len(one)
    for c in reversed(poly):
        out = mod_rad(amul(out, v))
        if c % p:
            out = [(a + c * b) % p for a, b in zip(out, one)]
    return out


def _idempotent_component(e_vec, basis_vecs, amul, mod_rad, p):
    """F_p-basis of e*B given a basis of B."""
    from ..flinalg import fl_span_basis
    imgs = []
    for b in basis_vecs:
        imgs.append(mod_rad(amul(e_vec, b)))
    span = fl_span_basis(imgs, p)
    return [list(v) for v in span]


def primes_above(K, rational_primes):
    out = []
    for p in sorted(set(int(q) for q in rational_primes)):
        out.extend(split_prime(K, p))
    return out


def ramified_primes(K):
    """Rational primes ramified in K (those dividing the field discriminant)."""
    d = K.disc
    return sorted(factorize(abs(int(numer(d)))).keys())
