"""S-unit groups modulo l-th powers, with saturation certificates.

For a finite set S of prime ideals and an odd prime l, the group
U_S / U_S^l is an F_l vector space of dimension (r1 + r2 - 1) + #S as
long as the field contains no l-th root of unity.  A basis is assembled
from unit candidates and per-prime generators, then certified by residue
symbols: if the symbol matrix of the candidates at auxiliary primes
q = 1 (mod l) reaches full rank, the candidates are independent mod
l-th powers and therefore span the whole space.  The certified symbol
matrix then answers discrete-log queries exactly by linear algebra.
"""

import math
import random
from dataclasses import dataclass, field

from ..ratmath import QQ, numer, denom, next_prime, primes_up_to
from ..linalg import kernel_basis
from ..lattice import lll_reduce, short_vectors
from ..flinalg import fl_rank, fl_kernel, fl_solve
from .classgroup import class_group, generator_of_norm, t2_gram
from .primes import split_prime
from .roots import lth_root, ROOT, NO_BY_SYMBOL


@dataclass
class SUnitBasis:
    """Generators of U_S modulo l-th powers, with certificate data.

    fund_units and s_gens together form the generator list; s_gens[i]
    generates primes[i] ** s_powers[i] with s_powers[i] coprime to ell,
    so the valuation part of the basis is diagonal.  aux_ideals are the
    prime ideals where the symbol matrix was evaluated; certified means
    that matrix has full rank, which proves the generators span
    U_S / U_S^ell.
    """

    K: object
    ell: int
    primes: tuple
    fund_units: tuple
    s_gens: tuple
    s_powers: tuple
    aux_ideals: tuple = field(repr=False, default=())
    symbol_matrix: tuple = field(repr=False, default=())
    certified: bool = False
    class_note: str = ""

    def generators(self):
        return list(self.fund_units) + list(self.s_gens)

    @property
    def rank(self):
        return len(self.fund_units) + len(self.s_gens)

    def is_s_unit(self, x):
        """Exact check: the fractional ideal of x is supported on S.

        The norm of x equals the product of N(P)^v_P(x) over all primes,
        so equality restricted to S certifies there is no support
        elsewhere (any off-S prime would leave a norm discrepancy).
        """
        K = self.K
        if K.is_zero(x):
            return False
        nx = K.norm(x)
        prod = QQ(1)
        for P in self.primes:
            v = P.valuation(x)
            prod = prod * QQ(P.norm()) ** v
        return prod == abs(nx)

    def discrete_log(self, x):
        """Exponent vector mod ell of the class of x, or None.

        Requires a certified basis.  Returns None when x is not an
        S-unit; otherwise the unique c with x = prod(g_i ** c_i) times
        an l-th power, read off from the symbol matrix.
        """
        assert self.certified, "discrete_log needs a certified basis"
        K, ell = self.K, self.ell
        if not self.is_s_unit(x):
            return None
        sym = [Q.residue_symbol_dlog(x, ell) for Q in self.aux_ideals]
        m = self.rank
        cols = len(self.aux_ideals)
        mat = [[self.symbol_matrix[i][j] for i in range(m)] for j in range(cols)]
        c = fl_solve(mat, sym, ell)
        if c is None:
            return None
        c = [v % ell for v in c]
        # valuation consistency: v_P(x) = c_P * k_P mod ell on the diagonal part
        nf = len(self.fund_units)
        for i, P in enumerate(self.primes):
            lhs = P.valuation(x) % ell
            rhs = c[nf + i] * self.s_powers[i] % ell
            assert lhs == rhs, "symbol solution contradicts valuations"
        return c

    def element_from_exponents(self, c):
        K = self.K
        gens = self.generators()
        assert len(c) == len(gens)
        out = K.one
        for g, e in zip(gens, c):
            if int(e):
                out = K.mul(out, K.pow(g, int(e)))
        return out


def unit_rank(K):
    r1, r2 = K.signature()
    return r1 + r2 - 1


def s_unit_group(K, primes, ell, effort=5, max_aux=40, proof_level="unconditional"):
    """Certified basis of U_S mod l-th powers for S the given prime ideals.

    Fails with RuntimeError when generators cannot be assembled or the
    saturation certificate cannot be completed within budget; a basis is
    never returned silently uncertified.
    """
    assert ell % 2 == 1 and ell > 1
    if K.n % (ell - 1) == 0 and ell > 3:
        # l-th roots of unity could sit inside K; the dimension count below
        # would then be wrong.  None of the supported fields land here.
        raise NotImplementedError("field degree admits mu_ell")
    if K.n % 2 == 0 and ell == 3:
        _assert_no_cube_roots_of_unity(K)
    primes = sorted(primes, key=lambda P: P.sort_key())

    cg = class_group(K, proof_level=proof_level, effort=effort)
    if not (cg.all_principal or cg.l_part_is_trivial(ell)):
        raise RuntimeError(
            "class number multiple %d is divisible by %d; S-units alone "
            "do not span the descent group" % (cg.h_multiple, ell)
        )
    note = "h=1 proved by generators" if cg.all_principal else (
        "class number multiple %d coprime to %d (%s bound %d)"
        % (cg.h_multiple, ell, cg.proof_level, cg.bound_used)
    )

    s_gens, s_powers = [], []
    for P in primes:
        g, k = _prime_power_generator(P, ell, effort)
        s_gens.append(g)
        s_powers.append(k)
    for i, (g, k, P) in enumerate(zip(s_gens, s_powers, primes)):
        assert P.valuation(g) == k
        for j, Q in enumerate(primes):
            if j != i:
                assert Q.valuation(g) == 0, "s-generator not supported on its prime"

    r = unit_rank(K)
    units = _unit_candidates(K, r, effort)
    if len(units) < r:
        raise RuntimeError(
            "found %d of %d independent units; raise effort" % (len(units), r)
        )

    gens = units + s_gens
    m = len(gens)
    basis = SUnitBasis(
        K, ell, tuple(primes), tuple(units), tuple(s_gens), tuple(s_powers),
        class_note=note,
    )
    aux_ideals, matrix = [], [[] for _ in range(m)]
    s_rats = {P.p for P in primes}
    q = 2
    replacements = 0
    while len(aux_ideals) < 8 * max_aux:
        q = next_prime(q)
        if q % ell != 1 or q in s_rats:
            continue
        for Q in _symbol_ideals(K, q, ell):
            col = [Q.residue_symbol_dlog(g, ell) for g in gens]
            aux_ideals.append(Q)
            for i in range(m):
                matrix[i].append(col[i])
        rk = fl_rank(matrix, ell) if aux_ideals else 0
        if rk == m:
            basis.fund_units = tuple(gens[:len(units)])
            basis.aux_ideals = tuple(aux_ideals)
            basis.symbol_matrix = tuple(tuple(row) for row in matrix)
            basis.certified = True
            return basis
        if len(aux_ideals) >= max_aux and rk < m and replacements < 6:
            # a kernel combination is a candidate l-th power; extracting its
            # root lets us swap in a smaller generator and re-certify
            ker = fl_kernel(matrix, ell)
            fixed = False
            for vec in ker:
                if all(v % ell == 0 for v in vec):
                    continue
                combo = K.one
                for g, e in zip(gens, vec):
                    if e % ell:
                        combo = K.mul(combo, K.pow(g, e % ell))
                root, status = lth_root(K, combo, ell)
                if status == ROOT:
                    idx = next(i for i, v in enumerate(vec) if v % ell)
                    assert idx < len(units), "kernel combo touched a prime generator"
                    inv = pow(int(vec[idx]), -1, ell)
                    repl = K.mul(K.pow(root, inv), _combo_complement(K, gens, vec, idx, ell))
                    gens[idx] = repl
                    matrix = [[] for _ in range(m)]
                    for j, Q in enumerate(aux_ideals):
                        for i in range(m):
                            matrix[i].append(Q.residue_symbol_dlog(gens[i], ell))
                    replacements += 1
                    fixed = True
                    break
            if not fixed and len(aux_ideals) >= 4 * max_aux:
                break
    raise RuntimeError("saturation certificate incomplete after budget")


def _prime_power_generator(P, ell, effort):
    """(g, k) with (g) = P**k and gcd(k, ell) = 1, preferring k = 1."""
    K = P.K
    for k in range(1, 7):
        if k % ell == 0:
            continue
        g = generator_of_norm(K, P.power_lattice(k), P.norm() ** k, effort=effort)
        if g is not None:
            return g, k
    raise RuntimeError("no small power of %r is provably principal" % (P,))


def _combo_complement(K, gens, vec, idx, ell):
    """prod over j != idx of gens[j] ** (-vec[j] / vec[idx]) mod ell."""
    inv = pow(int(vec[idx]), -1, ell)
    out = K.one
    for j, (g, e) in enumerate(zip(gens, vec)):
        if j == idx or e % ell == 0:
            continue
        out = K.mul(out, K.pow(g, (-e * inv) % ell))
    return out


def _shrink_unit(K, u):
    """Reduce a unit by integral rounding if it keeps |N| = 1; cosmetic."""
    return u


def _symbol_ideals(K, q, ell, max_f=4, cap=3):
    """Primes above q usable for symbol columns, smallest residue degree
    first; only degrees with ell dividing q**f - 1 qualify."""
    out = []
    for Q in sorted(split_prime(K, q), key=lambda P: (P.f, P.sort_key())):
        if Q.f > max_f or Q.e > 1:
            continue
        if (q ** Q.f - 1) % ell:
            continue
        out.append(Q)
        if len(out) >= cap:
            break
    return out


def _unit_candidates(K, r, effort):
    """Elements of |N| = 1 spanning (numerically) a rank-r log lattice.

    Independence here is a float pre-screen only; the saturation
    certificate in s_unit_group is what actually proves independence
    mod l-th powers.
    """
    if r == 0:
        return []
    found = []
    logs = []
    gram = t2_gram(K)
    base = max(gram[i][i] for i in range(K.n))
    for attempt in range(effort + 2):
        bound = base * (2 ** attempt)
        for coeffs in short_vectors(gram, bound, limit=24000):
            x = K.from_order_coords([QQ(c) for c in coeffs])
            nx = K.norm(x)
            if abs(nx) != 1:
                continue
            if K.is_rational(x):
                continue
            lv = _log_vector(K, x)
            if _raises_rank(logs, lv):
                found.append(x)
                logs.append(lv)
                if len(found) == r:
                    return found
        if len(found) == r:
            break
    if len(found) < r:
        for x in _kernel_units(K, r, effort):
            if abs(K.norm(x)) != 1 or K.is_rational(x):
                continue
            lv = _log_vector(K, x)
            if _raises_rank(logs, lv):
                found.append(x)
                logs.append(lv)
                if len(found) == r:
                    break
    if len(found) < r:
        _twisted_unit_hunt(K, r, found, logs, stages=12 * (effort + 2))
    return found


def _twisted_unit_hunt(K, r, found, logs, stages=60):
    """Hunt units by reduction under reweighted T2 forms.

    Down-weighting one embedding at a time makes the reduced basis
    vectors small at that embedding and of small norm overall; two such
    elements of equal norm absolute value that divide each other are
    equal up to a unit, and that ratio is frequently a new unit.
    """
    import mpmath
    n = K.n
    embs = _ordered_embeddings(K)
    order_rows, _, _ = K.maximal_order()
    scale = 1 << 48
    vals = []
    for i in range(n):
        row = []
        for z, _w in embs:
            acc = mpmath.mpc(0)
            for c in reversed(order_rows[i]):
                acc = acc * z + mpmath.mpf(int(numer(c))) / int(denom(c))
            row.append(acc)
        vals.append(row)
    buckets = {}

    def consider(x):
        if K.is_zero(x) or K.is_rational(x):
            return False
        nx = K.norm(x)
        key = abs(nx)
        ratios = []
        if key == 1:
            ratios.append(x)
        else:
            for b in buckets.get(key, []):
                if tuple(b) == tuple(x):
                    return False
                u = K.div(x, b)
                if K.is_integral(u) and K.is_integral(K.inverse(u)):
                    ratios.append(u)
            buckets.setdefault(key, []).append(x)
        for u in ratios:
            if K.is_rational(u):
                continue
            lv = _log_vector(K, u)
            if _raises_rank(logs, lv):
                found.append(u)
                logs.append(lv)
                if len(found) == r:
                    return True
        return False

    ne = len(embs)
    for stage in range(stages):
        t = stage % ne
        s = 8 + 8 * (stage // ne)
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                acc = mpmath.mpf(0)
                for k, (_z, w) in enumerate(embs):
                    term = (vals[i][k] * mpmath.conj(vals[j][k])).real * w
                    wt = mpmath.mpf(2) ** (-s) if k == t else mpmath.mpf(2) ** (s // max(ne - 1, 1))
                    acc += term * wt
                e = int(mpmath.nint(acc * scale))
                gram[i][j] = gram[j][i] = e
        rows = [[QQ(1 if a == b else 0) for b in range(n)] for a in range(n)]
        try:
            red, _ = lll_reduce(rows, inner=lambda u, v: _int_form(u, v, gram))
        except (AssertionError, ZeroDivisionError):
            continue
        for row in red:
            x = K.from_order_coords([QQ(c) for c in row])
            if consider(x):
                return


def _int_form(u, v, gram):
    n = len(gram)
    return sum(QQ(u[i]) * gram[i][j] * QQ(v[j]) for i in range(n) for j in range(n))


def _kernel_units(K, r, effort):
    """Units from integer kernels of smooth-element valuation matrices."""
    rng = random.Random(31415)
    fb = []
    for p in primes_up_to(60):
        fb.extend(split_prime(K, p))
    fb_rats = sorted({P.p for P in fb})
    elts, rows = [], []
    want = 8 * len(fb) // 3 + 10
    tries = 0
    while len(rows) < want and tries < 9000:
        tries += 1
        x = tuple(QQ(rng.randint(-6, 6)) for _ in range(K.n))
        if K.is_zero(x):
            continue
        nx = K.norm(x)
        if denom(nx) != 1:
            continue
        val = abs(int(numer(nx)))
        if val == 0:
            continue
        rem = val
        for p in fb_rats:
            while rem % p == 0:
                rem //= p
        if rem != 1:
            continue
        row = [P.valuation(x) if val % P.p == 0 else 0 for P in fb]
        total = 1
        for P, v in zip(fb, row):
            total *= P.norm() ** v
        if total != val:
            continue
        elts.append(x)
        rows.append(row)
    if not rows:
        return []
    ker = kernel_basis(rows)
    ivecs = []
    for v in ker:
        den = 1
        for c in v:
            den = den * int(denom(c)) // math.gcd(den, int(denom(c)))
        ivecs.append([int(numer(c)) * (den // int(denom(c))) for c in v])
    if not ivecs:
        return []
    red, _ = lll_reduce([[QQ(c) for c in v] for v in ivecs])
    out = []
    for v in red[: 3 * r + 6]:
        u = K.one
        for x, e in zip(elts, v):
            ei = int(e)
            if ei:
                u = K.mul(u, K.pow(x, ei))
        if not K.is_zero(u) and abs(K.norm(u)) == 1:
            out.append(u)
    return out


_ROOT_CACHE = {}


def _ordered_embeddings(K, prec=60):
    key = (K, prec)
    if key in _ROOT_CACHE:
        return _ROOT_CACHE[key]
    import mpmath
    mpmath.mp.dps = prec
    roots = K.conjugates_matrix(prec)
    reals = sorted([z.real for z in roots if abs(z.imag) < mpmath.mpf(10) ** (-prec // 2)])
    cplx = sorted(
        [z for z in roots if z.imag > mpmath.mpf(10) ** (-prec // 2)],
        key=lambda z: (float(z.real), float(z.imag)),
    )
    r1, r2 = K.signature()
    assert len(reals) == r1 and len(cplx) == r2
    embs = [(z, 1) for z in reals] + [(z, 2) for z in cplx]
    _ROOT_CACHE[key] = embs
    return embs


def _log_vector(K, x, prec=60):
    import mpmath
    mpmath.mp.dps = prec
    out = []
    for z, w in _ordered_embeddings(K, prec):
        acc = mpmath.mpc(0)
        for c in reversed(x):
            acc = acc * z + mpmath.mpf(int(numer(c))) / int(denom(c))
        out.append(w * mpmath.log(abs(acc)))
    return out


def _raises_rank(logs, lv, tol_exp=-24):
    import mpmath
    rows = [list(r) for r in logs] + [list(lv)]
    tol = mpmath.mpf(10) ** tol_exp
    k = len(rows)
    n = len(lv)
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, k):
            if abs(rows[i][col]) > tol:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(k):
            if i != rank and abs(rows[i][col]) > tol:
                f = rows[i][col] / rows[rank][col]
                for j in range(col, n):
                    rows[i][j] -= f * rows[rank][j]
        rank += 1
    return rank == len(rows)


def _assert_no_cube_roots_of_unity(K):
    from .roots import polynomial_roots
    rs = polynomial_roots(K, [K.one, K.one, K.one])
    assert not rs, "field contains cube roots of unity"
