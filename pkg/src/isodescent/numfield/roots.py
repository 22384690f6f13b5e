"""Exact root extraction in number fields via p-adic lifting.

An l-th root (or polynomial root) is located p-adically at a degree-one
prime, reconstructed as an algebraic number by lattice reduction, and then
verified by exact arithmetic, so a returned root is always correct.
Non-existence is certified separately through valuations and power residue
symbols; when neither certificate applies the answer is marked
inconclusive rather than guessed.
"""

import math

from ..kpoly import fp_eval, fp_normalize, fp_squarefree_part
from ..lattice import lll_reduce
from ..polyq import factor_mod_p, zp_deriv, zp_gcd, zp_normalize
from ..ratmath import (
    QQ,
    denom,
    is_perfect_power,
    is_prime,
    numer,
    partial_factorize,
)
from .primes import split_prime

ROOT = "root"
NO_BY_VALUATION = "valuation"
NO_BY_SYMBOL = "symbol"
INCONCLUSIVE = "inconclusive"


def rational_lth_root(a, ell):
    """Exact l-th root of a rational, or None."""
    a = QQ(a)
    rn = is_perfect_power(int(numer(a)), ell)
    rd = is_perfect_power(int(denom(a)), ell)
    if rn is None or rd is None:
        return None
    return QQ(rn, rd)


def lth_root(K, x, ell, max_rounds=5):
    """(root, status) for Y^ell = x over K.

    status "root": root found and verified exactly.
    status "valuation"/"symbol": certified that no root exists.
    status "inconclusive": no root found, no certificate (treat as an error
    upstream when a definite answer is required).
    """
    assert is_prime(ell)
    if K.is_zero(x):
        return K.zero, ROOT
    if K.is_rational(x):
        r = rational_lth_root(x[0], ell)
        if r is not None:
            return K.from_rational(r), ROOT
        if K.n == 1:
            return None, NO_BY_VALUATION
    # clear denominators: y^ell = x iff (Dy)^ell = D^ell x
    D = K.denominator_of(x)
    xi = K.scale(x, QQ(D) ** ell)
    nx = K.norm(xi)
    assert denom(nx) == 1
    nint = abs(int(numer(nx)))

    # valuation certificates at primes found by bounded factoring
    fac, _rem = partial_factorize(nint) if nint > 1 else ({}, 1)
    for p in fac:
        for P in split_prime(K, p):
            if P.valuation(xi) % ell != 0:
                return None, NO_BY_VALUATION

    # residue symbol certificates at auxiliary split primes q = 1 mod ell
    bad = set(fac)
    bad.update(p for p in _field_bad_primes(K, ell))
    checked = 0
    q = 2
    while checked < 6:
        q = _next_aux_prime(q, ell, bad, nint)
        degree_one = [P for P in split_prime(K, q) if P.f == 1 and P.e == 1]
        if not degree_one:
            continue
        for P in degree_one:
            if P.residue_symbol_dlog(xi, ell) != 0:
                return None, NO_BY_SYMBOL
        checked += 1

    # p-adic reconstruction at a degree-one prime with p != 1 mod ell, where
    # the local l-th root is unique
    y = _reconstruct_lth_root(K, xi, ell, bad, nint, max_rounds)
    if y is not None:
        return K.scale(y, QQ(1, D)), ROOT
    return None, INCONCLUSIVE


def _field_bad_primes(K, ell):
    out = {ell}
    _, _, index = K.maximal_order()
    if index > 1:
        from ..ratmath import factorize
        out.update(factorize(index))
    return out


def _next_aux_prime(q, ell, bad, nint):
    from ..ratmath import next_prime
    while True:
        q = next_prime(q)
        if q % ell == 1 and q not in bad and nint % q != 0:
            return q


def _good_lift_prime(K, ell, bad, nint, start=2):
    """A prime p with p != 1 mod ell, p unramified of degree one in K, and
    p coprime to everything in sight, plus the root of f it selects."""
    from ..ratmath import next_prime
    p = start
    while True:
        p = next_prime(p)
        if p % ell == 1 or p in bad or nint % p == 0:
            continue
        fz = K.fz
        lead = fz[-1]
        if lead % p == 0:
            continue
        _, fac = factor_mod_p(fz, p)
        roots = [(-g[0]) % p for g, e in fac if len(g) == 2 and e == 1]
        if not roots:
            continue
        # simple root: derivative nonzero mod p
        dfz = [i * c for i, c in enumerate(fz)][1:]
        for r in roots:
            dval = 0
            for c in reversed(dfz):
                dval = (dval * r + c) % p
            if dval % p:
                return p, r
        # all roots multiple at this p: move on


def _lift_poly_root(fz, p, r0, N):
    """Newton-lift a simple root r0 of fz mod p to a root mod p^N."""
    pk = p
    r = r0 % p
    dfz = [i * c for i, c in enumerate(fz)][1:]
    while pk < p ** N:
        pk = min(pk * pk, p ** N)
        fr = 0
        for c in reversed(fz):
            fr = (fr * r + c) % pk
        dfr = 0
        for c in reversed(dfz):
            dfr = (dfr * r + c) % pk
        r = (r - fr * pow(dfr, -1, pk)) % pk
    fr = 0
    for c in reversed(fz):
        fr = (fr * r + c) % (p ** N)
    assert fr == 0, "poly root lift failed"
    return r


def _eval_at_root_mod(K, x, t, pN):
    """x(t) mod pN for x given in power-basis coordinates (denominators must
    be invertible mod pN)."""
    out = 0
    for c in reversed(x):
        cn, cd = int(numer(c)), int(denom(c))
        val = cn * pow(cd, -1, pN) % pN if cd != 1 else cn % pN
        out = (out * t + val) % pN
    return out


def _reconstruct_element(K, target, t, p, N):
    """Element of the maximal order whose image at theta -> t is target mod
    p^N, found as a short lattice vector; returns None if no plausible
    candidate appears."""
    n = K.n
    w = K.integral_basis()
    pN = p ** N
    wvals = []
    for i in range(n):
        wvals.append(_eval_at_root_mod(K, list(w[i]), t, pN))
    rows = []
    for i in range(n):
        rows.append([QQ(1 if j == i else 0) for j in range(n)] + [QQ(wvals[i]), QQ(0)])
    rows.append([QQ(0)] * n + [QQ(pN), QQ(0)])
    rows.append([QQ(0)] * n + [QQ(target % pN), QQ(1)])
    red, _ = lll_reduce(rows)
    # A row (a | r | m) certifies  sum_i a_i w_i(t) + k*pN + m*target = r,
    # so for |m| = 1 the element -m*(sum a_i w_i - r) maps to target mod pN.
    # The residual r is a rational integer and gets absorbed into the
    # candidate; it need not vanish (1 is in the order, giving short rows
    # with tiny nonzero residuals that LLL mixes into everything).
    one_coords = K.to_order_coords(K.one)
    cands = []
    for row in red:
        last = row[-1]
        if abs(last) != 1:
            continue
        if max(abs(row[i]) for i in range(n + 1)) ** 2 >= pN:
            continue
        sgn = -last
        coords = [QQ(sgn) * (row[i] - row[n] * one_coords[i]) for i in range(n)]
        if all(denom(c) == 1 for c in coords):
            cands.append(K.from_order_coords(coords))
    return cands


def _reconstruct_lth_root(K, xi, ell, bad, nint, max_rounds):
    p, r0 = _good_lift_prime(K, ell, bad, nint)
    N = max(12, int(90 / math.log10(p)) + 1)
    for _ in range(max_rounds):
        pN = p ** N
        t = _lift_poly_root(K.fz, p, r0, N)
        c = _eval_at_root_mod(K, list(xi), t, pN)
        assert c % p != 0
        # unique local root: start from c^(ell^-1 mod p-1) and Newton-lift
        e0 = pow(ell, -1, p - 1)
        y = pow(c % p, e0, p)
        pk = p
        while pk < pN:
            pk = min(pk * pk, pN)
            fy = (pow(y, ell, pk) - c) % pk
            dy = ell * pow(y, ell - 1, pk) % pk
            y = (y - fy * pow(dy, -1, pk)) % pk
        assert (pow(y, ell, pN) - c) % pN == 0
        for cand in _reconstruct_element(K, y, t, p, N):
            if K.pow(cand, ell) == tuple(xi):
                return cand
        N *= 2
    return None


def polynomial_roots(K, coeffs, max_rounds=5):
    """All roots in K of the polynomial with the given K-coefficients.

    The polynomial is replaced by its squarefree part, scaled monic with
    integral roots, and each residue root at a well-chosen degree-one prime
    is lifted and reconstructed; every returned root is verified exactly.
    Completeness holds because the reduction stays squarefree at the chosen
    prime, so every root of the original polynomial remains visible mod p.
    """
    g = fp_normalize(K, list(coeffs))
    assert g, "zero polynomial"
    if len(g) == 1:
        return []
    g = fp_squarefree_part(K, g)
    # clear rational denominators so the coefficients live in the order
    D = 1
    for c in g:
        d = K.denominator_of(c)
        D = D * d // math.gcd(D, d)
    if D > 1:
        g = [K.scale(c, D) for c in g]
    # shift to a monic polynomial with algebraic-integer roots:
    # z = a*y for a the leading coefficient
    a = g[-1]
    n = len(g) - 1
    monic = []
    for j in range(n + 1):
        monic.append(K.mul(g[j], K.pow(a, n - 1 - j)) if j < n else K.one)
    roots_z = _monic_integral_roots(K, monic, max_rounds)
    ainv = K.inverse(a)
    out = []
    for z in roots_z:
        y = K.mul(z, ainv)
        if K.is_zero(fp_eval(K, g, y)):
            out.append(y)
    return out


def _monic_integral_roots(K, g, max_rounds):
    _, _, index = K.maximal_order()
    from ..ratmath import factorize, next_prime
    bad = {p for p in factorize(index)} if index > 1 else set()
    p = 2
    found = []
    for _try in range(40):
        p = next_prime(p)
        if p in bad or K.fz[-1] % p == 0:
            continue
        _, fac = factor_mod_p(K.fz, p)
        lins = [(-h[0]) % p for h, e in fac if len(h) == 2 and e == 1]
        ok = False
        for t0 in lins:
            dfz = [i * c for i, c in enumerate(K.fz)][1:]
            dv = 0
            for c in reversed(dfz):
                dv = (dv * t0 + c) % p
            if dv % p == 0:
                continue
            # reduce g mod p through theta -> t0, require squarefree image
            gp = []
            good = True
            for cf in g:
                try:
                    gp.append(_eval_at_root_mod(K, list(cf), t0, p))
                except ValueError:
                    good = False
                    break
            if not good:
                continue
            gp = zp_normalize(gp, p)
            if len(gp) != len(g):
                continue
            if len(zp_gcd(gp, zp_deriv(gp, p), p)) > 1:
                continue
            found = _roots_at_prime(K, g, p, t0, max_rounds)
            ok = True
            break
        if ok:
            break
    return found


def _roots_at_prime(K, g, p, t0, max_rounds):
    N = max(12, int(80 / math.log10(p)) + 1)
    out = []
    for _ in range(max_rounds):
        pN = p ** N
        t = _lift_poly_root(K.fz, p, t0, N)
        gp_modp = [_eval_at_root_mod(K, list(c), t, p) % p for c in g]
        gp_modp = zp_normalize(gp_modp, p)
        _, fac = factor_mod_p(gp_modp, p)
        res_roots = [(-h[0]) % p for h, e in fac if len(h) == 2]
        out = []
        complete = True
        for r0 in res_roots:
            gN = [_eval_at_root_mod(K, list(c), t, pN) for c in g]
            r = _newton_univariate(gN, p, r0, N)
            if r is None:
                complete = False
                continue
            hit = None
            for cand in _reconstruct_element(K, r, t, p, N):
                if K.is_zero(fp_eval(K, g, cand)):
                    hit = cand
                    break
            if hit is not None:
                out.append(hit)
            else:
                complete = False
        if complete:
            return _dedupe(K, out)
        N *= 2
    return _dedupe(K, out)


def _newton_univariate(coeffs, p, r0, N):
    pN = p ** N
    r = r0 % p
    dcoeffs = [i * c % pN for i, c in enumerate(coeffs)][1:]
    dv = 0
    for c in reversed(dcoeffs):
        dv = (dv * r + c) % p
    if dv % p == 0:
        return None
    pk = p
    while pk < pN:
        pk = min(pk * pk, pN)
        fv = 0
        for c in reversed(coeffs):
            fv = (fv * r + c) % pk
        dfv = 0
        for c in reversed(dcoeffs):
            dfv = (dfv * r + c) % pk
        r = (r - fv * pow(dfv, -1, pk)) % pk
    return r


def _dedupe(K, elts):
    out = []
    for e in elts:
        if not any(e == f for f in out):
            out.append(e)
    return out
