"""Univariate polynomials with exact rational coefficients.

Representation: list of coefficients, low degree first, no trailing zeros
(the zero polynomial is []).  Includes arithmetic, resultants, rational
factorization (delegated to sympy and re-verified exactly), distinct-degree /
Cantor-Zassenhaus factorization mod p, and Hensel lifting mod p^N.
"""

import random

import sympy

from .ratmath import QQ, QQ0, QQ1, denom, is_prime, numer


def pnormalize(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def pdeg(f):
    return len(f) - 1 if f else -1


def padd(f, g):
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else QQ0) + (g[i] if i < len(g) else QQ0) for i in range(n)]
    return pnormalize(out)


def psub(f, g):
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else QQ0) - (g[i] if i < len(g) else QQ0) for i in range(n)]
    return pnormalize(out)


def pscale(f, c):
    c = QQ(c)
    if c == 0:
        return []
    return [x * c for x in f]


def pmul(f, g):
    if not f or not g:
        return []
    out = [QQ0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b != 0:
                out[i + j] += a * b
    return pnormalize(out)


def pdivmod(f, g):
    assert g, "division by zero polynomial"
    f = list(f)
    q = [QQ0] * max(0, len(f) - len(g) + 1)
    inv = QQ1 / g[-1]
    while len(f) >= len(g) and f:
        c = f[-1] * inv
        k = len(f) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] -= c * b
        f = pnormalize(f)
    return pnormalize(q), f


def pmod(f, g):
    return pdivmod(f, g)[1]


def pgcd(f, g):
    f, g = pnormalize(f), pnormalize(g)
    while g:
        f, g = g, pmod(f, g)
    if f:
        inv = QQ1 / f[-1]
        f = [x * inv for x in f]
    return f


def pderiv(f):
    return pnormalize([QQ(i) * f[i] for i in range(1, len(f))])


def peval(f, x):
    out = QQ0
    for c in reversed(f):
        out = out * x + c
    return out


def ppow_mod(f, e, m):
    out = [QQ1]
    base = pmod(f, m)
    e = int(e)
    while e:
        if e & 1:
            out = pmod(pmul(out, base), m)
        base = pmod(pmul(base, base), m)
        e >>= 1
    return out


def pcompose(f, g):
    """f(g(x))."""
    out = []
    for c in reversed(f):
        out = padd(pmul(out, g), [c] if c != 0 else [])
    return out


def resultant(f, g):
    """Resultant via the subresultant-free Euclidean recursion (exact)."""
    f, g = pnormalize(f), pnormalize(g)
    if not f or not g:
        return QQ0
    res = QQ1
    while True:
        df, dg = pdeg(f), pdeg(g)
        if dg == 0:
            return res * g[0] ** df
        r = pmod(f, g)
        dr = pdeg(r)
        if dr < 0:
            return QQ0
        res *= (QQ(-1) ** (df * dg)) * g[-1] ** (df - dr)
        f, g = g, r


def discriminant(f):
    df = pdeg(f)
    assert df >= 1, "discriminant needs degree >= 1"
    r = resultant(f, pderiv(f))
    sign = QQ(-1) ** (df * (df - 1) // 2)
    return sign * r / f[-1]


def clear_denominators(f):
    """Return (primitive integer coefficient list, multiplier c) with
    c * f integral and primitive."""
    from .ratmath import content_and_primitive
    if not f:
        return [], QQ1
    import math
    lcm = 1
    for c in f:
        lcm = lcm * denom(c) // math.gcd(lcm, int(denom(c)))
    ints = [int(numer(c) * (lcm // denom(c))) for c in f]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    g = g or 1
    prim = [v // g for v in ints]
    return prim, QQ(lcm, g)


def factor_rational(f):
    """Factor f over QQ.  Returns (unit, [(factor, multiplicity), ...]) with
    monic rational factors; the identity  f = unit * prod factor^mult  is
    re-verified exactly before returning."""
    f = pnormalize(f)
    assert f, "cannot factor the zero polynomial"
    x = sympy.Symbol('x')
    expr = sum(sympy.Rational(int(numer(c)), int(denom(c))) * x ** i for i, c in enumerate(f))
    content, pairs = sympy.factor_list(sympy.Poly(expr, x))
    out = []
    unit = QQ(int(sympy.numer(content)), int(sympy.denom(content)))
    for poly, mult in pairs:
        coeffs = [QQ(int(sympy.numer(c)), int(sympy.denom(c)))
                  for c in reversed(sympy.Poly(poly, x).all_coeffs())]
        coeffs = pnormalize(coeffs)
        lead = coeffs[-1]
        unit *= lead ** mult
        coeffs = [c / lead for c in coeffs]
        out.append((coeffs, int(mult)))
    check = [unit]
    for poly, mult in out:
        for _ in range(mult):
            check = pmul(check, poly)
    assert check == f, "factorization failed verification"
    return unit, out


def roots_rational(f):
    """All rational roots of f, with multiplicity, as a sorted list."""
    unit, fac = factor_rational(f)
    _ = unit
    out = []
    for poly, mult in fac:
        if pdeg(poly) == 1:
            out.extend([-poly[0] / poly[1]] * mult)
    return sorted(out)


def is_irreducible(f):
    f = pnormalize(f)
    if pdeg(f) < 1:
        return False
    _, fac = factor_rational(f)
    return len(fac) == 1 and fac[0][1] == 1 and pdeg(fac[0][0]) == pdeg(f)


def squarefree_part_poly(f):
    g = pgcd(f, pderiv(f))
    q, r = pdivmod(f, g)
    assert not r
    if q:
        q = [c / q[-1] for c in q]
    return q


# ---------------------------------------------------------------------------
# polynomials over Z/p^N (int coefficient lists, low degree first)


def zp_normalize(f, m):
    f = [int(c) % m for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def zp_mul(f, g, m):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % m
    return zp_normalize(out, m)


def zp_add(f, g, m):
    n = max(len(f), len(g))
    return zp_normalize([( (f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % m
                         for i in range(n)], m)


def zp_sub(f, g, m):
    n = max(len(f), len(g))
    return zp_normalize([( (f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % m
                         for i in range(n)], m)


def zp_divmod(f, g, m):
    """Division with invertible leading coefficient of g mod m."""
    f = zp_normalize(f, m)
    g = zp_normalize(g, m)
    assert g, "division by zero"
    inv = pow(g[-1], -1, m)
    q = [0] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g) and f:
        c = f[-1] * inv % m
        k = len(f) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = (f[k + i] - c * b) % m
        f = zp_normalize(f, m)
    return zp_normalize(q, m), f


def zp_pow_mod(f, e, modpoly, m):
    out = [1]
    base = zp_divmod(f, modpoly, m)[1]
    e = int(e)
    while e:
        if e & 1:
            out = zp_divmod(zp_mul(out, base, m), modpoly, m)[1]
        base = zp_divmod(zp_mul(base, base, m), modpoly, m)[1]
        e >>= 1
    return out


def zp_gcd(f, g, p):
    """gcd mod a prime p, monic."""
    f, g = zp_normalize(f, p), zp_normalize(g, p)
    while g:
        f, g = g, zp_divmod(f, g, p)[1]
    if f:
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def zp_deriv(f, m):
    return zp_normalize([i * f[i] % m for i in range(1, len(f))], m)


def zp_eval(f, x, m):
    out = 0
    for c in reversed(f):
        out = (out * x + c) % m
    return out


def factor_mod_p(f, p):
    """Full factorization of f mod p into monic irreducibles.

    Returns (leading_coefficient, [(factor, multiplicity), ...]); the product
    is re-verified mod p.  Cantor-Zassenhaus with distinct-degree splitting.
    """
    assert is_prime(p), "modulus must be prime"
    f0 = zp_normalize(f, p)
    assert f0, "cannot factor zero"
    lead = f0[-1]
    f0 = [c * pow(lead, -1, p) % p for c in f0]
    rng = random.Random(0x5eed ^ p ^ len(f0))

    def squarefree_split(g):
        """[(squarefree factor, multiplicity)] for monic g."""
        out = []
        e = 1
        while pdeg_i(g) > 0:
            d = zp_gcd(g, zp_deriv(g, p), p)
            w, r = zp_divmod(g, d, p)
            assert not r
            i = 1
            while pdeg_i(w) > 0:
                y = zp_gcd(w, d, p)
                z, r2 = zp_divmod(w, y, p)
                assert not r2
                if pdeg_i(z) > 0:
                    out.append((z, e * i))
                w = y
                d = zp_divmod(d, y, p)[0]
                i += 1
            if pdeg_i(d) > 0:
                # d is a p-th power
                g = [d[j] for j in range(0, len(d), p)]
                e *= p
            else:
                break
        return out

    def pdeg_i(g):
        return len(g) - 1 if g else -1

    def distinct_degree(g):
        out = []
        x = [0, 1]
        h = x[:]
        d = 0
        rem = g[:]
        while pdeg_i(rem) > 0:
            d += 1
            if 2 * d > pdeg_i(rem):
                out.append((rem, pdeg_i(rem)))
                break
            h = zp_pow_mod(h, p, rem, p)
            gd = zp_gcd(zp_sub(h, x, p), rem, p)
            if pdeg_i(gd) > 0:
                out.append((gd, d))
                rem = zp_divmod(rem, gd, p)[0]
                h = zp_divmod(h, rem, p)[1]
        return out

    def equal_degree(g, d):
        """Split monic squarefree g, all of whose factors have degree d."""
        n = pdeg_i(g)
        if n == d:
            return [g]
        while True:
            a = [rng.randrange(p) for _ in range(n)]
            a = zp_normalize(a, p)
            if pdeg_i(a) < 1:
                continue
            if p == 2:
                # trace map splitting
                t = a[:]
                acc = a[:]
                for _ in range(d - 1):
                    acc = zp_pow_mod(acc, 2, g, 2)
                    t = zp_add(t, acc, 2)
                h = zp_gcd(t, g, 2)
            else:
                e = (p ** d - 1) // 2
                t = zp_pow_mod(a, e, g, p)
                h = zp_gcd(zp_sub(t, [1], p), g, p)
            if 0 < pdeg_i(h) < n:
                left = equal_degree(h, d)
                right = equal_degree(zp_divmod(g, h, p)[0], d)
                return left + right

    result = []
    for sqf, mult in squarefree_split(f0):
        for gd, d in distinct_degree(sqf):
            for irr in equal_degree(gd, d):
                result.append((irr, mult))
    result.sort(key=lambda t: (len(t[0]), t[0]))
    check = [lead]
    for poly, mult in result:
        for _ in range(mult):
            check = zp_mul(check, poly, p)
    assert check == zp_normalize(f, p), "mod-p factorization failed verification"
    return lead, result


def hensel_lift_factor(f, g, h, p, target_exp):
    """Lift a coprime factorization f = g*h mod p to mod p^target_exp.

    f, g, h integer coefficient lists with f monic, g monic mod p, and
    gcd(g, h) = 1 mod p.  Returns (G, H) mod p^target_exp with f = G*H and
    G = g, H = h mod p.  Quadratic lifting.
    """
    # extended gcd mod p: s*g + t*h = 1
    def xgcd_poly(a, b, m):
        r0, r1 = zp_normalize(a, m), zp_normalize(b, m)
        s0, s1 = [1], []
        t0, t1 = [], [1]
        while r1:
            q, r = zp_divmod(r0, r1, m)
            r0, r1 = r1, r
            s0, s1 = s1, zp_sub(s0, zp_mul(q, s1, m), m)
            t0, t1 = t1, zp_sub(t0, zp_mul(q, t1, m), m)
        assert len(r0) == 1, "factors not coprime"
        inv = pow(r0[0], -1, m)
        return [c * inv % m for c in s0], [c * inv % m for c in t0]

    s, t = xgcd_poly(g, h, p)
    m = p
    G, H = zp_normalize(g, p), zp_normalize(h, p)
    S, T = s, t
    while m < p ** target_exp:
        m2 = min(m * m, p ** target_exp)
        # e = f - G*H mod m2
        e = zp_sub(zp_normalize(f, m2), zp_mul(G, H, m2), m2)
        q, r = zp_divmod(zp_mul(S, e, m2), H, m2)
        Gd = zp_add(G, zp_add(zp_mul(e, T, m2), zp_mul(q, G, m2), m2), m2)
        Hd = zp_add(H, r, m2)
        # lift Bezout: S' = S - S*(S*G' + T*H' - 1), similarly T'
        b = zp_sub(zp_add(zp_mul(S, Gd, m2), zp_mul(T, Hd, m2), m2), [1], m2)
        q2, r2 = zp_divmod(zp_mul(S, b, m2), Hd, m2)
        Sd = zp_sub(S, r2, m2)
        Td = zp_sub(zp_sub(T, zp_mul(T, b, m2), m2), zp_mul(q2, Gd, m2), m2)
        G, H, S, T = Gd, Hd, Sd, Td
        m = m2
    mod = p ** target_exp
    assert zp_sub(zp_normalize(f, mod), zp_mul(G, H, mod), mod) == [], \
        "Hensel lift failed verification"
    return G, H


def hensel_lift_root(f, r, p, target_exp):
    """Lift a simple root r of f mod p to mod p^target_exp (Newton)."""
    fp = zp_eval(zp_deriv(f, p), r, p)
    assert fp % p != 0, "root is not simple"
    m = p
    x = r % p
    while m < p ** target_exp:
        m2 = min(m * m, p ** target_exp)
        fx = zp_eval([int(c) for c in f], x, m2)
        dfx = zp_eval(zp_deriv([int(c) for c in f], m2), x, m2)
        x = (x - fx * pow(dfx, -1, m2)) % m2
        m = m2
    mod = p ** target_exp
    assert zp_eval([int(c) for c in f], x, mod) == 0, "root lift failed"
    return x
