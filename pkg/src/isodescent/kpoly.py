"""Polynomial arithmetic over an abstract coefficient field.

The field object R must provide zero, one, add, sub, neg, mul, inverse,
is_zero, from_rational, and equality of elements by ==.  NumberField
instances satisfy this, as do the quotient-ring towers built on top of
them.  Polynomials are lists of coefficients, lowest degree first, with no
trailing zeros.
"""


def fp_normalize(R, a):
    while a and R.is_zero(a[-1]):
        a = a[:-1]
    return list(a)


def fp_deg(a):
    return len(a) - 1


def fp_add(R, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else R.zero
        y = b[i] if i < len(b) else R.zero
        out.append(R.add(x, y))
    return fp_normalize(R, out)


def fp_sub(R, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else R.zero
        y = b[i] if i < len(b) else R.zero
        out.append(R.sub(x, y))
    return fp_normalize(R, out)


def fp_scale(R, a, c):
    if R.is_zero(c):
        return []
    return [R.mul(x, c) for x in a]


def fp_mul(R, a, b):
    if not a or not b:
        return []
    out = [R.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if R.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = R.add(out[i + j], R.mul(x, y))
    return fp_normalize(R, out)


def fp_divmod(R, a, b):
    assert b, "polynomial division by zero"
    a = list(a)
    binv = R.inverse(b[-1])
    q = [R.zero] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = R.mul(a[-1], binv)
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = R.sub(a[k + i], R.mul(c, y))
        a = fp_normalize(R, a)
        if len(a) <= k:
            break
    return fp_normalize(R, q), fp_normalize(R, a)


def fp_mod(R, a, b):
    return fp_divmod(R, a, b)[1]


def fp_monic(R, a):
    if not a:
        return []
    inv = R.inverse(a[-1])
    return [R.mul(c, inv) for c in a]


def fp_gcd(R, a, b):
    a, b = fp_normalize(R, a), fp_normalize(R, b)
    while b:
        a, b = b, fp_mod(R, a, b)
    return fp_monic(R, a)


def fp_eval(R, a, x):
    out = R.zero
    for c in reversed(a):
        out = R.add(R.mul(out, x), c)
    return out


def fp_deriv(R, a):
    out = []
    for i in range(1, len(a)):
        out.append(R.mul(a[i], R.from_rational(i)))
    return fp_normalize(R, out)


def fp_pow_mod(R, a, e, m):
    e = int(e)
    assert e >= 0
    out = [R.one]
    base = fp_mod(R, a, m)
    while e:
        if e & 1:
            out = fp_mod(R, fp_mul(R, out, base), m)
        base = fp_mod(R, fp_mul(R, base, base), m)
        e >>= 1
    return out


def fp_squarefree_part(R, a):
    d = fp_deriv(R, a)
    if not d:
        return fp_monic(R, a)
    g = fp_gcd(R, a, d)
    if fp_deg(g) == 0:
        return fp_monic(R, a)
    q, r = fp_divmod(R, a, g)
    assert not r
    return fp_monic(R, q)


def fp_from_rational_poly(R, coeffs):
    return fp_normalize(R, [R.from_rational(c) for c in coeffs])
