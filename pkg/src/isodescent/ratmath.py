"""Exact rational arithmetic and elementary integer utilities.

Everything downstream computes with exact rationals.  gmpy2.mpq is used when
available (same attribute API as fractions.Fraction); otherwise Fraction.
"""

import math
from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq, mpz as _mpz

    def QQ(a=0, b=1):
        return _mpq(a, b)

    def ZZ(a):
        return int(a)

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is installed in CI
    def QQ(a=0, b=1):
        return Fraction(a, b)

    def ZZ(a):
        return int(a)

    HAVE_GMPY2 = False

QQ0 = QQ(0)
QQ1 = QQ(1)


def numer(q):
    return int(q.numerator)


def denom(q):
    return int(q.denominator)


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) or type(x).__name__ == "mpq"


def qq_is_integer(q) -> bool:
    return denom(q) == 1


def qq_floor(q) -> int:
    return numer(q) // denom(q)


def qq_round(q) -> int:
    """Round half away from zero (sign-symmetric, used by LLL)."""
    n, d = numer(q), denom(q)
    if n >= 0:
        return (2 * n + d) // (2 * d)
    return -((-2 * n + d) // (2 * d))


def content_and_primitive(vals):
    """gcd of numerators / lcm of denominators; returns (content, scaled list).

    content * primitive == vals entrywise, primitive entries are coprime ints.
    """
    vals = [QQ(v) for v in vals]
    assert any(v != 0 for v in vals), "content of zero vector"
    num_gcd = 0
    den_lcm = 1
    for v in vals:
        num_gcd = math.gcd(num_gcd, abs(numer(v)))
        den_lcm = den_lcm * denom(v) // math.gcd(den_lcm, denom(v))
    c = QQ(num_gcd, den_lcm)
    return c, [v / c for v in vals]


# ---------------------------------------------------------------------------
# primality and factorization


_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit, strong probable-prime beyond."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # Sufficient deterministic bases below 3.3e24; fixed extras above that.
    bases = _SMALL_PRIMES if n < 3317044064679887385961981 else _SMALL_PRIMES + [41, 43, 47, 53, 59]
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    n += 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    while not is_prime(n):
        n += 2
    return n


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's variant)."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        seed += 1
        y, c, m = seed, seed + 1, 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int, trial_bound: int = 100000) -> dict:
    """Prime factorization {p: e} of |n| (n != 0).  Sign discarded."""
    n = abs(int(n))
    assert n != 0, "factorize(0)"
    out: dict = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p * p <= n and p <= trial_bound:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += wheel[i]
        i = (i + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return dict(sorted(out.items()))


def partial_factorize(n: int, trial_bound: int = 100000):
    """Factor |n| by trial division up to trial_bound plus primality and
    perfect-power checks on the remainder.  Returns (factors, remainder)
    where remainder is 1 or an unfactored composite coprime to the found
    primes.  Never runs an unbounded factoring search."""
    n = abs(int(n))
    assert n != 0
    out: dict = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p * p <= n and p <= trial_bound:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += wheel[i]
        i = (i + 1) % 8
    if n > 1 and p * p > n:
        out[n] = out.get(n, 0) + 1
        return dict(sorted(out.items())), 1
    if n > 1:
        if is_prime(n):
            out[n] = out.get(n, 0) + 1
            n = 1
        else:
            for k in (2, 3, 5, 7):
                r = is_perfect_power(n, k)
                if r is not None and is_prime(r):
                    out[r] = out.get(r, 0) + k
                    n = 1
                    break
    return dict(sorted(out.items())), n


def squarefree_part(n: int) -> int:
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factorize(n).items():
        if e % 2:
            out *= p
    return out


def power_free_part(n: int, k: int) -> int:
    """Largest k-th-power-free divisor pattern: n / (largest k-th power)."""
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factorize(n).items():
        out *= p ** (e % k)
    return out


def is_perfect_power(n: int, k: int):
    """Return r with r**k == n, or None.  Works for negative n with odd k."""
    if n == 0:
        return 0
    neg = n < 0
    if neg and k % 2 == 0:
        return None
    m = -n if neg else n
    r = round(m ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == m:
            return -cand if neg else cand
    return None


def crt_pair(r1: int, m1: int, r2: int, m2: int):
    """x mod lcm with x=r1 (m1), x=r2 (m2); None if incompatible."""
    g = math.gcd(m1, m2)
    if (r2 - r1) % g != 0:
        return None
    l = m1 // g * m2
    t = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g)
    return (r1 + m1 * t) % l, l


def crt_list(residues, moduli):
    r, m = 0, 1
    for ri, mi in zip(residues, moduli):
        res = crt_pair(r, m, ri % mi, mi)
        assert res is not None, "inconsistent CRT input"
        r, m = res
    return r, m


def rational_reconstruct(a: int, m: int, num_bound: int = 0, den_bound: int = 0):
    """Find n/d = a mod m with |n| <= N, 0 < d <= D, gcd(d, m) = 1.

    Defaults N = D = floor(sqrt(m/2)).  Returns QQ or None.
    """
    a %= m
    if num_bound <= 0 or den_bound <= 0:
        b = math.isqrt(m // 2)
        num_bound = num_bound or b
        den_bound = den_bound or b
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r1 <= num_bound and abs(s1) <= den_bound and s1 != 0 and math.gcd(s1, m) == 1:
        q = QQ(r1, s1) if s1 > 0 else QQ(-r1, -s1)
        if (numer(q) - denom(q) * a) % m == 0:
            return q
    return None


def primes_up_to(bound: int):
    """Sorted list of primes <= bound (simple sieve)."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(range(p * p, bound + 1, p))
    return [i for i in range(2, bound + 1) if sieve[i]]
