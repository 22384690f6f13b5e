"""Reduction data at a prime: Kodaira type, Tamagawa number, conductor
exponent.

The analysis runs on a globally minimal model, so the answers are facts
about the curve rather than the presented equation.  Everything is exact;
residue questions at p = 2 and 3 are settled by exhaustive search over the
tiny residue rings rather than closed-form translations, which keeps those
branches immune to characteristic quirks.

The conductor exponent is obtained from the component count through the
discriminant formula f = v(disc) + 1 - m, valid at every prime (with the
wild part accounted for automatically).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..ratmath import denom, factorize, is_prime, numer
from .curve import ModelChange, WeierstrassCurve, minimal_model


@dataclass(frozen=True)
class LocalData:
    """Local invariants of a curve at one prime.

    kodaira is a printable symbol such as "I0", "I5", "IV", "I2*", "III*".
    reduction is "good", "split multiplicative", "nonsplit multiplicative"
    or "additive".  tamagawa is c_p, f the conductor exponent and vdisc
    the valuation of the minimal discriminant.
    """

    p: int
    kodaira: str
    tamagawa: int
    reduction: str
    f: int
    vdisc: int

    def __post_init__(self):
        assert self.tamagawa >= 1, "Tamagawa numbers are positive"
        assert self.f >= 0 and self.vdisc >= 0

    @property
    def is_good(self) -> bool:
        return self.reduction == "good"


def _vp(x, p: int) -> int:
    """p-adic valuation of a rational; zero input raises."""
    assert x != 0, "valuation of zero requested"
    v = 0
    n = int(numer(x))
    d = int(denom(x))
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _is_square_mod(a: int, p: int) -> bool:
    a %= p
    if p == 2:
        return True
    if a == 0:
        return True
    return pow(a, (p - 1) // 2, p) == 1


def _poly_roots_mod(coeffs: List[int], p: int) -> List[int]:
    """Roots in Z/p of a polynomial given low degree first (p stays small
    whenever this is called on behalf of a Tamagawa count)."""
    out = []
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out


def _translate(E: WeierstrassCurve, r, s, t) -> WeierstrassCurve:
    return ModelChange(1, r, s, t).apply(E)


def _ai(E: WeierstrassCurve) -> Tuple[int, int, int, int, int]:
    assert E.is_integral(), "Tate analysis expects an integral model"
    a1, a2, a3, a4, a6 = E.a_list()
    return int(a1), int(a2), int(a3), int(a4), int(a6)


# ---------------------------------------------------------------------------
# the algorithm proper


def tate_local(E: WeierstrassCurve, p: int) -> LocalData:
    """Kodaira type, Tamagawa number and conductor exponent of E at p."""
    assert is_prime(p), "local data wants a prime"
    Emin, _ = minimal_model(E)
    return _tate_on_minimal(Emin, p)


def _tate_on_minimal(E: WeierstrassCurve, p: int) -> LocalData:
    assert E.is_integral()
    if _vp_or_zero(E.disc, p) == 0:
        return LocalData(p, "I0", 1, "good", 0, 0)
    n = _vp(E.disc, p)
    if _vp_or_zero(E.c4, p) == 0:
        split = _is_split_multiplicative(E, p)
        if split:
            return LocalData(p, "I%d" % n, n, "split multiplicative", 1, n)
        c = 2 if n % 2 == 0 else 1
        return LocalData(p, "I%d" % n, c, "nonsplit multiplicative", 1, n)
    kod, c, m = _additive_analysis(E, p)
    f = n + 1 - m
    assert f >= 2, "additive reduction needs conductor exponent at least 2"
    return LocalData(p, kod, c, "additive", f, n)


def _vp_or_zero(x, p: int) -> int:
    return 10 ** 9 if x == 0 else _vp(x, p)


def _singular_point_shift(E: WeierstrassCurve, p: int) -> WeierstrassCurve:
    """Translate so the singular point of the reduction mod p is (0, 0)."""
    a1, a2, a3, a4, a6 = _ai(E)
    if p <= 13:
        for x0 in range(p):
            for y0 in range(p):
                eq = (
                    y0 * y0 + a1 * x0 * y0 + a3 * y0
                    - x0 ** 3 - a2 * x0 * x0 - a4 * x0 - a6
                ) % p
                dx = (a1 * y0 - 3 * x0 * x0 - 2 * a2 * x0 - a4) % p
                dy = (2 * y0 + a1 * x0 + a3) % p
                if eq == 0 and dx == 0 and dy == 0:
                    return _translate(E, x0, 0, y0)
        raise AssertionError("no singular point mod %d on a bad fiber" % p)
    # p odd and not tiny: complete the square; the singular x is the
    # multiple root of F(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 mod p.
    b2, b4, b6 = int(E.b2), int(E.b4), int(E.b6)
    fc = [b6 % p, (2 * b4) % p, b2 % p, 4 % p]
    dc = [(2 * b4) % p, (2 * b2) % p, 12 % p]
    droots = set(_poly_roots_mod(dc, p))
    common = [x for x in _poly_roots_mod(fc, p) if x in droots]
    assert common, "bad fiber without a multiple root mod %d" % p
    x0 = common[0]
    y0 = (-(a1 * x0 + a3) * pow(2, p - 2, p)) % p
    return _translate(E, x0, 0, y0)


def _is_split_multiplicative(E: WeierstrassCurve, p: int) -> bool:
    """Whether the tangent directions at the node are rational.

    After moving the node to the origin the tangent cone is
    y^2 + a1 xy - a2 x^2, of discriminant b2; rational directions mean b2
    is a square mod p.  At p = 2 the node forces a1 odd and the cone
    factors exactly when a2 is even."""
    Es = _singular_point_shift(E, p)
    a1, a2 = int(Es.a1), int(Es.a2)
    if p == 2:
        assert a1 % 2 == 1, "node at 2 needs an odd a1 after the shift"
        return a2 % 2 == 0
    b2 = int(Es.b2)
    return b2 % p != 0 and _is_square_mod(b2, p)


def _normalize_star(E: WeierstrassCurve, p: int) -> WeierstrassCurve:
    """Arrange v(a1), v(a2) >= 1, v(a3), v(a4) >= 2, v(a6) >= 3 while
    keeping the singular point at the origin.  Only the (s, t) part of a
    coordinate change is needed; for p in {2, 3} search the residue ring,
    otherwise use the closed-form translation."""
    if p <= 3:
        for s in range(p ** 2):
            for t in range(p ** 3):
                cand = _translate(E, 0, s, t)
                a1, a2, a3, a4, a6 = _ai(cand)
                if (
                    a1 % p == 0
                    and a2 % p == 0
                    and a3 % p ** 2 == 0
                    and a4 % p ** 2 == 0
                    and a6 % p ** 3 == 0
                ):
                    return cand
        raise AssertionError("normalization failed at %d; model not minimal?" % p)
    a1, _, _, _, _ = _ai(E)
    inv2 = pow(2, p - 2, p)
    s = (-a1 * inv2) % p
    E = _translate(E, 0, s, 0)
    a1, a2, a3, a4, a6 = _ai(E)
    t = (-a3 * inv2) % p ** 2
    E = _translate(E, 0, 0, t)
    a1, a2, a3, a4, a6 = _ai(E)
    assert a1 % p == 0 and a2 % p == 0, "expected vanishing linear part"
    assert a3 % p ** 2 == 0 and a4 % p ** 2 == 0 and a6 % p ** 3 == 0, (
        "valuations too small after normalization; model not minimal at %d" % p
    )
    return E


def _cubic_discriminant(P: List[int]) -> int:
    d, c, b, a = P
    assert a == 1
    return 18 * b * c * d - 4 * b ** 3 * d + b * b * c * c - 4 * c ** 3 - 27 * d * d


def _triple_root(P: List[int], p: int) -> Optional[int]:
    """The r with P(T) = (T - r)^3 mod p, or None.  Works in every
    characteristic by direct comparison of coefficients."""
    d, c, b, _ = [v % p for v in P]
    for r in range(p):
        if (b + 3 * r) % p == 0 and (c - 3 * r * r) % p == 0 and (d + r ** 3) % p == 0:
            return r
    return None


def _double_root(P: List[int], p: int) -> int:
    for r in range(p):
        val = (P[0] + P[1] * r + P[2] * r * r + r ** 3) % p
        der = (P[1] + 2 * P[2] * r + 3 * r * r) % p
        if val == 0 and der == 0:
            return r
    raise AssertionError("expected a repeated root mod %d" % p)


def _additive_analysis(E: WeierstrassCurve, p: int) -> Tuple[str, int, int]:
    """Kodaira symbol, Tamagawa number and component count m for an
    additive fiber, following the usual ladder of valuation tests."""
    E = _singular_point_shift(E, p)
    a1, a2, a3, a4, a6 = _ai(E)
    assert a6 % p == 0 and a4 % p == 0 and a3 % p == 0, "origin is not singular"
    if a6 % p ** 2 != 0:
        return "II", 1, 1
    if _vp_or_zero(E.b8, p) < 3:
        return "III", 2, 2
    if _vp_or_zero(E.b6, p) < 3:
        # the two branches at the origin are swapped or fixed by Frobenius
        # according to Y^2 + (a3/p) Y - a6/p^2 having roots mod p
        roots = _poly_roots_mod([(-(a6 // p ** 2)) % p, (a3 // p) % p, 1], p)
        return "IV", 3 if roots else 1, 3
    E = _normalize_star(E, p)
    a1, a2, a3, a4, a6 = _ai(E)
    P = [(a6 // p ** 3) % p, (a4 // p ** 2) % p, (a2 // p) % p, 1]
    if _cubic_discriminant(P) % p != 0:
        return "I0*", 1 + len(_poly_roots_mod(P, p)), 5
    r3 = _triple_root(P, p)
    if r3 is None:
        x0 = _double_root(P, p)
        E = _translate(E, p * x0, 0, 0)
        return _in_star_loop(E, p)
    E = _translate(E, p * r3, 0, 0)
    a1, a2, a3, a4, a6 = _ai(E)
    assert a2 % p ** 2 == 0 and a4 % p ** 3 == 0 and a6 % p ** 4 == 0
    # step with the quadratic Y^2 + (a3/p^2) Y - a6/p^4
    A = (a3 // p ** 2) % p
    B = (a6 // p ** 4) % p
    roots = _poly_roots_mod([(-B) % p, A, 1], p)
    if (A * A + 4 * B) % p != 0:
        return "IV*", 3 if roots else 1, 7
    y0 = _quadratic_double_root(A, B, p)
    E = _translate(E, 0, 0, p ** 2 * y0)
    a1, a2, a3, a4, a6 = _ai(E)
    assert a3 % p ** 3 == 0 and a6 % p ** 5 == 0
    if a4 % p ** 4 != 0:
        return "III*", 2, 8
    if a6 % p ** 6 != 0:
        return "II*", 1, 9
    raise AssertionError("fiber analysis walked past II*; model not minimal at %d" % p)


def _quadratic_double_root(A: int, B: int, p: int) -> int:
    """Double root of Y^2 + A Y - B mod p, assuming the discriminant
    vanishes mod p."""
    for y in range(p):
        if (y * y + A * y - B) % p == 0 and (2 * y + A) % p == 0:
            return y
    raise AssertionError("quadratic had no repeated root mod %d" % p)


def _in_star_loop(E: WeierstrassCurve, p: int) -> Tuple[str, int, int]:
    """Distinguish the I_m* types (m >= 1).

    On entry the repeated root of the degree three polynomial sits at the
    origin, so v(a2) = 1, v(a3) >= 2, v(a4) >= 3, v(a6) >= 4.  Stage k
    first examines Y^2 + (a3/p^{k+1}) Y - a6/p^{2k+2}; if that has distinct
    roots the type is I_{2k-1}*.  Otherwise, after recentering, it examines
    (a2/p) T^2 + (a4/p^{k+2}) T + a6/p^{2k+3}; distinct roots mean type
    I_{2k}*.  A repeated root recenters again and moves to stage k + 1.
    The Tamagawa number is 4 when the deciding quadratic splits over the
    residue field and 2 otherwise.
    """
    a1, a2, a3, a4, a6 = _ai(E)
    assert a2 % p == 0 and a2 % p ** 2 != 0, "repeated root must be simple in a2"
    vdisc = _vp(E.disc, p)
    k = 1
    while True:
        a1, a2, a3, a4, a6 = _ai(E)
        assert a3 % p ** (k + 1) == 0 and a6 % p ** (2 * k + 2) == 0, "valuation drift"
        A = (a3 // p ** (k + 1)) % p
        B = (a6 // p ** (2 * k + 2)) % p
        if (A * A + 4 * B) % p != 0:
            roots = _poly_roots_mod([(-B) % p, A, 1], p)
            m = 2 * k - 1
            return "I%d*" % m, 4 if roots else 2, m + 5
        y0 = _quadratic_double_root(A, B, p)
        E = _translate(E, 0, 0, p ** (k + 1) * y0)
        a1, a2, a3, a4, a6 = _ai(E)
        assert a4 % p ** (k + 2) == 0 and a6 % p ** (2 * k + 3) == 0, "valuation drift"
        aa = (a2 // p) % p
        bb = (a4 // p ** (k + 2)) % p
        cc = (a6 // p ** (2 * k + 3)) % p
        if (bb * bb - 4 * aa * cc) % p != 0:
            roots = _poly_roots_mod([cc, bb, aa], p)
            m = 2 * k
            return "I%d*" % m, 4 if roots else 2, m + 5
        x0 = _conic_double_root(aa, bb, cc, p)
        E = _translate(E, p ** (k + 1) * x0, 0, 0)
        k += 1
        assert k <= vdisc, "component loop failed to terminate"


def _conic_double_root(a: int, b: int, c: int, p: int) -> int:
    """Double root of a T^2 + b T + c mod p (a a unit, zero discriminant)."""
    for t in range(p):
        if (a * t * t + b * t + c) % p == 0 and (2 * a * t + b) % p == 0:
            return t
    raise AssertionError("degenerate conic had no repeated root mod %d" % p)


# ---------------------------------------------------------------------------
# global bookkeeping


def bad_reduction_primes(E: WeierstrassCurve) -> List[int]:
    Emin, _ = minimal_model(E)
    dd = abs(int(Emin.disc))
    return sorted(factorize(dd))


def all_local_data(E: WeierstrassCurve) -> Dict[int, LocalData]:
    Emin, _ = minimal_model(E)
    return {p: _tate_on_minimal(Emin, p) for p in bad_reduction_primes(Emin)}


def conductor(E: WeierstrassCurve) -> int:
    out = 1
    for p, loc in all_local_data(E).items():
        out *= p ** loc.f
    return out


def tamagawa_product(E: WeierstrassCurve) -> int:
    out = 1
    for loc in all_local_data(E).values():
        out *= loc.tamagawa
    return out
