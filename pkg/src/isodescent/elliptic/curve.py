"""Weierstrass models over Q.

A curve is stored by its five coefficients a1, a2, a3, a4, a6 as exact
rationals; the derived quantities b2, b4, b6, b8, c4, c6, the discriminant
and the j-invariant are computed once at construction.  Points are
projective triples normalized to Z in {0, 1}.  The chord-tangent group law,
coordinate changes (u, r, s, t), division polynomials, rational torsion and
globally minimal models are all exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..polyq import peval, pmul, pnormalize, psub, roots_rational
from ..ratmath import QQ, QQ0, QQ1, denom, factorize, is_prime, numer


def _qq(x) -> "QQ":
    """Coerce ints, Fractions and strings to the working rational type."""
    return QQ(x)


@dataclass(frozen=True)
class CurvePoint:
    """A projective point (X : Y : Z) with exact rational coordinates.

    Instances are normalized on construction: the point at infinity is
    stored as (0 : 1 : 0) and every affine point is scaled to Z = 1, so
    dataclass equality agrees with projective equality.
    """

    X: object
    Y: object
    Z: object

    def __post_init__(self):
        X, Y, Z = _qq(self.X), _qq(self.Y), _qq(self.Z)
        if Z == 0:
            assert Y != 0, "(0 : 0 : 0) is not a projective point"
            assert X == 0, "the only point on the line at infinity is (0 : 1 : 0)"
            X, Y, Z = QQ0, QQ1, QQ0
        else:
            X, Y, Z = X / Z, Y / Z, QQ1
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "Z", Z)

    @property
    def is_identity(self) -> bool:
        return self.Z == 0

    def xy(self) -> Tuple:
        assert not self.is_identity, "the identity has no affine coordinates"
        return self.X, self.Y

    def __repr__(self):
        return "(%s : %s : %s)" % (self.X, self.Y, self.Z)


IDENTITY = CurvePoint(0, 1, 0)


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q."""

    a1: object
    a2: object
    a3: object
    a4: object
    a6: object

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _qq(getattr(self, name)))
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        assert 4 * b8 == b2 * b6 - b4 * b4, "b-quantity identity failed"
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        assert 1728 * disc == c4 ** 3 - c6 ** 2, "c-quantity identity failed"
        assert disc != 0, "singular model: discriminant vanishes"
        object.__setattr__(self, "b2", b2)
        object.__setattr__(self, "b4", b4)
        object.__setattr__(self, "b6", b6)
        object.__setattr__(self, "b8", b8)
        object.__setattr__(self, "c4", c4)
        object.__setattr__(self, "c6", c6)
        object.__setattr__(self, "disc", disc)
        object.__setattr__(self, "j", c4 ** 3 / disc)

    # -- basic predicates ---------------------------------------------------

    def a_list(self) -> List:
        return [self.a1, self.a2, self.a3, self.a4, self.a6]

    def is_integral(self) -> bool:
        return all(denom(a) == 1 for a in self.a_list())

    def equation_value(self, P: CurvePoint):
        """The homogeneous Weierstrass form evaluated at P (zero iff P lies
        on the curve)."""
        X, Y, Z = P.X, P.Y, P.Z
        return (
            Y * Y * Z
            + self.a1 * X * Y * Z
            + self.a3 * Y * Z * Z
            - X ** 3
            - self.a2 * X * X * Z
            - self.a4 * X * Z * Z
            - self.a6 * Z ** 3
        )

    def contains(self, P: CurvePoint) -> bool:
        return self.equation_value(P) == 0

    def point(self, x, y) -> CurvePoint:
        P = CurvePoint(x, y, 1)
        assert self.contains(P), "point does not satisfy the curve equation"
        return P

    def identity(self) -> CurvePoint:
        return IDENTITY

    # -- group law ----------------------------------------------------------

    def neg(self, P: CurvePoint) -> CurvePoint:
        if P.is_identity:
            return P
        x, y = P.xy()
        return CurvePoint(x, -y - self.a1 * x - self.a3, 1)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        assert self.contains(P) and self.contains(Q), "group law needs curve points"
        if P.is_identity:
            return Q
        if Q.is_identity:
            return P
        x1, y1 = P.xy()
        x2, y2 = Q.xy()
        if x1 == x2:
            if y1 + y2 + self.a1 * x1 + self.a3 == 0:
                return IDENTITY
            assert y1 == y2, "two distinct points share x but are not opposite"
            lam = (3 * x1 * x1 + 2 * self.a2 * x1 + self.a4 - self.a1 * y1) / (
                2 * y1 + self.a1 * x1 + self.a3
            )
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + self.a1 * lam - self.a2 - x1 - x2
        y3 = -(lam + self.a1) * x3 - nu - self.a3
        return CurvePoint(x3, y3, 1)

    def sub(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        return self.add(P, self.neg(Q))

    def mul(self, n: int, P: CurvePoint) -> CurvePoint:
        if n < 0:
            return self.mul(-n, self.neg(P))
        R = IDENTITY
        A = P
        while n:
            if n & 1:
                R = self.add(R, A)
            n >>= 1
            if n:
                A = self.add(A, A)
        return R

    def order_of_point(self, P: CurvePoint, cap: int = 16) -> Optional[int]:
        """Exact order of P if it is at most cap, else None."""
        R = P
        for n in range(1, cap + 1):
            if R.is_identity:
                return n
            R = self.add(R, P)
        return None

    def __repr__(self):
        return "WeierstrassCurve(%s, %s, %s, %s, %s)" % tuple(self.a_list())


def curve_from_list(coeffs) -> WeierstrassCurve:
    """Build a curve from [a1, a2, a3, a4, a6] or the short form [a4, a6]."""
    coeffs = list(coeffs)
    if len(coeffs) == 2:
        return WeierstrassCurve(0, 0, 0, coeffs[0], coeffs[1])
    assert len(coeffs) == 5, "expected two or five coefficients, got %d" % len(coeffs)
    return WeierstrassCurve(*coeffs)


# ---------------------------------------------------------------------------
# coordinate changes


@dataclass(frozen=True)
class ModelChange:
    """The substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.

    Applied to a curve it produces the model in the primed coordinates;
    push sends points of the source to the target, pull inverts that.
    """

    u: object
    r: object
    s: object
    t: object

    def __post_init__(self):
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, _qq(getattr(self, name)))
        assert self.u != 0, "the scaling factor of a model change must be nonzero"

    def apply(self, E: WeierstrassCurve) -> WeierstrassCurve:
        u, r, s, t = self.u, self.r, self.s, self.t
        a1, a2, a3, a4, a6 = E.a_list()
        na1 = (a1 + 2 * s) / u
        na2 = (a2 - s * a1 + 3 * r - s * s) / u ** 2
        na3 = (a3 + r * a1 + 2 * t) / u ** 3
        na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4
        na6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6
        return WeierstrassCurve(na1, na2, na3, na4, na6)

    def push(self, P: CurvePoint) -> CurvePoint:
        if P.is_identity:
            return P
        x, y = P.xy()
        u, r, s, t = self.u, self.r, self.s, self.t
        nx = (x - r) / u ** 2
        ny = (y - s * (x - r) - t) / u ** 3
        return CurvePoint(nx, ny, 1)

    def pull(self, P: CurvePoint) -> CurvePoint:
        return self.inverse().push(P)

    def inverse(self) -> "ModelChange":
        u, r, s, t = self.u, self.r, self.s, self.t
        return ModelChange(1 / u, -r / u ** 2, -s / u, (r * s - t) / u ** 3)

    def compose(self, other: "ModelChange") -> "ModelChange":
        """The change performing self first, then other (on the new model)."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return ModelChange(
            u1 * u2,
            u1 * u1 * r2 + r1,
            u1 * s2 + s1,
            u1 ** 3 * t2 + s1 * u1 * u1 * r2 + t1,
        )


IDENTITY_CHANGE = ModelChange(1, 0, 0, 0)


# ---------------------------------------------------------------------------
# division polynomials

_DIVPOLY_CACHE: Dict[Tuple, List[List]] = {}


def _divpoly_table(E: WeierstrassCurve, n: int) -> List[List]:
    """Table f_0 .. f_n of y-free division polynomials.

    For odd m, f_m is the full m-division polynomial; for even m it is the
    quotient by (2y + a1 x + a3), whose square is F = 4x^3 + b2 x^2 +
    2 b4 x + b6.  The x-coordinates of the nontrivial m-torsion are the
    roots of f_m, together with the roots of F when m is even.
    """
    key = tuple(E.a_list())
    table = _DIVPOLY_CACHE.setdefault(key, [])
    if len(table) > n:
        return table
    b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
    if not table:
        F = pnormalize([b6, 2 * b4, b2, QQ(4)])
        f3 = pnormalize([b8, 3 * b6, 3 * b4, b2, QQ(3)])
        f4 = pnormalize(
            [
                b4 * b8 - b6 * b6,
                b2 * b8 - b4 * b6,
                10 * b8,
                10 * b6,
                5 * b4,
                b2,
                QQ(2),
            ]
        )
        table.extend([[], [QQ1], [QQ1], f3, f4])
    F = pnormalize([b6, 2 * b4, b2, QQ(4)])
    FF = pmul(F, F)
    while len(table) <= n:
        m2 = len(table)  # next index to fill
        m, rem = divmod(m2, 2)
        if rem:
            a = pmul(table[m + 2], pmul(table[m], pmul(table[m], table[m])))
            b = pmul(table[m - 1], pmul(table[m + 1], pmul(table[m + 1], table[m + 1])))
            if m % 2 == 0:
                f = psub(pmul(FF, a), b)
            else:
                f = psub(a, pmul(FF, b))
        else:
            inner = psub(
                pmul(table[m + 2], pmul(table[m - 1], table[m - 1])),
                pmul(table[m - 2], pmul(table[m + 1], table[m + 1])),
            )
            f = pmul(table[m], inner)
        table.append(pnormalize(f))
    return table


def division_polynomial(E: WeierstrassCurve, n: int) -> List:
    """The y-free n-division polynomial f_n (see _divpoly_table)."""
    assert n >= 0, "division polynomial index must be nonnegative"
    return list(_divpoly_table(E, n)[n])


def two_torsion_poly(E: WeierstrassCurve) -> List:
    """F(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 = (2y + a1 x + a3)^2 on the curve."""
    return pnormalize([E.b6, 2 * E.b4, E.b2, QQ(4)])


def x_coordinates_of_n_torsion(E: WeierstrassCurve, n: int) -> List:
    """Rational x such that some point (x, y) over the algebraic closure has
    n (x, y) = identity.  The y need not be rational; callers filter."""
    assert n >= 2, "torsion index starts at 2"
    poly = division_polynomial(E, n)
    if n % 2 == 0:
        poly = pmul(poly, two_torsion_poly(E))
    xs = sorted(set(roots_rational(poly)))
    return xs


def points_with_x(E: WeierstrassCurve, x) -> List[CurvePoint]:
    """All rational points of E with the given x-coordinate (0, 1 or 2)."""
    x = _qq(x)
    Fx = peval(two_torsion_poly(E), x)
    if Fx == 0:
        return [CurvePoint(x, -(E.a1 * x + E.a3) / 2, 1)]
    if Fx < 0:
        return []
    nn, dd = int(numer(Fx)), int(denom(Fx))
    rn = math.isqrt(nn)
    rd = math.isqrt(dd)
    if rn * rn != nn or rd * rd != dd:
        return []
    sq = QQ(rn, rd)
    y1 = (-(E.a1 * x + E.a3) + sq) / 2
    y2 = (-(E.a1 * x + E.a3) - sq) / 2
    pts = [CurvePoint(x, y1, 1)]
    if y2 != y1:
        pts.append(CurvePoint(x, y2, 1))
    for P in pts:
        assert E.contains(P), "constructed torsion candidate misses the curve"
    return pts


# ---------------------------------------------------------------------------
# rational torsion

MAX_POINT_ORDER = 12  # largest order of a rational torsion point over Q


@dataclass(frozen=True)
class TorsionGroup:
    """Structure of the rational torsion subgroup.

    invariants lists the cyclic factors in divisor order, so () means the
    trivial group, (n,) a cyclic group of order n and (2, 2m) the full
    product structure.  generators matches invariants elementwise and
    points holds every torsion point including the identity.
    """

    invariants: Tuple[int, ...]
    generators: Tuple[CurvePoint, ...]
    points: Tuple[CurvePoint, ...]

    @property
    def order(self) -> int:
        out = 1
        for n in self.invariants:
            out *= n
        return out

    def is_cyclic(self) -> bool:
        return len(self.invariants) <= 1


def _curve_order_mod_p(E: WeierstrassCurve, p: int) -> int:
    """Point count of the reduction mod an odd prime p of good reduction."""
    assert p % 2 == 1, "use odd primes for the counting bound"
    F = two_torsion_poly(E)
    fc = [int(numer(c) * pow(int(denom(c)), p - 2, p)) % p for c in F]
    count = p + 1
    half = (p - 1) // 2
    for x in range(p):
        v = ((fc[3] * x % p * x + fc[2] * x + fc[1]) % p * x + fc[0]) % p
        if v == 0:
            continue
        if pow(v, half, p) == 1:
            count += 1
        else:
            count -= 1
    return count


def _torsion_order_bound(E: WeierstrassCurve, samples: int = 6) -> int:
    """A multiple of the rational torsion order, from counting points in a
    few good odd residue characteristics."""
    bound = 0
    dd = abs(numer(E.disc)) * denom(E.disc)
    p = 3
    used = 0
    while used < samples:
        while not is_prime(p) or dd % p == 0:
            p += 2
        bound = math.gcd(bound, _curve_order_mod_p(E, p))
        used += 1
        p += 2
        if bound == 1:
            break
    assert bound >= 1
    return bound


def _closure_under_addition(E: WeierstrassCurve, pts: List[CurvePoint]) -> List[CurvePoint]:
    seen = {IDENTITY}
    frontier = [P for P in pts if P not in seen]
    seen.update(frontier)
    changed = True
    while changed:
        changed = False
        current = list(seen)
        for P in current:
            for Q in current:
                R = E.add(P, Q)
                if R not in seen:
                    seen.add(R)
                    changed = True
        assert len(seen) <= 16, "torsion closure exceeded the rational bound"
    return sorted(seen, key=lambda P: (P.Z == 0, str(P.X), str(P.Y)))


def torsion_subgroup(E: WeierstrassCurve) -> TorsionGroup:
    """The rational torsion subgroup, with generators.

    Strategy: reduce modulo a few good odd primes to bound the order, then
    extract points of prime power order from the division polynomials and
    close up under addition.  Orders of rational points are at most 12, so
    only f_q for q in {2, 3, 4, 5, 7, 8, 9} can contribute.
    """
    Emin, change = minimal_model(E)
    bound = _torsion_order_bound(Emin)
    found: List[CurvePoint] = []
    for q in (2, 3, 4, 5, 7, 8, 9):
        if bound % q != 0:
            continue
        for x in x_coordinates_of_n_torsion(Emin, q):
            found.extend(points_with_x(Emin, x))
    pts = _closure_under_addition(Emin, found)
    orders = {P: Emin.order_of_point(P, cap=MAX_POINT_ORDER) for P in pts}
    assert all(o is not None for o in orders.values()), "non-torsion point in closure"
    total = len(pts)
    M = max(orders.values())
    assert total % M == 0 and total // M in (1, 2), "unexpected torsion shape"
    gen1 = next(P for P in pts if orders[P] == M)
    back = change.inverse()
    if total == M:
        invariants = () if M == 1 else (M,)
        gens = () if M == 1 else (back.push(gen1),)
    else:
        multiples = set()
        R = IDENTITY
        for _ in range(M):
            R = Emin.add(R, gen1)
            multiples.add(R)
        gen2 = next(P for P in pts if orders[P] == 2 and P not in multiples)
        invariants = (2, M)
        gens = (back.push(gen2), back.push(gen1))
    out_pts = tuple(back.push(P) for P in pts)
    for P in out_pts:
        assert E.contains(P), "torsion point failed to map back to the input model"
    return TorsionGroup(invariants, gens, out_pts)


# ---------------------------------------------------------------------------
# minimal models (Laska, Kraus, Connell)


def _val(n: int, p: int) -> int:
    assert n != 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _kraus_ok(c4: int, c6: int, p: int) -> bool:
    """Whether (c4, c6) arises from an integral model, checked p-locally.

    Only p = 2 and p = 3 carry conditions beyond integrality."""
    if p == 3:
        return c6 == 0 or _val(c6, 3) != 2
    if p == 2:
        if c6 % 4 == 3:
            return True
        if (c4 == 0 or _val(c4, 2) >= 4) and (c6 % 32 in (0, 8)):
            return True
        return False
    return True


def _model_from_c_invariants(c4, c6) -> WeierstrassCurve:
    """The reduced integral model with the given invariants: a1, a3 in
    {0, 1} and a2 in {-1, 0, 1}.  Exists and is unique by the classical
    reduction theory; we simply try the twelve candidates."""
    for A1 in (0, 1):
        for A2 in (-1, 0, 1):
            for A3 in (0, 1):
                b2 = QQ(A1 * A1 + 4 * A2)
                b4 = (b2 * b2 - c4) / 24
                if denom(b4) != 1:
                    continue
                b6 = (-(b2 ** 3) + 36 * b2 * b4 - c6) / 216
                if denom(b6) != 1:
                    continue
                a4 = (b4 - A1 * A3) / 2
                a6 = (b6 - A3 * A3) / 4
                if denom(a4) != 1 or denom(a6) != 1:
                    continue
                E = WeierstrassCurve(A1, A2, A3, a4, a6)
                if E.c4 == c4 and E.c6 == c6:
                    return E
    raise AssertionError("no reduced model found; invariants violate the 2,3 conditions")


def minimal_model(E: WeierstrassCurve) -> Tuple[WeierstrassCurve, ModelChange]:
    """The global minimal model of E together with the change reaching it.

    Scale to an integral model, strip the largest twelfth powers allowed at
    every prime (backing off at 2 and 3 until an integral model with the
    smaller invariants exists), then pick the reduced model and recover the
    unique coordinate change connecting the two."""
    d = 1
    for a in E.a_list():
        d = d * denom(a) // math.gcd(d, int(denom(a)))
    u_total = QQ(1, d)
    c4 = E.c4 * d ** 4
    c6 = E.c6 * d ** 6
    disc = E.disc * d ** 12
    assert all(denom(v) == 1 for v in (c4, c6, disc))
    c4i, c6i, di = int(c4), int(c6), int(disc)
    fac = factorize(abs(di))
    for p, e in sorted(fac.items()):
        dp = e // 12
        if c4i != 0:
            dp = min(dp, _val(c4i, p) // 4)
        if c6i != 0:
            dp = min(dp, _val(c6i, p) // 6)
        if p in (2, 3):
            while dp > 0 and not _kraus_ok(
                c4i // p ** (4 * dp), c6i // p ** (6 * dp), p
            ):
                dp -= 1
        if dp > 0:
            c4i //= p ** (4 * dp)
            c6i //= p ** (6 * dp)
            di //= p ** (12 * dp)
            u_total = u_total * p ** dp
    Emin = _model_from_c_invariants(QQ(c4i), QQ(c6i))
    u = u_total
    s = (u * Emin.a1 - E.a1) / 2
    r = (u * u * Emin.a2 - E.a2 + s * E.a1 + s * s) / 3
    t = (u ** 3 * Emin.a3 - E.a3 - r * E.a1) / 2
    change = ModelChange(u, r, s, t)
    assert change.apply(E) == Emin, "recovered change does not reach the minimal model"
    return Emin, change


def is_minimal(E: WeierstrassCurve) -> bool:
    Emin, _ = minimal_model(E)
    return Emin == E
