"""Canonical heights on elliptic curves over Q.

The height computed here is the dynamical one attached to x-coordinate
duplication,

    hhat(P) = lim_n 4^(-n) h_x(2^n P),

with h_x the logarithmic projective height of the x-coordinate.  It is a
quadratic form on E(Q) vanishing exactly on torsion, and an isogeny of
degree d scales it by d.  In this normalization the Mordell-Weil
generator (0, 0) of 37a1 has height 0.05111140823996884.

The limit is evaluated place by place.  Write x = X/Z in lowest terms and
iterate the homogeneous duplication pair

    f(X, Z) = X^4 - b4 X^2 Z^2 - 2 b6 X Z^3 - b8 Z^4,
    g(X, Z) = 4 X^3 Z + b2 X^2 Z^2 + 2 b4 X Z^3 + b6 Z^4.

Over R, renormalizing by max(|X|, |Z|) at every step turns the limit into
a geometrically convergent series.  Over Q_p a reduced pair can only pick
up a common p-power when p divides Res(f, g), and that power is bounded by
v_p(Res), so the 4^(-k)-weighted valuation series converges with an
explicit tail; it is summed in exact rational arithmetic.  The height is
the archimedean series minus the weighted valuation sums.
"""

from __future__ import annotations

import math

from mpmath import mp, mpf, workdps

from ..polyq import resultant
from ..ratmath import QQ, QQ0, denom, factorize, numer
from .curve import CurvePoint, ModelChange, WeierstrassCurve

__all__ = ["canonical_height"]


def _integral_model(E: WeierstrassCurve, P: CurvePoint):
    m = 1
    for a in E.a_list():
        m = math.lcm(m, int(denom(a)))
    if m == 1:
        return E, P
    ch = ModelChange(QQ(1, m), QQ0, QQ0, QQ0)
    E2 = ch.apply(E)
    P2 = ch.push(P)
    assert E2.is_integral()
    assert E2.contains(P2)
    return E2, P2


def _vp(n: int, p: int) -> int:
    assert n != 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _padic_weighted_valuations(b, X0: int, Z0: int, p: int, vmax: int, steps: int):
    """Sum of 4^(-k) v_p(gcd) over the reduced duplication orbit.

    The pair is carried modulo p^M with a precision budget large enough
    that every valuation read is exact: each step consumes at most vmax
    digits and never reads past the budget.
    """
    b2, b4, b6, b8 = b
    M = vmax * (steps + 4) + 64
    pM = p**M
    X, Z = X0 % pM, Z0 % pM
    acc = QQ0
    w = QQ(1, 4)
    for _ in range(steps):
        X2 = X * X % pM
        XZ = X * Z % pM
        Z2 = Z * Z % pM
        X1 = (X2 * X2 - b4 * X2 * Z2 - 2 * b6 * XZ * Z2 - b8 * Z2 * Z2) % pM
        Z1 = (4 * X2 * XZ + b2 * X2 * Z2 + 2 * b4 * XZ * Z2 + b6 * Z2 * Z2) % pM
        assert X1 != 0 or Z1 != 0, "p-adic precision exhausted"
        v = min(_vp(X1, p) if X1 else M, _vp(Z1, p) if Z1 else M)
        assert v <= vmax, "common p-power exceeds the resultant bound"
        if v:
            q = p**v
            X1 //= q
            Z1 //= q
            acc += w * v
        w /= 4
        X, Z = X1, Z1
    return acc


def canonical_height(E: WeierstrassCurve, P: CurvePoint, digits: int = 28) -> float:
    """Dynamical canonical height of a rational point (0.0 on torsion)."""
    if P.is_identity:
        return 0.0
    E, P = _integral_model(E, P)
    x, _ = P.xy()
    Xn, Zn = int(numer(x)), int(denom(x))
    # torsion points on an integral model have small coordinates, so the
    # exact order check is only worth running for small x
    if max(abs(Xn), Zn) < 10**60 and E.order_of_point(P, cap=16) is not None:
        return 0.0

    b = (int(E.b2), int(E.b4), int(E.b6), int(E.b8))
    b2, b4, b6, b8 = b
    fco = [-b8, -2 * b6, -b4, QQ0, QQ(1)]
    gco = [b6, 2 * b4, b2, QQ(4)]
    res = resultant(fco, gco)
    assert denom(res) == 1 and res != 0
    steps = max(70, int((digits + 12) * 1.67) + 8)

    nonarch = []
    for p, e in sorted(factorize(abs(int(numer(res)))).items()):
        acc = _padic_weighted_valuations(b, Xn, Zn, p, e, steps)
        if acc:
            nonarch.append((p, acc))

    with workdps(digits + 30):
        X = mpf(Xn)
        Z = mpf(Zn)
        m0 = max(abs(X), abs(Z))
        lam = mp.log(m0)
        X, Z = X / m0, Z / m0
        w = mpf(1) / 4
        B2, B4, B6, B8 = (mpf(c) for c in b)
        for _ in range(steps):
            X2 = X * X
            XZ = X * Z
            Z2 = Z * Z
            X1 = X2 * X2 - B4 * X2 * Z2 - 2 * B6 * XZ * Z2 - B8 * Z2 * Z2
            Z1 = 4 * X2 * XZ + B2 * X2 * Z2 + 2 * B4 * XZ * Z2 + B6 * Z2 * Z2
            mk = max(abs(X1), abs(Z1))
            assert mk > 0, "archimedean renormalization collapsed"
            lam += w * mp.log(mk)
            w /= 4
            X, Z = X1 / mk, Z1 / mk
        for p, acc in nonarch:
            lam -= mpf(int(numer(acc))) / int(denom(acc)) * mp.log(p)
        return float(lam)
