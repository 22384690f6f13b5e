"""Cyclic isogenies of odd prime degree between Weierstrass models over Q.

The forward map is built from a kernel polynomial by Velu's formulas, with
the x-coordinate map assembled as an exact rational function and the
y-coordinate recovered from the normalization of the invariant differential:
a map with pullback scalar lam satisfies

    2 Y + a1' X + a3'  =  X'(x) (2 y + a1 x + a3) / lam.

That identity also powers the symbolic on-curve verification performed at
construction time, so a wrong kernel polynomial cannot produce an
IsogenyData silently.

The dual is found by factoring the degree-ell division polynomial of the
codomain, quotienting by each plausible kernel, and keeping the unique
candidate whose composite with the forward map has the x-coordinate map of
multiplication by ell; its pullback scalar is ell on the nose.

Functions with divisor ell[T] - ell[O] (the evaluation maps of the descent
pairing) are computed in the pole-order basis of L(ell[O]) by power-series
linear algebra at T, normalized to leading coefficient 1 at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..linalg import kernel_basis
from ..polyq import (
    factor_rational,
    padd,
    pderiv,
    pdeg,
    peval,
    pgcd,
    pdivmod,
    pmul,
    pnormalize,
    pscale,
    psub,
)
from ..ratmath import QQ, QQ0, QQ1
from .curve import (
    CurvePoint,
    ModelChange,
    WeierstrassCurve,
    division_polynomial,
    two_torsion_poly,
)


def _monic(f: List) -> List:
    f = pnormalize(f)
    assert f, "zero polynomial has no monic scaling"
    return pscale(f, 1 / f[-1])


def _reduce_fraction(num: List, den: List) -> Tuple[List, List]:
    g = pgcd(num, den)
    if pdeg(g) > 0:
        num, rn = pdivmod(num, g)
        den, rd = pdivmod(den, g)
        assert not rn and not rd
    c = den[-1]
    return pscale(num, 1 / c), pscale(den, 1 / c)


def _compose_fraction(an: List, ad: List, bn: List, bd: List) -> Tuple[List, List]:
    """(an/ad) evaluated at bn/bd, reduced."""
    m = max(pdeg(an), pdeg(ad))
    pows_n = [[QQ1]]
    pows_d = [[QQ1]]
    for _ in range(m):
        pows_n.append(pmul(pows_n[-1], bn))
        pows_d.append(pmul(pows_d[-1], bd))
    num: List = []
    den: List = []
    for i, c in enumerate(an):
        num = padd(num, pscale(pmul(pows_n[i], pows_d[m - i]), c))
    for i, c in enumerate(ad):
        den = padd(den, pscale(pmul(pows_n[i], pows_d[m - i]), c))
    return _reduce_fraction(num, den)


# ---------------------------------------------------------------------------
# the isogeny container


@dataclass(frozen=True)
class IsogenyData:
    """A cyclic ell-isogeny given by its x-coordinate map xn/xd.

    lam is the pullback scalar on invariant differentials; Velu output has
    lam = 1, the dual of a Velu map has lam = ell.
    """

    domain: WeierstrassCurve
    codomain: WeierstrassCurve
    ell: int
    kernel_poly: Tuple
    xn: Tuple
    xd: Tuple
    lam: object

    def x_map(self) -> Tuple[List, List]:
        return list(self.xn), list(self.xd)

    def map_point(self, P: CurvePoint) -> CurvePoint:
        assert self.domain.contains(P), "point is not on the domain curve"
        if P.is_identity:
            return P
        x, y = P.xy()
        if peval(list(self.xd), x) == 0:
            return self.codomain.identity()
        X = peval(list(self.xn), x) / peval(list(self.xd), x)
        dn = psub(
            pmul(pderiv(list(self.xn)), list(self.xd)),
            pmul(list(self.xn), pderiv(list(self.xd))),
        )
        Xp = peval(dn, x) / peval(list(self.xd), x) ** 2
        eta = 2 * y + self.domain.a1 * x + self.domain.a3
        Y = (Xp * eta / self.lam - self.codomain.a1 * X - self.codomain.a3) / 2
        return self.codomain.point(X, Y)

    def negate(self) -> "IsogenyData":
        """The composition with [-1] on the codomain."""
        return IsogenyData(
            self.domain, self.codomain, self.ell, self.kernel_poly,
            self.xn, self.xd, -self.lam,
        )


def _verify_isogeny(data: IsogenyData) -> None:
    """Exact check that the (X, Y) map lands on the codomain.

    Substituting the Y-recovery identity into the codomain equation and
    using eta^2 = F(x) eliminates y entirely:

        (X'^2 F / lam^2 - (a1' X + a3')^2) / 4 = X^3 + a2' X^2 + a4' X + a6'.
    """
    E, Ep = data.domain, data.codomain
    xn, xd = list(data.xn), list(data.xd)
    F = two_torsion_poly(E)
    dn = psub(pmul(pderiv(xn), xd), pmul(xn, pderiv(xd)))
    # common denominator xd^4
    xd2 = pmul(xd, xd)
    g_num = padd(pscale(xn, Ep.a1), pscale(xd, Ep.a3))       # (a1' X + a3') xd
    lhs = psub(
        pscale(pmul(pmul(dn, dn), F), 1 / (data.lam * data.lam)),
        pmul(pmul(g_num, g_num), xd2),
    )
    rhs: List = []
    for coeff, k in ((QQ1, 3), (Ep.a2, 2), (Ep.a4, 1), (Ep.a6, 0)):
        term = [QQ1]
        for _ in range(k):
            term = pmul(term, xn)
        for _ in range(3 - k):
            term = pmul(term, xd)
        rhs = padd(rhs, pscale(term, coeff))
    assert psub(lhs, pscale(pmul(rhs, xd), QQ(4))) == [], (
        "x-map does not satisfy the codomain equation; invalid kernel?"
    )


# ---------------------------------------------------------------------------
# Velu


def kernel_polynomial_from_point(E: WeierstrassCurve, T: CurvePoint, ell: int) -> List:
    """Monic polynomial whose roots are the x-coordinates of <T> - O."""
    assert ell % 2 == 1 and ell >= 3, "odd kernel order expected"
    assert E.order_of_point(T, cap=ell) == ell, "point does not have order %d" % ell
    h = [QQ1]
    R = T
    for _ in range((ell - 1) // 2):
        h = pmul(h, [-R.X, QQ1])
        R = E.add(R, T)
    return h


def velu_quotient(E: WeierstrassCurve, h: List) -> IsogenyData:
    """The normalized quotient isogeny with kernel polynomial h.

    h must be the monic polynomial vanishing on the x-coordinates of a
    cyclic subgroup of odd prime order; the construction verifies itself
    and rejects anything else.
    """
    h = _monic(h)
    d = pdeg(h)
    assert d >= 1, "kernel polynomial must be nonconstant"
    ell = 2 * d + 1
    e = [QQ0, QQ0, QQ0]
    for k in range(1, 4):
        if d - k >= 0:
            e[k - 1] = h[d - k] * (-1) ** k
    e1, e2, e3 = e
    p1 = e1
    p2 = e1 * p1 - 2 * e2
    p3 = e1 * p2 - e2 * p1 + 3 * e3
    b2, b4, b6 = E.b2, E.b4, E.b6
    t = 6 * p2 + b2 * p1 + d * b4
    w = 10 * p3 + 2 * b2 * p2 + 3 * b4 * p1 + d * b6
    Ep = WeierstrassCurve(E.a1, E.a2, E.a3, E.a4 - 5 * t, E.a6 - b2 * t - 7 * w)

    hp = pderiv(h)
    T = pnormalize([b4, b2, QQ(6)])                   # 6x^2 + b2 x + b4
    F = two_torsion_poly(E)
    R1 = pnormalize([6 * p1 + b2 * d, QQ(6 * d)])
    R2 = pnormalize([4 * p2 + b2 * p1 + 2 * b4 * d, 4 * p1 + b2 * d, QQ(4 * d)])
    g1 = psub(pmul(T, hp), pmul(R1, h))               # G1 = g1 / h
    g2 = psub(pmul(F, hp), pmul(R2, h))               # G2 = g2 / h
    # X = x + g1/h - d/dx (g2/h), over the common denominator h^2
    xn = padd(
        pmul([QQ0, QQ1], pmul(h, h)),
        psub(
            pmul(g1, h),
            psub(pmul(pderiv(g2), h), pmul(g2, hp)),
        ),
    )
    xd = pmul(h, h)
    xn, xd = _reduce_fraction(xn, xd)
    assert pdeg(xn) == ell and pdeg(xd) == ell - 1, "x-map degree mismatch"
    data = IsogenyData(E, Ep, ell, tuple(h), tuple(xn), tuple(xd), QQ1)
    _verify_isogeny(data)
    return data


# ---------------------------------------------------------------------------
# multiplication by n and duals


def multiplication_x_fraction(E: WeierstrassCurve, n: int) -> Tuple[List, List]:
    """The x-coordinate map of [n] for odd n, in lowest terms."""
    assert n % 2 == 1 and n >= 3
    fn = division_polynomial(E, n)
    fm = division_polynomial(E, n - 1)
    fp = division_polynomial(E, n + 1)
    F = two_torsion_poly(E)
    num = psub(pmul([QQ0, QQ1], pmul(fn, fn)), pmul(pmul(fm, fp), F))
    den = pmul(fn, fn)
    return _reduce_fraction(num, den)


def _subset_products(factors: List[List], degree: int) -> List[List]:
    """All monic products of distinct irreducible factors with total degree
    equal to the target."""
    out: List[List] = []

    def rec(idx: int, acc: List, deg: int):
        if deg == degree:
            out.append(acc)
            return
        if idx >= len(factors) or deg > degree:
            return
        rec(idx + 1, acc, deg)
        rec(idx + 1, pmul(acc, factors[idx]), deg + pdeg(factors[idx]))

    rec(0, [QQ1], 0)
    return out


def dual_isogeny(fwd: IsogenyData) -> IsogenyData:
    """The unique isogeny back with composite equal to [ell] on the domain."""
    E, Ep, ell = fwd.domain, fwd.codomain, fwd.ell
    _, factors = factor_rational(division_polynomial(Ep, ell))
    irred = []
    for f, mult in factors:
        assert mult == 1, "division polynomial of the codomain is not squarefree"
        irred.append(_monic(f))
    target_x, target_d = multiplication_x_fraction(E, ell)
    found: Optional[IsogenyData] = None
    for h in _subset_products(irred, (ell - 1) // 2):
        try:
            psi = velu_quotient(Ep, h)
        except AssertionError:
            continue
        Edd = psi.codomain
        if Edd.j != E.j:
            continue
        u = QQ(ell)
        s = (u * E.a1 - Edd.a1) / 2
        r = (u * u * E.a2 - Edd.a2 + s * Edd.a1 + s * s) / 3
        t = (u ** 3 * E.a3 - Edd.a3 - r * Edd.a1) / 2
        ch = ModelChange(u, r, s, t)
        if ch.apply(Edd) != E:
            continue
        xn = pscale(psub(list(psi.xn), pscale(list(psi.xd), r)), 1 / (u * u))
        xn, xd = _reduce_fraction(xn, list(psi.xd))
        cand = IsogenyData(Ep, E, ell, tuple(h), tuple(xn), tuple(xd), u)
        _verify_isogeny(cand)
        cn, cd = _compose_fraction(list(cand.xn), list(cand.xd), list(fwd.xn), list(fwd.xd))
        if cn == target_x and cd == target_d:
            assert found is None, "two distinct duals found; kernel selection broken"
            found = cand
    assert found is not None, "no dual isogeny found among the kernel factors"
    return found


def isogeny_from_torsion_point(
    E: WeierstrassCurve, T: CurvePoint, ell: int
) -> Tuple[IsogenyData, IsogenyData]:
    """The quotient by <T> and its dual, as a pair (phi, phi_dual)."""
    phi = velu_quotient(E, kernel_polynomial_from_point(E, T, ell))
    return phi, dual_isogeny(phi)


# ---------------------------------------------------------------------------
# power series at a point and evaluation maps


def _series_mul(a: List, b: List, n: int) -> List:
    out = [QQ0] * n
    for i, ai in enumerate(a):
        if i >= n or ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j >= n:
                break
            out[i + j] += ai * bj
    return out


def local_series_at(E: WeierstrassCurve, P: CurvePoint, n: int) -> Tuple[List, List]:
    """Power series of (x, y) in the parameter x - x(P), to order n.

    P must not be 2-torsion, so x - x(P) is a uniformizer and the branch of
    y through P is determined by its first coefficient.
    """
    x0, y0 = P.xy()
    eta = 2 * y0 + E.a1 * x0 + E.a3
    assert eta != 0, "x - x(P) is not a uniformizer at a 2-torsion point"
    xs = [x0, QQ1] + [QQ0] * (n - 2) if n >= 2 else [x0][:n]
    ys = [y0] + [QQ0] * (n - 1)
    for m in range(1, n):
        # residual of the curve equation at truncation order m
        lhs = _series_mul(ys, ys, m + 1)
        lhs = [c + d for c, d in zip(lhs, _series_mul(_series_mul(xs, ys, m + 1), [E.a1], m + 1))]
        lhs = [c + d for c, d in zip(lhs, _series_mul(ys, [E.a3], m + 1))]
        rhs = _series_mul(_series_mul(xs, xs, m + 1), xs, m + 1)
        rhs = [c + d for c, d in zip(rhs, _series_mul(_series_mul(xs, xs, m + 1), [E.a2], m + 1))]
        rhs = [c + d for c, d in zip(rhs, _series_mul(xs, [E.a4], m + 1))]
        rhs[0] += E.a6
        resid = lhs[m] - rhs[m]
        ys[m] = -resid / eta
    return xs, ys


def pole_basis_exponents(ell: int) -> List[Tuple[int, int]]:
    """Exponent pairs (i, j) with x^i y^j spanning L(ell[O]), ordered by
    pole order 2i + 3j."""
    assert ell >= 3 and ell % 2 == 1
    out = [(0, 0), (1, 0), (0, 1)]
    k = 4
    while len(out) < ell:
        out.append((k // 2, 0) if k % 2 == 0 else ((k - 3) // 2, 1))
        k += 1
    return out[:ell]


def eval_pole_basis(coeffs, x, y):
    """Evaluate sum of c_(i,j) x^i y^j for the pole-order basis."""
    total = QQ0
    for c, (i, j) in zip(coeffs, pole_basis_exponents(len(coeffs))):
        total += c * x ** i * y ** j
    return total


def division_value_function(E: WeierstrassCurve, T: CurvePoint, ell: int) -> Tuple:
    """Coefficients, in the pole-order basis of L(ell[O]), of the function
    with divisor ell[T] - ell[O] and leading coefficient 1 at infinity.

    Leading coefficient means: in the uniformizer t = -x/y at O the value
    expands as t^(-ell) (1 + O(t)).
    """
    assert E.order_of_point(T, cap=ell) == ell, "evaluation point must have order %d" % ell
    xs, ys = local_series_at(E, T, ell)
    rows = []
    for (i, j) in pole_basis_exponents(ell):
        s = [QQ1] + [QQ0] * (ell - 1)
        for _ in range(i):
            s = _series_mul(s, xs, ell)
        for _ in range(j):
            s = _series_mul(s, ys, ell)
        rows.append(s)
    ker = kernel_basis([[rows[i][k] for i in range(ell)] for k in range(ell)])
    assert len(ker) == 1, "evaluation function is not unique up to scale"
    c = list(ker[0])
    # x^i y^j = (-1)^j t^(-2i-3j) (1 + ...), and the last basis element is
    # the unique one of pole order ell
    lead = -c[-1]
    assert lead != 0, "leading basis element missing from the evaluation function"
    return tuple(v / lead for v in c)


def connecting_value(E: WeierstrassCurve, T: CurvePoint, ell: int, coeffs, P: CurvePoint):
    """A nonzero rational representing the descent class of P for the
    quotient by <T>; classes multiply up to ell-th powers."""
    if P.is_identity:
        return QQ1
    if P == T:
        back = connecting_value(E, T, ell, coeffs, E.neg(T))
        return 1 / back
    val = eval_pole_basis(coeffs, *P.xy())
    assert val != 0, "evaluation function vanished away from its divisor"
    return val
