"""Finite Kummer quotients of a number field.

The classes of S-units in K^x / (K^x)^l form an F_l vector space with a
certified basis; quotienting further by the image of the rational
numbers gives the ambient space in which descent classes live.  All
maps here are exact F_l linear algebra over that basis: no class is
ever represented by floating data.
"""

from dataclasses import dataclass, field
from itertools import product

from .flinalg import fl_rref
from .numfield.sunits import s_unit_group
from .numfield.primes import primes_above


@dataclass
class KummerClasses:
    """S-unit classes mod l-th powers, optionally mod rational classes.

    Coordinates come in two layers: generator coordinates (length
    basis.rank, one slot per S-unit generator) and quotient coordinates
    (length dim, after removing the pivots of the quotient subspace).
    """

    basis: object
    ell: int
    mod_rational: bool
    w_rows: tuple = field(repr=False)
    w_pivots: tuple
    dim: int

    # -- generator-coordinate layer ----------------------------------------

    def gen_coords_of(self, x):
        """Exponent vector mod ell of an S-unit x, or None."""
        return self.basis.discrete_log(x)

    # -- quotient layer ------------------------------------------------------

    def reduce(self, gcoords):
        """Quotient coordinates of a generator-coordinate vector."""
        ell = self.ell
        v = [int(c) % ell for c in gcoords]
        for row, pc in zip(self.w_rows, self.w_pivots):
            c = v[pc] % ell
            if c:
                v = [(a - c * b) % ell for a, b in zip(v, row)]
        free = [j for j in range(len(v)) if j not in self.w_pivots]
        return tuple(v[j] for j in free)

    def lift(self, qcoords):
        """Generator coordinates of the standard representative."""
        free = [j for j in range(self.basis.rank) if j not in self.w_pivots]
        assert len(qcoords) == len(free)
        v = [0] * self.basis.rank
        for j, c in zip(free, qcoords):
            v[j] = int(c) % self.ell
        return tuple(v)

    def class_of(self, x):
        """Quotient coordinates of the class of x, or None off S-units."""
        g = self.gen_coords_of(x)
        if g is None:
            return None
        return self.reduce(g)

    def element(self, qcoords):
        """A representative field element of the class."""
        return self.basis.element_from_exponents(self.lift(qcoords))

    def zero(self):
        return (0,) * self.dim

    def all_classes(self, cap=100000):
        """Iterate every class; guarded against combinatorial blowups."""
        assert self.ell ** self.dim <= cap, "class space too large to enumerate"
        return product(range(self.ell), repeat=self.dim)

    def symbol_row(self, Q):
        """Residue symbols of the generators at a fresh prime ideal Q,
        for extending characters homomorphically to classes."""
        return [Q.residue_symbol_dlog(g, self.ell) for g in self.basis.generators()]


def kummer_classes(K, s_rational_primes, ell, mod_rational=True, effort=5,
                   proof_level="unconditional"):
    """The space of S-unit classes of K mod l-th powers (and mod Q^x).

    S is specified by rational primes; all prime ideals above them go
    into the S-unit computation.  The rational image is spanned by the
    classes of the S rational primes themselves (-1 is an l-th power for
    odd l, so it contributes nothing).
    """
    S = primes_above(K, sorted(set(int(p) for p in s_rational_primes)))
    basis = s_unit_group(K, S, ell, effort=effort, proof_level=proof_level)
    assert basis.certified
    m = basis.rank
    rows = []
    if mod_rational:
        for p in sorted(set(int(p) for p in s_rational_primes)):
            c = basis.discrete_log(K.from_rational(p))
            assert c is not None, "rational prime below S must be an S-unit"
            rows.append(c)
    if rows:
        red, piv = fl_rref(rows, ell)
        red = [tuple(r) for r in red[: len(piv)]]
        piv = tuple(piv)
    else:
        red, piv = (), ()
    dim = m - len(piv)
    return KummerClasses(basis, ell, mod_rational, tuple(red), piv, dim)
