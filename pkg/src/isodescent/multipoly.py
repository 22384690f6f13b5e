"""Multivariate polynomials with coefficients in an exact field.

A polynomial is a dict {exponent tuple: coefficient} wrapped in MPoly.
Coefficients may be rationals or number field elements; they only need
+, -, *, == and scalar multiplication among themselves.  These are the
defining forms of the projective models, so dimensions stay small
(up to 7 variables, degree up to 7) while coefficient fields vary.
"""

from itertools import combinations_with_replacement

from .ratmath import QQ, QQ0, QQ1, content_and_primitive, denom, numer


def monomials_of_degree(nvars, d):
    """All exponent tuples of total degree d, in lexicographic order."""
    if d == 0:
        return [(0,) * nvars]
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out = sorted(set(out), reverse=True)
    return out


class MPoly:
    """Sparse multivariate polynomial over an exact coefficient field."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars, coeffs=None):
        self.nvars = nvars
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                if c != 0:
                    assert len(e) == nvars, "exponent arity mismatch"
                    self.coeffs[tuple(int(x) for x in e)] = c

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i, one=QQ1):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): one})

    @classmethod
    def from_terms(cls, nvars, terms):
        out = cls(nvars)
        for e, c in terms:
            out = out + cls(nvars, {tuple(e): c})
        return out

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def degree(self):
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.coeffs}
        return len(degs) <= 1

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.nvars, other)
        assert self.nvars == other.nvars
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            if e in out:
                s = out[e] + c
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        r = MPoly(self.nvars)
        r.coeffs = out
        return r

    def __neg__(self):
        r = MPoly(self.nvars)
        r.coeffs = {e: -c for e, c in self.coeffs.items()}
        return r

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        assert self.nvars == other.nvars
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                if e in out:
                    s = out[e] + p
                    if s == 0:
                        del out[e]
                    else:
                        out[e] = s
                elif p != 0:
                    out[e] = p
        r = MPoly(self.nvars)
        r.coeffs = out
        return r

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        if c == 0:
            return MPoly(self.nvars)
        r = MPoly(self.nvars)
        r.coeffs = {e: v * c for e, v in self.coeffs.items()}
        r.coeffs = {e: v for e, v in r.coeffs.items() if v != 0}
        return r

    def __pow__(self, n):
        n = int(n)
        assert n >= 0
        out = MPoly.constant(self.nvars, QQ1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def coefficient(self, e):
        return self.coeffs.get(tuple(e), QQ0)

    def homogeneous_part(self, d):
        r = MPoly(self.nvars)
        r.coeffs = {e: c for e, c in self.coeffs.items() if sum(e) == d}
        return r

    def evaluate(self, point):
        """Evaluate at a full point (list of field elements)."""
        assert len(point) == self.nvars
        total = None
        for e, c in self.coeffs.items():
            term = c
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * point[i]
            total = term if total is None else total + term
        return QQ0 if total is None else total

    def substitute(self, forms):
        """Substitute variable i -> forms[i] (each an MPoly in m variables)."""
        assert len(forms) == self.nvars
        m = forms[0].nvars
        total = MPoly(m)
        for e, c in self.coeffs.items():
            term = MPoly.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * forms[i] ** k
            total = total + term
        return total

    def map_coefficients(self, fn, nvars=None):
        r = MPoly(self.nvars if nvars is None else nvars)
        for e, c in self.coeffs.items():
            v = fn(c)
            if v != 0:
                r.coeffs[e] = v
        return r

    def derivative(self, i):
        out = {}
        for e, c in self.coeffs.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        r = MPoly(self.nvars)
        r.coeffs = {e: c for e, c in out.items() if c != 0}
        return r

    def to_row(self):
        """Sparse row {exponent tuple: coefficient} for elimination."""
        return dict(self.coeffs)

    def content_primitive(self):
        """For rational coefficients: (content, primitive MPoly)."""
        if not self.coeffs:
            return QQ0, self
        keys = sorted(self.coeffs, reverse=True)
        vals = [self.coeffs[k] for k in keys]
        c, prim = content_and_primitive(vals)
        r = MPoly(self.nvars)
        r.coeffs = dict(zip(keys, prim))
        return c, r

    def __repr__(self):
        return "MPoly(%d, %s)" % (self.nvars, poly_to_string(self))


_VARNAMES = ["u1", "u2", "u3", "u4", "u5", "u6", "u7"]


def poly_to_string(f, names=None):
    if not f.coeffs:
        return "0"
    if names is None:
        names = _VARNAMES[:f.nvars] if f.nvars <= 7 else [
            "u%d" % (i + 1) for i in range(f.nvars)]
    parts = []
    for e in sorted(f.coeffs, reverse=True):
        c = f.coeffs[e]
        mono = "*".join(
            (names[i] if k == 1 else "%s^%d" % (names[i], k))
            for i, k in enumerate(e) if k)
        cs = str(c)
        if "/" in cs or "+" in cs[1:] or "-" in cs[1:] or " " in cs:
            cs = "(%s)" % cs
        parts.append(cs if not mono else ("%s*%s" % (cs, mono)))
    return " + ".join(parts).replace("+ -", "- ")


def parse_poly(text, names, nvars=None, coeff=QQ):
    """Parse a polynomial string with integer/rational coefficients.

    Supports +, -, *, ^ and ** powers, parentheses-free monomial products,
    e.g. "3*u1^2*u2 - u3*u4 + 7".  Variable names must be in `names`.
    """
    if nvars is None:
        nvars = len(names)
    index = {n: i for i, n in enumerate(names)}
    s = text.replace("**", "^").replace(" ", "")
    assert s, "empty polynomial string"
    terms = []
    cur = ""
    depth = 0
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur and cur[-1] not in "+-*/^(":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    out = MPoly(nvars)
    for term in terms:
        if not term or term == "+":
            continue
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        c = QQ(sign)
        e = [0] * nvars
        num = ""
        for factor in term.split("*"):
            if not factor:
                continue
            if "^" in factor:
                base, _, expo = factor.partition("^")
                k = int(expo)
            else:
                base, k = factor, 1
            base = base.strip("()")
            if base in index:
                e[index[base]] += k
            else:
                # rational or integer literal
                if "/" in base:
                    n, _, d = base.partition("/")
                    val = QQ(int(n), int(d))
                else:
                    val = QQ(int(base))
                c = c * val ** k
            num = num
        if c != 0:
            out = out + MPoly(nvars, {tuple(e): coeff(c) if coeff is not QQ else c})
    return out


def linear_form(nvars, coeffs):
    """MPoly from a coefficient vector: sum coeffs[i] * x_i."""
    out = MPoly(nvars)
    for i, c in enumerate(coeffs):
        if c != 0:
            e = [0] * nvars
            e[i] = 1
            out.coeffs[tuple(e)] = c
    return out


def form_to_vector(f, monos):
    """Coefficient vector of f on an ordered monomial list."""
    return [f.coeffs.get(m, QQ0) for m in monos]


def qq_poly_denominator_clear(f):
    """Smallest positive integer scale making all coefficients integral."""
    import math
    lcm = 1
    for c in f.coeffs.values():
        lcm = lcm * int(denom(c)) // math.gcd(lcm, int(denom(c)))
    return lcm


def poly_gcd_content(f):
    import math
    g = 0
    for c in f.coeffs.values():
        assert denom(c) == 1, "content of a non-integral polynomial"
        g = math.gcd(g, abs(int(numer(c))))
    return g
