"""Bivariate polynomials in (x, w) and planar polynomial vector fields.

Used for the geometric side of the theory: invariant algebraic curves,
cofactors and divergences of the vector field attached to a Riccati
equation.  Representation is sparse: {(i, j): Scalar} for x^i * w^j.
"""

from .poly import Poly
from .ratfunc import RatFunc
from .scalars import Scalar


class BivarPoly:
    __slots__ = ("terms",)

    def __init__(self, terms):
        clean = {}
        for (i, j), c in terms.items():
            c = Scalar.coerce(c)
            if not c.is_zero():
                clean[(i, j)] = c
        self.terms = clean

    @classmethod
    def coerce(cls, v):
        if isinstance(v, BivarPoly):
            return v
        if isinstance(v, Poly):
            return cls({(i, 0): c for i, c in enumerate(v.coeffs)})
        return cls({(0, 0): Scalar.coerce(v)})

    @classmethod
    def var_x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def var_w(cls):
        return cls({(0, 1): 1})

    @classmethod
    def from_w_coeffs(cls, coeffs):
        """Build from a list of univariate Polys in x: sum coeffs[j](x) w^j."""
        terms = {}
        for j, p in enumerate(coeffs):
            p = Poly.coerce(p)
            for i, c in enumerate(p.coeffs):
                terms[(i, j)] = terms.get((i, j), Scalar.coerce(0)) + c
        return cls(terms)

    def w_coeffs(self):
        """Inverse of from_w_coeffs: list of Polys in x indexed by w power."""
        top = self.degree_w()
        if top < 0:
            return []
        out = []
        for j in range(top + 1):
            entries = {}
            for (i, jj), c in self.terms.items():
                if jj == j:
                    entries[i] = c
            if entries:
                n = max(entries) + 1
                out.append(Poly([entries.get(i, 0) for i in range(n)]))
            else:
                out.append(Poly([]))
        return out

    def is_zero(self):
        return not self.terms

    def degree_x(self):
        return max((i for i, _ in self.terms), default=-1)

    def degree_w(self):
        return max((j for _, j in self.terms), default=-1)

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def __add__(self, other):
        other = BivarPoly.coerce(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Scalar.coerce(0)) + c
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-BivarPoly.coerce(other))

    def __rsub__(self, other):
        return BivarPoly.coerce(other) + (-self)

    def __mul__(self, other):
        other = BivarPoly.coerce(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Scalar.coerce(0)) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BivarPoly.coerce(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            other = BivarPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(frozenset((k, c.key()) for k, c in self.terms.items()))

    def d_dx(self):
        return BivarPoly(
            {(i - 1, j): i * c for (i, j), c in self.terms.items() if i > 0}
        )

    def d_dw(self):
        return BivarPoly(
            {(i, j - 1): j * c for (i, j), c in self.terms.items() if j > 0}
        )

    def substitute_w(self, value: RatFunc) -> RatFunc:
        """Evaluate at w = value(x); returns a rational function of x."""
        value = RatFunc.coerce(value)
        acc = RatFunc.coerce(0)
        for j, p in enumerate(self.w_coeffs()):
            acc = acc + RatFunc.coerce(p) * value**j
        return acc

    def exact_div(self, divisor: "BivarPoly"):
        """Exact multivariate division; None if the division fails.

        Single-divisor division with lex order (w before x): sound for
        the cofactor computations here because we only accept a clean
        zero remainder.
        """
        divisor = BivarPoly.coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = self
        quot = {}
        lead_key = max(divisor.terms, key=lambda k: (k[1], k[0]))
        lead_c = divisor.terms[lead_key]
        while not rem.is_zero():
            rk = max(rem.terms, key=lambda k: (k[1], k[0]))
            di = rk[0] - lead_key[0]
            dj = rk[1] - lead_key[1]
            if di < 0 or dj < 0:
                return None
            c = rem.terms[rk] / lead_c
            quot[(di, dj)] = quot.get((di, dj), Scalar.coerce(0)) + c
            rem = rem - BivarPoly({(di, dj): c}) * divisor
        return BivarPoly(quot)

    def __str__(self):
        if self.is_zero():
            return "0"
        keys = sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[1], -k[0]))
        parts = []
        for i, j in keys:
            c = self.terms[(i, j)]
            bits = []
            if i:
                bits.append("x" if i == 1 else "x^%d" % i)
            if j:
                bits.append("w" if j == 1 else "w^%d" % j)
            if not bits or c != 1:
                if c == -1 and bits:
                    bits.insert(0, "-1")
                else:
                    cs = str(c)
                    if not c.is_rational():
                        cs = "(" + cs + ")"
                    bits.insert(0, cs)
            term = "*".join(bits).replace("-1*", "-")
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                out += " - " + term[1:]
            else:
                out += " + " + term
        return out

    def __repr__(self):
        return "BivarPoly(%s)" % self


class BivarRatFunc:
    """Unreduced quotient of bivariate polynomials.

    No multivariate gcd is attempted; equality and zero tests go through
    cross-multiplication, which is exact.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = BivarPoly.coerce(num)
        den = BivarPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, v):
        if isinstance(v, BivarRatFunc):
            return v
        if isinstance(v, RatFunc):
            return cls(BivarPoly.coerce(v.num), BivarPoly.coerce(v.den))
        return cls(BivarPoly.coerce(v))

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        other = BivarRatFunc.coerce(other)
        return BivarRatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return BivarRatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-BivarRatFunc.coerce(other))

    def __rsub__(self, other):
        return BivarRatFunc.coerce(other) + (-self)

    def __mul__(self, other):
        other = BivarRatFunc.coerce(other)
        return BivarRatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = BivarRatFunc.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        return BivarRatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return BivarRatFunc.coerce(other) / self

    def __eq__(self, other):
        try:
            other = BivarRatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def d_dx(self):
        return BivarRatFunc(
            self.num.d_dx() * self.den - self.num * self.den.d_dx(),
            self.den * self.den,
        )

    def d_dw(self):
        return BivarRatFunc(
            self.num.d_dw() * self.den - self.num * self.den.d_dw(),
            self.den * self.den,
        )

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def __repr__(self):
        return "BivarRatFunc(%s)" % self


class PlanarVectorField:
    """X = P(x, w) d/dx + Q(x, w) d/dw."""

    __slots__ = ("p", "q")

    def __init__(self, p, q):
        self.p = BivarPoly.coerce(p)
        self.q = BivarPoly.coerce(q)

    def apply(self, f):
        """X(f) for a BivarPoly or BivarRatFunc."""
        if isinstance(f, BivarRatFunc):
            return BivarRatFunc.coerce(self.p) * f.d_dx() + BivarRatFunc.coerce(
                self.q
            ) * f.d_dw()
        f = BivarPoly.coerce(f)
        return self.p * f.d_dx() + self.q * f.d_dw()

    def divergence(self) -> BivarPoly:
        return self.p.d_dx() + self.q.d_dw()

    def cofactor_of(self, f):
        """K with X(f) = K f, or None if f is not an invariant curve."""
        f = BivarPoly.coerce(f)
        if f.is_zero():
            raise ValueError("zero polynomial is not a curve")
        return self.apply(f).exact_div(f)

    def __str__(self):
        return "(%s) d/dx + (%s) d/dw" % (self.p, self.q)

    def __repr__(self):
        return "PlanarVectorField(%s)" % self
