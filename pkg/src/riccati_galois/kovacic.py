"""Decision procedure for Liouvillian solvability of xi'' = r xi.

Four cases, matching the algebraic subgroups of SL(2, C):
  1. a solution exp(int omega) with omega rational (triangularizable group)
  2. omega algebraic of degree 2 (infinite dihedral)
  3. omega algebraic of degree 4, 6 or 12 (tetrahedral/octahedral/icosahedral)
  4. no Liouvillian solutions at all.

Every positive answer carries an exact certificate and is re-verified
symbolically before being returned:
  case 1: P'' + 2 omega P' + (omega' + omega^2 - r) P = 0
  cases 2, 3: the defining polynomial F(omega) is checked to be closed
  under the Riccati flow, i.e. F_x + F_omega (r - omega^2) = 0 mod F,
  which certifies that every root of F solves omega' = r - omega^2.
"""

from fractions import Fraction
from itertools import product
from math import factorial

from .formal import FormalIntegral, FormalProduct
from .linalg import solve
from .odeforms import ReducedODE
from .poly import Poly, lcm
from .ratfunc import RatFunc
from .scalars import Scalar

INFINITY = "infinity"


class LocalData:
    """Case-1 local data at one point: the square-root head of the
    Laurent expansion and the two exponent candidates."""

    __slots__ = ("point", "subcase", "sqrt_head", "alpha_plus", "alpha_minus")

    def __init__(self, point, subcase, sqrt_head, alpha_plus, alpha_minus):
        self.point = point
        self.subcase = subcase
        self.sqrt_head = sqrt_head
        self.alpha_plus = alpha_plus
        self.alpha_minus = alpha_minus

    def alpha(self, sign):
        return self.alpha_plus if sign > 0 else self.alpha_minus

    def __repr__(self):
        return "LocalData(%s, %s, alpha=%s/%s)" % (
            self.point,
            self.subcase,
            self.alpha_plus,
            self.alpha_minus,
        )


class Case1Result:
    case = 1

    __slots__ = ("omega", "p", "m")

    def __init__(self, omega, p, m):
        self.omega = omega
        self.p = p
        self.m = m

    def solution(self) -> FormalProduct:
        """xi_1 = P * exp(int omega)."""
        return FormalProduct(1, ((RatFunc.coerce(self.p), 1),), self.omega)

    def __repr__(self):
        return "Case1Result(omega=%s, p=%s)" % (self.omega, self.p)


class Case2Result:
    case = 2

    __slots__ = ("theta", "p", "m", "phi", "quadratic")

    def __init__(self, theta, p, m, phi, quadratic):
        self.theta = theta
        self.p = p
        self.m = m
        self.phi = phi
        # coefficients (c0, c1, c2) of c2 w^2 + c1 w + c0 = 0
        self.quadratic = quadratic

    def __repr__(self):
        return "Case2Result(theta=%s, p=%s)" % (self.theta, self.p)


class Case3Result:
    case = 3

    __slots__ = ("n", "theta", "s", "p", "m", "omega_poly")

    def __init__(self, n, theta, s, p, m, omega_poly):
        self.n = n
        self.theta = theta
        self.s = s
        self.p = p
        self.m = m
        # omega_poly[i] is the coefficient of omega^i
        self.omega_poly = omega_poly

    def __repr__(self):
        return "Case3Result(n=%d, p=%s)" % (self.n, self.p)


class Case4Result:
    case = 4

    __slots__ = ()

    def __repr__(self):
        return "Case4Result()"


class SecondSolution:
    """xi_2 = xi_1 * int exp(-2 int omega) / P^2 dx."""

    __slots__ = ("xi1", "integral")

    def __init__(self, xi1: FormalProduct, integral: FormalIntegral):
        self.xi1 = xi1
        self.integral = integral

    def __str__(self):
        return "(%s) * (%s)" % (self.xi1, self.integral)


def _sq_coeff(u, m):
    """Coefficient of s^m in (sum u[i] s^i)^2 over the known entries."""
    acc = Scalar.coerce(0)
    for i, ui in u.items():
        j = m - i
        if j in u:
            acc = acc + ui * u[j]
    return acc


def _match_sqrt_head(t, v, low):
    """Determine u[low..v] with (sum u[i] s^i)^2 matching t, plus b.

    t[k] is the coefficient at order 2v - k of the expansion being
    matched; b is the order v + low - 1 mismatch coefficient used in the
    alpha formulas.
    """
    u = {v: t[0].sqrt()}
    for k in range(1, v - low + 1):
        partial = _sq_coeff(u, 2 * v - k)
        u[v - k] = (t[k] - partial) / (2 * u[v])
    b = t[v - low + 1] - _sq_coeff(u, v + low - 1)
    return u, b


def classify_point_case1(r: RatFunc, point) -> LocalData:
    """Local exponent data for Case 1 at a finite point or INFINITY.

    subcase is None when the point rules Case 1 out (odd pole order
    >= 3, or an odd growth order at infinity).
    """
    zero = Scalar.coerce(0)
    if point is INFINITY:
        if r.is_zero():
            return LocalData(point, "inf1", Poly([]), zero, Scalar.coerce(1))
        o = r.order_at_infinity()
        if o > 2:
            return LocalData(point, "inf1", Poly([]), zero, Scalar.coerce(1))
        if o == 2:
            _, coeffs = r.laurent_at_infinity(1)
            root = (1 + 4 * coeffs[0]).sqrt()
            return LocalData(
                point, "inf2", Poly([]), (1 + root) / 2, (1 - root) / 2
            )
        if o <= 0 and o % 2 == 0:
            v = (-o) // 2
            _, t = r.laurent_at_infinity(v + 2)
            u, b = _match_sqrt_head(t, v, 0)
            a = u[v]
            head = Poly([u.get(i, 0) for i in range(v + 1)])
            return LocalData(
                point, "inf3", head, (b / a - v) / 2, (-(b / a) - v) / 2
            )
        return LocalData(point, None, None, None, None)

    c = Scalar.coerce(point)
    order = r.pole_order(c)
    if order == 0:
        return LocalData(c, "c0", RatFunc.coerce(0), zero, zero)
    if order == 1:
        one = Scalar.coerce(1)
        return LocalData(c, "c1", RatFunc.coerce(0), one, one)
    if order == 2:
        _, coeffs = r.laurent_at(c, 1)
        root = (1 + 4 * coeffs[0]).sqrt()
        return LocalData(
            c, "c2", RatFunc.coerce(0), (1 + root) / 2, (1 - root) / 2
        )
    if order % 2 == 0:
        v = order // 2
        _, t = r.laurent_at(c, v)
        u, b = _match_sqrt_head(t, v, 2)
        a = u[v]
        lin = Poly([-c, 1])
        head_num = Poly([])
        for i in range(2, v + 1):
            head_num = head_num + lin ** (v - i) * Poly([u.get(i, 0)])
        head = RatFunc(head_num, lin**v)
        return LocalData(c, "c3", head, (b / a + v) / 2, (-(b / a) + v) / 2)
    return LocalData(c, None, None, None, None)


def _monic_poly_solution(op, m):
    """Monic degree-m polynomial in the kernel of the linear operator op,
    or None.  op maps Poly -> RatFunc."""
    images = [RatFunc.coerce(op(Poly.monomial(1, j))) for j in range(m + 1)]
    den = Poly([1])
    for im in images:
        den = lcm(den, im.den)
    nums = [im.num * den.exact_div(im.den) for im in images]
    max_deg = max((n.degree() for n in nums), default=-1)
    if max_deg < 0:
        # operator kills every monomial; any monic choice works
        return Poly.monomial(1, m)
    if m == 0:
        return Poly([1]) if nums[0].is_zero() else None
    rows = []
    rhs = []
    for k in range(max_deg + 1):
        rows.append([nums[j].coeff(k) for j in range(m)])
        rhs.append(-nums[m].coeff(k))
    sol = solve(rows, rhs)
    if sol is None:
        return None
    return Poly(list(sol) + [1])


def verify_case1(r: RatFunc, omega: RatFunc, p: Poly) -> bool:
    """Exact check of P'' + 2 omega P' + (omega' + omega^2 - r) P = 0."""
    p = Poly.coerce(p)
    lhs = (
        RatFunc.coerce(p.derivative().derivative())
        + 2 * omega * RatFunc.coerce(p.derivative())
        + (omega.derivative() + omega * omega - r) * RatFunc.coerce(p)
    )
    return lhs.is_zero()


def case1(r: RatFunc):
    r = RatFunc.coerce(r)
    data_inf = classify_point_case1(r, INFINITY)
    if data_inf.subcase is None:
        return None
    locals_ = []
    for c, _order in r.poles():
        d = classify_point_case1(r, c)
        if d.subcase is None:
            return None
        locals_.append(d)
    points = locals_ + [data_inf]
    candidates = []
    for idx, signs in enumerate(product((1, -1), repeat=len(points))):
        m = data_inf.alpha(signs[-1])
        for d, sg in zip(locals_, signs):
            m = m - d.alpha(sg)
        if m.is_nonneg_integer():
            candidates.append((int(m.as_fraction()), idx, signs))
    candidates.sort(key=lambda c: (c[0], c[1]))
    for m, _idx, signs in candidates:
        omega = RatFunc.coerce(data_inf.sqrt_head) * signs[-1]
        for d, sg in zip(locals_, signs):
            omega = omega + RatFunc.coerce(d.sqrt_head) * sg
            omega = omega + RatFunc(Poly([d.alpha(sg)]), Poly([-d.point, 1]))
        vfun = omega.derivative() + omega * omega - r

        def op(q, omega=omega, vfun=vfun):
            return (
                RatFunc.coerce(q.derivative().derivative())
                + 2 * omega * RatFunc.coerce(q.derivative())
                + vfun * RatFunc.coerce(q)
            )

        p = _monic_poly_solution(op, m)
        if p is not None and verify_case1(r, omega, p):
            return Case1Result(omega, p, m)
    return None


def _omega_mod(g, f):
    """Remainder of g by f, both polynomials in omega with RatFunc
    coefficients stored low-first."""
    g = [RatFunc.coerce(c) for c in g]
    while g and g[-1].is_zero():
        g.pop()
    nf = len(f) - 1
    lead = f[-1]
    while len(g) - 1 >= nf:
        c = g[-1] / lead
        shift = len(g) - 1 - nf
        for i, fi in enumerate(f):
            g[shift + i] = g[shift + i] - c * fi
        g.pop()
        while g and g[-1].is_zero():
            g.pop()
    return g


def verify_algebraic_riccati(r: RatFunc, coeffs) -> bool:
    """True iff every root of F(omega) = sum coeffs[i] omega^i solves
    omega' = r - omega^2.

    Checks F_x + F_omega * (r - omega^2) = 0 modulo F, an exact
    computation in C(x)[omega].
    """
    f = [RatFunc.coerce(c) for c in coeffs]
    while f and f[-1].is_zero():
        f.pop()
    if len(f) < 2:
        return False
    n = len(f) - 1
    g = [c.derivative() for c in f] + [RatFunc.coerce(0), RatFunc.coerce(0)]
    # add F_omega * (r - omega^2) = sum i f_i (r omega^(i-1) - omega^(i+1))
    for i in range(1, n + 1):
        fi = f[i] * i
        g[i - 1] = g[i - 1] + fi * r
        g[i + 1] = g[i + 1] - fi
    return not _omega_mod(g, f)


def _case2_local_sets(r: RatFunc, poles):
    """E_c for each finite pole, in pole order."""
    sets = []
    for c, order in poles:
        if order == 1:
            sets.append([Scalar.coerce(4)])
        elif order == 2:
            _, coeffs = r.laurent_at(c, 1)
            root = (1 + 4 * coeffs[0]).sqrt()
            entries = {(2 + k * root).key(): 2 + k * root for k in (0, -2, 2)}
            sets.append(
                sorted(entries.values(), key=lambda s: s.sort_key())
            )
        else:
            sets.append([Scalar.coerce(order)])
    return sets


def _case2_inf_set(r: RatFunc):
    o = r.order_at_infinity()
    if o > 2:
        return [Scalar.coerce(0), Scalar.coerce(2), Scalar.coerce(4)]
    if o == 2:
        _, coeffs = r.laurent_at_infinity(1)
        root = (1 + 4 * coeffs[0]).sqrt()
        entries = {(2 + k * root).key(): 2 + k * root for k in (0, -2, 2)}
        return sorted(entries.values(), key=lambda s: s.sort_key())
    return [Scalar.coerce(o)]


def case2(r: RatFunc):
    r = RatFunc.coerce(r)
    poles = r.poles()
    if not poles:
        return None
    e_sets = _case2_local_sets(r, poles)
    e_inf = _case2_inf_set(r)
    pole_points = [c for c, _ in poles]
    candidates = []
    for idx, choice in enumerate(product(*(e_sets + [e_inf]))):
        m = choice[-1]
        for e_c in choice[:-1]:
            m = m - e_c
        m = m / 2
        if m.is_nonneg_integer():
            candidates.append((int(m.as_fraction()), idx, choice))
    candidates.sort(key=lambda c: (c[0], c[1]))
    rp = r.derivative()
    for m, _idx, choice in candidates:
        theta = RatFunc.coerce(0)
        for c, e_c in zip(pole_points, choice[:-1]):
            theta = theta + RatFunc(Poly([e_c]), Poly([-c, 1])) / 2
        tp = theta.derivative()
        tpp = tp.derivative()
        coef1 = 3 * tp + 3 * theta * theta - 4 * r
        coef0 = tpp + 3 * theta * tp + theta**3 - 4 * r * theta - 2 * rp

        def op(q, theta=theta, coef1=coef1, coef0=coef0):
            q1 = q.derivative()
            q2 = q1.derivative()
            q3 = q2.derivative()
            return (
                RatFunc.coerce(q3)
                + 3 * theta * RatFunc.coerce(q2)
                + coef1 * RatFunc.coerce(q1)
                + coef0 * RatFunc.coerce(q)
            )

        p = _monic_poly_solution(op, m)
        if p is None:
            continue
        phi = theta + RatFunc.coerce(p.derivative()) / RatFunc.coerce(p)
        n0 = (phi.derivative() + phi * phi - 2 * r) / 2
        quadratic = (n0, -phi, RatFunc.coerce(1))
        if verify_algebraic_riccati(r, quadratic):
            return Case2Result(theta, p, m, phi, quadratic)
    return None


def case3(r: RatFunc):
    r = RatFunc.coerce(r)
    poles = r.poles()
    if not poles:
        return None
    if any(order > 2 for _, order in poles):
        return None
    o = r.order_at_infinity()
    if o < 2:
        return None
    if o == 2:
        _, coeffs = r.laurent_at_infinity(1)
        b_inf = coeffs[0]
    else:
        b_inf = Scalar.coerce(0)
    root_inf = (1 + 4 * b_inf).sqrt()
    pole_points = [c for c, _ in poles]
    pole_roots = []
    for c, order in poles:
        if order == 1:
            pole_roots.append(None)
        else:
            _, cs = r.laurent_at(c, 1)
            pole_roots.append((1 + 4 * cs[0]).sqrt())
    s_poly = Poly([1])
    for c in pole_points:
        s_poly = s_poly * Poly([-c, 1])
    s2r = (RatFunc.coerce(s_poly) ** 2 * r).as_poly()

    def spaced(root, n):
        # 6 + (12 k / n) root for |k| <= n/2, deduplicated
        entries = {}
        for k in range(-(n // 2), n // 2 + 1):
            e = 6 + Fraction(12 * k, n) * root
            entries[e.key()] = e
        return sorted(entries.values(), key=lambda s: s.sort_key())

    for n in (4, 6, 12):
        e_sets = [
            [Scalar.coerce(12)] if root is None else spaced(root, n)
            for root in pole_roots
        ]
        e_inf = spaced(root_inf, n)
        candidates = []
        for idx, choice in enumerate(product(*(e_sets + [e_inf]))):
            m = choice[-1]
            for e_c in choice[:-1]:
                m = m - e_c
            m = m * Fraction(n, 12)
            if m.is_nonneg_integer():
                candidates.append((int(m.as_fraction()), idx, choice))
        candidates.sort(key=lambda c: (c[0], c[1]))
        for m, _idx, choice in candidates:
            theta = RatFunc.coerce(0)
            s_theta = Poly([])
            for c, e_c in zip(pole_points, choice[:-1]):
                theta = theta + RatFunc(
                    Poly([e_c * Fraction(n, 12)]), Poly([-c, 1])
                )
                s_theta = s_theta + s_poly.exact_div(Poly([-c, 1])).scale(
                    e_c * Fraction(n, 12)
                )

            def p_minus_one(q, s_theta=s_theta, n=n):
                seq = _case3_sequence(q, s_poly, s_theta, s2r, n)
                return RatFunc.coerce(seq[0])

            p = _monic_poly_solution(p_minus_one, m)
            if p is None:
                continue
            seq = _case3_sequence(p, s_poly, s_theta, s2r, n)
            # seq[i + 1] is P_i for i in -1..n
            omega_poly = []
            s_pow = Poly([1])
            for i in range(n + 1):
                omega_poly.append(
                    RatFunc(s_pow * seq[i + 1], Poly([factorial(n - i)]))
                )
                s_pow = s_pow * s_poly
            if verify_algebraic_riccati(r, omega_poly):
                return Case3Result(n, theta, s_poly, p, m, omega_poly)
    return None


def _case3_sequence(p, s_poly, s_theta, s2r, n):
    """[P_{-1}, P_0, ..., P_n] for the downward recursion with P_n = -P."""
    seq = [Poly([])] * (n + 2)
    seq[n + 1] = -Poly.coerce(p)
    for i in range(n, -1, -1):
        p_i = seq[i + 1]
        p_next = seq[i + 2] if i + 2 <= n + 1 else Poly([])
        seq[i] = (
            -(s_poly * p_i.derivative())
            + (s_poly.derivative().scale(n - i) - s_theta) * p_i
            - s2r.scale((n - i) * (i + 1)) * p_next
        )
    return seq


def solve_rlde(e) -> object:
    """Full decision: Case1/Case2/Case3 result, or Case4Result."""
    if isinstance(e, ReducedODE):
        r = e.rho
    else:
        r = RatFunc.coerce(e)
    res = case1(r)
    if res is not None:
        return res
    res = case2(r)
    if res is not None:
        return res
    res = case3(r)
    if res is not None:
        return res
    return Case4Result()


def second_solution(res: Case1Result) -> SecondSolution:
    """xi_2 = xi_1 int exp(-2 int omega)/P^2 dx from a Case 1 result."""
    xi1 = res.solution()
    inner = FormalProduct(
        1, ((RatFunc.coerce(res.p), -2),), -2 * res.omega
    )
    return SecondSolution(xi1, FormalIntegral(inner))
