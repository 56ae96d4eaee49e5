"""Elliptic curve layer for the cube-sum families.

Covers the curves E_n: y^2 = x^3 - 432 n^2, the isogenous E'_n: y^2 = x^3 +
(4n)^2 and E_9: y^2 = x^3 - 48, with an exact group law over Q and over
Q(sqrt(-3)), torsion, the rational 3-isogeny pair, minimal models (short-form
reduction and full Laska-Kraus-Connell minimization), Tate's algorithm at
every prime including 2 and 3, and real periods by AGM.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath
from sympy import factorint, isprime

from .errors import InvalidFamily, PointNotOnCurve, PrecisionBudgetExceeded
from .eisenstein import valuation

__all__ = [
    "QSqrtM3",
    "CurveModel",
    "CurvePoint",
    "Weierstrass",
    "LocalData",
    "curve_En",
    "curve_Eprime",
    "curve_E9",
    "parse_curve_label",
    "add",
    "on_curve",
    "negate",
    "scalar_mul",
    "torsion_subgroup",
    "three_isogeny",
    "minimal_model",
    "minimal_weierstrass",
    "tate_local_data",
    "conductor",
    "real_period",
]


# ---------------------------------------------------------------------------
# The quadratic field Q(sqrt(-3)), just rich enough for torsion points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QSqrtM3:
    """a + b*sqrt(-3) with rational a, b."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, o):
        o = _coerce_field(o)
        return QSqrtM3(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        o = _coerce_field(o)
        return QSqrtM3(self.a - o.a, self.b - o.b)

    def __mul__(self, o):
        o = _coerce_field(o)
        return QSqrtM3(self.a * o.a - 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, o):
        return _coerce_field(o) - self

    def __neg__(self):
        return QSqrtM3(-self.a, -self.b)

    def __truediv__(self, o):
        o = _coerce_field(o)
        n = o.a * o.a + 3 * o.b * o.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(-3))")
        return self * QSqrtM3(o.a / n, -o.b / n)

    def __rtruediv__(self, o):
        return _coerce_field(o) / self

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __repr__(self):
        return f"({self.a}{'+' if self.b >= 0 else ''}{self.b}*sqrt(-3))"


def _coerce_field(x):
    if isinstance(x, QSqrtM3):
        return x
    return QSqrtM3(Fraction(x), Fraction(0))


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, QSqrtM3) else x == 0


# ---------------------------------------------------------------------------
# Curve models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveModel:
    """Short Weierstrass model y^2 = x^3 + A x + B with a family tag."""

    A: Fraction
    B: Fraction
    family_tag: str = "generic"
    n: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "A", Fraction(self.A))
        object.__setattr__(self, "B", Fraction(self.B))
        if self.discriminant() == 0:
            raise ValueError("singular cubic")

    def discriminant(self) -> Fraction:
        return -16 * (4 * self.A**3 + 27 * self.B**2)

    def c_invariants(self):
        return -48 * self.A, -864 * self.B

    def rhs(self, x):
        return x * x * x + self.A * x + self.B

    def label(self) -> str:
        if self.family_tag == "E_n":
            return f"E_{self.n}"
        if self.family_tag == "E'_n":
            return f"E'_{self.n}"
        if self.family_tag == "E9":
            return "E9"
        return f"y^2=x^3{self.A:+}x{self.B:+}"


def _check_family_n(n: int) -> int:
    if n <= 0:
        raise InvalidFamily(f"n = {n} must be positive")
    fac = factorint(n)
    if any(e >= 3 for e in fac.values()):
        raise InvalidFamily(f"n = {n} is not cube-free")
    if len([q for q in fac if q != 3]) > 1:
        raise InvalidFamily(f"n = {n} has two prime factors away from 3")
    return n


def curve_En(n: int) -> CurveModel:
    _check_family_n(n)
    return CurveModel(0, -432 * n * n, "E_n", n)


def curve_Eprime(n: int) -> CurveModel:
    _check_family_n(n)
    return CurveModel(0, (4 * n) ** 2, "E'_n", n)


def curve_E9() -> CurveModel:
    return CurveModel(0, -48, "E9", 9)


def parse_curve_label(label: str) -> CurveModel:
    """E_15, E'_15, E9, E9min are accepted."""
    s = label.strip()
    if s in ("E9", "E_9", "E9min", "E9-min"):
        return curve_E9()
    for prefix, ctor in (("E'_", curve_Eprime), ("E_", curve_En), ("E", curve_En)):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            return ctor(int(s[len(prefix):]))
    raise InvalidFamily(f"unrecognized curve label {label!r}")


# ---------------------------------------------------------------------------
# Group law (points are (x, y) pairs over Q or Q(sqrt(-3)); None = infinity)
# ---------------------------------------------------------------------------

CurvePoint = "tuple[x, y] | None"


def on_curve(P, E: CurveModel) -> bool:
    if P is None:
        return True
    x, y = P
    return _is_zero(y * y - E.rhs(x))


def _require(P, E):
    if not on_curve(P, E):
        raise PointNotOnCurve(f"{P} not on {E.label()}")


def negate(P):
    if P is None:
        return None
    return (P[0], -P[1])


def add(P, Q, E: CurveModel):
    _require(P, E)
    _require(Q, E)
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if _is_zero(x1 - x2):
        if _is_zero(y1 + y2):
            return None
        lam = (3 * x1 * x1 + E.A) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


def scalar_mul(m: int, P, E: CurveModel):
    if m < 0:
        return scalar_mul(-m, negate(P), E)
    R, base = None, P
    while m:
        if m & 1:
            R = add(R, base, E)
        base = add(base, base, E)
        m >>= 1
    return R


# ---------------------------------------------------------------------------
# Torsion
# ---------------------------------------------------------------------------


def _count_points_short(A: int, B: int, ell: int) -> int:
    sq = [0] * ell
    for t in range(ell):
        sq[t * t % ell] += 1
    total = 1  # infinity
    for x in range(ell):
        total += sq[(x * x * x + A * x + B) % ell]
    return total


def torsion_subgroup(E: CurveModel):
    """(order, structure, generators) of E(Q)_tor, verified exactly.

    The order bound comes from #E(F_ell) at several good primes; candidates
    are harvested by Lutz-Nagell (y = 0 or y^2 | Delta on an integral model)
    and each candidate is certified by exact scalar multiplication.
    """
    A, B = int(E.A), int(E.B)
    disc = int(E.discriminant())
    bound = 0
    ell, used = 5, 0
    while used < 4:
        if isprime(ell) and disc % ell:
            bound = gcd(bound, _count_points_short(A, B, ell))
            used += 1
        ell += 2
    if bound == 1:
        return 1, "trivial", []
    ys = {0}
    d = 1
    fac = factorint(abs(disc))
    divisors = [1]
    for q, e in fac.items():
        divisors = [dd * q**k for dd in divisors for k in range(e // 2 + 1)]
    ys.update(divisors)
    points = []
    for y in sorted(ys):
        # integer roots of x^3 + Ax + B = y^2
        c = B - y * y
        for x in _int_cubic_roots(A, c):
            for yy in ({0} if y == 0 else {y, -y}):
                P = (Fraction(x), Fraction(yy))
                if on_curve(P, E) and _torsion_order(P, E):
                    if P not in points:
                        points.append(P)
    order = len(points) + 1
    if order == 1:
        return 1, "trivial", []
    # all torsion groups on y^2 = x^3 + Ax + B with j=0 or generic small
    # cases here are cyclic unless full 2-torsion is rational
    two = [P for P in points if P[1] == 0]
    if len(two) == 3 and order == 4:
        return 4, "Z/2 x Z/2", two[:2]
    gen = max(points, key=lambda P: _torsion_order(P, E))
    assert _torsion_order(gen, E) == order
    return order, f"Z/{order}", [gen]


def _int_cubic_roots(A: int, c: int):
    """Integer roots of x^3 + A x + c."""
    if c == 0:
        roots = {0}
        roots.update(r for r in _int_divisor_roots(A, lambda x: x * x + A))
        return sorted(roots)
    return sorted(_int_divisor_roots(c, lambda x: x * x * x + A * x + c))


def _int_divisor_roots(c: int, f):
    out = []
    for d in _divisors(abs(c)):
        for r in (d, -d):
            if f(r) == 0:
                out.append(r)
    return out


def _divisors(n: int):
    if n == 0:
        return []
    out = [1]
    for q, e in factorint(n).items():
        out = [d * q**k for d in out for k in range(e + 1)]
    return out


def _torsion_order(P, E: CurveModel):
    """Order of P if <= 12 (Mazur bound), else None."""
    Q = P
    for k in range(1, 13):
        if Q is None:
            return k
        Q = add(Q, P, E)
    return None


# ---------------------------------------------------------------------------
# The 3-isogeny pair E_n -> E'_n
# ---------------------------------------------------------------------------


def three_isogeny(E: CurveModel):
    """(E', phi, phi_dual) with phi: E_n -> E'_n of degree 3.

    For y^2 = x^3 + a the quotient by the kernel {O, (0, +-sqrt(a))} is
    y^2 = x^3 - 27a via (x, y) -> ((x^3+4a)/x^2, y(x^3-8a)/x^3); composing
    with the u=3 rescaling lands on y^2 = x^3 + 16 n^2.  The dual is the
    same construction from E'_n, which hits E_n on the nose.
    """
    if E.family_tag != "E_n" or E.A != 0:
        raise InvalidFamily("three_isogeny expects an E_n family model")
    n = E.n
    a = E.B
    Eprime = curve_Eprime(n)
    aprime = Eprime.B

    def phi(P):
        if P is None or _is_zero(P[0]):
            return None
        x, y = P
        return ((x**3 + 4 * a) / (9 * x * x), y * (x**3 - 8 * a) / (27 * x**3))

    def phi_dual(P):
        if P is None or _is_zero(P[0]):
            return None
        x, y = P
        return ((x**3 + 4 * aprime) / (x * x), y * (x**3 - 8 * aprime) / x**3)

    return Eprime, phi, phi_dual


# ---------------------------------------------------------------------------
# Full Weierstrass models and minimization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Weierstrass:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for f in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, f, Fraction(getattr(self, f)))

    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def c_invariants(self):
        b2, b4, b6, _ = self.b_invariants()
        return b2 * b2 - 24 * b4, -b2**3 + 36 * b2 * b4 - 216 * b6

    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def transform(self, u=1, r=0, s=0, t=0) -> "Weierstrass":
        """Standard change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        u, r, s, t = map(Fraction, (u, r, s, t))
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        return Weierstrass(
            (a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u**2,
            (a3 + r * a1 + 2 * t) / u**3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4,
            (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6,
        )

    def coeffs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs())


def _short_to_weierstrass(E: CurveModel) -> Weierstrass:
    return Weierstrass(0, 0, 0, E.A, E.B)


def minimal_model(E: CurveModel):
    """Reduced short model (A/u^4, B/u^6) with u maximal, plus u.

    This is the short-form reduction only (it keeps a1 = a2 = a3 = 0);
    BSD-facing quantities are computed on the full minimal Weierstrass
    model from minimal_weierstrass.
    """
    A, B = Fraction(E.A), Fraction(E.B)
    assert A.denominator == 1 and B.denominator == 1
    u = 1
    primes = set()
    if A:
        primes |= set(factorint(abs(int(A))))
    if B:
        primes |= set(factorint(abs(int(B))))
    for q in primes:
        eA = valuation(A, q) if A else None
        eB = valuation(B, q) if B else None
        cands = []
        if eA is not None:
            cands.append(eA // 4)
        if eB is not None:
            cands.append(eB // 6)
        u *= q ** min(cands)
    return CurveModel(A / u**4, B / u**6, E.family_tag, E.n), u


def _kraus_ok(c4: int, c6: int) -> bool:
    """Kraus conditions: (c4, c6) arise from an integral Weierstrass model."""
    v3c6 = valuation(c6, 3)
    if v3c6 == 2:
        return False
    if c6 % 4 == 3:  # c6 = -1 mod 4
        return True
    return c4 % 16 == 0 and c6 % 32 in (0, 8)


def minimal_weierstrass(E: CurveModel) -> Weierstrass:
    """Global minimal model by the Laska-Kraus-Connell method."""
    c4, c6 = map(int, E.c_invariants())
    disc = int(E.discriminant())
    u = 1
    for q in factorint(abs(disc)):
        e = valuation(disc, q) // 12
        if c4:
            e = min(e, valuation(c4, q) // 4)
        if c6:
            e = min(e, valuation(c6, q) // 6)
        u *= q**e

    # largest divisor of u for which the Kraus conditions hold
    u = max(d for d in _divisors(u) if _kraus_ok(c4 // d**4, c6 // d**6))
    c4m, c6m = c4 // u**4, c6 // u**6
    # Connell's recipe for the reduced a-invariants
    b2 = -c6m % 12
    if b2 > 6:
        b2 -= 12
    b4 = Fraction(b2 * b2 - c4m, 24)
    b6 = Fraction(-b2**3 + 36 * b2 * b4 - c6m, 216)
    a1 = b2 % 2
    a2 = Fraction(b2 - a1, 4)
    assert b4.denominator == 1 and b6.denominator == 1, (b4, b6)
    a3 = int(b6) % 2
    a4 = Fraction(b4 - a1 * a3, 2)
    a6 = Fraction(b6 - a3, 4)
    W = Weierstrass(a1, a2, a3, a4, a6)
    assert W.is_integral(), W
    assert W.c_invariants() == (Fraction(c4m), Fraction(c6m))
    return W


# ---------------------------------------------------------------------------
# Tate's algorithm
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalData:
    prime: int
    kodaira: str
    conductor_exponent: int
    tamagawa: int
    minimal_disc_valuation: int


def _v(x, ell) -> int:
    """ell-adic valuation of a nonzero integer-valued Fraction; big for 0."""
    if x == 0:
        return 10**9
    return valuation(Fraction(x), ell)


def _poly_roots_mod(coeffs, ell):
    """Roots in F_ell of a polynomial given by int coefficients (descending)."""
    return [r for r in range(ell) if _poly_eval(coeffs, r, ell) == 0]


def _poly_eval(coeffs, x, ell):
    acc = 0
    for c in coeffs:
        acc = (acc * x + c) % ell
    return acc


def _quad_separable(b, c, ell) -> bool:
    """Is Y^2 + bY - c separable mod ell?"""
    if ell == 2:
        return b % 2 == 1
    return (b * b + 4 * c) % ell != 0


def _quad_split(b, c, ell) -> bool:
    """Does Y^2 + bY - c have a root in F_ell?"""
    return bool(_poly_roots_mod([1, b, -c], ell))


def tate_local_data(E, ell: int) -> LocalData:
    """Kodaira type, conductor exponent and Tamagawa number at ell.

    Runs the full Tate algorithm on the globally minimal model, with the
    residue searches done by brute force over F_ell (all bad primes in this
    toolkit are small).
    """
    W = E if isinstance(E, Weierstrass) else minimal_weierstrass(E)
    a1, a2, a3, a4, a6 = (int(c) for c in W.coeffs())

    while True:
        w = Weierstrass(a1, a2, a3, a4, a6)
        disc = int(w.discriminant())
        n = _v(disc, ell)
        if n == 0:
            return LocalData(ell, "I0", 0, 1, 0)
        vdisc = n
        c4, _ = (int(c) for c in w.c_invariants())

        # move the singular point of the reduction to the origin
        r0, t0 = _singular_point(a1, a2, a3, a4, a6, ell)
        a1, a2, a3, a4, a6 = (
            int(c) for c in Weierstrass(a1, a2, a3, a4, a6).transform(1, r0, 0, t0).coeffs()
        )

        if _v(c4, ell) == 0:
            # multiplicative: type I_n
            split = _quad_split(a1, a2, ell)
            c = vdisc if split else (2 if vdisc % 2 == 0 else 1)
            return LocalData(ell, f"I{vdisc}", 1, c, vdisc)

        if _v(a6, ell) < 2:
            return LocalData(ell, "II", vdisc, 1, vdisc)
        b8 = int(Weierstrass(a1, a2, a3, a4, a6).b_invariants()[3])
        if _v(b8, ell) < 3:
            return LocalData(ell, "III", vdisc - 1, 2, vdisc)
        b6 = int(Weierstrass(a1, a2, a3, a4, a6).b_invariants()[2])
        if _v(b6, ell) < 3:
            c = 3 if _quad_split(a3 // ell, a6 // ell**2, ell) else 1
            return LocalData(ell, "IV", vdisc - 2, c, vdisc)

        # normalize: ell | a1, a2; ell^2 | a3, a4; ell^3 | a6
        a1, a2, a3, a4, a6 = _normalize_step6(a1, a2, a3, a4, a6, ell)
        P = [1, a2 // ell, a4 // ell**2, a6 // ell**3]
        mult_roots = [r for r in _poly_roots_mod(P, ell)
                      if _poly_eval(_poly_deriv(P), r, ell) == 0]
        if not mult_roots:
            c = 1 + len(_poly_roots_mod(P, ell))
            return LocalData(ell, "I0*", vdisc - 4, c, vdisc)
        r = mult_roots[0]
        triple = all(
            x == 0
            for x in _cubic_shift_tail(P, r, ell)
        )
        if not triple:
            # I_m* subprocedure
            a1, a2, a3, a4, a6 = (
                int(c) for c in
                Weierstrass(a1, a2, a3, a4, a6).transform(1, ell * r, 0, 0).coeffs()
            )
            m, c = _type_Im_star(a1, a2, a3, a4, a6, ell)
            return LocalData(ell, f"I{m}*", vdisc - 4 - m, c, vdisc)

        # triple root: shift it to zero
        a1, a2, a3, a4, a6 = (
            int(c) for c in
            Weierstrass(a1, a2, a3, a4, a6).transform(1, ell * r, 0, 0).coeffs()
        )
        b3, c3 = a3 // ell**2, a6 // ell**4
        if _quad_separable(b3, c3, ell):
            c = 3 if _quad_split(b3, c3, ell) else 1
            return LocalData(ell, "IV*", vdisc - 6, c, vdisc)
        # kill the double root of Y^2 + b3 Y - c3
        y0 = _quad_double_root(b3, c3, ell)
        a1, a2, a3, a4, a6 = (
            int(c) for c in
            Weierstrass(a1, a2, a3, a4, a6).transform(1, 0, 0, ell**2 * y0).coeffs()
        )
        if _v(a4, ell) < 4:
            return LocalData(ell, "III*", vdisc - 7, 2, vdisc)
        if _v(a6, ell) < 6:
            return LocalData(ell, "II*", vdisc - 8, 1, vdisc)
        # non-minimal: rescale and restart
        a1, a2, a3, a4, a6 = (
            int(c) for c in Weierstrass(a1, a2, a3, a4, a6).transform(ell).coeffs()
        )


def _poly_deriv(coeffs):
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def _cubic_shift_tail(P, r, ell):
    """Coefficients of T^2, T^1, T^0 of P(T + r) mod ell (triple-root test)."""
    _, b, c, d = P
    return (
        (3 * r + b) % ell,
        (3 * r * r + 2 * b * r + c) % ell,
        (r**3 + b * r * r + c * r + d) % ell,
    )


def _singular_point(a1, a2, a3, a4, a6, ell):
    """The singular point of the reduced curve over F_ell (brute force)."""
    for x in range(ell):
        for y in range(ell):
            f = (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % ell
            fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % ell
            fy = (2 * y + a1 * x + a3) % ell
            if f == 0 and fx == 0 and fy == 0:
                return x, y
    raise AssertionError("no singular point found (good reduction?)")


def _normalize_step6(a1, a2, a3, a4, a6, ell):
    """Reach v(a1), v(a2) >= 1; v(a3), v(a4) >= 2; v(a6) >= 3 by (s, t) shifts."""
    for s in range(ell):
        for t in range(ell * ell):
            W = Weierstrass(a1, a2, a3, a4, a6).transform(1, 0, s, t)
            c = [int(x) for x in W.coeffs()]
            if (
                c[0] % ell == 0
                and c[1] % ell == 0
                and c[2] % ell**2 == 0
                and c[3] % ell**2 == 0
                and c[4] % ell**3 == 0
            ):
                return tuple(c)
    raise AssertionError("step-6 normalization failed")


def _quad_double_root(b, c, ell):
    """The double root of Y^2 + bY - c mod ell (which is inseparable here)."""
    for y in range(ell):
        if (y * y + b * y - c) % ell == 0:
            return y
    raise AssertionError("inseparable quadratic with no root")


def _type_Im_star(a1, a2, a3, a4, a6, ell):
    """Subprocedure for I_m* (double-but-not-triple root of the cubic).

    On entry the double root is at the origin: v(a2) = 1, v(a3) >= 2,
    v(a4) >= 3, v(a6) >= 4.  Alternating quadratics in Y and X are tested;
    each inseparable step translates the double root away and increments m.
    """
    m = 1
    while True:
        if m % 2 == 1:
            k = (m + 3) // 2
            b, c = a3 // ell**k, a6 // ell**(m + 3)
            if _quad_separable(b, c, ell):
                return m, (4 if _quad_split(b, c, ell) else 2)
            y0 = _quad_double_root(b, c, ell)
            a1, a2, a3, a4, a6 = (
                int(x) for x in
                Weierstrass(a1, a2, a3, a4, a6).transform(1, 0, 0, ell**k * y0).coeffs()
            )
        else:
            k = (m + 4) // 2
            aa, bb, cc = a2 // ell, a4 // ell**k, a6 // ell**(m + 3)
            if ell == 2:
                separable = bb % 2 == 1
            else:
                separable = (bb * bb - 4 * aa * cc) % ell != 0
            if separable:
                split = bool(_poly_roots_mod([aa, bb, cc], ell))
                return m, (4 if split else 2)
            x0 = _quadX_double_root(aa, bb, cc, ell)
            a1, a2, a3, a4, a6 = (
                int(x) for x in
                Weierstrass(a1, a2, a3, a4, a6).transform(1, ell**(k - 1) * x0, 0, 0).coeffs()
            )
        m += 1


def _quadX_double_root(a, b, c, ell):
    for x in range(ell):
        if (a * x * x + b * x + c) % ell == 0:
            return x
    raise AssertionError("inseparable quadratic with no root")


def conductor(E) -> int:
    W = E if isinstance(E, Weierstrass) else minimal_weierstrass(E)
    N = 1
    for ell in factorint(abs(int(W.discriminant()))):
        N *= ell ** tate_local_data(W, ell).conductor_exponent
    return N


# ---------------------------------------------------------------------------
# Real period
# ---------------------------------------------------------------------------


def real_period(E, precision_bits: int = 192):
    """Least positive real period of the minimal model, by AGM.

    Both families have negative discriminant (one real component), so
    Omega = 2*pi / AGM(sqrt(e1-e2), sqrt(e1-e3)) with e1 the real root of
    the minimal short cubic and e2, e3 its complex conjugate pair.
    """
    W = E if isinstance(E, Weierstrass) else minimal_weierstrass(E)
    c4, c6 = W.c_invariants()
    A = Fraction(-c4, 48)
    B = Fraction(-c6, 864)
    with mpmath.workprec(precision_bits + 32):
        roots = mpmath.polyroots(
            [mpmath.mpf(1), 0, mpmath.mpf(A.numerator) / A.denominator if A else 0,
             mpmath.mpf(B.numerator) / B.denominator],
            maxsteps=200, extraprec=64,
        )
        real_roots = [r for r in roots if abs(mpmath.im(r)) < mpmath.mpf(2) ** (-precision_bits // 2)]
        if len(real_roots) == 3:
            # rectangular two-component case (not hit by these families)
            e1, e2, e3 = sorted(mpmath.re(r) for r in roots)
            omega = mpmath.pi / mpmath.agm(mpmath.sqrt(e3 - e1), mpmath.sqrt(e3 - e2))
            return 2 * omega
        if len(real_roots) != 1:
            raise PrecisionBudgetExceeded("could not separate cubic roots")
        e1 = mpmath.re(real_roots[0])
        others = [r for r in roots if r not in real_roots]
        s1 = mpmath.sqrt(e1 - others[0])
        s2 = mpmath.sqrt(e1 - others[1])
        omega = 2 * mpmath.pi / mpmath.re(mpmath.agm(s1, s2))
        return abs(omega)
