"""Rational points: cube-sum certificates, canonical heights, 3-divisibility.

The dictionary between solutions of a^3 + b^3 = n c^3 and rational points on
E_n: y^2 = x^3 - 432 n^2 is the classical (a : b : c) -> (12nc/(a+b),
36n(a-b)/(a+b)).  Heights are Neron-Tate (h(2P) = 4 h(P)), computed on the
global minimal model by clearing the component groups with the Tamagawa lcm
and telescoping the archimedean local height.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

import mpmath
from sympy import Poly, Rational, Symbol, factorint

from .curves import (
    CurveModel,
    Weierstrass,
    add,
    curve_En,
    minimal_weierstrass,
    negate,
    on_curve,
    scalar_mul,
    tate_local_data,
    three_isogeny,
)
from .errors import DegenerateCert, NotFound, PointNotOnCurve, TorsionImage, TorsionPoint

__all__ = [
    "CubeSumCertificate",
    "cubesum_to_point",
    "point_to_cubesum",
    "search_cubesum",
    "tamagawa_product",
    "minimal_point",
    "canonical_height",
    "HEIGHT_TAGS",
    "divide_point",
    "saturate_small",
    "is_divisible_by_3",
]


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CubeSumCertificate:
    """a^3 + b^3 = n c^3 in lowest terms with c > 0."""

    a: int
    b: int
    c: int
    n: int

    def __post_init__(self):
        if self.c <= 0:
            raise DegenerateCert("certificate must have c > 0")
        g = gcd(gcd(abs(self.a), abs(self.b)), self.c)
        if g != 1:
            raise DegenerateCert(f"certificate not primitive (gcd {g})")
        if self.a**3 + self.b**3 != self.n * self.c**3:
            raise DegenerateCert(
                f"{self.a}^3 + {self.b}^3 != {self.n} * {self.c}^3"
            )

    def __str__(self):
        return f"{self.a}^3 + {self.b}^3 = {self.n} * {self.c}^3"


def cubesum_to_point(cert: CubeSumCertificate):
    """The point (12nc/(a+b), 36n(a-b)/(a+b)) on E_n."""
    if cert.a + cert.b == 0:
        raise DegenerateCert("a + b = 0 gives no affine point")
    n = cert.n
    x = Fraction(12 * n * cert.c, cert.a + cert.b)
    y = Fraction(36 * n * (cert.a - cert.b), cert.a + cert.b)
    E = curve_En(n)
    P = (x, y)
    if not on_curve(P, E):
        raise PointNotOnCurve(f"certificate image {P} not on {E.label()}")
    return E, P


def point_to_cubesum(E: CurveModel, P) -> CubeSumCertificate:
    """Invert the parametrization: a = (36n + y)/6x, b = (36n - y)/6x."""
    if E.family_tag != "E_n":
        raise DegenerateCert("point_to_cubesum expects an E_n model")
    if P is None:
        raise TorsionImage("the point at infinity maps to a + b = 0")
    if not on_curve(P, E):
        raise PointNotOnCurve(f"{P} not on {E.label()}")
    n = E.n
    x, y = Fraction(P[0]), Fraction(P[1])
    if x == 0:
        raise TorsionImage("x = 0 gives a degenerate ratio")
    a = (36 * n + y) / (6 * x)
    b = (36 * n - y) / (6 * x)
    if a == 0 or b == 0:
        # n is a perfect cube scaled; still a valid certificate unless c = 0
        pass
    den = lcm(a.denominator, b.denominator)
    A, B, C = int(a * den), int(b * den), den
    g = gcd(gcd(abs(A), abs(B)), C)
    return CubeSumCertificate(A // g, B // g, C // g, n)


def search_cubesum(n: int, budget: int = 100000) -> CubeSumCertificate:
    """Deterministic x-driven search for a nontorsion point on E_n or E'_n.

    For each denominator v and numerator u (|x| = u/v^2 increasing) test
    whether u^3 + K v^6 is a perfect square, on E_n (K = -432 n^2) and on
    E'_n (K = 16 n^2); an E'_n hit is pushed through the dual isogeny.
    budget bounds the numerator u.
    """
    E = curve_En(n)
    _, _, phi_dual = three_isogeny(E)
    for v in range(1, 17):
        v6 = v**6
        for u in range(1, budget + 1):
            if gcd(u, v) != 1:
                continue
            for K, primed in ((-432 * n * n, False), (16 * n * n, True)):
                t = u**3 + K * v6
                if t < 0:
                    continue
                w = isqrt(t)
                if w * w != t:
                    continue
                P = (Fraction(u, v * v), Fraction(w, v**3))
                if primed:
                    P = phi_dual(P)
                    if P is None:
                        continue
                if _torsion_point(P, E):
                    continue
                for Q in (P, negate(P)):
                    try:
                        return point_to_cubesum(E, Q)
                    except (TorsionImage, DegenerateCert):
                        continue
    raise NotFound(f"no certificate for n = {n} within numerator budget {budget}")


def _torsion_point(P, E) -> bool:
    Q = P
    for _ in range(12):
        if Q is None:
            return True
        Q = add(Q, P, E)
    return False


# ---------------------------------------------------------------------------
# Heights
# ---------------------------------------------------------------------------


def tamagawa_product(E: CurveModel) -> int:
    W = minimal_weierstrass(E)
    prod = 1
    for ell in factorint(abs(int(W.discriminant()))):
        prod *= tate_local_data(W, ell).tamagawa
    return prod


def _tamagawa_lcm(E: CurveModel) -> int:
    W = minimal_weierstrass(E)
    c = 1
    for ell in factorint(abs(int(W.discriminant()))):
        c = lcm(c, tate_local_data(W, ell).tamagawa)
    return c


def minimal_point(E: CurveModel, P):
    """Map a point on the short model to the global minimal model.

    Returns (W, P') where W = minimal_weierstrass(E).  The change of
    variables is recovered from the c-invariants: x = u^2 x' + r,
    y = u^3 y' + s u^2 x' + t.
    """
    W = minimal_weierstrass(E)
    _, c6 = (int(c) for c in E.c_invariants())
    _, c6m = (int(c) for c in W.c_invariants())
    u = _sixth_root(Fraction(c6, c6m))
    s = W.a1 * u / 2
    r = (W.a2 * u**2 + s * s) / 3
    t = (W.a3 * u**3 - r * W.a1) / 2
    check = Weierstrass(0, 0, 0, E.A, E.B).transform(u, r, s, t)
    assert check.coeffs() == W.coeffs(), (check, W)
    if P is None:
        return W, None
    x, y = Fraction(P[0]), Fraction(P[1])
    xp = (x - r) / u**2
    yp = (y - s * u**2 * xp - t) / u**3
    return W, (xp, yp)


def _sixth_root(q: Fraction) -> Fraction:
    num = round(q.numerator ** (1 / 6))
    den = round(q.denominator ** (1 / 6))
    for dn in (0, 1, -1):
        for dd in (0, 1, -1):
            cand = Fraction(num + dn, den + dd) if den + dd else None
            if cand and cand**6 == q:
                return cand
    raise AssertionError(f"{q} is not a sixth power")


def _w_add(W, P, Q):
    """Group law on a full Weierstrass model (exact rationals)."""
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = W.coeffs()
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and y1 + y2 + a1 * x2 + a3 == 0:
        return None
    if x1 == x2:
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def _w_mul(W, m, P):
    R, base = None, P
    while m:
        if m & 1:
            R = _w_add(W, R, base)
        base = _w_add(W, base, base)
        m >>= 1
    return R


HEIGHT_TAGS = ("neron-tate", "x-height")


def canonical_height(E: CurveModel, P, precision_bits: int = 192,
                     normalization: str = "neron-tate"):
    """Canonical height of P (given on the short model), h(2P) = 4 h(P).

    normalization "neron-tate" is the regulator/BSD pairing normalization;
    "x-height" is lim h(x(2^k P))/4^k, exactly twice it (the convention the
    explicit Gross-Zagier constants are stated in).

    The point is moved to the minimal model and multiplied by the lcm c of
    the Tamagawa numbers so every reduction is nonsingular; then
    h(Q) = (1/2) log den x(Q) + lambda_inf(Q) and h(P) = h(Q)/c^2, with
    lambda_inf by the telescoping duplication series.
    """
    if normalization not in HEIGHT_TAGS:
        raise ValueError(f"unknown height normalization {normalization!r}")
    if P is None or _torsion_point(P, E):
        raise TorsionPoint(f"{P} is torsion on {E.label()}")
    W, Pm = minimal_point(E, P)
    c = _tamagawa_lcm(E)
    Q = _w_mul(W, c, Pm)
    assert Q is not None
    x = Fraction(Q[0])
    with mpmath.workprec(precision_bits + 64):
        mu = mpmath.log(x.denominator) / 2
        lam = _lambda_inf(W, x, precision_bits)
        h = (mu + lam) / (c * c)
        if normalization == "x-height":
            h *= 2
        return +h


def _lambda_inf(W, x: Fraction, precision_bits: int):
    """Archimedean local height with lambda(2P) = 4 lambda(P) - log|psi_2(P)|."""
    b2, b4, b6, b8 = (mpmath.mpf(int(b)) for b in W.b_invariants())
    xk = mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)
    total = mpmath.mpf(0)
    K = max(40, precision_bits // 2)
    for k in range(K):
        F = ((4 * xk + b2) * xk + 2 * b4) * xk + b6
        phi = ((xk * xk - b4) * xk - 2 * b6) * xk - b8
        total += mpmath.log(abs(F)) / 2 / mpmath.mpf(4) ** (k + 1)
        xk = phi / F
    total += mpmath.log(max(abs(xk), mpmath.mpf(1))) / 2 / mpmath.mpf(4) ** K
    return total


# ---------------------------------------------------------------------------
# 3-divisibility
# ---------------------------------------------------------------------------


def divide_point(E: CurveModel, P, m: int):
    """A witness Q with mQ = P (m = 2 or 3) on the short model, or None."""
    if m == 3:
        return is_divisible_by_3(E, P)
    if m != 2:
        raise ValueError("only division by 2 and 3 is supported")
    if P is None:
        return None
    A, B = Rational(int(E.A)), Rational(int(E.B))
    xP = Rational(P[0].numerator, P[0].denominator)
    x = Symbol("x")
    poly = Poly(x**4 - 2 * A * x**2 - 8 * B * x + A**2
                - 4 * xP * (x**3 + A * x + B), x)
    return _division_witness(E, P, poly, 2)


def saturate_small(E: CurveModel, P):
    """Divide P by 2 and 3 as long as possible (partial saturation)."""
    changed = True
    while changed:
        changed = False
        for m in (2, 3):
            Q = divide_point(E, P, m)
            if Q is not None:
                P, changed = Q, True
    return P


def _division_witness(E, P, poly, m):
    target = (Fraction(P[0]), Fraction(P[1]))
    for root, _mult in poly.ground_roots().items():
        x0 = Fraction(int(root.p), int(root.q))
        rhs = x0**3 + Fraction(int(E.A)) * x0 + Fraction(int(E.B))
        if rhs < 0:
            continue
        y0 = _fraction_sqrt(rhs)
        if y0 is None:
            continue
        for yy in ({y0, -y0} if y0 else {y0}):
            Q = (x0, yy)
            if on_curve(Q, E) and scalar_mul(m, Q, E) == target:
                return Q
    return None


def is_divisible_by_3(E: CurveModel, P):
    """A witness Q with 3Q = P on the short model, or None.

    x(Q) is a rational root of phi_3(x) - x(P) psi_3(x)^2 where
    psi_3 = 3x^4 + 6Ax^2 + 12Bx - A^2 and phi_3 = x psi_3^2 - psi_2^2 psi_4.
    """
    if P is None:
        return None
    if not on_curve(P, E):
        raise PointNotOnCurve(f"{P} not on {E.label()}")
    A, B = Rational(int(E.A)), Rational(int(E.B))
    xP = Rational(P[0].numerator, P[0].denominator)
    x = Symbol("x")
    psi2sq = 4 * (x**3 + A * x + B)
    psi3 = 3 * x**4 + 6 * A * x**2 + 12 * B * x - A**2
    psi4_over_psi2 = 2 * (x**6 + 5 * A * x**4 + 20 * B * x**3 - 5 * A**2 * x**2
                          - 4 * A * B * x - 8 * B**2 - A**3)
    phi3 = x * psi3**2 - psi2sq * psi4_over_psi2
    poly = Poly(phi3 - xP * psi3**2, x)
    return _division_witness(E, P, poly, 3)


def _fraction_sqrt(q: Fraction):
    n, d = q.numerator, q.denominator
    sn, sd = isqrt(n), isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None
