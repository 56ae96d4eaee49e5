"""Exact arithmetic in Z[w], w = (-1+sqrt(-3))/2, and symbolic roots of unity.

The ring Z[w] is norm-Euclidean, so gcds and factorization into primes are
exact.  Sixth/twelfth roots of unity are kept as exponents of zeta_12, never
as floats, so every residue-symbol and character-table comparison downstream
is an integer comparison.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BoundExceeded, NormalizationFailure, NotCoprime, ResidueCharThree

__all__ = [
    "RootOfUnity",
    "EisensteinInt",
    "ONE",
    "OMEGA",
    "SQRT_M3",
    "eis_gcd",
    "eis_factor",
    "cornacchia_split",
    "cubic_residue_symbol",
    "valuation",
]


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_12^k, stored by the exponent k mod 12.

    Covers every root of unity used in the character tables:
    omega = zeta_12^4, i = zeta_12^3, -1 = zeta_12^6.
    """

    k: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 12)

    @staticmethod
    def one() -> "RootOfUnity":
        return RootOfUnity(0)

    @staticmethod
    def minus_one() -> "RootOfUnity":
        return RootOfUnity(6)

    @staticmethod
    def i(power: int = 1) -> "RootOfUnity":
        return RootOfUnity(3 * power)

    @staticmethod
    def omega(power: int = 1) -> "RootOfUnity":
        return RootOfUnity(4 * power)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.k + other.k)

    def __pow__(self, n: int) -> "RootOfUnity":
        return RootOfUnity(self.k * n)

    def inv(self) -> "RootOfUnity":
        return RootOfUnity(-self.k)

    def conj(self) -> "RootOfUnity":
        return RootOfUnity(-self.k)

    @property
    def order(self) -> int:
        from math import gcd

        return 12 // gcd(self.k, 12)

    def is_one(self) -> bool:
        return self.k == 0

    def as_omega_power(self) -> int:
        """Exponent e with self == omega^e; raises if not a cube root of 1."""
        if self.k % 4 != 0:
            raise ValueError(f"{self} is not in mu_3")
        return (self.k // 4) % 3

    def as_complex(self):
        import mpmath

        return mpmath.expjpi(mpmath.mpf(2 * self.k) / 12)

    def __repr__(self):
        names = {0: "1", 3: "i", 4: "w", 6: "-1", 8: "w^2", 9: "-i"}
        return names.get(self.k, f"zeta12^{self.k}")


@dataclass(frozen=True)
class EisensteinInt:
    """a + b*w with w^2 + w + 1 = 0; sqrt(-3) = 1 + 2w."""

    a: int
    b: int

    def __add__(self, o):
        o = _coerce(o)
        return EisensteinInt(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        o = _coerce(o)
        return EisensteinInt(self.a - o.a, self.b - o.b)

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, o):
        o = _coerce(o)
        # (a+bw)(c+dw) = ac + (ad+bc)w + bd w^2, w^2 = -1-w
        a, b, c, d = self.a, self.b, o.a, o.b
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, o):
        return _coerce(o) - self

    def conj(self) -> "EisensteinInt":
        # conj(w) = w^2 = -1 - w
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_rational(self) -> bool:
        return self.b == 0

    def divmod(self, other: "EisensteinInt"):
        """Euclidean division: q, r with self = q*other + r, N(r) < N(other)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Z[w]")
        n = other.norm()
        num = self * other.conj()
        q = EisensteinInt(_round_div(num.a, n), _round_div(num.b, n))
        r = self - q * other
        return q, r

    def __floordiv__(self, other):
        return self.divmod(_coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(_coerce(other))[1]

    def divides(self, other: "EisensteinInt") -> bool:
        return (other % self).is_zero()

    def exact_div(self, other: "EisensteinInt") -> "EisensteinInt":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return q

    def __pow__(self, exp: int) -> "EisensteinInt":
        base, result = self, EisensteinInt(1, 0)
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def associates(self):
        """The six unit multiples of self."""
        return [self * u for u in UNITS]

    def is_primary(self) -> bool:
        """Primary normal form: congruent to 2 mod 3 (so a=2, b=0 mod 3)."""
        return self.a % 3 == 2 and self.b % 3 == 0

    def primary(self):
        """(primary associate, unit u) with self = u * associate.

        Exists and is unique iff norm(self) is coprime to 3.
        """
        if self.norm() % 3 == 0:
            raise NormalizationFailure(f"{self} has norm divisible by 3")
        for u in UNITS:
            cand = self.exact_div(u)
            if cand.is_primary():
                return cand, u
        raise NormalizationFailure(f"no primary associate of {self}")  # pragma: no cover

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a}{self.b:+}w)"


def _coerce(x) -> EisensteinInt:
    if isinstance(x, EisensteinInt):
        return x
    if isinstance(x, int):
        return EisensteinInt(x, 0)
    raise TypeError(f"cannot coerce {x!r} to EisensteinInt")


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b, ties toward +inf; b > 0 assumed."""
    return (2 * a + b) // (2 * b)


ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)
SQRT_M3 = EisensteinInt(1, 2)
UNITS = (
    EisensteinInt(1, 0),
    EisensteinInt(-1, 0),
    EisensteinInt(0, 1),
    EisensteinInt(0, -1),
    EisensteinInt(-1, -1),
    EisensteinInt(1, 1),
)


def eis_gcd(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    while not y.is_zero():
        x, y = y, x % y
    return x


def cornacchia_split(q: int) -> EisensteinInt:
    """A prime element of norm q for a rational prime q = 1 mod 3."""
    assert q % 3 == 1
    rng = random.Random(q)
    while True:
        r = pow(rng.randrange(2, q), (q - 1) // 3, q)
        if r != 1 and (r * r + r + 1) % q == 0:
            break
    pi = eis_gcd(EisensteinInt(q, 0), EisensteinInt(r, -1))
    assert pi.norm() == q
    return pi


def valuation(x, p: int):
    """p-adic valuation of an int or Fraction; None encodes +infinity."""
    from fractions import Fraction

    if x == 0:
        return None
    if isinstance(x, Fraction):
        return valuation(x.numerator, p) - valuation(x.denominator, p)
    x = abs(int(x))
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def eis_factor(n: int, bound: int = 10**6):
    """Factor a nonzero rational integer into Eisenstein primes.

    Returns (unit, [(prime, multiplicity), ...]) with every split prime in
    primary form and unit * product == n exactly.  Factoring is trial
    division only; raises BoundExceeded past the configured bound.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    unit = EisensteinInt(1 if n > 0 else -1, 0)
    m = abs(n)
    factors = []
    d = 2
    while d * d <= m:
        if d > bound:
            raise BoundExceeded(f"trial division bound {bound} exceeded at {m}")
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        if m > bound * bound:
            raise BoundExceeded(f"residual cofactor {m} exceeds bound")
        factors.append((m, 1))

    out = []
    for q, e in factors:
        if q == 3:
            # 3 = -w^2 * (1+2w)^2; the unit cofactor is recovered at the end
            out.append((SQRT_M3, 2 * e))
        elif q % 3 == 2:
            out.append((EisensteinInt(q, 0), e))
        else:
            pi = cornacchia_split(q).primary()[0]
            out.append((pi, e))
            out.append((pi.conj().primary()[0], e))
    prod = EisensteinInt(1, 0)
    for pi, e in out:
        prod = prod * pi**e
    unit = EisensteinInt(n, 0).exact_div(prod)
    if not unit.is_unit():  # pragma: no cover
        raise NormalizationFailure(f"non-unit cofactor while factoring {n}")
    return unit, out


def _residue_image(x: EisensteinInt, pi: EisensteinInt):
    """Image of x in the residue field of (pi).

    Split pi (prime norm q): returns an int mod q.
    Inert pi (rational prime q, norm q^2): returns a pair (a, b) = a + b*t
    in F_q[t]/(t^2+t+1).
    """
    nq = pi.norm()
    if _is_prime(nq):
        q = nq
        if pi.b % q == 0:
            # associate of a rational integer cannot have prime norm q > 3
            raise ResidueCharThree(f"unexpected pi {pi}")  # pragma: no cover
        r = (-pi.a * pow(pi.b, -1, q)) % q
        return ("split", q, (x.a + x.b * r) % q, r)
    q = _int_sqrt(nq)
    assert q * q == nq and _is_prime(q)
    return ("inert", q, (x.a % q, x.b % q), None)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _int_sqrt(n: int) -> int:
    import math

    return math.isqrt(n)


def _fq2_mul(x, y, q):
    """Multiply a+bt and c+dt in F_q[t]/(t^2+t+1)."""
    a, b = x
    c, d = y
    return ((a * c - b * d) % q, (a * d + b * c - b * d) % q)


def _fq2_pow(x, e, q):
    r = (1, 0)
    while e:
        if e & 1:
            r = _fq2_mul(r, x, q)
        x = _fq2_mul(x, x, q)
        e >>= 1
    return r


def residue_power_root(x: EisensteinInt, pi: EisensteinInt, m: int) -> RootOfUnity:
    """x^((q_v - 1)/m) mod pi, identified as an exact m-th root of unity.

    q_v is the residue-field size; requires m | q_v - 1 and x a unit at pi.
    m is 2 or 3.
    """
    kind, q, ximg, r = _residue_image(x, pi)
    if kind == "split":
        qv = q
        val = pow(ximg, (qv - 1) // m, q)
        if m == 2:
            return RootOfUnity.one() if val == 1 else RootOfUnity.minus_one()
        # images of 1, w, w^2 in F_q
        table = {1: 0, r: 1, (r * r) % q: 2}
        return RootOfUnity.omega(table[val])
    qv = q * q
    val = _fq2_pow(ximg, (qv - 1) // m, q)
    if m == 2:
        if val == (1, 0):
            return RootOfUnity.one()
        assert val == ((q - 1) % q, 0)
        return RootOfUnity.minus_one()
    table = {(1, 0): 0, (0, 1): 1, ((q - 1) % q, (q - 1) % q): 2}
    return RootOfUnity.omega(table[tuple(val)])


def cubic_residue_symbol(alpha: EisensteinInt, pi: EisensteinInt) -> RootOfUnity:
    """The cubic residue symbol (alpha/pi)_3 in mu_3.

    pi must be prime with residue characteristic != 3 and alpha coprime to pi.
    """
    nq = pi.norm()
    if nq % 3 == 0 or nq == 1:
        raise ResidueCharThree(f"residue characteristic of {pi} is 3 or pi is a unit")
    if not eis_gcd(alpha, pi).is_unit():
        raise NotCoprime(f"{alpha} shares a factor with {pi}")
    return residue_power_root(alpha, pi, 3)
