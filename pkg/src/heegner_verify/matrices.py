"""Exact 2x2 matrices over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Singular

__all__ = ["Mat2Rat"]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Mat2Rat:
    """Row-major (a, b; c, d) with exact rational entries."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _frac(getattr(self, name)))

    @staticmethod
    def identity() -> "Mat2Rat":
        return Mat2Rat(1, 0, 0, 1)

    def __add__(self, o: "Mat2Rat") -> "Mat2Rat":
        return Mat2Rat(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Mat2Rat") -> "Mat2Rat":
        return Mat2Rat(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __mul__(self, o):
        if isinstance(o, Mat2Rat):
            return Mat2Rat(
                self.a * o.a + self.b * o.c,
                self.a * o.b + self.b * o.d,
                self.c * o.a + self.d * o.c,
                self.c * o.b + self.d * o.d,
            )
        s = _frac(o)
        return Mat2Rat(self.a * s, self.b * s, self.c * s, self.d * s)

    def __rmul__(self, o):
        return self * _frac(o)

    def __pow__(self, n: int) -> "Mat2Rat":
        if n < 0:
            return self.inv() ** (-n)
        result, base = Mat2Rat.identity(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Fraction:
        return self.a + self.d

    def inv(self) -> "Mat2Rat":
        dt = self.det()
        if dt == 0:
            raise Singular(f"{self} is singular")
        return Mat2Rat(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def conj_by(self, g: "Mat2Rat") -> "Mat2Rat":
        """g^-1 * self * g."""
        return g.inv() * self * g

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __repr__(self):
        return f"[{self.a} {self.b}; {self.c} {self.d}]"
