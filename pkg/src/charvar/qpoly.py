"""Exact univariate polynomial and rational-function arithmetic in the variable q.

Polynomials are dense lists of ``fractions.Fraction`` coefficients (index =
power, no trailing zeros).  A :class:`RationalPoly` is a reduced fraction
num/den of two such polynomials with a monic denominator; after reduction the
representation is canonical, so equality is plain coefficient equality.

The counting pipeline genuinely needs rational functions: group-order
prefactors carry negative powers of (q-1) and q that only cancel after the
full sum is assembled.  Polynomiality of a final result is therefore a
*check*, performed by :meth:`RationalPoly.polynomial_coeffs`, not an
assumption baked into the arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Scalar = Union[int, Fraction]


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Dense polynomial over the rationals; immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs: tuple[Fraction, ...] = _strip([Fraction(c) for c in coeffs])

    # -- constructors -------------------------------------------------
    @staticmethod
    def const(c: Scalar) -> "Poly":
        return Poly([Fraction(c)])

    @staticmethod
    def q() -> "Poly":
        return Poly([0, 1])

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        return Poly([c * x for x in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("Poly does not support negative powers; use RationalPoly")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq, dd = len(rem) - 1, other.degree()
        lead = other.leading()
        quot = [Fraction(0)] * max(dq - dd + 1, 0)
        for i in range(dq, dd - 1, -1):
            if rem and len(rem) - 1 == i and rem[-1] != 0:
                f = rem[-1] / lead
                quot[i - dd] = f
                for j, c in enumerate(other.coeffs):
                    rem[i - dd + j] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(quot), Poly(rem)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def evaluate(self, x: Scalar) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- display ------------------------------------------------------
    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "q" if i == 1 else f"q^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial, via exact division of q^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = Poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            q_, r = num.divmod(cyclotomic(d))
            assert r.is_zero()
            num = q_
    return num


def _coerce(x: Union["RationalPoly", Poly, Scalar]) -> "RationalPoly":
    if isinstance(x, RationalPoly):
        return x
    if isinstance(x, Poly):
        return RationalPoly(x)
    if isinstance(x, (int, Fraction)):
        return RationalPoly(Poly.const(x))
    raise TypeError(f"cannot coerce {type(x)!r} to RationalPoly")


class RationalPoly:
    """Quotient num/den of exact polynomials in q, kept fully reduced.

    Canonical form: gcd(num, den) = 1 and den monic, so two equal rational
    functions have identical coefficient tuples.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None):
        den = Poly.const(1) if den is None else den
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        g = num.gcd(den)
        num, r1 = num.divmod(g)
        den, r2 = den.divmod(g)
        assert r1.is_zero() and r2.is_zero()
        lead = den.leading()
        self.num = num.scale(1 / lead)
        self.den = den.scale(1 / lead)

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_int(c: Scalar) -> "RationalPoly":
        return RationalPoly(Poly.const(c))

    @staticmethod
    def q() -> "RationalPoly":
        return RationalPoly(Poly.q())

    @staticmethod
    def from_coeffs(coeffs: Iterable[Scalar]) -> "RationalPoly":
        return RationalPoly(Poly(coeffs))

    # -- predicates / extraction --------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == Poly.const(1)

    def polynomial_coeffs(self) -> tuple[Fraction, ...]:
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: ({self.num})/({self.den})")
        return self.num.coeffs

    def degree(self) -> int:
        """Degree of a polynomial value; -1 for zero."""
        self.polynomial_coeffs()
        return self.num.degree()

    def leading_coefficient(self) -> Fraction:
        self.polynomial_coeffs()
        return self.num.leading()

    def evaluate(self, x: Scalar) -> Fraction:
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q={x}")
        return self.num.evaluate(x) / d

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "RationalPoly":
        o = _coerce(other)
        return RationalPoly(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-self.num, self.den)

    def __sub__(self, other) -> "RationalPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "RationalPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "RationalPoly":
        o = _coerce(other)
        return RationalPoly(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalPoly":
        o = _coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalPoly(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RationalPoly":
        return _coerce(other) / self

    def __pow__(self, n: int) -> "RationalPoly":
        if n >= 0:
            return RationalPoly(self.num ** n, self.den ** n)
        if self.is_zero():
            raise ZeroDivisionError("zero to a negative power")
        return RationalPoly(self.den ** (-n), self.num ** (-n))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (RationalPoly, Poly, int, Fraction)):
            o = _coerce(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- display ------------------------------------------------------
    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalPoly({self})"

    def factored_str(self) -> str:
        """Human-readable factorization of a polynomial value over the integers.

        Pulls out the rational content, the power of q, and cyclotomic factors
        by trial division; whatever remains is printed expanded.  Intended for
        eyeballing counting polynomials, whose factors are overwhelmingly of
        this shape.
        """
        coeffs = self.polynomial_coeffs()
        if not coeffs:
            return "0"
        # power of q
        val = 0
        while coeffs[val] == 0:
            val += 1
        body = Poly(coeffs[val:])
        # rational content, sign normalized to the leading coefficient
        from math import gcd, lcm
        denoms = [c.denominator for c in body.coeffs if c]
        numers = [c.numerator for c in body.coeffs if c]
        content = Fraction(gcd(*numers) if len(numers) > 1 else abs(numers[0]),
                           lcm(*denoms) if len(denoms) > 1 else denoms[0])
        if body.leading() < 0:
            content = -content
        body = body.scale(1 / content)
        factors: list[tuple[str, int]] = []
        d = 1
        while body.degree() > 0 and d <= body.degree():
            phi = cyclotomic(d)
            if phi.degree() > body.degree():
                d += 1
                continue
            quot, rem = body.divmod(phi)
            if rem.is_zero():
                if factors and factors[-1][0] == str(phi):
                    factors[-1] = (factors[-1][0], factors[-1][1] + 1)
                else:
                    factors.append((str(phi), 1))
                body = quot
            else:
                d += 1
        parts = []
        if content != 1 or (val == 0 and not factors and body == Poly.const(1)):
            parts.append(str(content))
        if val:
            parts.append("q" if val == 1 else f"q^{val}")
        for text, mult in factors:
            parts.append(f"({text})" + (f"^{mult}" if mult > 1 else ""))
        if body != Poly.const(1):
            parts.append(f"({body})")
        return " * ".join(parts) if parts else "1"


ZERO = RationalPoly(Poly())
ONE = RationalPoly.from_int(1)
Q = RationalPoly.q()


def q_minus(c: Scalar) -> RationalPoly:
    """The linear polynomial q - c."""
    return RationalPoly(Poly([-c, 1]))
