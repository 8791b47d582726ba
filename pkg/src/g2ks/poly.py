"""Exact univariate polynomials over the rationals.

The coefficient field is ``fractions.Fraction`` (arbitrary precision, always
reduced), re-exported here as ``Rational``.  A polynomial is stored as a tuple
of coefficients in ascending degree with no trailing zeros; the zero
polynomial is the empty tuple and reports degree -1.

The formal variable is the induction parameter and is printed as ``s``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .errors import PreconditionError

Rational = Fraction

Scalar = Union[int, Fraction]


def rational_from_str(text: str) -> Fraction:
    """Parse a rational from a decimal-free "p/q" (or bare "p") literal."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise PreconditionError(f"rational literals must be exact p/q, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"malformed rational literal {text!r}") from exc


def rational_to_str(q: Fraction) -> str:
    """Serialize a rational as a "p/q" string (denominator always written)."""
    return f"{q.numerator}/{q.denominator}"


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with C(n,k) = 0 for k < 0 or k > n, n >= 0."""
    if n < 0:
        raise PreconditionError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling_int(x: int, k: int) -> int:
    """Falling factorial x(x-1)...(x-k+1) of an integer, k >= 0."""
    if k < 0:
        raise PreconditionError(f"falling factorial length must be >= 0, got {k}")
    out = 1
    for i in range(k):
        out *= x - i
    return out


def rising_int(x: int, k: int) -> int:
    """Rising factorial x(x+1)...(x+k-1) of an integer, k >= 0."""
    if k < 0:
        raise PreconditionError(f"rising factorial length must be >= 0, got {k}")
    out = 1
    for i in range(k):
        out *= x + i
    return out


class Poly:
    """Univariate polynomial in s with Rational coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls((Fraction(c),))

    @classmethod
    def variable(cls) -> "Poly":
        return cls((Fraction(0), Fraction(1)))

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports the sentinel -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroDivisionError("the zero polynomial has no monic scaling")
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Poly(c / lc for c in self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _coerce(value) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return Poly((value,))
        raise TypeError(f"cannot treat {value!r} as a polynomial")

    def __add__(self, other) -> "Poly":
        other = Poly._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-Poly._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly._coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        other = Poly._coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise PreconditionError("negative powers are not polynomials")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = Poly._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by the zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        lc = other.coeffs[-1]
        if len(rem) <= db:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - db - 1, -1, -1):
            q = rem[i + db] / lc
            if q != 0:
                quot[i] = q
                for j, c in enumerate(other.coeffs):
                    rem[i + j] -= q * c
        return Poly(quot), Poly(rem[:db])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    # -- evaluation and substitution ----------------------------------------

    def __call__(self, s0: Scalar) -> Fraction:
        s0 = Fraction(s0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * s0 + c
        return acc

    def compose_affine(self, alpha: Scalar, beta: Scalar) -> "Poly":
        """Substitute s -> alpha*s + beta."""
        arg = Poly((Fraction(beta), Fraction(alpha)))
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * arg + c
        return acc

    def multiplicity_at(self, s0: Scalar) -> int:
        """Multiplicity of (s - s0) as a factor; requires a nonzero polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("multiplicity is undefined for the zero polynomial")
        s0 = Fraction(s0)
        root = Poly((-s0, Fraction(1)))
        mult = 0
        p = self
        while p(s0) == 0:
            p = p // root
            mult += 1
        return mult

    # -- display -------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                var = "s" if i == 1 else f"s^{i}"
                term = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


ZERO = Poly()
ONE = Poly.const(1)
X = Poly.variable()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            b = b.monic()
    if a.is_zero():
        return a
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return ZERO
    return ((a * b) // poly_gcd(a, b)).monic()


def _coerce_affine(base) -> Poly:
    p = Poly._coerce(base) if not hasattr(base, "as_poly") else base.as_poly()
    if p.degree > 1:
        raise PreconditionError(f"base must be affine in s, got degree {p.degree}")
    return p


def pochhammer(base, length: int) -> Poly:
    """Rising product (base)(base+1)...(base+length-1); empty product is 1."""
    if length < 0:
        raise PreconditionError(f"pochhammer length must be >= 0, got {length}")
    p = _coerce_affine(base)
    out = ONE
    for i in range(length):
        out = out * (p + i)
    return out


def falling(base, length: int) -> Poly:
    """Falling product (base)(base-1)...(base-length+1); empty product is 1."""
    if length < 0:
        raise PreconditionError(f"falling length must be >= 0, got {length}")
    p = _coerce_affine(base)
    out = ONE
    for i in range(length):
        out = out * (p - i)
    return out
