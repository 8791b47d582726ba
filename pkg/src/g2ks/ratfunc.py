"""The rational-function field Q(s) in the induction parameter.

Every s-dependent coefficient of the representation-theoretic layer lives
here.  Canonical form: numerator and denominator coprime, denominator monic.
This makes equality structural and decidable, which is what the verification
suites lean on throughout.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import PoleError, PreconditionError
from .poly import ONE, Poly, Scalar, poly_gcd, rational_to_str

Coercible = Union[int, Fraction, Poly, "RatFunc"]


class RatFunc:
    """Reduced quotient of two polynomials over the rationals."""

    __slots__ = ("num", "den")

    def __init__(self, num: Coercible = 0, den: Coercible | None = None):
        if isinstance(num, RatFunc):
            if den is not None:
                raise TypeError("pass a single RatFunc or a num/den pair of polynomials")
            self.num, self.den = num.num, num.den
            return
        n = Poly._coerce(num)
        d = ONE if den is None else Poly._coerce(den)
        if d.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if n.is_zero():
            self.num, self.den = n, ONE
            return
        g = poly_gcd(n, d)
        if g.degree > 0:
            n, d = n // g, d // g
        lc = d.leading
        if lc != 1:
            n = n * (Fraction(1) / lc)
            d = d.monic()
        self.num, self.den = n, d

    # -- coercion ------------------------------------------------------------

    @staticmethod
    def _coerce(value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (int, Fraction, Poly)):
            return RatFunc(value)
        raise TypeError(f"cannot treat {value!r} as a rational function")

    def as_poly(self) -> Poly:
        if self.den != ONE:
            raise PreconditionError(f"{self} is not a polynomial")
        return self.num

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- field operations ------------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        out = RatFunc.__new__(RatFunc)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other) -> "RatFunc":
        return self + (-RatFunc._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc._coerce(other) + (-self)

    def __mul__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc._coerce(other) / self

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return (RatFunc(1) / self) ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def inverse(self) -> "RatFunc":
        return RatFunc(1) / self

    # -- evaluation, valuation, substitution -----------------------------------

    def __call__(self, s0: Scalar) -> Fraction:
        s0 = Fraction(s0)
        d = self.den(s0)
        if d == 0:
            raise PoleError(f"pole at s = {s0}: denominator {self.den} vanishes")
        return self.num(s0) / d

    def valuation(self, s0: Scalar) -> int | float:
        """Order of vanishing at s0 (negative for poles, +inf for the zero function)."""
        if self.is_zero():
            return math.inf
        s0 = Fraction(s0)
        return self.num.multiplicity_at(s0) - self.den.multiplicity_at(s0)

    def subs_affine(self, alpha: Scalar, beta: Scalar) -> "RatFunc":
        """Substitute s -> alpha*s + beta (alpha nonzero keeps this a field map)."""
        return RatFunc(self.num.compose_affine(alpha, beta), self.den.compose_affine(alpha, beta))

    # -- display -----------------------------------------------------------------

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        num = str(self.num)
        if self.num.degree > 0:
            num = f"({num})"
        return f"{num}/({self.den})"


RF_ZERO = RatFunc(0)
RF_ONE = RatFunc(1)
S = RatFunc(Poly.variable())


def rf(value: Coercible) -> RatFunc:
    return RatFunc._coerce(value)


def reflected(f: RatFunc) -> RatFunc:
    """The parameter reflection s -> 3 - s, the basic symmetry of the family."""
    return f.subs_affine(-1, 3)


def pochhammer_rf(base: Coercible, length: int) -> RatFunc:
    """Rising product over the function field; negative length inverts:
    (x)_{-k} = 1/((x-1)(x-2)...(x-k))."""
    base = rf(base)
    if length >= 0:
        out = RF_ONE
        for i in range(length):
            out = out * (base + i)
        return out
    out = RF_ONE
    for i in range(1, -length + 1):
        out = out * (base - i)
    return RF_ONE / out


def gamma_ratio(base: Coercible, num_offsets: list[int], den_offsets: list[int]) -> RatFunc:
    """Product of Gamma(base + p) over Gamma(base + q) as an exact rational function.

    The offset lists must have equal length: sorting both and pairing termwise
    turns each pair into a Pochhammer factor with integer length, so the whole
    ratio collapses to an element of Q(s).  Unequal lengths leave a genuine
    Gamma factor behind and are rejected.
    """
    if len(num_offsets) != len(den_offsets):
        raise PreconditionError(
            "gamma_ratio offsets do not pair up "
            f"({len(num_offsets)} vs {len(den_offsets)}): the ratio is not rational"
        )
    base = rf(base)
    out = RF_ONE
    for p, q in zip(sorted(num_offsets), sorted(den_offsets)):
        # Gamma(b+p)/Gamma(b+q) = (b+q)_(p-q) for p >= q, else 1/(b+p)_(q-p).
        if p >= q:
            out = out * pochhammer_rf(base + q, p - q)
        else:
            out = out / pochhammer_rf(base + p, q - p)
    return out


def ratfunc_to_json(f: RatFunc) -> dict:
    """Serialize as {"num": ["p/q", ...], "den": ["p/q", ...]}, ascending degree."""
    return {
        "num": [rational_to_str(c) for c in f.num.coeffs],
        "den": [rational_to_str(c) for c in f.den.coeffs],
    }


def ratfunc_from_json(data: dict) -> RatFunc:
    num = Poly(Fraction(c) for c in data["num"])
    den = Poly(Fraction(c) for c in data["den"])
    return RatFunc(num, den)
