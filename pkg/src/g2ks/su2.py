"""SU(2) weight calculus and Rankin-Cohen brackets.

The irreducible representation of highest weight m is realized on polynomials
of degree <= m; the basis vector of weight a is the monomial z^((m-a)/2).
Rankin-Cohen brackets give the explicit projections of a tensor product onto
its irreducible summands, and the adjoint on constants has the closed form
(z - w)^k.  Everything here is exact; scalars are rational functions so the
same arithmetic flows through the whole package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import PreconditionError
from .poly import binomial, falling_int, rising_int
from .ratfunc import RF_ZERO, RatFunc, rf

GENERATORS = ("H", "E", "F")


def _check_weight(m: int, a: int) -> None:
    if m < 0:
        raise PreconditionError(f"highest weight must be >= 0, got {m}")
    if abs(a) > m or (a - m) % 2:
        raise PreconditionError(f"weight {a} is not a weight of the module of highest weight {m}")


@dataclass(frozen=True)
class WeightVector:
    """The monomial basis vector of weight a in the module of highest weight m."""

    m: int
    a: int

    def __post_init__(self):
        _check_weight(self.m, self.a)

    @property
    def monomial_degree(self) -> int:
        return (self.m - self.a) // 2


class RepElement:
    """Finitely supported combination of weight vectors of one module."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Mapping[int, object] | None = None):
        if m < 0:
            raise PreconditionError(f"highest weight must be >= 0, got {m}")
        self.m = m
        clean: dict[int, RatFunc] = {}
        for a, c in (coeffs or {}).items():
            c = rf(c)
            if c.is_zero():
                continue
            _check_weight(m, a)
            clean[a] = c
        self.coeffs = clean

    @classmethod
    def basis(cls, m: int, a: int) -> "RepElement":
        return cls(m, {a: 1})

    def coeff(self, a: int) -> RatFunc:
        return self.coeffs.get(a, RF_ZERO)

    def items(self) -> list[tuple[int, RatFunc]]:
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "RepElement") -> "RepElement":
        if self.m != other.m:
            raise PreconditionError("cannot add elements of different modules")
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, RF_ZERO) + c
        return RepElement(self.m, out)

    def scale(self, factor) -> "RepElement":
        factor = rf(factor)
        return RepElement(self.m, {a: c * factor for a, c in self.coeffs.items()})

    def __sub__(self, other: "RepElement") -> "RepElement":
        return self + other.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RepElement):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*xi[{a}]" for a, c in self.items()) or "0"
        return f"RepElement(m={self.m}: {body})"


class TensorElement:
    """Element of the tensor product of two modules, in the weight-pair basis."""

    __slots__ = ("m", "n", "coeffs")

    def __init__(self, m: int, n: int, coeffs: Mapping[tuple[int, int], object] | None = None):
        if m < 0 or n < 0:
            raise PreconditionError("highest weights must be >= 0")
        self.m, self.n = m, n
        clean: dict[tuple[int, int], RatFunc] = {}
        for (a, b), c in (coeffs or {}).items():
            c = rf(c)
            if c.is_zero():
                continue
            _check_weight(m, a)
            _check_weight(n, b)
            clean[(a, b)] = c
        self.coeffs = clean

    @classmethod
    def basis(cls, m: int, n: int, a: int, b: int) -> "TensorElement":
        return cls(m, n, {(a, b): 1})

    def coeff(self, a: int, b: int) -> RatFunc:
        return self.coeffs.get((a, b), RF_ZERO)

    def items(self) -> list[tuple[tuple[int, int], RatFunc]]:
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if (self.m, self.n) != (other.m, other.n):
            raise PreconditionError("cannot add elements of different tensor products")
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, RF_ZERO) + c
        return TensorElement(self.m, self.n, out)

    def scale(self, factor) -> "TensorElement":
        factor = rf(factor)
        return TensorElement(self.m, self.n, {k: c * factor for k, c in self.coeffs.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + other.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*xi[{a}]xi[{b}]" for (a, b), c in self.items()) or "0"
        return f"TensorElement(m={self.m}, n={self.n}: {body})"


def sl2_act(gen: str, v: RepElement) -> RepElement:
    """Action of the standard sl2 triple: H.xi_a = a xi_a, E.xi_a = ((m-a)/2) xi_{a+2},
    F.xi_a = ((m+a)/2) xi_{a-2}.  Boundary terms vanish through their coefficients."""
    if gen not in GENERATORS:
        raise PreconditionError(f"unknown generator {gen!r}; expected one of {GENERATORS}")
    m = v.m
    out: dict[int, RatFunc] = {}
    for a, c in v.coeffs.items():
        if gen == "H":
            target, factor = a, Fraction(a)
        elif gen == "E":
            target, factor = a + 2, Fraction(m - a, 2)
        else:
            target, factor = a - 2, Fraction(m + a, 2)
        if factor == 0:
            continue
        out[target] = out.get(target, RF_ZERO) + c * factor
    return RepElement(m, out)


def sl2_act_tensor(gen: str, t: TensorElement) -> TensorElement:
    """Leibniz action on a tensor product: act in each slot and add."""
    if gen not in GENERATORS:
        raise PreconditionError(f"unknown generator {gen!r}; expected one of {GENERATORS}")
    out: dict[tuple[int, int], RatFunc] = {}

    def put(key: tuple[int, int], value: RatFunc) -> None:
        out[key] = out.get(key, RF_ZERO) + value

    for (a, b), c in t.coeffs.items():
        if gen == "H":
            put((a, b), c * Fraction(a + b))
            continue
        if gen == "E":
            f1, t1 = Fraction(t.m - a, 2), a + 2
            f2, t2 = Fraction(t.n - b, 2), b + 2
        else:
            f1, t1 = Fraction(t.m + a, 2), a - 2
            f2, t2 = Fraction(t.n + b, 2), b - 2
        if f1:
            put((t1, b), c * f1)
        if f2:
            put((a, t2), c * f2)
    return TensorElement(t.m, t.n, out)


def rc_coeff(m: int, n: int, k: int, a: int, b: int) -> Fraction:
    """Scalar c with RC_k(xi_a^m (x) xi_b^n) = c * xi_{a+b}^{m+n-2k}.

    With p = (m-a)/2 and q = (n-b)/2 the monomial degrees, differentiating
    z^p and w^q inside the bracket gives
        c = sum_j (-1)^j C(k,j) p_(j) q_(k-j) / ((-m)_j (-n)_(k-j))
    where x_(j) is the falling and (x)_j the rising factorial.
    """
    if not 0 <= k <= min(m, n):
        raise PreconditionError(f"bracket order k={k} outside 0..min({m},{n})")
    _check_weight(m, a)
    _check_weight(n, b)
    p, q = (m - a) // 2, (n - b) // 2
    total = Fraction(0)
    for j in range(k + 1):
        num = (-1) ** j * binomial(k, j) * falling_int(p, j) * falling_int(q, k - j)
        if num == 0:
            continue
        den = rising_int(-m, j) * rising_int(-n, k - j)
        total += Fraction(num, den)
    return total


def rc_bracket(m: int, n: int, k: int, t: TensorElement) -> RepElement:
    """Project a tensor element onto the summand of highest weight m+n-2k."""
    if (t.m, t.n) != (m, n):
        raise PreconditionError("tensor element does not live in the stated product")
    if not 0 <= k <= min(m, n):
        raise PreconditionError(f"bracket order k={k} outside 0..min({m},{n})")
    target = m + n - 2 * k
    out: dict[int, RatFunc] = {}
    for (a, b), c in t.coeffs.items():
        factor = rc_coeff(m, n, k, a, b)
        if factor == 0:
            continue
        w = a + b
        out[w] = out.get(w, RF_ZERO) + c * factor
    return RepElement(target, out)


def rc_adjoint_on_constant(m: int, n: int, k: int) -> TensorElement:
    """The adjoint bracket applied to the constant 1, i.e. the expansion of
    (z - w)^k in the weight-pair basis."""
    if not 0 <= k <= min(m, n):
        raise PreconditionError(f"bracket order k={k} outside 0..min({m},{n})")
    coeffs = {}
    for j in range(k + 1):
        # z^j w^(k-j) carries weights (m - 2j, n - 2(k-j)).
        coeffs[(m - 2 * j, n - 2 * (k - j))] = Fraction((-1) ** (k - j) * binomial(k, j))
    return TensorElement(m, n, coeffs)


def norm_sq(m: int, k: int) -> Fraction:
    """Invariant square norm of the monomial z^k: the reciprocal binomial C(m,k)^-1."""
    if not 0 <= k <= m:
        raise PreconditionError(f"monomial degree {k} outside 0..{m}")
    return Fraction(1, binomial(m, k))


def norm_sq_direct(m: int, n: int, k: int) -> Fraction:
    """Square norm of (z - w)^k by direct expansion in the monomial tensor basis.

    This is the arbiter for the two circulating closed forms below: it depends
    only on the monomial norms, not on any bracket identity.
    """
    if not 0 <= k <= min(m, n):
        raise PreconditionError(f"bracket order k={k} outside 0..min({m},{n})")
    total = Fraction(0)
    for j in range(k + 1):
        total += Fraction(binomial(k, j) ** 2, binomial(m, j) * binomial(n, k - j))
    return total


def norm_sq_closed(m: int, n: int, k: int) -> Fraction:
    """Closed form k! (m+n-k+1)_(k) / (m_(k) n_(k)) with falling factorials,
    the value the Gauss summation of the bracket composition produces."""
    if not 0 <= k <= min(m, n):
        raise PreconditionError(f"bracket order k={k} outside 0..min({m},{n})")
    return Fraction(
        math.factorial(k) * falling_int(m + n - k + 1, k),
        falling_int(m, k) * falling_int(n, k),
    )


def norm_sq_closed_alt(m: int, n: int, k: int) -> Fraction:
    """Alternative printed variant k! (m+n-2k+2)_(k) / (m_(k) n_(k)).

    Agrees with norm_sq_closed for k <= 1 and diverges from the direct
    expansion for k >= 2; kept so the verification report can name which
    variant the arbiter confirms.
    """
    if not 0 <= k <= min(m, n):
        raise PreconditionError(f"bracket order k={k} outside 0..min({m},{n})")
    return Fraction(
        math.factorial(k) * falling_int(m + n - 2 * k + 2, k),
        falling_int(m, k) * falling_int(n, k),
    )


def tensor_decompose(m: int, n: int, t: TensorElement) -> dict[int, RepElement]:
    """All bracket projections of a tensor element, keyed by bracket order.

    The target dimensions add up to (m+1)(n+1), which pins the component count.
    """
    out = {k: rc_bracket(m, n, k, t) for k in range(min(m, n) + 1)}
    total = sum(m + n - 2 * k + 1 for k in out)
    if total != (m + 1) * (n + 1):
        raise PreconditionError("tensor decomposition dimension count failed")
    return out
