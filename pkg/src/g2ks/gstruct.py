"""K-types of the degenerate principal series and the Lie algebra action.

A K-type is a pair (n, m) with n = m mod 2.  Its multiplicity space inside
the induced picture has dimension a(n, m) + 1 and is spanned by the vectors
zeta_a = xi_{3a} (x) xi_a over the lattice {a : 3|a| <= n, |a| <= m,
a = n mod 2}.  On top of that sit two bases:

* the parity (symmetrized) basis, which splits the space between the two
  principal series, and
* the interleaved basis v(s,0), v'(s,0), v(s,1), ... built from the
  Gamma-quotient coefficients d(s, a, k), in which the intertwiner matrices
  become upper triangular.

The Lie algebra moves a K-type to its eight neighbours (n+3-2l, m+1-2l');
the matrices M+/M- below give that action weight by weight, and rs_oracle
recomputes the same numbers from first principles through the Rankin-Cohen
brackets, so the two paths check each other.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import PreconditionError
from .linalg import RFMatrix, linsolve
from .poly import binomial
from .ratfunc import RF_ZERO, RatFunc, S, gamma_ratio, reflected, rf
from .su2 import rc_coeff


def multiplicity_a(n: int, m: int) -> int:
    """Multiplicity count a(n, m); the K-type occurs iff this is >= 0.

    Closed form with a case split on n mod 3; cross-checked against the
    direct lattice count by multiplicity_a_direct.
    """
    if n < 0 or m < 0:
        raise PreconditionError(f"K-type indices must be >= 0, got ({n}, {m})")
    if (n - m) % 2:
        raise PreconditionError(f"K-type ({n}, {m}) violates n = m (mod 2)")
    if n % 3 == 1:
        return min(n // 3 - 1, m)
    return min(n // 3, m)


def multiplicity_a_direct(n: int, m: int) -> int:
    """Lattice count #{a : 3|a| <= n, |a| <= m, a = n (mod 2)} - 1."""
    if (n - m) % 2:
        raise PreconditionError(f"K-type ({n}, {m}) violates n = m (mod 2)")
    count = sum(1 for a in range(-m, m + 1) if 3 * abs(a) <= n and (a - n) % 2 == 0)
    return count - 1


def shift_r(n: int, m: int) -> int:
    """The weight shift r(n, m) = (n+m)/2 - 2 a(n, m)."""
    return (n + m) // 2 - 2 * multiplicity_a(n, m)


@dataclass(frozen=True)
class KType:
    """A K-type (n, m) with n = m (mod 2)."""

    n: int
    m: int

    def __post_init__(self):
        multiplicity_a(self.n, self.m)  # validates sign and parity

    @property
    def a(self) -> int:
        return multiplicity_a(self.n, self.m)

    @property
    def r(self) -> int:
        return shift_r(self.n, self.m)

    @property
    def mult(self) -> int:
        return self.a + 1

    def exists(self) -> bool:
        """Whether the K-type actually occurs (nonzero multiplicity)."""
        return self.a >= 0

    def weights(self) -> tuple[int, ...]:
        """Valid zeta weights, ascending."""
        amax = self.a
        if amax < 0:
            return ()
        return tuple(range(-amax, amax + 1, 2))

    def __iter__(self) -> Iterator[int]:
        return iter((self.n, self.m))

    def __str__(self) -> str:
        return f"({self.n},{self.m})"


def as_ktype(value) -> KType:
    if isinstance(value, KType):
        return value
    n, m = value
    return KType(int(n), int(m))


class ZetaVector:
    """Finitely supported combination of zeta weight vectors of one K-type."""

    __slots__ = ("ktype", "coeffs")

    def __init__(self, ktype: KType, coeffs: Mapping[int, object] | None = None):
        ktype = as_ktype(ktype)
        if not ktype.exists():
            raise PreconditionError(f"K-type {ktype} has an empty weight lattice")
        valid = set(ktype.weights())
        clean: dict[int, RatFunc] = {}
        for a, c in (coeffs or {}).items():
            c = rf(c)
            if c.is_zero():
                continue
            if a not in valid:
                raise PreconditionError(f"weight {a} is not a zeta weight of {ktype}")
            clean[a] = c
        self.ktype = ktype
        self.coeffs = clean

    @classmethod
    def basis(cls, ktype, a: int) -> "ZetaVector":
        return cls(as_ktype(ktype), {a: 1})

    def coeff(self, a: int) -> RatFunc:
        return self.coeffs.get(a, RF_ZERO)

    def items(self) -> list[tuple[int, RatFunc]]:
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def coordinates(self) -> tuple[RatFunc, ...]:
        """Coefficients against the ascending weight list of the K-type."""
        return tuple(self.coeff(a) for a in self.ktype.weights())

    def __add__(self, other: "ZetaVector") -> "ZetaVector":
        if self.ktype != other.ktype:
            raise PreconditionError("cannot add vectors on different K-types")
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, RF_ZERO) + c
        return ZetaVector(self.ktype, out)

    def scale(self, factor) -> "ZetaVector":
        factor = rf(factor)
        return ZetaVector(self.ktype, {a: c * factor for a, c in self.coeffs.items()})

    def __sub__(self, other: "ZetaVector") -> "ZetaVector":
        return self + other.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZetaVector):
            return NotImplemented
        return self.ktype == other.ktype and self.coeffs == other.coeffs

    def map_coeffs(self, fn) -> "ZetaVector":
        return ZetaVector(self.ktype, {a: fn(c) for a, c in self.coeffs.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*zeta[{a}]" for a, c in self.items()) or "0"
        return f"ZetaVector{self.ktype}: {body}"


def w_action(v: ZetaVector) -> ZetaVector:
    """The residual Weyl element: zeta_a -> (-1)^((m+n)/2 + a) zeta_{-a}."""
    n, m = v.ktype.n, v.ktype.m
    base = (n + m) // 2
    out = {}
    for a, c in v.coeffs.items():
        sign = -1 if (base + a) % 2 else 1
        out[-a] = c * sign
    return ZetaVector(v.ktype, out)


def slot_parity(n: int, m: int, j: int) -> int:
    """Which of the two principal series slot j of (n, m) belongs to."""
    return ((n + m) // 2 + j) % 2


def has_parity_slot(kt: KType, eps: int) -> bool:
    """Whether the K-type occurs in the series of sign character eps."""
    if not kt.exists():
        return False
    return kt.a >= 1 or slot_parity(kt.n, kt.m, 0) == eps


def parity_slots(kt: KType, eps: int) -> tuple[int, ...]:
    return tuple(j for j in range(kt.a + 1) if slot_parity(kt.n, kt.m, j) == eps)


def parity_basis(n: int, m: int, eps: int) -> tuple[ZetaVector, ...]:
    """Symmetrized weight basis of the parity-eps part of the multiplicity space.

    The combinations zeta_a + (-1)^((m+n)/2 + a + eps) zeta_{-a} over
    0 <= a <= a(n,m), a = a(n,m) (mod 2); exact-zero combinations are dropped.
    """
    if eps not in (0, 1):
        raise PreconditionError(f"eps must be 0 or 1, got {eps}")
    kt = KType(n, m)
    if not kt.exists():
        raise PreconditionError(f"K-type {kt} has an empty weight lattice")
    amax = kt.a
    base = (n + m) // 2
    out = []
    for a in range(amax % 2, amax + 1, 2):
        sign = -1 if (base + a + eps) % 2 else 1
        if a == 0:
            if sign == -1:
                continue
            out.append(ZetaVector(kt, {0: 2}))
        else:
            out.append(ZetaVector(kt, {a: 1, -a: sign}))
    return tuple(out)


def d_coeff(n: int, m: int, a: int, k: int, s_offset: int = 0) -> RatFunc:
    """Coefficient of zeta_a in the basis vector v(s, k) of the K-type (n, m).

    Product of a sign, a binomial and a Gamma quotient on the shared base
    (1 + r(n,m) + s)/2; vanishes exactly for |a| > a(n,m) - 2k.  s_offset
    shifts the argument (the primed vectors use s+1).
    """
    amax = multiplicity_a(n, m)
    if amax < 0:
        raise PreconditionError(f"K-type ({n},{m}) has an empty weight lattice")
    if (a - amax) % 2:
        raise PreconditionError(f"weight {a} has wrong parity for ({n},{m})")
    if not 0 <= 2 * k <= amax:
        raise PreconditionError(f"index k={k} outside 0 <= 2k <= {amax}")
    half = (amax - a) // 2 - k
    b = binomial(amax - 2 * k, half)
    if b == 0:
        return RF_ZERO
    sign = -1 if half % 2 else 1
    base = (S + (1 + shift_r(n, m) + s_offset)) * Fraction(1, 2)
    ratio = gamma_ratio(
        base,
        [2 * k, amax],
        [k + (amax - a) // 2, k + (amax + a) // 2],
    )
    return ratio * (sign * b)


@lru_cache(maxsize=None)
def basis_v(n: int, m: int, k: int) -> ZetaVector:
    """Unprimed basis vector v(s, k), in the series of parity (n+m)/2 mod 2."""
    kt = KType(n, m)
    coeffs = {a: d_coeff(n, m, a, k) for a in kt.weights()}
    return ZetaVector(kt, coeffs)


@lru_cache(maxsize=None)
def basis_vp(n: int, m: int, k: int) -> ZetaVector:
    """Primed basis vector v'(s, k), in the opposite series to v(s, k)."""
    kt = KType(n, m)
    amax = kt.a
    if not 0 <= 2 * k <= amax - 1:
        raise PreconditionError(f"index k={k} outside 0 <= 2k <= {amax} - 1")
    coeffs = {
        a: d_coeff(n, m, a, k, s_offset=1) * Fraction(a, amax - 2 * k)
        for a in kt.weights()
    }
    return ZetaVector(kt, coeffs)


@lru_cache(maxsize=None)
def ordered_basis(n: int, m: int) -> tuple[ZetaVector, ...]:
    """The interleaved basis v(s,0), v'(s,0), v(s,1), v'(s,1), ...

    Slot j holds v(s, j//2) for even j and v'(s, (j-1)//2) for odd j; its
    parity is (n+m)/2 + j mod 2.  Length a(n,m) + 1.
    """
    kt = KType(n, m)
    if not kt.exists():
        raise PreconditionError(f"K-type {kt} has an empty weight lattice")
    out = []
    for j in range(kt.a + 1):
        k = j // 2
        out.append(basis_vp(n, m, k) if j % 2 else basis_v(n, m, k))
    return tuple(out)


@lru_cache(maxsize=None)
def zeta_matrix(n: int, m: int) -> RFMatrix:
    """Columns are the ordered-basis vectors in ascending zeta coordinates."""
    return RFMatrix.from_columns([v.coordinates() for v in ordered_basis(n, m)])


def coords_in_basis(v: ZetaVector) -> tuple[RatFunc, ...]:
    """Coordinates of a vector against the ordered basis of its K-type."""
    return linsolve(zeta_matrix(v.ktype.n, v.ktype.m), v.coordinates())


# -- the weight-by-weight Lie algebra action -----------------------------------

#: Shifts (l, l') -> target (n + 3 - 2l, m + 1 - 2l').
SHIFTS = tuple((l, lp) for l in range(4) for lp in range(2))


def _m_guard(l: int, lp: int, n: int, m: int) -> None:
    if not (0 <= l <= 3 and 0 <= lp <= 1):
        raise PreconditionError(f"shift ({l},{lp}) outside 0..3 x 0..1")
    if (l >= 1 and n < 1) or (l >= 2 and n < 2) or (l == 3 and n < 3) or (lp == 1 and m < 1):
        raise PreconditionError(
            f"entry ({l},{lp}) of the action matrices is undefined for (n,m)=({n},{m}): "
            "its structural denominator vanishes (the target K-type does not occur)"
        )


def _m_plus(l: int, lp: int, n: int, m: int, a: int) -> RatFunc:
    """The M+ entry at (l, l'), transcribed term by term."""
    s2 = 2 * S
    s6 = 6 * S
    if (l, lp) == (0, 0):
        return (s2 - 2 * a + m + n) * Fraction(1, 2)
    if (l, lp) == (0, 1):
        return (s2 - 2 * a - m - 2 + n) * Fraction(a - m, 4 * m)
    if (l, lp) == (1, 0):
        return (s6 - 6 * a - 6 + 3 * m + n) * Fraction(3 * a - n, 12 * n)
    if (l, lp) == (1, 1):
        return (s6 - 6 * a - 12 + n - 3 * m) * Fraction(
            (a - m) * (3 * a - n), 24 * m * n
        )
    if (l, lp) == (2, 0):
        return (6 * a - s6 - 3 * m + n + 8) * Fraction(
            (3 * a - n) * (n - 3 * a - 2), 24 * (n - 1) * n
        )
    if (l, lp) == (2, 1):
        return (s6 - 6 * a - 14 - 3 * m - n) * Fraction(
            (a - m) * (n - 3 * a) * (n - 3 * a - 2), 48 * m * (n - 1) * n
        )
    if (l, lp) == (3, 0):
        return (2 * a - s2 - m + n + 2) * Fraction(
            (n - 3 * a) * (n - 3 * a - 2) * (n - 3 * a - 4),
            16 * (n - 2) * (n - 1) * n,
        )
    # (3, 1)
    return (s2 - 2 * a - 4 - m - n) * Fraction(
        (a - m) * (3 * a - n) * (n - 3 * a - 2) * (n - 3 * a - 4),
        32 * m * (n - 2) * (n - 1) * n,
    )


def m_entry(sign: int, l: int, lp: int, n: int, m: int, a: int) -> RatFunc:
    """Entry of M+ (sign=+1) or M- (sign=-1): the scalar carrying zeta_a of
    (n, m) to zeta_{a+sign} of (n+3-2l, m+1-2l').

    The minus family satisfies M-_{l,l'}(a) = (-1)^(l+l'+1) M+_{l,l'}(-a),
    which matches all eight entries of both displayed matrices.
    """
    _m_guard(l, lp, n, m)
    if sign == 1:
        return _m_plus(l, lp, n, m, a)
    if sign == -1:
        flip = -1 if (l + lp) % 2 == 0 else 1
        return _m_plus(l, lp, n, m, -a) * flip
    raise PreconditionError("sign must be +1 or -1")


def m_matrices(n: int, m: int, a: int) -> tuple[RFMatrix, RFMatrix]:
    """The full 4x2 matrices (M+, M-) at weight a of (n, m).

    Every entry must be structurally defined, i.e. all eight neighbouring
    targets must make sense; for per-target work use m_entry directly.
    """
    kt = KType(n, m)
    if a not in kt.weights():
        raise PreconditionError(f"weight {a} is not a zeta weight of {kt}")
    plus = RFMatrix([[m_entry(1, l, lp, n, m, a) for lp in range(2)] for l in range(4)])
    minus = RFMatrix([[m_entry(-1, l, lp, n, m, a) for lp in range(2)] for l in range(4)])
    return plus, minus


def shift_target(kt: KType, l: int, lp: int) -> KType:
    """Target K-type of the (l, l') component; raises if it does not occur."""
    kt = as_ktype(kt)
    n2, m2 = kt.n + 3 - 2 * l, kt.m + 1 - 2 * lp
    if n2 < 0 or m2 < 0:
        raise PreconditionError(f"target ({n2},{m2}) of shift ({l},{lp}) does not exist")
    tgt = KType(n2, m2)
    if not tgt.exists():
        raise PreconditionError(f"target {tgt} of shift ({l},{lp}) has zero multiplicity")
    return tgt


def valid_shifts(kt: KType) -> tuple[tuple[int, int, KType], ...]:
    """All (l, l', target) with an existing target K-type."""
    out = []
    for l, lp in SHIFTS:
        try:
            out.append((l, lp, shift_target(kt, l, lp)))
        except PreconditionError:
            continue
    return tuple(out)


def rs_apply(l: int, lp: int, source, v: ZetaVector) -> ZetaVector:
    """Image of a multiplicity-space vector under the (l, l') component of the
    Lie algebra action, computed through the M+/M- entries."""
    source = as_ktype(source)
    if v.ktype != source:
        raise PreconditionError("vector does not sit on the stated source K-type")
    tgt = shift_target(source, l, lp)
    n, m = source.n, source.m
    out: dict[int, RatFunc] = {}
    for a, c in v.coeffs.items():
        up = c * m_entry(1, l, lp, n, m, a)
        if not up.is_zero():
            out[a + 1] = out.get(a + 1, RF_ZERO) + up
        down = c * m_entry(-1, l, lp, n, m, a)
        if not down.is_zero():
            out[a - 1] = out.get(a - 1, RF_ZERO) + down
    return ZetaVector(tgt, out)


#: The six summands of the raw action on zeta_a: (weight in the 4-dim slot,
#: weight in the 2-dim slot, scalar, target weight pair), before projection.
def _raw_action_terms(n: int, m: int, a: int):
    yield (3, 1), rf(a) + S, (3 * a, a)
    yield (1, 1), rf(Fraction(n - 3 * a, 2)), (3 * a + 2, a)
    yield (3, -1), rf(Fraction(m - a, 2)), (3 * a, a + 2)
    yield (-3, -1), rf(a) - S, (3 * a, a)
    yield (-1, -1), rf(Fraction(-(n + 3 * a), 2)), (3 * a - 2, a)
    yield (-3, 1), rf(Fraction(-(m + a), 2)), (3 * a, a - 2)


def rs_oracle(l: int, lp: int, source, a: int) -> ZetaVector:
    """First-principles image of zeta_a: expand the raw action in the tensor
    product and project each slot with a Rankin-Cohen bracket.  Must agree
    with rs_apply; this is the path that validates the M+/M- entries."""
    source = as_ktype(source)
    tgt = shift_target(source, l, lp)
    n, m = source.n, source.m
    if a not in source.weights():
        raise PreconditionError(f"weight {a} is not a zeta weight of {source}")
    out: dict[int, RatFunc] = {}
    for (w3, w1), scalar, (wn, wm) in _raw_action_terms(n, m, a):
        if scalar.is_zero():
            continue
        c_big = rc_coeff(3, n, l, w3, wn)
        if c_big == 0:
            continue
        c_small = rc_coeff(1, m, lp, w1, wm)
        if c_small == 0:
            continue
        target_weight = w1 + wm
        assert w3 + wn == 3 * target_weight
        total = scalar * (c_big * c_small)
        out[target_weight] = out.get(target_weight, RF_ZERO) + total
    return ZetaVector(tgt, out)


# -- transition matrices --------------------------------------------------------

_TRANSITION_CACHE: dict[tuple[int, int, int, int], RFMatrix] = {}
_TRANSITION_LOCK = threading.Lock()


def transition_matrix(source, target, param: str = "s") -> RFMatrix:
    """Matrix of the (l, l') component of the Lie algebra action with respect
    to the interleaved bases of source and target, both at the same parameter.

    param selects the formal parameter: "s" (the default) or "3-s", which is
    the entrywise reflection of the cached base matrix.  Shape is
    (a(target)+1) x (a(source)+1); the (l, l') pair is inferred from the shift.
    """
    source, target = as_ktype(source), as_ktype(target)
    if param not in ("s", "3-s"):
        raise PreconditionError(f"param must be 's' or '3-s', got {param!r}")
    dn, dm = source.n + 3 - target.n, source.m + 1 - target.m
    if dn % 2 or dm % 2 or not (0 <= dn // 2 <= 3 and 0 <= dm // 2 <= 1):
        raise PreconditionError(
            f"{target} is not a Lie algebra neighbour of {source}"
        )
    l, lp = dn // 2, dm // 2
    key = (source.n, source.m, target.n, target.m)
    base = _TRANSITION_CACHE.get(key)
    if base is None:
        columns = [
            coords_in_basis(rs_apply(l, lp, source, vec))
            for vec in ordered_basis(source.n, source.m)
        ]
        base = RFMatrix.from_columns(columns) if columns else RFMatrix([])
        with _TRANSITION_LOCK:
            # idempotent insert: recomputation is deterministic
            _TRANSITION_CACHE.setdefault(key, base)
    if param == "3-s":
        return base.map_entries(reflected)
    return base


def ktypes_up_to(bound: int) -> Iterator[KType]:
    """All occurring K-types with n + m <= bound, ordered by (n+m, m)."""
    for total in range(0, bound + 1, 2):
        for m in range(total + 1):
            n = total - m
            if (n - m) % 2:
                continue
            kt = KType(n, m)
            if kt.exists():
                yield kt
