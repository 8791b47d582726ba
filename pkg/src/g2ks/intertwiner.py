"""The standard intertwining operators of the two degenerate principal series.

On each K-isotypic component the operator acts by a matrix with respect to
the interleaved bases at parameters s and 3-s.  In those bases the matrix is
upper triangular; its diagonal entries (the eigenvalues mu_j) have closed
Pochhammer-quotient forms anchored at the multiplicity-one K-types, and obey
three recursions along the K-type lattice, giving two independent derivation
paths that are cross-checked everywhere.

Normalization pins the scalar on (0,0) to 1 in the even series and on (2,0)
to 1 in the odd series.  Under it every eigenvalue has the shape F(3-s)/F(s),
so the functional equation mu(s) mu(3-s) = 1 holds identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import (
    InvariantError,
    PreconditionError,
    SingularMatrixError,
    UnderdeterminedError,
)
from .gstruct import (
    KType,
    has_parity_slot,
    ktypes_up_to,
    multiplicity_a,
    parity_slots,
    shift_r,
    slot_parity,
    transition_matrix,
)
from .linalg import RFMatrix, clear_local_poles, linsolve, smith_local_valuations
from .ratfunc import RF_ONE, RatFunc, S, pochhammer_rf, reflected, rf

S_TILDE = reflected(S)  # the reflected parameter 3 - s

#: Computational-proxy caveat attached to matrix-level vanishing data.
SMITH_PROXY_NOTE = (
    "matrix-level orders are the local Smith valuations of the denominator-"
    "cleared block; for non-diagonal blocks they are a computational proxy "
    "for the analytic vanishing levels, which are defined through analytic "
    "families of vectors"
)


@dataclass(frozen=True)
class NormalizationChoice:
    """Which series is normalized, and through which multiplicity-one anchor."""

    eps: int

    def __post_init__(self):
        if self.eps not in (0, 1):
            raise PreconditionError(f"eps must be 0 or 1, got {self.eps}")

    @property
    def anchor(self) -> tuple[int, int]:
        return (0, 0) if self.eps == 0 else (2, 0)


NORM_EVEN = NormalizationChoice(0)
NORM_ODD = NormalizationChoice(1)


def normalization(eps: int) -> NormalizationChoice:
    return NORM_EVEN if eps == 0 else NormalizationChoice(eps)


@dataclass(frozen=True)
class EigenvalueSlot:
    """One diagonal entry of the intertwiner matrix at a K-type."""

    ktype: KType
    j: int
    eps: int
    value: RatFunc


# -- multiplicity-one closed forms ------------------------------------------------
#
# Each family is a list of affine factors (alpha, beta, length): the value is
# the product of pochhammer(alpha*x + beta, length) at x = 3-s divided by the
# same product at x = s, times the anchor scalar 1.  Negative lengths use the
# reciprocal convention of pochhammer_rf (only the (4,4r) family at r = 0
# needs it, and that value coincides with the (4r,0) family at r = 1).

_H = Fraction(1, 2)


def _family_factors(name: str, r: int) -> list[tuple[Fraction, Fraction, int]]:
    if r < 0:
        raise PreconditionError(f"family parameter r must be >= 0, got {r}")
    if name == "4r,0":
        return [(_H, Fraction(0), r), (Fraction(3, 2), Fraction(-3, 2), r)]
    if name == "4r+2,0":
        return [(_H, _H, r), (Fraction(3, 2), Fraction(-1), r)]
    if name == "0,4r":
        return [
            (_H, Fraction(0), r),
            (_H, Fraction(0), r),
            (_H, Fraction(-1, 6), r),
            (_H, Fraction(1, 6), r),
        ]
    if name == "0,4r+2":
        return [
            (_H, _H, r),
            (_H, Fraction(-1, 2), r + 1),
            (_H, Fraction(1, 3), r),
            (_H, Fraction(-1, 3), r + 1),
        ]
    if name == "2,4r+2":
        return [
            (_H, Fraction(0), r + 1),
            (_H, Fraction(0), r),
            (_H, Fraction(1, 6), r),
            (_H, Fraction(-1, 6), r + 1),
        ]
    if name == "2,4r":
        return [
            (_H, _H, r),
            (_H, Fraction(-1, 2), r),
            (_H, Fraction(1, 3), r),
            (_H, Fraction(-1, 3), r),
        ]
    if name == "4,4r":
        return [
            (_H, Fraction(0), r - 1),
            (_H, Fraction(0), r + 1),
            (_H, Fraction(-1, 6), r),
            (_H, Fraction(1, 6), r),
        ]
    if name == "4,4r+2":
        return [
            (_H, _H, r + 1),
            (_H, Fraction(-1, 2), r),
            (_H, Fraction(1, 3), r),
            (_H, Fraction(-1, 3), r + 1),
        ]
    raise PreconditionError(f"unknown multiplicity-one family {name!r}")


#: family -> parity of the K-types it runs over.
FAMILY_EPS = {
    "4r,0": 0,
    "4r+2,0": 1,
    "0,4r": 0,
    "0,4r+2": 1,
    "2,4r+2": 0,
    "2,4r": 1,
    "4,4r": 0,
    "4,4r+2": 1,
}


def _ratio(factors: Iterable[tuple[Fraction, Fraction, int]]) -> RatFunc:
    """Product of pochhammer factors at 3-s over the same factors at s."""
    num = RF_ONE
    den = RF_ONE
    for alpha, beta, length in factors:
        num = num * pochhammer_rf(S_TILDE * alpha + beta, length)
        den = den * pochhammer_rf(S * alpha + beta, length)
    return num / den


def mult_one_eigenvalue(family: str, r: int, norm: NormalizationChoice | None = None) -> RatFunc:
    """Scalar of the intertwiner on one multiplicity-one K-type family member,
    with the family's anchor pinned to 1."""
    eps = FAMILY_EPS.get(family)
    if eps is None:
        raise PreconditionError(f"unknown multiplicity-one family {family!r}")
    if norm is not None and norm.eps != eps:
        raise PreconditionError(
            f"family {family!r} lives in the eps={eps} series, not eps={norm.eps}"
        )
    return _ratio(_family_factors(family, r))


def mult_one_family(n: int, m: int) -> tuple[str, int]:
    """Resolve a multiplicity-one K-type to its (family, r)."""
    kt = KType(n, m)
    if kt.a != 0:
        raise PreconditionError(f"{kt} is not a multiplicity-one K-type")
    if m == 0:
        return ("4r,0", n // 4) if n % 4 == 0 else ("4r+2,0", (n - 2) // 4)
    if n == 0:
        return ("0,4r", m // 4) if m % 4 == 0 else ("0,4r+2", (m - 2) // 4)
    if n == 2:
        return ("2,4r", m // 4) if m % 4 == 0 else ("2,4r+2", (m - 2) // 4)
    if n == 4:
        return ("4,4r", m // 4) if m % 4 == 0 else ("4,4r+2", (m - 2) // 4)
    raise InvariantError(f"unclassified multiplicity-one K-type {kt}")


@lru_cache(maxsize=None)
def a_one(n: int, m: int) -> RatFunc:
    """Normalized intertwiner scalar on any multiplicity-one K-type."""
    family, r = mult_one_family(n, m)
    return mult_one_eigenvalue(family, r)


# -- eigenvalues at arbitrary K-types: closed forms -------------------------------


def _mu_family_factors(
    family: int, m: int, r: int, j: int
) -> tuple[list[tuple[Fraction, Fraction, int]], tuple[int, int]]:
    """Pochhammer factors (in the running parameter) and anchor K-type for
    slot j of family 1: (3m+2r, m), 2: (3m, m+2r), 3: (3m+2, m+2r),
    4: (3m+4, m+2r)."""
    half = Fraction(1, 2)
    even, jj = (j % 2 == 0), j // 2
    if family == 1:
        if even:
            factors = [
                (Fraction(3, 2), Fraction(r + 2 * jj - 3, 2), 2 * jj),
                (half, Fraction(r, 2) + jj, jj),
                (-half, Fraction(r, 2) + jj + 1, jj),
                (Fraction(1), Fraction(r + 4 * jj), m - 2 * jj),
            ]
            anchor = (2 * (r + 2 * jj), 0)
        else:
            factors = [
                (Fraction(3, 2), Fraction(r + 2 * jj - 2, 2), 2 * jj + 1),
                (half, Fraction(r + 1, 2) + jj, jj),
                (-half, Fraction(r + 3, 2) + jj, jj),
                (Fraction(1), Fraction(r + 4 * jj + 1), m - 2 * jj - 1),
            ]
            anchor = (2 * (r + 2 * jj + 1), 0)
        return factors, anchor
    if family == 2:
        if even:
            factors = [
                (half, Fraction(-r - 2 * jj - 1, 2), 2 * jj),
                (half, Fraction(r, 2) + jj, jj),
                (-half, Fraction(r, 2) + jj + 1, jj),
                (Fraction(1), Fraction(r + 4 * jj), m - 2 * jj),
            ]
            anchor = (0, 2 * (r + 2 * jj))
        else:
            factors = [
                (half, Fraction(-2 * jj - r - 2, 2), 2 * jj + 1),
                (half, Fraction(r + 1, 2) + jj, jj),
                (-half, Fraction(r + 3, 2) + jj, jj),
                (Fraction(1), Fraction(r + 4 * jj + 1), m - 2 * jj - 1),
            ]
            anchor = (0, 2 * (r + 2 * jj + 1))
        return factors, anchor
    if family == 3:
        if even:
            factors = [
                (half, Fraction(-r - 2 * jj, 2), 2 * jj),
                (half, Fraction(r + 1, 2) + jj, jj),
                (-half, Fraction(r + 3, 2) + jj, jj),
                (Fraction(1), Fraction(r + 4 * jj + 1), m - 2 * jj),
            ]
            anchor = (2, 2 * (r + 2 * jj))
        else:
            factors = [
                (half, Fraction(-r - 2 * jj - 1, 2), 2 * jj + 1),
                (half, Fraction(r, 2) + jj + 1, jj),
                (-half, Fraction(r, 2) + jj + 2, jj),
                (Fraction(1), Fraction(r + 4 * jj + 2), m - 2 * jj - 1),
            ]
            anchor = (2, 2 * (r + 2 * jj + 1))
        return factors, anchor
    if family == 4:
        if even:
            factors = [
                (half, Fraction(-r - 2 * jj + 1, 2), 2 * jj),
                (half, Fraction(r, 2) + jj + 1, jj),
                (-half, Fraction(r, 2) + jj + 2, jj),
                (Fraction(1), Fraction(r + 4 * jj + 2), m - 2 * jj),
            ]
            anchor = (4, 2 * (r + 2 * jj))
        else:
            factors = [
                (half, Fraction(-r - 2 * jj, 2), 2 * jj + 1),
                (half, Fraction(r + 2 * jj + 3, 2), jj),
                (-half, Fraction(r + 2 * jj + 5, 2), jj),
                (Fraction(1), Fraction(r + 4 * jj + 3), m - 2 * jj - 1),
            ]
            anchor = (4, 2 * (r + 2 * jj + 1))
        return factors, anchor
    raise InvariantError(f"no eigenvalue family {family}")


def _mu_by_family(family: int, m: int, r: int, j: int) -> RatFunc:
    factors, anchor = _mu_family_factors(family, m, r, j)
    return _ratio(factors) * a_one(*anchor)


def _route(n: int, m: int) -> tuple[int, int, int]:
    """Route a K-type to (family, family m-parameter, r)."""
    if n >= 3 * m:
        return 1, m, (n - 3 * m) // 2
    t = next(t for t in range(3) if (n - 2 * t) % 3 == 0)
    m_param = (n - 2 * t) // 3
    return 2 + t, m_param, (m - m_param) // 2


@lru_cache(maxsize=None)
def _mu_closed(n: int, m: int, j: int) -> RatFunc:
    amax = multiplicity_a(n, m)
    if amax < 0:
        raise PreconditionError(f"K-type ({n},{m}) does not occur")
    if not 0 <= j <= amax:
        raise PreconditionError(f"slot {j} outside 0..{amax} at ({n},{m})")
    family, m_param, r = _route(n, m)
    value = _mu_by_family(family, m_param, r, j)
    if family == 1 and n == 3 * m:
        # overlap with family 2 at r = 0: both expressions must agree
        other = _mu_by_family(2, m, 0, j)
        if other != value:
            raise InvariantError(f"family overlap mismatch at ({n},{m}) slot {j}")
        return other
    return value


def eigenvalue_mu(n: int, m: int, j: int, norm: NormalizationChoice | None = None) -> RatFunc:
    """Closed-form eigenvalue of slot j at (n, m) under the two-anchor
    normalization; rejects a normalization of the wrong parity."""
    value = _mu_closed(n, m, j)
    if norm is not None and slot_parity(n, m, j) != norm.eps:
        raise PreconditionError(
            f"slot {j} of ({n},{m}) has parity {slot_parity(n, m, j)}, "
            f"inconsistent with eps={norm.eps}"
        )
    return value


# -- eigenvalues by walking the recursions ----------------------------------------


def _parity_extra(n0: int, m0: int) -> RatFunc:
    """The extra factor of the slot-raising recursions when a(n0, m0) is odd."""
    num = (rf(m0 + n0 + 2) - 2 * S_TILDE) * (rf(m0 + n0 - 2) + 2 * S_TILDE)
    den = (rf(m0 + n0 + 2) - 2 * S) * (rf(m0 + n0 - 2) + 2 * S)
    return num / den


@lru_cache(maxsize=None)
def _mu_recursive(n: int, m: int, j: int) -> RatFunc:
    amax = multiplicity_a(n, m)
    if amax < 0:
        raise PreconditionError(f"K-type ({n},{m}) does not occur")
    if not 0 <= j <= amax:
        raise PreconditionError(f"slot {j} outside 0..{amax} at ({n},{m})")
    if amax == 0:
        return a_one(n, m)
    if j < amax:
        # strip one diagonal step: (n-3, m-1) has the same slot one level down
        n0, m0 = n - 3, m - 1
        c = 2 * (j // 2) + shift_r(n0, m0) + multiplicity_a(n0, m0)
        return ((c + S_TILDE) / (c + S)) * _mu_recursive(n0, m0, j)
    # top slot: descend to the predecessor whose top sits one lower
    if n >= 3 * m:
        n0, m0 = n - 1, m - 1
        factor = (rf(3 * m0 + n0 - 6) + 6 * S_TILDE) / (rf(3 * m0 + n0 - 6) + 6 * S)
    else:
        n0, m0 = n - 3, m + 1
        factor = (rf(n0 - m0 - 2) + 2 * S_TILDE) / (rf(n0 - m0 - 2) + 2 * S)
    a0 = multiplicity_a(n0, m0)
    if a0 != amax - 1:
        raise InvariantError(f"recursion step ({n},{m}) -> ({n0},{m0}) is inapplicable")
    if a0 % 2 == 1:
        factor = factor * _parity_extra(n0, m0)
    return factor * _mu_recursive(n0, m0, a0)


def eigenvalue_mu_recursive(
    n: int, m: int, j: int, norm: NormalizationChoice | None = None
) -> RatFunc:
    """The same eigenvalue obtained by walking the lattice recursions down to
    a multiplicity-one anchor; the independent cross-check of eigenvalue_mu."""
    value = _mu_recursive(n, m, j)
    if norm is not None and slot_parity(n, m, j) != norm.eps:
        raise PreconditionError(
            f"slot {j} of ({n},{m}) has parity {slot_parity(n, m, j)}, "
            f"inconsistent with eps={norm.eps}"
        )
    return value


def eigenvalue_slots(n: int, m: int) -> tuple[EigenvalueSlot, ...]:
    kt = KType(n, m)
    return tuple(
        EigenvalueSlot(kt, j, slot_parity(n, m, j), _mu_closed(n, m, j))
        for j in range(kt.a + 1)
    )


# -- full intertwiner matrices -----------------------------------------------------

#: Predecessor shifts used to stack intertwining relations, by priority:
#: the three lattice edges that strictly lower n+m, then the widening edge.
_BASE_PREDECESSORS = ((-3, -1), (-1, -1), (-3, 1))
_WIDENING_PREDECESSORS = ((1, -1),)


def _predecessors(kt: KType, widen: bool = False) -> list[KType]:
    out = []
    deltas = _BASE_PREDECESSORS + (_WIDENING_PREDECESSORS if widen else ())
    for dn, dm in deltas:
        n0, m0 = kt.n + dn, kt.m + dm
        if n0 < 0 or m0 < 0:
            continue
        pred = KType(n0, m0)
        if pred.exists():
            out.append(pred)
    return out


def _solve_from_relations(kt: KType, preds: Sequence[KType]) -> RFMatrix:
    """Solve A(kt) row by row from the stacked relations
    T_e(3-s) A(pred_e) = A(kt) T_e(s) over the given predecessors."""
    if not preds:
        raise UnderdeterminedError(f"no lattice predecessors available at {kt}")
    blocks_h = []
    blocks_k = []
    for pred in preds:
        t_s = transition_matrix(pred, kt, "s")
        t_ref = transition_matrix(pred, kt, "3-s")
        blocks_h.append(t_s)
        blocks_k.append(t_ref * full_a_matrix(pred.n, pred.m))
    stacked = RFMatrix.hstack(blocks_h).transpose()
    known = RFMatrix.hstack(blocks_k)
    rows = [linsolve(stacked, known.row(i)) for i in range(kt.a + 1)]
    return RFMatrix(rows)


@lru_cache(maxsize=None)
def full_a_matrix(n: int, m: int) -> RFMatrix:
    """The full (a+1)x(a+1) intertwiner matrix at (n, m) with respect to the
    interleaved bases at s and 3-s, normalized per parity sector.

    Multiplicity-one K-types are the closed-form seeds; everything else is
    propagated breadth-first through the intertwining relations with its
    lattice predecessors and then audited: strictly-lower entries must vanish,
    entries must respect the slot-parity checkerboard, and the diagonal must
    reproduce the closed-form eigenvalues.
    """
    kt = KType(n, m)
    if not kt.exists():
        raise PreconditionError(f"K-type {kt} does not occur")
    if kt.a == 0:
        return RFMatrix([[a_one(n, m)]])
    try:
        matrix = _solve_from_relations(kt, _predecessors(kt))
    except SingularMatrixError:
        try:
            matrix = _solve_from_relations(kt, _predecessors(kt, widen=True))
        except SingularMatrixError as exc:
            raise UnderdeterminedError(
                f"stacked intertwining relations at {kt} do not determine the "
                "matrix; predecessor supply exhausted"
            ) from exc
    size = kt.a + 1
    for i in range(size):
        for j in range(size):
            entry = matrix[i, j]
            if i > j and not entry.is_zero():
                raise InvariantError(f"A{kt} is not upper triangular at ({i},{j})")
            if (i - j) % 2 and not entry.is_zero():
                raise InvariantError(f"A{kt} mixes the two series at ({i},{j})")
        if matrix[i, i] != _mu_closed(n, m, i):
            raise InvariantError(f"A{kt} diagonal disagrees with closed form at {i}")
    return matrix


def check_intertwining(n: int, m: int) -> list[tuple[KType, bool]]:
    """Audit every predecessor relation of (n, m): T(3-s) A_pred == A T(s)."""
    kt = KType(n, m)
    a_here = full_a_matrix(n, m)
    out = []
    for pred in _predecessors(kt):
        lhs = transition_matrix(pred, kt, "3-s") * full_a_matrix(pred.n, pred.m)
        rhs = a_here * transition_matrix(pred, kt, "s")
        out.append((pred, lhs == rhs))
    return out


@dataclass(frozen=True)
class AMatrix:
    """The intertwiner matrix restricted to the slots of one series."""

    ktype: KType
    eps: int
    slots: tuple[int, ...]
    entries: RFMatrix

    def diagonal(self) -> tuple[RatFunc, ...]:
        return tuple(self.entries[i, i] for i in range(self.entries.rows))

    def scaled(self, factor) -> "AMatrix":
        """Scalar-multiplied view (the normalization itself is never changed)."""
        factor = rf(factor)
        return AMatrix(self.ktype, self.eps, self.slots, self.entries * factor)


def a_matrix(n: int, m: int, eps: int, norm: NormalizationChoice | None = None) -> AMatrix:
    """Restriction of the full matrix to the parity-eps slots."""
    if norm is not None and norm.eps != eps:
        raise PreconditionError(f"normalization eps={norm.eps} does not match eps={eps}")
    kt = KType(n, m)
    slots = parity_slots(kt, eps)
    if not slots:
        raise PreconditionError(f"K-type {kt} does not occur in the eps={eps} series")
    full = full_a_matrix(n, m)
    return AMatrix(kt, eps, slots, full.submatrix(slots, slots))


def regularized_a_matrix(n: int, m: int, eps: int, s0) -> AMatrix:
    """The family (s - s0) A(eps, s) on one K-type, as a scaled view.

    At the first-level kernel points (the odd series at 2/3, the even series
    at 1/3) every eigenvalue is regular after this scaling and the kernel
    slots are exactly those where the scaled diagonal vanishes.
    """
    return a_matrix(n, m, eps).scaled(S - Fraction(s0))


@dataclass(frozen=True)
class VanishingOrders:
    """Per-slot diagonal orders at a point, plus the matrix-level Smith view."""

    ktype: KType
    eps: int
    s0: Fraction
    slot_orders: tuple[tuple[int, int], ...]  # (global slot index, order)
    smith_orders: tuple[int, ...]
    cleared_power: int
    note: str = SMITH_PROXY_NOTE


def vanishing_orders(
    n: int, m: int, eps: int, s0, norm: NormalizationChoice | None = None
) -> VanishingOrders:
    """Vanishing orders of the eps-block at s0: diagonal valuations slot by
    slot, and the local Smith valuations of the denominator-cleared block."""
    s0 = Fraction(s0)
    block = a_matrix(n, m, eps, norm)
    orders = []
    for j in block.slots:
        mu = _mu_closed(n, m, j)
        if mu.is_zero():
            raise InvariantError(f"eigenvalue at ({n},{m}) slot {j} is identically zero")
        orders.append((j, mu.valuation(s0)))
    cleared, power = clear_local_poles(block.entries, s0)
    smith = smith_local_valuations(cleared, s0)
    report = VanishingOrders(block.ktype, eps, s0, tuple(orders), smith, power)
    if len(block.slots) == 1:
        # diagonal case: the two views must agree on the shifted scale
        if report.smith_orders[0] - power != orders[0][1]:
            raise InvariantError(f"Smith/diagonal mismatch at ({n},{m}) eps={eps}")
    return report


# -- reducibility, classification, named subrepresentations -------------------------


def _in_nonneg_int_lattice(x: Fraction, offset: Fraction, step: Fraction) -> bool:
    t = (x - offset) / step
    return t.denominator == 1 and t >= 0


def _reducible_witness(eps: int, s0: Fraction) -> str | None:
    """A description of the membership that forces reducibility, or None."""
    offset = Fraction(2) if eps == 0 else Fraction(7, 3)
    for label, value in (("s", s0), ("3-s", 3 - s0)):
        if value.denominator == 1 and value >= 2:
            return f"{label} = {value} lies in Z>=2"
        if _in_nonneg_int_lattice(value, offset, Fraction(2, 3)):
            return f"{label} = {value} lies in {offset} + (2/3)Z>=0"
    return None


@dataclass(frozen=True)
class Reducibility:
    eps: int
    s0: Fraction
    reducible: bool
    witness: str


def reducibility(eps: int, s0) -> Reducibility:
    """Closed reducibility criterion: the even series is reducible iff s or
    3-s lies in Z>=2 or 2 + (2/3)Z>=0; the odd series iff s or 3-s lies in
    Z>=2 or 7/3 + (2/3)Z>=0."""
    if eps not in (0, 1):
        raise PreconditionError(f"eps must be 0 or 1, got {eps}")
    s0 = Fraction(s0)
    witness = _reducible_witness(eps, s0)
    if witness is None:
        offset = "2" if eps == 0 else "7/3"
        witness = f"neither s nor 3-s lies in Z>=2 or {offset} + (2/3)Z>=0"
        return Reducibility(eps, s0, False, witness)
    return Reducibility(eps, s0, True, witness)


@dataclass(frozen=True)
class ScanWitness:
    ktype: KType
    slot: int
    order: int


def reducibility_scan(eps: int, s0, bound: int) -> tuple[ScanWitness, ...]:
    """All parity-eps eigenvalue slots with nonzero vanishing order at s0, up
    to n+m <= bound.  A nonempty list certifies reducibility; an empty list is
    inconclusive (finite bound).  The order at 3-s is the negative of the
    order at s by the functional equation, so one direction suffices."""
    if eps not in (0, 1):
        raise PreconditionError(f"eps must be 0 or 1, got {eps}")
    s0 = Fraction(s0)
    out = []
    for kt in ktypes_up_to(bound):
        for j in parity_slots(kt, eps):
            order = _mu_closed(kt.n, kt.m, j).valuation(s0)
            if order != 0:
                out.append(ScanWitness(kt, j, order))
    return tuple(out)


def classify(eps: int, s) -> tuple[str, ...]:
    """Classification labels at a parameter point.

    "axis" designates the formal unitary axis Re s = 3/2; a rational point is
    a reducible-point, lies in the complementary series interval (1, 2)
    (with the 3/2 boundary flag), or is generic-irreducible.
    """
    if eps not in (0, 1):
        raise PreconditionError(f"eps must be 0 or 1, got {eps}")
    if s == "axis":
        return ("unitary-axis",)
    s0 = Fraction(s)
    if reducibility(eps, s0).reducible:
        return ("reducible-point",)
    labels = []
    if Fraction(1) < s0 < Fraction(2):
        labels.append("complementary-series")
    if s0 == Fraction(3, 2):
        labels.append("unitary-axis")
    if not labels:
        labels.append("generic-irreducible")
    return tuple(labels)


@dataclass(frozen=True)
class SubrepInfo:
    """A named subrepresentation: where it lives and how it shows up in the
    vanishing data."""

    name: str
    eps: int
    s0: Fraction
    level: int
    description: str
    pattern: str
    member: Callable[[KType], bool]

    def members_within(self, bound: int) -> tuple[KType, ...]:
        return tuple(
            kt
            for kt in ktypes_up_to(bound)
            if self.member(kt) and has_parity_slot(kt, self.eps)
        )


def _ladder_member(kt: KType) -> bool:
    return kt.n == 3 * kt.m + 2


def _double_ladder_member(kt: KType) -> bool:
    return kt.n == 3 * kt.m or kt.n == 3 * kt.m + 4


def _lds_member(kt: KType) -> bool:
    n, m = kt.n, kt.m
    if n % 3 == 0:
        base, thresh = n // 3, 1
    elif n % 3 == 2:
        base, thresh = (n - 2) // 3, 2
    else:
        if n < 4:
            return False
        base, thresh = (n - 4) // 3, 3
    if base < 0 or (m - base) % 2:
        return False
    return (m - base) // 2 >= thresh


def _qds_member(level: int) -> Callable[[KType], bool]:
    def member(kt: KType) -> bool:
        if kt.a != 0 or kt.n not in (0, 2, 4):
            return False
        if kt.m % 2:
            return False
        r = kt.m // 2
        return r >= level + kt.n // 2 - 1

    return member


def special_subrep(name: str, k: int | None = None) -> SubrepInfo:
    """Data of a named subrepresentation: ladder, double_ladder, lds, or
    qds (the latter takes an even integer k >= 6)."""
    key = name.replace("-", "_")
    if key == "ladder":
        return SubrepInfo(
            name="ladder",
            eps=1,
            s0=Fraction(2, 3),
            level=1,
            description=(
                "minimal representation: kernel of the regularized odd-series "
                "operator at s = 2/3; K-types on the line (3m+2, m)"
            ),
            pattern=(
                "slot 0 of (3m+2, m) is the unique regular eigenvalue at 2/3; "
                "every other odd-series slot has a simple pole"
            ),
            member=_ladder_member,
        )
    if key == "double_ladder":
        return SubrepInfo(
            name="double_ladder",
            eps=0,
            s0=Fraction(1, 3),
            level=1,
            description=(
                "two-line subrepresentation: kernel of the regularized even-"
                "series operator at s = 1/3; K-types on (3m, m) and (3m+4, m)"
            ),
            pattern=(
                "slot 0 of (3m, m) and (3m+4, m) are the only regular "
                "eigenvalues at 1/3; every other even-series slot has a "
                "simple pole"
            ),
            member=_double_ladder_member,
        )
    if key == "lds":
        return SubrepInfo(
            name="lds",
            eps=1,
            s0=Fraction(2),
            level=1,
            description=(
                "limit of discrete series: kernel of the odd-series operator "
                "at s = 2; K-types (3m, m+2r) r>=1, (3m+2, m+2r) r>=2, "
                "(3m+4, m+2r) r>=3"
            ),
            pattern="odd-series slots at member K-types vanish to order >= 1 at 2",
            member=_lds_member,
        )
    if key == "qds":
        if k is None or k % 2 or k < 6:
            raise PreconditionError("qds requires an even integer k >= 6")
        s0 = Fraction(k, 2)
        eps = (k // 2 + 1) % 2
        level = int(s0)
        return SubrepInfo(
            name=f"qds({k})",
            eps=eps,
            s0=s0,
            level=2,
            description=(
                f"quaternionic discrete series at s = {s0}: second level of "
                "the vanishing filtration; multiplicity-one K-types (0,2r) "
                f"r>={level - 1}, (2,2r) r>={level}, (4,2r) r>={level + 1}"
            ),
            pattern="those multiplicity-one slots vanish to order >= 2 at s0",
            member=_qds_member(level),
        )
    raise PreconditionError(
        f"unknown subrepresentation {name!r}; expected ladder, double-ladder, lds or qds"
    )
