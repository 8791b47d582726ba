import random

import pytest
from fractions import Fraction

from g2ks.errors import PreconditionError
from g2ks.gstruct import (
    KType,
    ZetaVector,
    basis_v,
    basis_vp,
    coords_in_basis,
    d_coeff,
    has_parity_slot,
    ktypes_up_to,
    m_entry,
    m_matrices,
    multiplicity_a,
    multiplicity_a_direct,
    ordered_basis,
    parity_basis,
    parity_slots,
    rs_apply,
    rs_oracle,
    shift_r,
    slot_parity,
    transition_matrix,
    valid_shifts,
    w_action,
    zeta_matrix,
)
from g2ks.linalg import RFMatrix
from g2ks.ratfunc import RF_ONE, S, rf


def test_multiplicity_examples():
    assert multiplicity_a(6, 2) == 2
    assert multiplicity_a(3, 3) == 1
    assert multiplicity_a(0, 0) == 0
    assert multiplicity_a(7, 3) == 1
    assert multiplicity_a(1, 1) == -1  # the pair (1, m) never occurs


def test_multiplicity_parity_violation():
    with pytest.raises(PreconditionError):
        multiplicity_a(2, 1)


def test_multiplicity_closed_form_matches_direct_count():
    for total in range(0, 31, 2):
        for m in range(total + 1):
            n = total - m
            if (n - m) % 2 == 0:
                assert multiplicity_a(n, m) == multiplicity_a_direct(n, m), (n, m)


def test_shift_r():
    assert shift_r(0, 0) == 0
    assert shift_r(6, 2) == 0
    assert shift_r(3, 1) == 0
    assert shift_r(2, 0) == 1


def test_ktype_weights():
    assert KType(6, 2).weights() == (-2, 0, 2)
    assert KType(3, 3).weights() == (-1, 1)
    assert KType(0, 0).weights() == (0,)


def test_w_action_examples():
    v0 = ZetaVector.basis((0, 0), 0)
    assert w_action(v0) == v0
    v = ZetaVector.basis((3, 3), 1)
    assert w_action(v) == ZetaVector.basis((3, 3), -1)


def test_w_action_is_involution():
    rng = random.Random(17)
    for _ in range(20):
        kt = KType(6, 2)
        coeffs = {a: Fraction(rng.randrange(-3, 4)) for a in kt.weights()}
        v = ZetaVector(kt, coeffs)
        assert w_action(w_action(v)) == v


def test_parity_basis_trivial_ktype():
    assert parity_basis(0, 0, 0) == (ZetaVector((0, 0), {0: 2}),)
    assert parity_basis(0, 0, 1) == ()


def test_parity_basis_3_3_one_vector_each():
    for eps in (0, 1):
        vs = parity_basis(3, 3, eps)
        assert len(vs) == 1
        sign = 1 if eps == 0 else -1
        assert vs[0] == ZetaVector((3, 3), {1: 1, -1: sign})


def test_parity_basis_counts_sum_to_multiplicity():
    for kt in ktypes_up_to(16):
        total = len(parity_basis(kt.n, kt.m, 0)) + len(parity_basis(kt.n, kt.m, 1))
        assert total == kt.a + 1, kt
    assert len(parity_basis(6, 2, 0)) == 2
    assert len(parity_basis(6, 2, 1)) == 1


def test_parity_bases_span_the_multiplicity_space():
    for kt in ktypes_up_to(12):
        vecs = parity_basis(kt.n, kt.m, 0) + parity_basis(kt.n, kt.m, 1)
        M = RFMatrix.from_columns([v.coordinates() for v in vecs])
        assert M.rank() == kt.a + 1
        assert zeta_matrix(kt.n, kt.m).rank() == kt.a + 1


def test_d_coeff_top_weight_is_one():
    for n, m in [(6, 2), (3, 3), (9, 3), (12, 4)]:
        amax = multiplicity_a(n, m)
        for k in range(amax // 2 + 1):
            assert d_coeff(n, m, amax - 2 * k, k) == RF_ONE


def test_d_coeff_bottom_weight_sign():
    for n, m in [(6, 2), (3, 3), (9, 3), (12, 4)]:
        amax = multiplicity_a(n, m)
        for k in range(amax // 2 + 1):
            expected = rf((-1) ** m)
            assert d_coeff(n, m, 2 * k - amax, k) == expected


def test_d_coeff_vanishes_outside_window():
    amax = multiplicity_a(12, 4)  # amax = 4
    assert d_coeff(12, 4, 4, 1).is_zero()
    assert d_coeff(12, 4, -4, 1).is_zero()
    assert not d_coeff(12, 4, 2, 1).is_zero()


def test_basis_v_simplest_cases():
    assert basis_v(0, 0, 0) == ZetaVector((0, 0), {0: 1})
    v33 = basis_v(3, 3, 0)
    assert v33.coeff(1) == 1
    assert v33.coeff(-1) == rf(-1)


def test_basis_vectors_have_definite_w_parity():
    for kt in ktypes_up_to(14):
        base = (kt.n + kt.m) // 2
        sign = rf((-1) ** base)
        for k in range(kt.a // 2 + 1):
            v = basis_v(kt.n, kt.m, k)
            assert w_action(v) == v.map_coeffs(lambda c: c * sign)
        for k in range((kt.a - 1) // 2 + 1):
            vp = basis_vp(kt.n, kt.m, k)
            assert w_action(vp) == vp.map_coeffs(lambda c: c * (-sign))


def test_ordered_basis_shape_and_slot_parity():
    basis = ordered_basis(6, 2)
    assert len(basis) == 3
    assert basis[0] == basis_v(6, 2, 0)
    assert basis[1] == basis_vp(6, 2, 0)
    assert basis[2] == basis_v(6, 2, 1)
    assert [slot_parity(6, 2, j) for j in range(3)] == [0, 1, 0]
    assert parity_slots(KType(6, 2), 0) == (0, 2)
    assert parity_slots(KType(6, 2), 1) == (1,)
    assert has_parity_slot(KType(0, 0), 0) and not has_parity_slot(KType(0, 0), 1)


def test_m_entry_first_row():
    n, m, a = 6, 2, 0
    assert m_entry(1, 0, 0, n, m, a) == (2 * S - 2 * a + m + n) * Fraction(1, 2)
    assert m_entry(-1, 0, 0, n, m, a) == (2 * S + 2 * a + m + n) * Fraction(-1, 2)


def test_m_matrices_shape():
    plus, minus = m_matrices(6, 2, 2)
    assert (plus.rows, plus.cols) == (4, 2)
    assert (minus.rows, minus.cols) == (4, 2)


def test_m_matrices_guard_structural_denominator():
    with pytest.raises(PreconditionError):
        m_entry(1, 0, 1, 6, 0, 0)  # l'=1 needs m >= 1
    with pytest.raises(PreconditionError):
        m_entry(1, 3, 0, 2, 0, 0)  # l=3 needs n >= 3


def test_rs_oracle_matches_rs_apply_small():
    for kt in ktypes_up_to(10):
        for l, lp, _tgt in valid_shifts(kt):
            for a in kt.weights():
                got = rs_apply(l, lp, kt, ZetaVector.basis(kt, a))
                want = rs_oracle(l, lp, kt, a)
                assert got == want, (kt, l, lp, a)


def test_rs_oracle_reproduces_the_multiplicity_one_ladder_coefficient():
    # the (1,1) component on (2r+3, 1) sends zeta_{+-1} to
    # -+ (r+3)(r+3s-3)/(3(2r+3)) zeta_0 of (2r+4, 0)
    for r in range(4):
        n = 2 * r + 3
        scalar = (rf(r) + 3 * S - 3) * Fraction(r + 3, 3 * (2 * r + 3))
        up = rs_oracle(1, 1, (n, 1), 1)
        down = rs_oracle(1, 1, (n, 1), -1)
        assert up == ZetaVector((2 * r + 4, 0), {0: -scalar})
        assert down == ZetaVector((2 * r + 4, 0), {0: scalar})


def test_rs_apply_is_linear():
    rng = random.Random(23)
    kt = KType(9, 3)
    for l, lp, _tgt in valid_shifts(kt):
        u = ZetaVector(kt, {a: Fraction(rng.randrange(-3, 4)) for a in kt.weights()})
        v = ZetaVector(kt, {a: Fraction(rng.randrange(-3, 4)) for a in kt.weights()})
        left = rs_apply(l, lp, kt, u + v.scale(2))
        right = rs_apply(l, lp, kt, u) + rs_apply(l, lp, kt, v).scale(2)
        assert left == right


def test_rs_apply_zero_vector():
    out = rs_apply(0, 0, (6, 2), ZetaVector((6, 2), {}))
    assert out.is_zero()


def test_rs_apply_rejects_nonexistent_target():
    with pytest.raises(PreconditionError):
        rs_apply(1, 0, (0, 0), ZetaVector.basis((0, 0), 0))  # target (1, 1) is empty


def test_transition_smallest_upward_step():
    # (0,0) -> (3,1): the target has two slots, the image hits the first
    T = transition_matrix((0, 0), (3, 1))
    assert (T.rows, T.cols) == (2, 1)
    assert T[0, 0] == S
    assert T[1, 0].is_zero()


def test_transition_upward_structure():
    # the (0,0) shift: last row zero, diagonal 2*floor(j/2) + r + a + s
    for kt in [KType(3, 1), KType(6, 2), KType(9, 3), KType(8, 4)]:
        tgt = KType(kt.n + 3, kt.m + 1)
        T = transition_matrix(kt, tgt)
        assert (T.rows, T.cols) == (kt.a + 2, kt.a + 1)
        assert all(T[kt.a + 1, j].is_zero() for j in range(kt.a + 1))
        for j in range(kt.a + 1):
            expected = rf(2 * (j // 2) + kt.r + kt.a) + S
            assert T[j, j] == expected
            for i in range(kt.a + 1):
                if i != j:
                    assert T[i, j].is_zero()


def test_transition_matrix_of_the_smallest_nondiagonal_example():
    # Derived by hand from the raw action and the bracket table.  The first
    # two rows come out as -(s-2)/3: the sign produced by the action matrices
    # themselves (the circulating display with +(s-2)/3 contradicts those
    # matrices; see the acceptance suite, which tracks both variants).
    T = transition_matrix((3, 3), (6, 2))
    third = Fraction(1, 3)
    expected = RFMatrix(
        [
            [0, -(S - 2) * third],
            [-(S - 2) * third, 0],
            [0, -2 * (S - 1) * (S + 2) / (S + 1)],
        ]
    )
    assert T == expected


def test_transition_param_reflection():
    T = transition_matrix((3, 3), (6, 2), "3-s")
    assert T[0, 1] == -(1 - S) * Fraction(1, 3)
    with pytest.raises(PreconditionError):
        transition_matrix((3, 3), (6, 2), "tilde")


def test_transition_rejects_non_neighbour():
    with pytest.raises(PreconditionError):
        transition_matrix((0, 0), (6, 2))


def test_multiplicity_one_product_identities():
    # products of one-dimensional transitions along the four displayed routes
    for r in range(11):
        s = S
        t1 = transition_matrix((2 * r + 3, 1), (2 * r + 4, 0))
        t2 = transition_matrix((2 * r, 0), (2 * r + 3, 1))
        prod = t1 * t2
        expected = -(rf(r) + s) * (rf(r) + 3 * s - 3) * Fraction(2 * (r + 3), 3 * (2 * r + 3))
        assert prod == RFMatrix([[expected]]), r

        t3 = transition_matrix((3, 2 * r + 1), (2, 2 * r + 2))
        t4 = transition_matrix((0, 2 * r), (3, 2 * r + 1))
        expected = -(rf(r) + s) * (3 * rf(r) + 3 * s - 1) * Fraction(2, 3)
        assert t3 * t4 == RFMatrix([[expected]]), r

        t5 = transition_matrix((5, 2 * r + 1), (4, 2 * r + 2))
        t6 = transition_matrix((2, 2 * r), (5, 2 * r + 1))
        expected = -(rf(r) + s + 1) * (3 * rf(r) + 3 * s - 2) * Fraction(2, 5)
        assert t5 * t6 == RFMatrix([[expected]]), r

        t7 = transition_matrix((3, 2 * r + 1), (4, 2 * r))
        expected = (rf(r) + s) * (rf(r) - s + 1) * Fraction(2 * (r + 1), 2 * r + 1)
        assert t7 * t4 == RFMatrix([[expected]]), r


def test_coords_in_basis_round_trip():
    basis = ordered_basis(6, 2)
    for j, v in enumerate(basis):
        coords = coords_in_basis(v)
        assert [not c.is_zero() for c in coords] == [i == j for i in range(len(basis))]
        assert coords[j] == RF_ONE


def test_transition_cache_concurrent_use_matches_sequential():
    import threading

    from g2ks import gstruct

    gstruct._TRANSITION_CACHE.clear()
    sequential = transition_matrix((9, 3), (12, 4))
    gstruct._TRANSITION_CACHE.clear()
    results = [None] * 8
    errors = []

    def worker(i):
        try:
            results[i] = transition_matrix((9, 3), (12, 4))
        except Exception as exc:  # pragma: no cover - only on failure
            errors.append(exc)

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert all(r == sequential for r in results)


def test_d_coeff_preconditions():
    with pytest.raises(PreconditionError):
        d_coeff(6, 2, 1, 0)  # wrong weight parity
    with pytest.raises(PreconditionError):
        d_coeff(6, 2, 0, 2)  # 2k exceeds the multiplicity index
    with pytest.raises(PreconditionError):
        basis_vp(0, 0, 0)  # no primed vectors on a multiplicity-one K-type


def test_parity_basis_validates_eps():
    with pytest.raises(PreconditionError):
        parity_basis(6, 2, 2)


def test_m_matrices_full_pair_requires_all_targets():
    with pytest.raises(PreconditionError):
        m_matrices(6, 0, 0)  # the m-lowering column does not exist at m = 0
