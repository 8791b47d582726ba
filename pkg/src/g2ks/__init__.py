"""Exact computer algebra for the two degenerate principal series of split G2
induced from characters of the Heisenberg parabolic subgroup.

Everything is computed over the rational-function field in the induction
parameter s: K-type multiplicity spaces and their interleaved bases, the Lie
algebra transition matrices between K-isotypic components, the Knapp-Stein
intertwiner eigenvalues and full matrices, vanishing orders, and the derived
reducibility and subrepresentation classifications.
"""

from .errors import (
    InconsistentSystemError,
    InvariantError,
    PoleError,
    PreconditionError,
    SingularMatrixError,
    UnderdeterminedError,
)
from .poly import Poly, Rational, binomial, falling, pochhammer, rational_from_str, rational_to_str
from .ratfunc import (
    RatFunc,
    S,
    gamma_ratio,
    pochhammer_rf,
    ratfunc_from_json,
    ratfunc_to_json,
    reflected,
    rf,
)
from .linalg import RFMatrix, clear_local_poles, linsolve, smith_local_valuations
from .su2 import (
    RepElement,
    TensorElement,
    WeightVector,
    norm_sq,
    norm_sq_closed,
    norm_sq_direct,
    rc_adjoint_on_constant,
    rc_bracket,
    sl2_act,
    tensor_decompose,
)
from .gstruct import (
    KType,
    ZetaVector,
    basis_v,
    basis_vp,
    d_coeff,
    ktypes_up_to,
    m_matrices,
    multiplicity_a,
    ordered_basis,
    parity_basis,
    rs_apply,
    rs_oracle,
    slot_parity,
    transition_matrix,
    w_action,
)
from .intertwiner import (
    AMatrix,
    EigenvalueSlot,
    NormalizationChoice,
    a_matrix,
    classify,
    eigenvalue_mu,
    eigenvalue_mu_recursive,
    eigenvalue_slots,
    full_a_matrix,
    mult_one_eigenvalue,
    normalization,
    reducibility,
    reducibility_scan,
    regularized_a_matrix,
    special_subrep,
    vanishing_orders,
)
from .verify import VerifyReport, run_suites

__version__ = "0.1.0"

__all__ = [
    "InconsistentSystemError",
    "InvariantError",
    "PoleError",
    "PreconditionError",
    "SingularMatrixError",
    "UnderdeterminedError",
    "Poly",
    "Rational",
    "binomial",
    "falling",
    "pochhammer",
    "rational_from_str",
    "rational_to_str",
    "RatFunc",
    "S",
    "gamma_ratio",
    "pochhammer_rf",
    "ratfunc_from_json",
    "ratfunc_to_json",
    "reflected",
    "rf",
    "RFMatrix",
    "clear_local_poles",
    "linsolve",
    "smith_local_valuations",
    "RepElement",
    "TensorElement",
    "WeightVector",
    "norm_sq",
    "norm_sq_closed",
    "norm_sq_direct",
    "rc_adjoint_on_constant",
    "rc_bracket",
    "sl2_act",
    "tensor_decompose",
    "KType",
    "ZetaVector",
    "basis_v",
    "basis_vp",
    "d_coeff",
    "ktypes_up_to",
    "m_matrices",
    "multiplicity_a",
    "ordered_basis",
    "parity_basis",
    "rs_apply",
    "rs_oracle",
    "slot_parity",
    "transition_matrix",
    "w_action",
    "AMatrix",
    "EigenvalueSlot",
    "NormalizationChoice",
    "a_matrix",
    "classify",
    "eigenvalue_mu",
    "eigenvalue_mu_recursive",
    "eigenvalue_slots",
    "full_a_matrix",
    "mult_one_eigenvalue",
    "normalization",
    "reducibility",
    "reducibility_scan",
    "regularized_a_matrix",
    "special_subrep",
    "vanishing_orders",
    "VerifyReport",
    "run_suites",
    "__version__",
]
