"""Verified single-boson matrix realizations of the cubic (Higgs)
angular-momentum algebra [J+, J-] = c1 J3 + c3 J3^3 on truncated Fock
space.  Every asserted identity is measured, never assumed; residuals,
tolerances, and admissibility masks travel with each realization."""

from .algebra import (
    AlgebraParams,
    ChainStructure,
    RepresentationTable,
    SU2_PARAMS,
    SU11_PARAMS,
    admissible_chain,
    admissible_states,
    bond_product,
    bond_quadratic,
    casimir_eigenvalue,
    casimir_operator,
    discriminant,
    representation_table,
    root_side_admissible,
    z_boundaries,
)
from .fock import (
    COMPLEX,
    RATIONAL,
    FockSpace,
    Operator,
    annihilation,
    commutator,
    creation,
    diagonal_operator,
    identity_op,
    momentum,
    number_op,
    pochhammer,
    pochhammer_operator,
    position,
    unitary_exp,
)
from .realizations import (
    ProductSequence,
    Realization,
    build_realization,
    closed_form_k1,
    closed_form_k2,
    dyson_quadratic,
    dyson_simple,
    g_constant,
    generic_realization,
    hp_quadratic,
    hp_simple,
    momentum_window_projector,
    product_recurrence,
    villain_boson,
)
from .similarity import (
    DiagonalTransform,
    conjugate,
    s1_closed_form,
    s1_recurrence,
    s2_matching,
    unitarization_residual,
)
from .verify import (
    CheckResult,
    SweepEntry,
    SweepReport,
    VerificationReport,
    VerifyConfig,
    default_grid,
    exit_code,
    grid_from_json,
    interior_check_states,
    parse_kind_token,
    report_to_json,
    sweep,
    sweep_exit_code,
    verify_realization,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraParams",
    "ChainStructure",
    "CheckResult",
    "COMPLEX",
    "DiagonalTransform",
    "FockSpace",
    "Operator",
    "ProductSequence",
    "RATIONAL",
    "Realization",
    "RepresentationTable",
    "SU2_PARAMS",
    "SU11_PARAMS",
    "SweepEntry",
    "SweepReport",
    "VerificationReport",
    "VerifyConfig",
    "admissible_chain",
    "admissible_states",
    "annihilation",
    "bond_product",
    "bond_quadratic",
    "build_realization",
    "casimir_eigenvalue",
    "casimir_operator",
    "closed_form_k1",
    "closed_form_k2",
    "commutator",
    "conjugate",
    "creation",
    "default_grid",
    "diagonal_operator",
    "discriminant",
    "dyson_quadratic",
    "dyson_simple",
    "exit_code",
    "g_constant",
    "generic_realization",
    "grid_from_json",
    "hp_quadratic",
    "hp_simple",
    "identity_op",
    "interior_check_states",
    "momentum",
    "momentum_window_projector",
    "number_op",
    "parse_kind_token",
    "pochhammer",
    "pochhammer_operator",
    "position",
    "product_recurrence",
    "report_to_json",
    "representation_table",
    "root_side_admissible",
    "s1_closed_form",
    "s1_recurrence",
    "s2_matching",
    "sweep",
    "sweep_exit_code",
    "unitarization_residual",
    "unitary_exp",
    "verify_realization",
    "villain_boson",
    "z_boundaries",
]
