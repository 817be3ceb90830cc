"""Finite-dimensional C*-algebras, classified maps between them, and
Kleisli machinery checked exhaustively on finite-set instances."""

from .algebra import (
    DEFAULT_TOL,
    Algebra,
    Element,
    NotNormalError,
    NotSelfAdjointError,
    ParentMismatchError,
    Tolerance,
    commutative_algebra,
    commutator,
    distance,
    is_normal,
    is_positive_element,
    is_self_adjoint,
    jordan_decompose,
    leq,
    make_algebra,
    matrix_algebra,
    operator_norm,
    order_unit_norm,
    spectrum,
    spectrum_values,
)
from .constructions import (
    DirectSum,
    NotMIUError,
    SubalgebraView,
    check_equaliser_factorization,
    direct_sum,
    equaliser,
)
from .gelfand import (
    Polynomial,
    c2_factorization,
    c2_sigma,
    c3_witness,
    characters,
    check_c_initial,
    check_gelfand,
    check_stat_c2,
    functional_calculus,
    gelfand_transform,
    polynomial_eval,
    rho_c2,
    state_from_x,
)
from .maps import (
    LinearMap,
    MapClassification,
    NotPUError,
    ShapeMismatchError,
    amplify,
    apply,
    check_completely_positive,
    check_involutive,
    check_multiplicative,
    check_positive,
    check_subunital,
    check_unital,
    choi,
    classify,
    compose,
    covariance,
    covariance_preservation_test,
    identity_map,
    make_map,
    map_from_function,
    matrix_norm_over_algebra,
    pu_norm_bound_check,
)
from .verdict import Verdict

__version__ = "0.1.0"
