"""Adjunctions, monads and Kleisli categories on enumerable finite data."""

from .adjunction import (
    AdjunctionData,
    KleisliData,
    KleisliError,
    MonadData,
    VG_adjunction,
    build_kleisli,
    check_adjunction,
    check_hom_bijection,
    check_kleisli_composition_paths,
    check_L_iso,
    check_monad_laws,
    comparison_L,
    functor_G,
    functor_V,
    inverse_K,
    kleisli,
    monad_from_adjunction,
    run_law_suite,
    search_comparison_functors,
    underlying,
)
from .category import (
    Arrow,
    FiniteCategory,
    FinSet,
    FunctorData,
    check_bijective_on_objects,
    check_category_laws,
    check_functor_laws,
    compose_functors,
    discrete_category,
    functors_agree,
    identity_functor,
    relabel_functor,
)
from .instances import (
    INSTANCES,
    build_identity_instance,
    build_instance,
    build_multimap_instance,
    build_option_instance,
    build_option_neg_instance,
    pointed_category,
    rel_category,
    set_category,
)
