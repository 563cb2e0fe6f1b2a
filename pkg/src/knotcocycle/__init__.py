"""Chord-diagram algebra, Vassiliev relation calculus, and numerical
Kontsevich-type knot and one-cocycle integrals on PL Morse knots."""

from .diagrams import (
    EMPTY,
    Diagram,
    FormalSum,
    Series,
    SlottedDiagram,
    canonicalize,
    concat,
    diagram_from_json,
    diagram_to_json,
    enumerate_chord_diagrams,
    enumerate_v_diagrams,
    product,
    series_inv,
    series_mul,
    sigma,
    sigma_sum,
)
from .ratlinalg import (
    RatMatrix,
    eliminate_left,
    kernel_basis,
    matrix_from_json,
    matrix_to_json,
    rank,
    row_space_equal,
    transpose_kernel_basis,
)
from .relations import (
    RelatorSet,
    is_weight_system,
    relation_matrix,
    relator_set_from_json,
    relator_set_to_json,
    relators_16t_28t,
    relators_1t,
    relators_2t,
    relators_4x4t,
    standard_4t_relators,
    weight_system_basis,
)
from .vassiliev import (
    build_tree_config_matrices,
    build_two_triple_matrices,
    calibrated_tree_relations,
    match_matrices,
    verify_appendix_c,
)
from .kzforms import (
    KZTerm,
    arnold_identity,
    curvature_matrix,
    form2_is_zero,
    grouped_two_t_identity,
    lambda_kz,
    omega_kz,
    prufer_tree,
    stacked_diagram,
    tree_form_sign,
)
from .morse import (
    KnotPath,
    MorseKnot,
    NotMorseError,
    PerestroikaError,
    SelfIntersectionError,
    gramain,
    knot_from_json,
    knot_to_json,
    load_knot_fixture,
    path_from_json,
    path_to_json,
    validate_morse,
)
from .conway import (
    alexander_polynomial,
    casson_invariant,
    conway_polynomial,
    crossings,
    determinant_at_minus_one,
)
from .integrals import (
    BraidSlab,
    NumericVector,
    QuadratureConfig,
    eval_functional,
    experiment_commute,
    kontsevich_z,
    reduced_gramain_oracle,
    vector_from_json,
    vector_to_json,
    weight_functionals,
    z1,
    z1_braid,
    z_hat,
    z_hat1,
)

__version__ = "0.1.0"

__all__ = [
    "EMPTY",
    "BraidSlab",
    "Diagram",
    "FormalSum",
    "KZTerm",
    "KnotPath",
    "MorseKnot",
    "NotMorseError",
    "NumericVector",
    "PerestroikaError",
    "QuadratureConfig",
    "RatMatrix",
    "RelatorSet",
    "Series",
    "SelfIntersectionError",
    "SlottedDiagram",
    "alexander_polynomial",
    "arnold_identity",
    "build_tree_config_matrices",
    "build_two_triple_matrices",
    "calibrated_tree_relations",
    "match_matrices",
    "canonicalize",
    "casson_invariant",
    "concat",
    "conway_polynomial",
    "crossings",
    "curvature_matrix",
    "form2_is_zero",
    "determinant_at_minus_one",
    "diagram_from_json",
    "diagram_to_json",
    "enumerate_chord_diagrams",
    "enumerate_v_diagrams",
    "eval_functional",
    "experiment_commute",
    "gramain",
    "grouped_two_t_identity",
    "is_weight_system",
    "eliminate_left",
    "kernel_basis",
    "matrix_from_json",
    "matrix_to_json",
    "knot_from_json",
    "knot_to_json",
    "kontsevich_z",
    "lambda_kz",
    "load_knot_fixture",
    "omega_kz",
    "path_from_json",
    "path_to_json",
    "product",
    "prufer_tree",
    "rank",
    "reduced_gramain_oracle",
    "relation_matrix",
    "relator_set_from_json",
    "relator_set_to_json",
    "relators_16t_28t",
    "relators_1t",
    "relators_2t",
    "relators_4x4t",
    "row_space_equal",
    "series_inv",
    "series_mul",
    "sigma",
    "sigma_sum",
    "stacked_diagram",
    "standard_4t_relators",
    "transpose_kernel_basis",
    "tree_form_sign",
    "validate_morse",
    "vector_from_json",
    "vector_to_json",
    "verify_appendix_c",
    "weight_functionals",
    "weight_system_basis",
    "z1",
    "z1_braid",
    "z_hat",
    "z_hat1",
]
