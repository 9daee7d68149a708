"""Tropical matrix monoids: generating alphabets, factorization of
matrices into generator words, and finite Boolean closures.
"""

from .semiring import (
    BOOLEAN,
    BOTTOM,
    ZMAX,
    Semiring,
    format_scalar,
    is_finite,
    parse_scalar,
    psi,
    semiring_by_name,
)
from .matrix import (
    MAX_DIM,
    Matrix,
    Perm,
    boolean_image,
    construct_A,
    construct_E,
    construct_P,
    count_bottoms,
    diag,
    format_matrix,
    identity,
    inverse,
    is_invertible,
    is_monomial,
    is_regular,
    is_unitriangular,
    is_upper_triangular,
    mat_mul,
    mat_pow,
    matrix,
    matrix_from_json,
    matrix_to_json,
    parse_matrix,
    permute,
    regularity_witness,
    transpose,
    zeros,
)
from .genset import (
    GeneratingSet,
    Generator,
    diag_letter,
    elem_letter,
    generating_set,
    gens_gl_zmax,
    gens_m2_zmax,
    gens_m3_zmax,
    gens_u_zmax,
    gens_ut_boolean,
    gens_ut_zmax,
    parse_generator,
    perm_letter,
    x_letter,
)
from .factorize import (
    MembershipError,
    Word,
    evaluate,
    factor,
    factor_gl,
    factor_m2,
    factor_m3,
    factor_unitriangular,
    factor_ut,
    parse_word,
    simplify,
    word_to_text,
)
from .finite import (
    FiniteMonoid,
    JClassDecomposition,
    closure,
    irredundant,
    is_generating,
    jclasses,
    monoid_to_json,
    prime_certificate,
    rank_search,
    x_family_j_related,
)

__version__ = "0.1.0"

__all__ = [
    "BOOLEAN",
    "BOTTOM",
    "ZMAX",
    "Semiring",
    "format_scalar",
    "is_finite",
    "parse_scalar",
    "psi",
    "semiring_by_name",
    "MAX_DIM",
    "Matrix",
    "Perm",
    "boolean_image",
    "construct_A",
    "construct_E",
    "construct_P",
    "count_bottoms",
    "diag",
    "format_matrix",
    "identity",
    "inverse",
    "is_invertible",
    "is_monomial",
    "is_regular",
    "is_unitriangular",
    "is_upper_triangular",
    "mat_mul",
    "mat_pow",
    "matrix",
    "matrix_from_json",
    "matrix_to_json",
    "parse_matrix",
    "permute",
    "regularity_witness",
    "transpose",
    "zeros",
    "GeneratingSet",
    "Generator",
    "diag_letter",
    "elem_letter",
    "generating_set",
    "gens_gl_zmax",
    "gens_m2_zmax",
    "gens_m3_zmax",
    "gens_u_zmax",
    "gens_ut_boolean",
    "gens_ut_zmax",
    "parse_generator",
    "perm_letter",
    "x_letter",
    "MembershipError",
    "Word",
    "evaluate",
    "factor",
    "factor_gl",
    "factor_m2",
    "factor_m3",
    "factor_unitriangular",
    "factor_ut",
    "parse_word",
    "simplify",
    "word_to_text",
    "FiniteMonoid",
    "JClassDecomposition",
    "closure",
    "irredundant",
    "is_generating",
    "jclasses",
    "monoid_to_json",
    "prime_certificate",
    "rank_search",
    "x_family_j_related",
]
