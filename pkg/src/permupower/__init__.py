"""Entangling power of bipartite permutation operators.

A permutation of the product basis [d] x [d] acts as a unitary on two
d-level systems; its entangling power (average linear entropy generated on
random product inputs) is an exact rational, computed here by rectangle
counting, cross-checked by a dense linear-algebra oracle, maximized via
orthogonal Latin squares, and tabulated across all permutations of small
dimension.
"""

from .errors import (
    BudgetExceeded,
    DegenerateDimension,
    DimensionMismatch,
    DimensionTooLarge,
    IndexOutOfRange,
    InsufficientSamples,
    NotBijection,
    NotOrthogonal,
    NotUnitary,
    ParameterOrderViolation,
    ParseError,
    PermupowerError,
    UnnormalizedState,
    UnsupportedOrder,
)
from .perm_core import (
    BiPerm,
    FlatPerm,
    NonEntanglingWitness,
    WitnessKind,
    biperm_from_flat,
    biperm_to_flat,
    compose_with_swap,
    detect_non_entangling,
    enumerate_perms,
    format_biperm,
    identity_perm,
    parse_biperm,
    random_perm,
    swap_perm,
)
from .entangle import (
    BlockConditions,
    PowerReport,
    RectangleFlags,
    check_block_conditions,
    entangling_power,
    epsilon_from_q,
    q_of,
    q_of_naive,
    rectangle_flags,
)
from .oracle import (
    DensityMatrix,
    PureState,
    Unitary,
    linear_entropy,
    mc_power,
    oracle_power,
    partial_trace,
    rezakhani_power,
    split_entropies,
    state_of_unitary,
    swap_unitary,
    unitary_of,
)
from .latin import (
    LatinSquare,
    OrthogonalPair,
    are_orthogonal,
    construct_mols,
    count_orthogonal_pairs,
    enumerate_latin_squares,
    is_latin,
    special_d6_perm,
    superimpose,
)
from .classify import (
    ClassHistogram,
    SampleStats,
    class_bound,
    classify_exhaustive,
    classify_sampled,
    e0_stats,
    min_nonzero_perm,
)
from .catalog import builtin_perm

__version__ = "0.1.0"

__all__ = [
    "BiPerm",
    "BlockConditions",
    "BudgetExceeded",
    "ClassHistogram",
    "DegenerateDimension",
    "DensityMatrix",
    "DimensionMismatch",
    "DimensionTooLarge",
    "FlatPerm",
    "IndexOutOfRange",
    "InsufficientSamples",
    "LatinSquare",
    "NonEntanglingWitness",
    "NotBijection",
    "NotOrthogonal",
    "NotUnitary",
    "OrthogonalPair",
    "ParameterOrderViolation",
    "ParseError",
    "PermupowerError",
    "PowerReport",
    "PureState",
    "RectangleFlags",
    "SampleStats",
    "Unitary",
    "UnnormalizedState",
    "UnsupportedOrder",
    "WitnessKind",
    "are_orthogonal",
    "biperm_from_flat",
    "biperm_to_flat",
    "builtin_perm",
    "check_block_conditions",
    "class_bound",
    "classify_exhaustive",
    "classify_sampled",
    "compose_with_swap",
    "construct_mols",
    "count_orthogonal_pairs",
    "detect_non_entangling",
    "e0_stats",
    "entangling_power",
    "enumerate_latin_squares",
    "enumerate_perms",
    "epsilon_from_q",
    "format_biperm",
    "identity_perm",
    "is_latin",
    "linear_entropy",
    "mc_power",
    "min_nonzero_perm",
    "oracle_power",
    "parse_biperm",
    "partial_trace",
    "q_of",
    "q_of_naive",
    "random_perm",
    "rectangle_flags",
    "rezakhani_power",
    "special_d6_perm",
    "split_entropies",
    "state_of_unitary",
    "superimpose",
    "swap_perm",
    "swap_unitary",
    "unitary_of",
]
