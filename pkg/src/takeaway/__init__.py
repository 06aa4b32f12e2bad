"""Engine, verifier and explorer backend for the subset take-away game."""

from .canonical import canonical_key, is_isomorphic
from .complexes import (
    CAPACITY,
    Complex,
    boundary_simplex,
    disjoint_union,
    from_json,
    from_text,
    full_simplex,
    make_complex,
)
from .errors import (
    CacheFormatError,
    CapacityError,
    NotABinaryStarError,
    NotAFaceError,
    ParseError,
    TakeawayError,
    UnknownPresetError,
)
from .reductions import (
    BinaryStar,
    ReductionStep,
    find_binary_stars,
    is_binary_star,
    mirror_response,
    reduce_binary_star,
    reduce_fully,
)
from .solver import (
    PositionValue,
    SolveReport,
    Solver,
    TranspositionTable,
    best_move,
    default_solver,
    grundy,
    mex,
    solve_with_stats,
    value,
    winning_moves,
)

__all__ = [
    "CAPACITY",
    "BinaryStar",
    "CacheFormatError",
    "CapacityError",
    "Complex",
    "NotABinaryStarError",
    "NotAFaceError",
    "ParseError",
    "PositionValue",
    "ReductionStep",
    "SolveReport",
    "Solver",
    "TakeawayError",
    "TranspositionTable",
    "UnknownPresetError",
    "best_move",
    "boundary_simplex",
    "canonical_key",
    "default_solver",
    "disjoint_union",
    "find_binary_stars",
    "from_json",
    "from_text",
    "full_simplex",
    "grundy",
    "is_binary_star",
    "is_isomorphic",
    "make_complex",
    "mex",
    "mirror_response",
    "reduce_binary_star",
    "reduce_fully",
    "solve_with_stats",
    "value",
    "winning_moves",
]

__version__ = "0.1.0"
