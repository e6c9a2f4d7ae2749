"""Arithmetic of graded Artin-Tate shapes and exact tiling by upper motives."""

from .generators import (
    NamedDecomposition,
    decomposition_M,
    decomposition_second,
    decomposition_third,
    flag_rank_oracle,
    involution_counts,
    projective_space_shape,
    upper_case1,
    upper_case2,
    verify_final_identity,
    weil_closed,
    weil_oracle,
)
from .shapes import (
    A,
    F,
    ArtinClass,
    GradedShape,
    Params,
    direct_sum,
    make_shape,
    restrict_to_L,
    shift,
    stats,
    tensor,
)
from .solver import (
    Tile,
    Tiling,
    exhaustive_tilings,
    greedy_peel,
    infer_upper_shape,
    obstruction_divisibility,
    obstruction_ratio,
)

__version__ = "0.1.0"
