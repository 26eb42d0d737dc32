"""Exact semialgebraic partitions of complexified hyperplane
arrangement complements, with the cycle pairing combinatorics that
makes the piece closures a homology basis."""

from .arrangement import (
    Arrangement,
    Flat,
    IntersectionPoset,
    betti_numbers,
    build_poset,
    chamber_count,
    parallel_class,
    parallel_to_vector,
    random_arrangement,
    sep_points,
)
from .chambers import (
    Chamber,
    OnBoundary,
    SubChamber,
    chamber_of_point,
    contained_in,
    enumerate_chambers,
)
from .errors import (
    ArrpartError,
    DimensionError,
    FlagError,
    InputError,
    InternalDisagreement,
    LevelMismatch,
    NotInComplement,
)
from .exact_geom import (
    AffineForm,
    AffineSolution,
    LinearSubspace,
    LPResult,
    lp_optimize,
    rank,
    relative_interior_point,
    solve_affine,
    strictly_feasible_point,
    vec,
)
from .fixtures import load_fixture
from .flag import Flag, check_assumption, check_generic, generate_flag
from .homology import (
    BMClass,
    IndexTuple,
    PairingMatrix,
    concurrent_triples,
    dual_basis_check,
    far_chamber,
    index_tuple,
    orientation_sign,
    os_relation_pairings,
    os_to_bm,
    pair_form_cell,
    pair_piece_cell,
    pairing_matrix,
)
from .partition import (
    GaussPoint,
    PieceAssignment,
    classify,
    in_complement,
    in_piece,
    real_part_certificate,
    real_part_piece,
    sample_gauss_point,
    sample_piece_member,
    verify_partition,
    verify_star_shaped,
)
from .render import render_svg
from .stratify import (
    Stratification,
    Stratum,
    level_of,
    minimal_flat,
    order_leq,
    stratification,
)

__version__ = "0.1.0"
