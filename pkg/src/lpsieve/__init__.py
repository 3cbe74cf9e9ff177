"""lpsieve: constant-factor approximate SVP/CVP in any lp norm.

The solvers sieve w.r.t. l2 and exploit translative covering bounds to
carry the guarantee to arbitrary p in [1, infinity]; an exact enumeration
oracle certifies every approximation factor at small dimension.
"""

from .core import (
    Basis,
    LatticeVector,
    NormKind,
    Scalar,
    as_scalar,
    as_vector,
    gram_schmidt,
    l2_norm_sq,
    lp_norm,
    lp_norm_exact,
    norm_measure,
)
from .covering import (
    CoveringBound,
    GridCover,
    ball_cube_exponent,
    covering_exponent_l1,
    covering_exponent_linf,
    greedy_grid_cover,
    intrinsic_volumes_B1,
    project_l1_ball,
    solve_a_eps_l1,
    solve_a_eps_linf,
    solve_phi,
    steiner_volume,
    unit_ball_volume,
)
from .cvp import (
    CvpQuery,
    EmbeddedBasis,
    approx_cvp_high,
    approx_cvp_low,
    approx_svp_low,
    distance_grid,
    kannan_embed,
    project_to_lp_ball,
    sample_cover_target,
)
from .errors import (
    AllZero,
    DimensionTooLarge,
    GroundSetTooLarge,
    ListCapExceeded,
    LpSieveError,
    ParseError,
    QuadratureFailure,
    RankDeficient,
    RejectionBudgetExceeded,
    SolverFailed,
)
from .instances import Instance, emit_instance, load_instance, parse_instance
from .oracle import OracleAnswer, babai_rounding, exact_cvp, exact_svp
from .reduction import LllParams, lll_reduce
from .sieve import SieveList, SieveParams, build_list, list_reduce, mod_lattice, sample_ball, sieve_candidates
from .svp import SolveReport, SvpQuery, approx_svp, mu_grid, pairwise_min_diff

__version__ = "0.1.0"
