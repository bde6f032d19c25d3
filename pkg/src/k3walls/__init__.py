"""Wall-and-chamber counts for spherical Mukai vectors on an elliptic K3 surface."""
from .arith import cf_value, euler_phi, fibonacci, mod_inverse_canonical, pell_solutions, tau, tau_sieve
from .lattice import (
    ELLIPTIC,
    PELL,
    DivisorClass,
    LatticeError,
    NSLattice,
    intersect,
    parse_divisor,
    perp_meets_ample,
    primitive_normalize,
)
from .mukai import (
    ChernVector,
    MukaiVector,
    ParamCoords,
    chern_of,
    from_param,
    is_spherical,
    line_bundle_vector,
    mukai_pairing,
    to_param,
    twist_chain,
    twist_reflect,
)
from .walls import (
    CountReport,
    Wall,
    chamber_count,
    count_H,
    enumerate_destabilizers,
    f_count,
    f_count_divisor,
    g_prime,
    g_sum,
    g_total,
    numerical_wall_candidates,
    wall_set,
)
from .bounds import h_stats, h_stats_range
from .pell import certify_family

__version__ = "0.1.0"
