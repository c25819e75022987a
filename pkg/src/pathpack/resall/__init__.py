"""Covering solvers: full cover, SMFC, penalty-collecting cover, mountain
decomposition, single-mountain partial cover, LSPC and partial ResAll."""

from .base import INF, Unreachable, compress
from .cover import full_cover_resall, local_ratio_cover, pcresall_cost, pcresall_solve, smfc_solve
from .lspc import LspcTables, knapsack_gamma, lspc_solve, lspc_tables
from .mountains import (
    Mountain,
    MountainRange,
    category_count,
    check_mountain,
    check_mountain_range,
    extremal_subsets,
    make_mountain,
    mountain_decompose,
    single_mountain_partial,
)
from .partial import presall_solve, range_options
from .reduce import RangeBackMap, check_wide_split, reduce_range_to_lspc, split_resources
