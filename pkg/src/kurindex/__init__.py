"""Order-dimension, breadth and Kuratowski-index bounds for finite posets,
exact dimension estimates for truncated cubes, and a free-set laboratory."""
from .budget import Budget
from .cubes import CubeSpec, blev, bm, build_cube, check_dim_transfer, psi_extend
from .dimension import check_dim_equals_suitable, dim_exact, dim_upper_width, n_suitable_exact
from .errors import BudgetExceeded, KurIndexError, ParseError
from .estimates import (
    asymptotic_check,
    best_relation,
    dushnik_dim,
    furedi_kahn_min_d,
    spencer_exponent,
    table_e,
)
from .freeset import SetMapping, config_search_p, config_search_q, find_free, is_free, leadsto_shadow
from .kur import AlephRelation, BoundInterval, kur_bounds
from .poset import Poset, antichain, breadth, chain, join_irreducibles, poset_from_covers, powerset, width

__version__ = "0.1.0"
