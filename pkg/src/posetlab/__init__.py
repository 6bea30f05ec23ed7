"""posetlab: finite and omega-presented posets, interval orders, ordinals, factor posets."""
from .certificate import Certificate
from .errors import PosetLabError
from .ordinal import Ordinal, add, compare, limit_part, natural_sum, parse as parse_ordinal
from .poset import (FinitePoset, down_set, dual, embeds_pattern, from_edges, intersect_orders,
                    is_final_segment, is_initial_segment, lexicographic_sum, linear_extensions,
                    realizer_search, strengthens, transitive_reduction, up_set)
from .recognition import (interval_representation, is_interval_order, is_semiorder, is_threshold,
                          pred_quasiorder, psi_representation, succ_quasiorder)

__version__ = "0.1.0"
