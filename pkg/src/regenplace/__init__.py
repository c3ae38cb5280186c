"""Online regenerator placement: algorithms, exact oracles and adversaries."""

from .errors import (AdversaryError, CapacityError, FrequencyBoundError, InvalidInstanceError,
                     InvariantViolation, OracleLimitError, RegenError, UncoverableElementError)
from .model import (Instance, Lightpath, RegeneratorAssignment, Topology, TopologyKind, cost,
                    dump_instance, is_d_satisfied, load_instance, region_opt_bound_holds, regions)
from .pmax import Decision, PmaxState, pmax_counts, pmax_present
from .rlp_general import (ReductionState, count_length_d_paths, rlp_general_present,
                          subpaths_of_length_d)
from .rlp_path import (GridState, LazyGreedyRLP, deterministic_init, grid_present,
                       randomized_init)
from .setcover import SetCoverState, osc_init, osc_present

__version__ = "0.1.0"
