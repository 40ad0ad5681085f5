"""capregion: capacity regions of capacitated networks.

Exact rational computation of the routing capacity region and the
semi-linear coding capacity region of directed acyclic networks, with
approximate multiplicative-weights ray oracles, 2D polytope reconstruction,
and membership testing.
"""

from capregion.network import (
    Edge,
    Message,
    Network,
    NetworkParseError,
    RateWitness,
    ValidationReport,
    parse_network,
    rate_upper_bounds,
    serialize_network,
    topological_order,
    validate_network,
)
from capregion.exactlp import (
    CoveringInstance,
    LPInstance,
    LPSolution,
    solve_covering_box,
    solve_lp,
    verify_certificate,
)

__version__ = "0.1.0"
