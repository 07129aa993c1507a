"""Structure analysis of finite directed graphs through their shift dynamics.

The graph side (cycles, return paths, hereditary sets, maximal heads) and the
dynamical side (eventually periodic paths, the shift and its transfer
operator) are computed separately and checked against each other.
"""

from .graph import Graph, GraphSyntaxError, parse_graph, format_graph, validate
from .lattice import EnumerationBoundError, enumerate_sat_hered, maximal_heads, primitive_catalog, simplicity
from .dynamics import EvPath, PropertyViolation
from .transfer import CylFun, alpha, chi, inner, transfer_L
from .identities import verify_identities

__version__ = "0.1.0"
