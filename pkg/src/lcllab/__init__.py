"""Locally checkable labeling schemes on small anonymous graphs: labelers,
verifiers, error-tolerant verification, exhaustive oracles and CONGEST runs."""

from .graph import Graph, LocalView, core_nodes, cycle_graph, has_cycle, local_view, neighborhood, path_graph
from .labelings import Labeling, NotInProperty
from .refix import ErrorBudget, refix_verdict
from .schemes import Property, SchemeId, SchemeSpec, VerdictMap, get_scheme, run_verifier

__version__ = "0.1.0"

__all__ = [
    "ErrorBudget",
    "Graph",
    "Labeling",
    "LocalView",
    "NotInProperty",
    "Property",
    "SchemeId",
    "SchemeSpec",
    "VerdictMap",
    "core_nodes",
    "cycle_graph",
    "get_scheme",
    "has_cycle",
    "local_view",
    "neighborhood",
    "path_graph",
    "refix_verdict",
    "run_verifier",
]
