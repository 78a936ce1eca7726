"""chromacut: color surfaces by refining 3-dimensional host graphs until
every interior edge degree is even."""

from .graphs import FVector, SimplicialGraph, dual_graph, glue
from .topology import Classification, Kind, classify, is_contractible

__all__ = [
    "FVector",
    "SimplicialGraph",
    "dual_graph",
    "glue",
    "Classification",
    "Kind",
    "classify",
    "is_contractible",
]

__version__ = "0.1.0"
