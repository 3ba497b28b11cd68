"""Flow, cut and Gordon-Litherland lattices of link diagrams on closed surfaces."""
from .diagram import SurfaceDiagram, TangleSpec, from_pd, load_diagram, mutate, parse_diagram
from .embgraph import EmbeddedGraph, tait_graphs
from .intlat import IntegerLattice
from .pipeline import compare_bundles, invariant_bundle

__version__ = "0.1.0"

__all__ = ["SurfaceDiagram", "TangleSpec", "from_pd", "load_diagram", "mutate", "parse_diagram",
           "EmbeddedGraph", "tait_graphs", "IntegerLattice", "compare_bundles", "invariant_bundle"]
