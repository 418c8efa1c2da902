"""Exact-arithmetic invariants of splice diagrams of graph manifolds.

The package decides, from a splice diagram alone, whether the universal
abelian cover of the corresponding rational-homology-sphere graph manifold
is itself a rational homology sphere, and builds the combinatorial skeleton
of the cover's decomposition.  A plumbing-graph oracle produces realizable
diagrams for cross-validation.  All arithmetic is exact (arbitrary-precision
integers and rationals); nothing here ever touches floating point.
"""

__version__ = "0.1.0"

from .errors import InputError, ParseError, InconsistencyError
from .diagram import SpliceDiagram, EdgeEnd, parse_diagram, render_diagram

__all__ = [
    "__version__",
    "InputError",
    "ParseError",
    "InconsistencyError",
    "SpliceDiagram",
    "EdgeEnd",
    "parse_diagram",
    "render_diagram",
]
