"""Gray-code generation of acyclic orientations and related Hamilton paths.

The generation engines live in :mod:`orientgen.chordal` (arc flips on
chordal graphs), :mod:`orientgen.hypergen` (pair flips on hypergraphs in
hyperfect elimination order, elimination forests), and
:mod:`orientgen.quotients` (Hamilton paths in lattice quotient cover
graphs).  :mod:`orientgen.oracle` holds the independent brute-force
counterparts every listing is certified against, and
:mod:`orientgen.cli` the command line.
"""

from .errors import CapExceeded, InputError
from .graphs import Digraph, Graph, find_peo, is_peo, orient
from .hypergraphs import Hypergraph, find_heo, graphical_building_set, is_heo
from .quotients import build_ar_poset, classify

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "Digraph",
    "Graph",
    "Hypergraph",
    "InputError",
    "build_ar_poset",
    "classify",
    "find_heo",
    "find_peo",
    "graphical_building_set",
    "is_heo",
    "is_peo",
    "orient",
    "__version__",
]
