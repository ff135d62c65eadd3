"""Graph colouring complexes: neighbourhood complexes, homology and discrete Morse theory."""

from chroma.complex import SimplicialComplex, neighborhood_complex
from chroma.errors import CapExceeded
from chroma.graph import (Graph, categorical_product, complete_graph, cycle_graph,
                          exponential_graph, fold_reduce, reduced_exponential)
from chroma.homology import BettiTable, betti_gf2, betti_integer, homology_connectivity

__version__ = "0.1.0"
