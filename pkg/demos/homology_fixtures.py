"""
Neighbourhood complexes and their homology
==========================================

GF(2) and integral Betti numbers for a few complexes whose answers are
known by hand, including one with torsion.
"""

from chroma.complex import neighborhood_complex, rp2, simplex_boundary
from chroma.graph import complete_graph, cycle_graph, reduced_exponential
from chroma.homology import betti_gf2, betti_integer, homology_connectivity

# N(K_4) is the boundary of a tetrahedron: a 2-sphere.
cx = neighborhood_complex(complete_graph(4), "facets")
print("N(K4) facets:", cx.facets)
print("  Z2 betti:", betti_gf2(cx, 2).betti)

# N(C_4) is two disjoint edges.
print("N(C4) betti:", betti_gf2(neighborhood_complex(cycle_graph(4)), 1).betti)

# RP^2 sees the difference between the two coefficient systems.
print("RP2 over Z2:", betti_gf2(rp2(), 2).betti)
z = betti_integer(rp2(), 2)
print("RP2 over Z: free", z.betti, "torsion", z.torsion)

# The n = 2 family is a product of two spheres: the torus for m = 3.
torus = neighborhood_complex(reduced_exponential(2, 3))
print("N(K_3^K_2):", betti_gf2(torus, 2).betti)

# Connectivity is read off reduced homology, and says "at least" when it runs
# out of computed degrees.
print("S^3 connectivity through degree 2:",
      homology_connectivity(betti_gf2(simplex_boundary(4), 2, reduced=True)))
print("S^3 connectivity through degree 3:",
      homology_connectivity(betti_gf2(simplex_boundary(4), 3, reduced=True)))
