"""
Discrete Morse theory on small complexes
========================================

A random acyclic matching shrinks a complex to its critical cells; the
Morse complex built from alternating paths has the same homology.
"""

import random

from chroma.complex import SimplicialComplex, cone, rp2
from chroma.homology import betti_gf2
from chroma.morse import (PairMatching, alternating_paths_from, cone_matching,
                          critical_cells_scan, greedy_acyclic_matching, morse_betti_gf2,
                          morse_betti_integer, verify_acyclic, verify_matching)

cx = rp2()
m = greedy_acyclic_matching(cx, random.Random(0))
print(verify_matching(cx, m, 2).detail, "/", verify_acyclic(cx, m, 2).detail)
crit = critical_cells_scan(cx, m, 2)
print("critical cells per dimension:", [len(c) for c in crit])
print("Morse Z2 betti:", morse_betti_gf2(cx, m, 2).betti, " simplicial:", betti_gf2(cx, 2).betti)
t = morse_betti_integer(cx, m, 2)
print("signed Morse complex over Z: free", t.betti, "torsion", t.torsion)

for tau in crit[2]:
    for path in alternating_paths_from(cx, m, tau):
        print("  path", " ".join(map(str, path.cells)))

# A cone collapses onto its apex.
c = cone(rp2())
print("cone:", critical_cells_scan(c, cone_matching(c, 6), 3))

# Matching vertices around a square to the edge ahead of them is not acyclic.
square = SimplicialComplex.from_facets([(0, 1), (1, 2), (2, 3), (0, 3)])
bad = PairMatching([((0,), (0, 1)), ((1,), (1, 2)), ((2,), (2, 3)), ((3,), (0, 3))])
res = verify_acyclic(square, bad, 1)
print("square:", res.detail, res.witness)
