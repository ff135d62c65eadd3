"""
The colouring matching on N(K_m^{K_n})
======================================

Walk through the matching for (n, m) = (3, 4): statuses of a few cells,
the closed-form critical cells, the incidence matrix between critical
cells in dimensions p + 1 and p, and the resulting nonzero homology.
"""

from chroma.coloring import (ColoringCell, coloring_complex, critical_simplices,
                             enumerate_critical, incidence_structure, morse_betti_coloring,
                             verify_main)
from chroma.homology import betti_gf2

n, m = 3, 4
cc = coloring_complex(n, m)
print(f"G has {cc.graph.vertex_count} vertices")

for text in ["<1>", "<2>", "<1>, <2>", "<2>, <3>, <4>", "<2>, 134"]:
    cell = ColoringCell.parse(text)
    st = cc.mu_status(cell)
    partner = "" if st.is_critical else " " + cc.name(st.partner)
    print(f"  {str(cell):<18} {st.kind}{partner}")

groups = enumerate_critical(n, m)
print("critical cells per dimension:", [len(g) for g in groups])
for cell in groups[2][:3]:
    print("  ", cc.name(cell.simplex), "witness", cell.witness)

inc = incidence_structure(n, m)
print("incidence matrix:", inc.matrix.shape, "column weights",
      sorted(set(inc.matrix.column_weights())), "rank", inc.rank())
print(inc.check_columns().detail)

print("Morse Z2 betti:", morse_betti_coloring(n, m))
print("brute force:   ", betti_gf2(cc.complex, 2).betti)

report = verify_main(n, m)
print("verify:", "pass" if report.passed else "fail", "-", report.note)
