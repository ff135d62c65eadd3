"""
Exponential graphs and folds
============================

Build ``K_3^{K_2}``, look at which maps carry loops, then fold the big
exponential graph ``K_m^{K_n}`` down to constant and injective maps.
"""

from chroma.graph import (categorical_product, complete_graph, exponential_graph, fold_reduce,
                          reduced_exponential)

# A map f: K_2 -> K_3 is adjacent to itself exactly when it is a homomorphism,
# i.e. when its two values differ.
e = exponential_graph(complete_graph(3), complete_graph(2))
for v in range(e.vertex_count):
    print(f"{e.vertex_name(v):>5}  loop={e.has_loop(v)}  degree={e.degree(v)}")

# K_2 x K_3 is a hexagon
hexagon = categorical_product(complete_graph(2), complete_graph(3))
print("K2 x K3 degrees:", [hexagon.degree(v) for v in range(6)])

# Folding K_4^{K_3} (64 maps) leaves the 4 constants and 24 injective maps.
full = exponential_graph(complete_graph(4), complete_graph(3))
folded = fold_reduce(full)
print(f"K_4^K_3: {full.vertex_count} maps fold to {folded.vertex_count}")
print("same labels as the direct construction:",
      sorted(map(str, folded.labels)) == sorted(map(str, reduced_exponential(3, 4).labels)))

# With fewer colours than vertices only the constants survive.
small = fold_reduce(exponential_graph(complete_graph(3), complete_graph(5)))
print("K_3^K_5 folds to", [small.vertex_name(v) for v in range(small.vertex_count)])
