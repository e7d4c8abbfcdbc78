"""
Strong cospectrality on small graphs
====================================

Exact decisions on P3, K3 and the 2x3 grid, cross-checked numerically.
"""

from strongcospec import (
    are_strongly_cospectral_exact,
    cartesian_product,
    charpoly,
    complete_graph,
    find_sets,
    path_graph,
    strongly_cospectral_classes,
)

# P3: the two ends are strongly cospectral, signs (+, -, +) over the eigenvalues
p3 = path_graph(3)
print("phi(P3) =", charpoly(p3))
print("P3 ends:", are_strongly_cospectral_exact(p3, 0, 2).strongly_cospectral)
print("P3 end/center:", are_strongly_cospectral_exact(p3, 0, 1).witness["kind"])

# K3: every pair is cospectral, but -1 is a double eigenvalue
d = are_strongly_cospectral_exact(complete_graph(3), 0, 1)
print("K3 cospectral", d.cospectral, "strong", d.strongly_cospectral, "witness", d.witness["kind"])

# the 2x3 grid: four corners form one class, the middle pair forms another
grid = cartesian_product(path_graph(2), path_graph(3))
print("grid classes:", strongly_cospectral_classes(grid))
for s in find_sets(grid):
    print("  set", s["vertices"], "parity error", s["parity_error"])
