"""
Alpha and lambda on a spider
============================

Zeros and poles of alpha interlace; lambda is minus a square over a square.
"""

from strongcospec import alpha, alpha_branch_properties, lambda_, spider_graph

s = spider_graph([1, 2, 3])
print("graph6:", s.to_graph6())

for v in range(s.n):
    a = alpha(s, v)
    rep = alpha_branch_properties(a, 20)
    print(v, "pattern", rep["pattern"], "zeros", rep["zero_count"], "poles", rep["pole_count"], "ok", rep["ok"])

lam = lambda_(s, 1, 3)
print("lambda_13 =", lam.value)
print(lam.square_structure())
