"""Exhaustive searches that reproduce the small extremal values.

The single-family search finds the largest non-trivial t-intersecting family;
the pair search maximises |F||G| over cross t-intersecting pairs. Both return
a lex-least witness and report whether they finished.
"""
from crossfam.search import Budget, hmf_table, max_product_cross_1, max_t_intersecting

rows, text = hmf_table([(6, 3, 2), (7, 3, 2), (8, 3, 2), (9, 3, 2), (8, 4, 3)])
print(text)

res = max_product_cross_1(8, 3)
print(f"cross-intersecting 3-sets of [8]: best product {res.optimum}")

res = max_t_intersecting(12, 4, 2, nontrivial=True, budget=Budget(nodes=2000))
print(f"(12,4,2) with a 2000-node budget: best so far {res.optimum}, exhaustive={res.exhaustive}")
