"""
Edge bounds and the two extremal constructions
==============================================

How many k-sets can a family on [n] hold before it is forced to contain t
pairwise disjoint sets? Two constructions give lower bounds, and this script
puts numbers on both.
"""

from hypermatch import erdos_bound, gen_clique_construction, gen_cover_construction, max_matching

###############################################################################
# The cover construction takes every k-set meeting {1, ..., t-1}; the clique
# takes every k-subset of [kt-1]. Neither has t disjoint edges.

n, k, t = 9, 3, 2
report = erdos_bound(n, k, t)
for key, value in report.to_dict().items():
    print(f"{key:>20}: {value}")

###############################################################################
# Build both families and confirm the sizes and matching numbers.

cover = gen_cover_construction(n, k, t)
clique = gen_clique_construction(n, k, t)
print("cover :", len(cover), "edges, nu =", max_matching(cover)[0])
print("clique:", len(clique), "edges, nu =", max_matching(clique)[0])

###############################################################################
# Small n favours the clique. Sweep n for k=2, t=3 and watch the winner flip.

for n in range(5, 13):
    r = erdos_bound(n, 2, 3)
    print(f"n={n:2d}  cover={r.cover_bound:3d}  clique={r.clique_bound:3d}  {r.regime.value}")
