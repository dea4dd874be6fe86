"""
Exact matching searches
=======================

Branch and bound for the matching number, rainbow matchings across several
families, and the brute-force extremal oracle for tiny parameters.
"""

from hypermatch.family import ColoredFamilies, complete_family, make_family
from hypermatch.bounds import gen_star_families
from hypermatch.solver import max_edges_no_t_matching, max_matching, rainbow_matching

###############################################################################
# The matching number of K6 and of a star.

nu, witness = max_matching(complete_family(6, 2))
print("nu(K6) =", nu, witness.edges)
print("nu(star) =", max_matching(make_family(5, 2, [(1, 2), (1, 3), (1, 4)]))[0])

###############################################################################
# Rainbow matchings take one edge from each family.

fams = ColoredFamilies(6, (make_family(6, 2, [(1, 2), (3, 4), (2, 4)]),
                           make_family(6, 2, [(1, 3)]),
                           make_family(6, 2, [(2, 5), (5, 6)])))
print("rainbow:", rainbow_matching(fams))
print("three stars at 1:", rainbow_matching(gen_star_families(6, 2, 3)))

###############################################################################
# The largest family with no t disjoint edges, found by exhaustive search.

for n, k, t in [(5, 2, 2), (6, 2, 3), (6, 3, 2)]:
    best, F = max_edges_no_t_matching(n, k, t)
    print(f"(n={n}, k={k}, t={t}) -> {best} edges, e.g. {F.edges[:4]} ...")
