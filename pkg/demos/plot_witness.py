"""
Extracting disjoint edges with an audit trail
=============================================

Above the right size thresholds a family must contain t disjoint edges. The
extractors here find them constructively and report which branch of the
argument produced each step.
"""

from hypermatch import ColoredFamilies, enumerate_ksubsets, make_family
from hypermatch.bounds import cover_bound, rainbow_threshold
from hypermatch.witness import rainbow_by_lemma3, rainbow_by_thm2, t_disjoint_by_thm1

###############################################################################
# A star at vertex 1 on 25 vertices has 24 edges and no two disjoint ones.
# One more edge is enough.

star = [e for e in enumerate_ksubsets(25, 2) if 1 in e]
F = make_family(25, 2, star + [(2, 3)])
print("edges:", len(F), "cover bound:", cover_bound(25, 2, 2))
report = t_disjoint_by_thm1(F, 2)
print(report.matching.edges, [tag.value for tag in report.case_trace])

###############################################################################
# Two different families, one edge from each.

G = make_family(25, 2, [e for e in enumerate_ksubsets(25, 2) if 4 in e] + [(5, 6)])
report = rainbow_by_thm2(ColoredFamilies(25, (F, G)))
print(report.to_dict())

###############################################################################
# The rainbow threshold is (t-1) C(n-1, k-1). Families just over it go through
# compression, splitting and lifting.

H = make_family(9, 3, [e for e in enumerate_ksubsets(9, 3) if 1 in e] + [(2, 3, 4)])
print("size", len(H), "threshold", rainbow_threshold(9, 3, 2))
report = rainbow_by_lemma3(ColoredFamilies(9, (H, H)))
print(report.matching.edges, "depth", report.recursion_depth)
print([tag.value for tag in report.case_trace])
