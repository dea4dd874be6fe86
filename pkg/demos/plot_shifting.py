"""
Shifting a family toward its top vertex
=======================================

The shift S_ij swaps i for j inside an edge whenever that is possible without
colliding with an existing edge. Compressing means shifting the top vertex
down until nothing moves.
"""

from hypermatch import ColoredFamilies, Matching, make_family
from hypermatch.shifting import ShiftOp, apply_shift, compress_to_target, pull_back_matching, shift_with_trace

###############################################################################
# A single shift, blocked and unblocked.

F = make_family(3, 2, [(2, 3), (1, 3)])
G = make_family(3, 2, [(2, 3)])
print("S_21 on", F.edges, "->", apply_shift(ColoredFamilies(3, (F,)), ShiftOp(2, 1))[0].edges)
print("S_21 on", G.edges, "->", apply_shift(ColoredFamilies(3, (G,)), ShiftOp(2, 1))[0].edges)

###############################################################################
# Compression records each effective step, so it can be replayed or undone.

fams = ColoredFamilies(5, (make_family(5, 2, [(1, 5), (3, 5), (4, 5), (2, 3)]),))
compressed, trace = compress_to_target(fams)
print("compressed:", compressed[0].edges)
for step in trace.report()["steps"]:
    print("  step", step)

###############################################################################
# Pulling a matching back. After S_21 the first family is {1,3}; the matching
# ({1,3}, {2,4}) of the shifted families maps to ({2,3}, {1,4}) in the originals.

fams = ColoredFamilies(4, (make_family(4, 2, [(2, 3)]), make_family(4, 2, [(2, 4), (1, 4)])))
shifted, trace = shift_with_trace(fams, [(2, 1)])
m = Matching(((0, (1, 3)), (1, (2, 4))))
print("shifted matching :", m.edges)
print("original matching:", pull_back_matching(trace, m).edges)
