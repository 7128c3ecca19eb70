"""Hyperplanes of a small median graph, and rebuilding it from its pocset.

Run: python3 demos/01_hyperplanes_and_duality.py
"""

from cubegirth.core import cycle_graph, find_isomorphism, grid, validate_median
from cubegirth.formats import save_pocset
from cubegirth.halfspaces import Halfspace, dual_complex, hyperplanes, pocset_of, quadrant_classify

# A 2x3 grid: two rows of three vertices, so two unit squares side by side.
X = grid(2, 3)
print(f"grid(2, 3): {X.n} vertices, {len(X.edges())} edges, median = {validate_median(X).is_median}")

# Odd cycles are the simplest graphs that are not median.
rep = validate_median(cycle_graph(5))
print(f"5-cycle median? {rep.is_median}; triple without a unique median: {rep.counterexample}")

# Opposite edges of every square are glued into classes; each class cuts the grid in two.
for hp in hyperplanes(X):
    h = Halfspace.from_key(X, hp.id, 0)
    print(f"  hyperplane {hp.id}: {len(hp.edges)} edges, one side = {sorted(h.vertex_set())}")

# How do two hyperplanes sit relative to each other?
for i, j in [(0, 1), (1, 2), (0, 2)]:
    rel = quadrant_classify(X, (i, 0), (j, 0))
    print(f"  pair ({i}, {j}): {rel.base}, strongly separated = {rel.strongly_separated}")

# The halfspaces with inclusion form a pocset; its consistent side choices
# are exactly the vertices again.
P = pocset_of(X)
print("\npocset text:\n" + save_pocset(P))
D = dual_complex(P)
print(f"dual complex: {D.n} vertices; isomorphic to the grid: {find_isomorphism(X, D) is not None}")
