"""Shortest relations in Cayley graphs of small permutation groups.

Run: python3 demos/02_girth_of_small_groups.py
"""

from cubegirth.girth import check_law, derived_series, girth_cayley, girth_sup_bounded, small_groups, symmetric
from cubegirth.lazy import FreeProductTree

groups = small_groups(24)
for name in ["Z5", "Z2^2", "S3", "Q8", "D6", "S4"]:
    G = groups[name]
    res = girth_cayley(G)
    print(f"{name:5s} order {G.order:2d}: girth {res.girth}, shortest relation {' '.join(res.witness)}")

# The largest girth over all generating sets with at most two elements.
for name in ["S3", "D4"]:
    sup = girth_sup_bounded(groups[name], 2)
    print(f"best girth of {name} with <= 2 generators: {sup.value} (examined {sup.examined} sets)")

# A law is a word that evaluates to the identity on every tuple of elements.
for word in ["[a,b]", "a^6", "[[a,b],[c,d]]"]:
    r = check_law(symmetric(4), word, "auto", seed=0)
    print(f"S4 satisfies {word!r}: {r.holds} ({r.tested} tuples tested)")

# S5 is not solvable: its derived series stops at A5.
print("derived series of S5:", derived_series(symmetric(5)).orders)

# A free group has no relations at all; a BFS to radius 8 only yields a lower bound.
res = girth_cayley(FreeProductTree([0, 0]), ["a", "b"], ["a", "b"], radius=8)
print(f"free group on a, b: no cycle within radius {res.radius}, girth >= {res.lower_bound}")
