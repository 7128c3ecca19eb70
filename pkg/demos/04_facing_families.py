"""Growing one facing triple into four pairwise-disjoint, strongly separated pairs.

The group generated by three involutions acts on the 3-regular tree.
Each step finds a word flipping a halfspace and uses it to push earlier
pairs deeper into the tree.

Run: python3 demos/04_facing_families.py
"""

from cubegirth.actions import tree_action
from cubegirth.amplify import amplify_facing, verify_family
from cubegirth.halfspaces import Halfspace
from cubegirth.lazy import FreeProductTree

T = FreeProductTree([2, 2, 2])
act = tree_action(T)
a, b, c = Halfspace(T, "a", "ab"), Halfspace(T, "b", "ba"), Halfspace(T, "", "c")

fam = amplify_facing(act, (a, b, c), 4, flip_search_len=64, radius=64)
for row in fam.transcript:
    if "step" in row:
        flips = [w for w in (row.get("word"), row.get("first_flip"), row.get("second_flip")) if w]
        print(f"step {row['step']}: flipping words {flips}")
    else:
        print(f"    {row['claim']}: {row['holds']}")

for i, (x, y) in enumerate(fam.pairs, 1):
    print(f"pair {i}: edges {x.tail}->{x.head} and {y.tail}->{y.head}")
rep = verify_family(T, fam, 64)
print("all halfspaces disjoint and every pair strongly separated:", rep.ok)
