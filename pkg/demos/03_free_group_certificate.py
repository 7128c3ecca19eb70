"""A checked ping-pong certificate for two elements of the free group on a, b.

The group acts on its own Cayley tree.  Attracting sets are built from the
poles of a and b, and the certificate shows that high powers of a and b
generate a free subgroup that also plays ping-pong with a and b themselves.

Run: python3 demos/03_free_group_certificate.py
"""

import dataclasses
import json

from cubegirth.actions import tree_action
from cubegirth.halfspaces import Halfspace
from cubegirth.lazy import FreeProductTree
from cubegirth.pingpong import YHalfspace, build_cert_from_poles, cert_to_json, check_girth_cert, free_sanity

T = FreeProductTree([0, 0])
act = tree_action(T)
ha = YHalfspace(0, Halfspace(T, "", "a"))  # words starting with a
hb = YHalfspace(0, Halfspace(T, "", "b"))

cert = build_cert_from_poles(act, "a", "b", ["a", "b"], ([ha], [hb]), radius=18)
print(f"found: depth N = {cert.N}, power M = {cert.M}, sigma = {cert.sigma}, tau = {cert.tau}, base point {cert.x}")

for radius in (12, 18):
    v = check_girth_cert(cert, act, K=3, radius=radius)
    print(f"\ncheck at radius {radius}: {v.status}")
    for c in v.conditions:
        print(f"  [{c.status:12s}] {c.name}")

print("\nrandom reduced words fixing the base point:", free_sanity(act, cert, trials=500))

# Breaking the certificate on purpose must never give a pass.
bad = dataclasses.replace(cert, x=(0, "aaa"))
print("base point moved into the a-attractor:", check_girth_cert(bad, act, radius=18).status)

print("\nserialised size:", len(json.dumps(cert_to_json(cert, {"kind": "tree", "orders": [0, 0]}))), "bytes")
