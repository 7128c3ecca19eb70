"""Finite median complexes shared by several test modules."""

from cubegirth.constructions import build_line_complex, hypercube_pair
from cubegirth.core import grid, hypercube, path_graph, product, random_tree, staircase, star


def median_corpus() -> dict:
    X, pair = hypercube_pair(2)
    line = build_line_complex(X, pair)
    out = {f"cube{n}": hypercube(n) for n in range(1, 5)}
    out.update({
        "grid23": grid(2, 3), "grid34": grid(3, 4), "grid55": grid(5, 5),
        "path6": path_graph(6), "star5": star(5),
        "stair3": staircase(3), "stair5": staircase(5),
        "line_I2_3": line.copies(-1, 1), "line_I2_5": line.copies(-2, 2),
        "cube2_x_path3": product(hypercube(2), path_graph(3)),
        "star3_x_path2": product(star(3), path_graph(2)),
        "cube6": hypercube(6), "grid10": grid(10, 10),
        "cube3_x_grid45": product(hypercube(3), grid(4, 5)),
        "tree_x_tree": product(random_tree(5, seed=1), random_tree(4, seed=2)),
    })
    for s in range(6):
        out[f"tree{s}"] = random_tree(8 + 3 * s, seed=s)
    return out
