"""Search cyclic Nakayama algebras for Cartan determinant +-1 with infinite
global dimension: singularity category nonzero while every A1-invariant of it
vanishes.

Each algebra is the cyclic quiver on n vertices with the path of length
``lengths[i]`` starting at vertex i set to zero (a Kupisch-type series).

    python scripts/nakayama_search.py --max-vertices 3 --max-length 4
"""

import argparse
import itertools
from dataclasses import dataclass

from gradedquiver import build_algebra, cartan_matrix, global_dimension_probe, k0_singularity
from gradedquiver.presentation import presentation_from_tree


@dataclass
class SearchConfig:
    max_vertices: int = 3
    max_length: int = 4
    depth: int = 8


def nakayama_tree(lengths):
    n = len(lengths)
    arrows = [{"name": f"a{i}", "source": str(i), "target": str((i + 1) % n)} for i in range(n)]
    relations = [[{"coeff": 1, "path": [f"a{(i + k) % n}" for k in range(ell)]}] for i, ell in enumerate(lengths)]
    return {"field": "Q", "vertices": [str(i) for i in range(n)], "arrows": arrows, "relations": relations}


def admissible(lengths):
    # Kupisch condition: the zero path from i+1 may not outlive the one from i by more than a step
    n = len(lengths)
    return all(lengths[(i + 1) % n] >= lengths[i] - 1 for i in range(n))


def search(cfg: SearchConfig):
    hits = []
    for n in range(1, cfg.max_vertices + 1):
        for lengths in itertools.product(range(2, cfg.max_length + 1), repeat=n):
            if not admissible(lengths) or lengths != min(lengths[k:] + lengths[:k] for k in range(n)):
                continue
            alg = build_algebra(presentation_from_tree(nakayama_tree(lengths)))
            C = cartan_matrix(alg)
            d = C.det()
            gd = global_dimension_probe(alg, cfg.depth)
            mark = "*" if abs(d) == 1 and not gd.finite else " "
            print(f"{mark} n={n} lengths={lengths} dim={alg.dim:3d} det={d:3d} "
                  f"K0(Dsg)={str(k0_singularity(C)):8s} {gd}")
            if mark == "*":
                hits.append(lengths)
    print(f"{len(hits)} algebra(s) with det +-1 and global dimension > {cfg.depth}: {hits}")
    return hits


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-vertices", type=int, default=3)
    ap.add_argument("--max-length", type=int, default=4)
    ap.add_argument("--depth", type=int, default=8)
    a = ap.parse_args()
    search(SearchConfig(a.max_vertices, a.max_length, a.depth))
