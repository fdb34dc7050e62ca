"""Tabulate dimension, Cartan determinant, K0(Dsg), global dimension and the
decomposition sweep for every algebra in a corpus manifest.

    python scripts/corpus_report.py [MANIFEST] [--imax 6] [--depth 8]
"""

import argparse
from dataclasses import dataclass

from gradedquiver import (
    build_algebra,
    cartan_matrix,
    fixture_sweep,
    global_dimension_probe,
    k0_singularity,
    load_manifest,
    load_presentation,
    shipped_manifest,
)


@dataclass
class ReportConfig:
    manifest: str
    i_max: int = 6
    depth: int = 8


def run(cfg: ReportConfig):
    cases = load_manifest(cfg.manifest)
    sweep = fixture_sweep(cases, cfg.i_max)
    status = {}
    for r in sweep.results:
        status.setdefault(r.case, []).append(r.status)
    header = f"{'algebra':26s} {'field':5s} {'n':>2s} {'dim':>4s} {'det C':>6s}  {'K0(Dsg)':12s} {'gl.dim':18s} lemma"
    print(header)
    print("-" * len(header))
    for case in cases:
        alg = build_algebra(load_presentation(case.algebra_path))
        C = cartan_matrix(alg)
        gd = global_dimension_probe(alg, cfg.depth)
        st = status.get(case.name, [])
        lemma = f"{st.count('pass')}/{len(st)} pass"
        print(f"{case.name:26s} {alg.field.label:5s} {alg.n:2d} {alg.dim:4d} {C.det():6d}  "
              f"{str(k0_singularity(C)):12s} {str(gd):18s} {lemma}")
    for w in sweep.warnings:
        print("warning:", w)
    return sweep.exit_code


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("manifest", nargs="?", default=str(shipped_manifest()))
    ap.add_argument("--imax", type=int, default=6)
    ap.add_argument("--depth", type=int, default=8)
    a = ap.parse_args()
    raise SystemExit(run(ReportConfig(a.manifest, a.imax, a.depth)))
