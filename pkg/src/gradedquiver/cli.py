"""Command-line front end.

Every subcommand prints human-readable text by default and a JSON document
with ``--format tree``.  Exit codes: 0 ok, 2 parse error, 3 validation or
input error, 4 property failure, 5 inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .algebra import build_algebra, validate_grading
from .ktheory import (
    CartanMismatchError,
    GradedGroupSpec,
    cartan_matrix,
    cone_invariant,
    k0_db,
    k0_inclusion,
    k0_perf,
    k0_singularity,
    motive_triviality,
)
from .lemma import fixture_sweep, load_manifest, shipped_manifest
from .modules import module_from_selector, module_from_tree
from .presentation import PresentationError, ValidationError, load_tree, parse_presentation
from .resolutions import HypothesisError, ext_graded, minimal_graded_resolution
from .snf import smith_normal_form
from .ungraded import ext_ungraded

SCHEMA_VERSION = 1


class PropertyFailure(Exception):
    exit_code = 4


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _window(text):
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("window must have LO <= HI")
    return lo, hi


def _global_flags(parser, suppress=False):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=["text", "tree"], default=d("text"))
    parser.add_argument("--depth", type=_nonneg_int, default=d(8), help="resolution depth (default 8)")
    parser.add_argument("--imax", type=_nonneg_int, default=d(None), help="top Ext degree")
    parser.add_argument("--jwindow", type=_window, default=d(None), help="twist window LO:HI")
    spec = parser.add_mutually_exclusive_group()
    spec.add_argument("--spec", default=d(None), help="graded group spec file for the cone")
    spec.add_argument("--k0-only", action="store_true", default=d(False), help="use the E = K0 preset")


def _load_algebra(path):
    data = Path(path).read_bytes()
    pres = parse_presentation(data.decode("utf-8"))
    return build_algebra(pres), hashlib.sha256(data).hexdigest()


def _module(alg, text):
    p = Path(text)
    if p.suffix in (".yaml", ".yml", ".json") and p.exists():
        return module_from_tree(alg, load_tree(p.read_text(encoding="utf-8")))
    return module_from_selector(alg, text)


def _doc(args, payload, sha=None):
    prov = {"command": args.command, "options": {
        "depth": args.depth, "imax": args.imax,
        "jwindow": list(args.jwindow) if args.jwindow else None,
        "spec": args.spec, "k0_only": args.k0_only,
    }}
    if getattr(args, "algebra", None):
        prov["algebra_file"] = args.algebra
        prov["algebra_sha256"] = sha
    return {"schema_version": SCHEMA_VERSION, "provenance": prov, "result": payload}


def _matrix_text(rows, indent="  "):
    if not rows:
        return indent + "[]"
    w = max(len(str(x)) for r in rows for x in r)
    return "\n".join(indent + "[" + " ".join(str(x).rjust(w) for x in r) + "]" for r in rows)


def _table_text(rows: dict, cols: list, corner: str) -> str:
    """rows: label -> {col: value}."""
    head = [corner] + [str(c) for c in cols]
    body = [[str(r)] + [str(vals.get(c, "")) if vals.get(c, 0) else "." for c in cols] for r, vals in rows.items()]
    widths = [max(len(line[k]) for line in [head] + body) for k in range(len(head))]
    return "\n".join("  ".join(x.rjust(w) for x, w in zip(line, widths)) for line in [head] + body)


def cmd_info(args):
    alg, sha = _load_algebra(args.algebra)
    rep = validate_grading(alg)
    by_degree = {}
    for b in alg.basis:
        by_degree[b.degree] = by_degree.get(b.degree, 0) + 1
    out = {
        "field": alg.field.label,
        "n": alg.n,
        "dim": alg.dim,
        "loewy_length": alg.loewy_length,
        "radical_dim": alg.dim - alg.n,
        "basis_by_degree": {str(k): v for k, v in sorted(by_degree.items())},
        "basis": [alg.element_text({i: alg.field.one}) for i in range(alg.dim)],
        "grading_ok": rep.passed,
    }
    text = [
        f"field {out['field']}; n = {alg.n} simples; dim = {alg.dim}; Loewy length {alg.loewy_length}",
        "basis by degree: " + ", ".join(f"deg {k}: {v}" for k, v in sorted(by_degree.items())),
        "basis: " + ", ".join(out["basis"]),
        f"radical dim {out['radical_dim']}; semi-simple grading: {'ok' if rep.passed else 'FAILED'}",
    ]
    return out, "\n".join(text), sha, 0


def cmd_check_grading(args):
    alg, sha = _load_algebra(args.algebra)
    rep = validate_grading(alg)
    out = {
        "nonnegative_degrees": rep.nonnegative_degrees,
        "degree_zero_is_idempotent_span": rep.degree_zero_is_idempotent_span,
        "positive_part_nilpotent": rep.positive_part_nilpotent,
        "quotient_is_semisimple": rep.quotient_is_semisimple,
        "nilpotency_index": rep.nilpotency_index,
        "positive_part_dim": rep.positive_part_dim,
        "passed": rep.passed,
    }
    text = "\n".join(f"{k}: {v}" for k, v in out.items())
    return out, text, sha, 0 if rep.passed else 4


def cmd_cartan(args):
    alg, sha = _load_algebra(args.algebra)
    C = cartan_matrix(alg)
    inc = k0_inclusion(alg)
    perf, db = k0_perf(alg), k0_db(alg)
    out = {
        "cartan": C.rows(),
        "det": C.det(),
        "total": C.total(),
        "k0_perf": {"rank": perf.rank, "basis": list(perf.basis)},
        "k0_db": {"rank": db.rank, "basis": list(db.basis)},
        "k0_inclusion": inc,
    }
    lines = ["Cartan matrix (row i = composition factors of P_i):", _matrix_text(C.rows()), f"det = {out['det']}"]
    for p, row in zip(perf.basis, inc):
        terms = [f"{c}{s}" if c != 1 else s for c, s in zip(row, db.basis) if c]
        lines.append(f"{p} = " + " + ".join(terms))
    return out, "\n".join(lines), sha, 0


def cmd_snf(args):
    alg, sha = _load_algebra(args.algebra)
    C = cartan_matrix(alg)
    snf = smith_normal_form(C.rows())
    out = {"C": C.rows(), "U": [list(r) for r in snf.U], "D": [list(r) for r in snf.D],
           "V": [list(r) for r in snf.V], "invariant_factors": snf.invariant_factors}
    text = "\n".join([
        "U * C * V = D", "C =", _matrix_text(C.rows()), "U =", _matrix_text(snf.U),
        "V =", _matrix_text(snf.V), "D =", _matrix_text(snf.D),
    ])
    return out, text, sha, 0


def cmd_singularity_k0(args):
    alg, sha = _load_algebra(args.algebra)
    G = k0_singularity(cartan_matrix(alg))
    return {"k0_singularity": G.to_tree()}, f"K0(Dsg) = {G}", sha, 0


def _load_spec(args):
    if args.spec:
        try:
            return GradedGroupSpec.from_tree(load_tree(Path(args.spec).read_text(encoding="utf-8")))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, PresentationError):
                raise
            raise PresentationError(f"bad group spec {args.spec}: {exc}") from None
    return GradedGroupSpec.k0_only()


def cmd_motive(args):
    alg, sha = _load_algebra(args.algebra)
    C = cartan_matrix(alg)
    verdict = motive_triviality(C)
    spec = _load_spec(args)
    cone = cone_invariant(C, spec)
    out = {
        "det": verdict.det,
        "trivial": verdict.trivial,
        "k0_singularity": verdict.k0_singularity.to_tree(),
        "spec": spec.to_tree(),
        "cone": cone.to_tree(),
    }
    lines = [str(verdict), "cone of C on E(k)^n, per degree: 0 -> coker -> pi_i -> ker -> 0"]
    for i, (c, k) in sorted(cone.parts.items()):
        lines.append(f"  degree {i}: coker {c}; ker {k}")
    return out, "\n".join(lines), sha, 0


def cmd_resolve(args):
    alg, sha = _load_algebra(args.algebra)
    M = _module(alg, args.module)
    res = minimal_graded_resolution(M, args.depth)
    labels = alg.quiver.vertices
    terms = [[{"vertex": labels[v], "twist": t} for v, t in term] for term in res.terms]
    twists = sorted({t for term in res.terms for _, t in term})
    rows = {}
    for i, term in enumerate(res.terms):
        counts = {}
        for _, t in term:
            counts[t] = counts.get(t, 0) + 1
        rows[i] = counts
    out = {
        "module": args.module,
        "depth": args.depth,
        "length": res.length,
        "terminated": res.terminated,
        "terms": terms,
        "betti": [list(res.betti(i)) for i in range(res.length + 1)],
        "complex": res.is_complex(),
        "exact": res.is_exact(),
        "minimal": res.is_minimal(),
    }
    head = f"minimal graded resolution of {args.module} (depth {args.depth}); rows i, columns twist j of P_v(j)"
    lines = [head, _table_text(rows, twists, "i\\j")]
    for i, term in enumerate(res.terms):
        lines.append(f"P^{i} = " + (" + ".join(f"P{labels[v]}({t})" for v, t in term) or "0"))
    lines.append("projective dimension %s" % (res.length if res.terminated else f"> {res.length}"))
    return out, "\n".join(lines), sha, 0 if (res.is_complex() and res.is_exact()) else 4


def cmd_ext(args):
    alg, sha = _load_algebra(args.algebra)
    M = _module(alg, args.source)
    N = _module(alg, args.target)
    i_max = args.imax if args.imax is not None else 4
    table = ext_graded(M, N, i_max, args.jwindow)
    ung = ext_ungraded(M, N, i_max)
    lo, hi = table.j_window
    out = {
        "M": args.source, "N": args.target, "i_max": i_max, "j_window": [lo, hi],
        "graded": [[i, j, d] for (i, j), d in sorted(table.entries.items())],
        "graded_totals": [table.total(i) for i in range(i_max + 1)],
        "ungraded": ung,
    }
    cols = [j for j in range(lo, hi + 1) if any(table.entries[(i, j)] for i in range(i_max + 1))]
    cols = sorted(set(cols) | {0, 1})
    rows = {i: {j: table.entries[(i, j)] for j in cols} for i in range(i_max + 1)}
    lines = [
        f"dim Ext^i_gr({args.source}, {args.target}(j)), computed for j in [{lo}, {hi}]",
        _table_text(rows, cols, "i\\j"),
        "graded totals: " + " ".join(map(str, out["graded_totals"])),
        "ungraded Ext:  " + " ".join(map(str, ung)),
    ]
    return out, "\n".join(lines), sha, 0


def cmd_verify_lemma(args):
    path = args.manifest or shipped_manifest()
    cases = load_manifest(path)
    rep = fixture_sweep(cases, args.imax)
    out = rep.to_tree()
    lines = []
    for w in rep.warnings:
        lines.append(f"warning: {w}")
    for r in rep.results:
        extra = f" ({r.message})" if r.message else ""
        lines.append(f"{r.status.upper():13s} {r.case}: M={r.m} N={r.n}{extra}")
    lines.append(
        f"{len(rep.results)} cases: {rep.count('pass')} pass, {rep.count('fail')} fail, "
        f"{rep.count('inconclusive')} inconclusive, {rep.count('input-error')} input errors"
    )
    return out, "\n".join(lines), None, rep.exit_code


COMMANDS = {
    "info": (cmd_info, "dimension, Loewy length, grading summary"),
    "check-grading": (cmd_check_grading, "validate the semi-simple grading"),
    "cartan": (cmd_cartan, "Cartan matrix and K0 of Perf and D^b"),
    "snf": (cmd_snf, "Smith normal form of the Cartan matrix"),
    "singularity-k0": (cmd_singularity_k0, "K0 of the singularity category"),
    "motive": (cmd_motive, "det +-1 verdict and the cone of the Cartan matrix"),
    "resolve": (cmd_resolve, "minimal graded projective resolution"),
    "ext": (cmd_ext, "bigraded and ungraded Ext dimensions"),
    "verify-lemma": (cmd_verify_lemma, "run the RHom decomposition check over a corpus"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gradedquiver", description=__doc__.splitlines()[0])
    _global_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        _global_flags(p, suppress=True)
        if name == "verify-lemma":
            p.add_argument("manifest", nargs="?", help="corpus manifest (default: shipped corpus)")
            continue
        p.add_argument("algebra", help="algebra description file")
        if name == "resolve":
            p.add_argument("module", help="module selector (S1, P2, S1(-1), top) or module file")
        elif name == "ext":
            p.add_argument("source", help="module selector for M")
            p.add_argument("target", help="module selector for N")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        payload, text, sha, code = func(args)
    except (PresentationError, ValidationError, HypothesisError, CartanMismatchError) as exc:
        code = getattr(exc, "exit_code", 4)
        print(f"error: {exc}", file=sys.stderr)
        return code
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.format == "tree":
        print(json.dumps(_doc(args, payload, sha), indent=2, sort_keys=True, ensure_ascii=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
