"""Check RHom_A(M, N) = sum_{j <= 0} RHom_gr(M, N(j)) on concrete modules.

For M generated in degrees >= 0 and N concentrated in degrees <= 0, every
graded Ext^i(M, N(j)) with j > 0 must vanish and, for each i, the graded
dimensions summed over j must equal the ungraded Ext^i(M, N) computed by the
independent engine in ``ungraded``.
"""

from __future__ import annotations

import traceback
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebra import build_algebra
from .presentation import PresentationError, ValidationError, load_presentation, load_tree
from .resolutions import (
    HomComplex,
    HypothesisError,
    check_generated_nonnegative,
    default_j_window,
    minimal_graded_resolution,
)
from .modules import module_from_selector
from .ungraded import betti_ungraded, ext_ungraded

DEFAULT_J_CAP = 64


@dataclass
class LemmaReport:
    m_label: str
    n_label: str
    i_max: int
    depth: int
    j_window: tuple[int, int]
    cells: dict
    graded_totals: list[int]
    ungraded: list[int]
    vanishing_ok: bool
    sums_ok: list[bool]
    betti_ok: bool
    positive_coverage: int
    stabilized_by: str | None
    status: str
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def nonzero_cells(self) -> dict:
        return {k: v for k, v in sorted(self.cells.items()) if v}

    def to_tree(self) -> dict:
        return {
            "M": self.m_label,
            "N": self.n_label,
            "i_max": self.i_max,
            "depth": self.depth,
            "j_window": list(self.j_window),
            "nonzero_cells": [[i, j, d] for (i, j), d in self.nonzero_cells().items()],
            "graded_totals": self.graded_totals,
            "ungraded": self.ungraded,
            "vanishing_ok": self.vanishing_ok,
            "sums_ok": self.sums_ok,
            "betti_ok": self.betti_ok,
            "positive_coverage": self.positive_coverage,
            "stabilized_by": self.stabilized_by,
            "status": self.status,
            "message": self.message,
        }


def check_concentrated_nonpositive(N) -> None:
    bad = sorted({t for _, t in N.basis if t > 0})
    if bad:
        raise HypothesisError(f"target module has basis vectors in positive degrees {bad}")


def _support_lower_bound(res, N, i_max) -> int | None:
    """Below this twist every Hom_gr(P^i, N(j)), i <= i_max, is zero."""
    if N.is_zero():
        return None
    low = min(t for _, t in N.basis)
    gens = [t for i in range(min(i_max, res.length) + 1) for _, t in res.generators[i]]
    if not gens:
        return None
    return low - max(gens)


def verify_decomposition(M, N, i_max: int, j_window=None, cap: int = DEFAULT_J_CAP,
                         labels=("M", "N")) -> LemmaReport:
    check_generated_nonnegative(M)
    check_concentrated_nonpositive(N)
    depth = i_max + 1
    res = minimal_graded_resolution(M, depth)
    hc = HomComplex(res, N)
    lo, hi = j_window or default_j_window(M, i_max)
    lo = max(min(lo, 0), -cap)
    cells = {}

    def fill(a, b):
        added = False
        for i in range(i_max + 1):
            for j in range(a, b + 1):
                d = cells[(i, j)] = hc.ext_dim(i, j)
                added |= d > 0
        return added

    fill(lo, hi)
    width = max(-lo, 1)
    quiet = 0
    stabilized_by = None
    bound = _support_lower_bound(res, N, i_max)
    while width < cap and quiet < 2:
        new = min(2 * width, cap)
        added = fill(-new, -width - 1)
        lo, width = -new, new
        quiet = 0 if added else quiet + 1
    if quiet >= 2:
        stabilized_by = "widening"
    elif bound is None or lo <= bound:
        # every cochain group below the window is zero, so nothing was missed
        stabilized_by = "support bound"

    ungraded = ext_ungraded(M, N, i_max)
    totals = [sum(d for (i, _), d in cells.items() if i == ii) for ii in range(i_max + 1)]
    positive = [(k, d) for k, d in cells.items() if k[1] > 0]
    vanishing_ok = all(d == 0 for _, d in positive)
    sums_ok = [g == u for g, u in zip(totals, ungraded)]
    graded_betti = [res.betti(i) for i in range(res.length + 1)]
    ungraded_betti = betti_ungraded(M, res.length)
    betti_ok = graded_betti == ungraded_betti[: len(graded_betti)] and len(ungraded_betti) == len(graded_betti)

    if stabilized_by is None:
        status, msg = "inconclusive", f"window cap |j| <= {cap} reached before stabilization"
    elif not positive:
        status, msg = "inconclusive", "no positive-twist cells computed"
    elif vanishing_ok and all(sums_ok) and betti_ok:
        status, msg = "pass", ""
    else:
        problems = []
        if not vanishing_ok:
            problems.append("nonzero graded Ext at positive twist")
        if not all(sums_ok):
            problems.append("graded sums differ from ungraded Ext")
        if not betti_ok:
            problems.append("graded and ungraded Betti numbers differ")
        status, msg = "fail", "; ".join(problems)
    return LemmaReport(
        labels[0], labels[1], i_max, depth, (lo, hi), cells, totals, ungraded,
        vanishing_ok, sums_ok, betti_ok, len(positive), stabilized_by, status, msg,
    )


# -- corpus sweep ----------------------------------------------------------


@dataclass
class Case:
    name: str
    algebra_path: Path
    pairs: list | str = "simples"
    i_max: int = 6


@dataclass
class CaseResult:
    case: str
    m: str
    n: str
    status: str
    report: LemmaReport | None = None
    message: str = ""
    forensics: dict | None = None

    def to_tree(self) -> dict:
        out = {"case": self.case, "M": self.m, "N": self.n, "status": self.status, "message": self.message}
        if self.report is not None:
            out["report"] = self.report.to_tree()
        if self.forensics is not None:
            out["forensics"] = self.forensics
        return out


@dataclass
class SweepReport:
    results: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def count(self, status) -> int:
        return sum(r.status == status for r in self.results)

    @property
    def exit_code(self) -> int:
        if self.count("input-error"):
            return 3
        if self.count("fail"):
            return 4
        if self.count("inconclusive"):
            return 5
        return 0

    def to_tree(self) -> dict:
        return {
            "cases": len(self.results),
            "pass": self.count("pass"),
            "fail": self.count("fail"),
            "inconclusive": self.count("inconclusive"),
            "input_error": self.count("input-error"),
            "warnings": list(self.warnings),
            "results": [r.to_tree() for r in self.results],
        }


def shipped_manifest() -> Path:
    return Path(str(resources.files("gradedquiver") / "corpus" / "manifest.yaml"))


def load_manifest(path) -> list[Case]:
    path = Path(path)
    try:
        tree = load_tree(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise PresentationError(f"cannot read manifest {path}: {exc}") from None
    if tree is None:
        return []
    if not isinstance(tree, dict) or not isinstance(tree.get("cases", []), list):
        raise PresentationError("manifest must be a mapping with a 'cases' list")
    cases = []
    for k, entry in enumerate(tree.get("cases") or []):
        if not isinstance(entry, dict) or "algebra" not in entry:
            raise PresentationError(f"cases[{k}]: missing key 'algebra'")
        pairs = entry.get("pairs", "simples")
        if pairs != "simples" and not (
            isinstance(pairs, list) and all(isinstance(p, list) and len(p) == 2 for p in pairs)
        ):
            raise PresentationError(f"cases[{k}].pairs: expected 'simples' or a list of [M, N] selectors")
        i_max = entry.get("i_max", tree.get("i_max", 6))
        if not isinstance(i_max, int) or i_max < 0:
            raise PresentationError(f"cases[{k}].i_max: expected a non-negative integer")
        alg_path = (path.parent / entry["algebra"]).resolve()
        cases.append(Case(entry.get("name", Path(entry["algebra"]).stem), alg_path, pairs, i_max))
    return cases


def _forensics(M, N, i_max) -> dict:
    from .resolutions import ext_graded

    res = minimal_graded_resolution(M, i_max + 1)
    table = ext_graded(M, N, i_max, resolution=res)
    return {
        "resolution_terms": [[list(s) for s in term] for term in res.terms],
        "ext_graded": [[i, j, d] for (i, j), d in sorted(table.entries.items())],
        "ext_ungraded": ext_ungraded(M, N, i_max),
    }


def fixture_sweep(cases: list[Case], i_max: int | None = None) -> SweepReport:
    """verify_decomposition over every (M, N) pair of every case, in order."""
    report = SweepReport()
    if not cases:
        report.warnings.append("0 cases: vacuous pass")
        return report
    for case in cases:
        imax = case.i_max if i_max is None else i_max
        try:
            alg = build_algebra(load_presentation(case.algebra_path))
        except (OSError, PresentationError, ValidationError) as exc:
            report.results.append(CaseResult(case.name, "-", "-", "input-error", message=str(exc)))
            continue
        if case.pairs == "simples":
            labels = [f"S{v}" for v in alg.quiver.vertices]
            pairs = [(a, b) for a in labels for b in labels]
        else:
            pairs = [(str(a), str(b)) for a, b in case.pairs]
        for ml, nl in pairs:
            try:
                M = module_from_selector(alg, ml)
                N = module_from_selector(alg, nl)
                rep = verify_decomposition(M, N, imax, labels=(ml, nl))
            except (HypothesisError, ValidationError, ValueError) as exc:
                report.results.append(CaseResult(case.name, ml, nl, "input-error", message=str(exc)))
                continue
            except Exception:  # noqa: BLE001 - sweep must record, not abort
                report.results.append(
                    CaseResult(case.name, ml, nl, "fail", message=traceback.format_exc(limit=3))
                )
                continue
            res = CaseResult(case.name, ml, nl, rep.status, rep, rep.message)
            if rep.status != "pass":
                res.forensics = _forensics(M, N, imax)
            report.results.append(res)
    return report
