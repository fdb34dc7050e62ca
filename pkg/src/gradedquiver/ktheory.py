"""Cartan matrices, Grothendieck groups and the cone of the Cartan matrix.

Orientation: ``C[i][j]`` is the multiplicity of S_j in P_i, so the map
K0(Perf) -> K0(D^b) sends the row vector of [P_i] (projective basis) to row
i of C (simple basis).  Cokernels and kernels are invariant under this
choice because the Smith form of C and of its transpose agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .modules import composition_multiplicities, projective
from .snf import SNFDecomposition, det, smith_normal_form


class CartanMismatchError(RuntimeError):
    """The two Cartan routes disagree: an internal consistency failure."""


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def total(self) -> int:
        return sum(map(sum, self.entries))

    def det(self) -> int:
        return det(self.entries)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def cartan_by_paths(alg) -> list[list[int]]:
    """dim e_i A e_j, read off the normal-form basis."""
    return [[len(alg.paths_between(i, j)) for j in range(alg.n)] for i in range(alg.n)]


def cartan_by_composition(alg) -> list[list[int]]:
    """Composition multiplicities of the indecomposable projectives."""
    return [list(composition_multiplicities(projective(alg, i))) for i in range(alg.n)]


def cartan_matrix(alg) -> CartanMatrix:
    a, b = cartan_by_paths(alg), cartan_by_composition(alg)
    if a != b:
        raise CartanMismatchError(f"Cartan routes disagree: {a} vs {b}")
    return CartanMatrix(tuple(map(tuple, a)))


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Z^free_rank + Z/m_1 + ... with m_1 | m_2 | ..., all m_i >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")
        t = self.torsion
        if any(m < 2 for m in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not an invariant-factor chain")

    @classmethod
    def from_cyclic(cls, orders) -> AbelianGroup:
        """Canonical form of a sum of cyclic groups Z/m (m = 0 means Z, m = 1 trivial)."""
        orders = [abs(int(m)) for m in orders]
        free = orders.count(0)
        finite = [m for m in orders if m > 1]
        if not finite:
            return cls(free)
        D = [[m if i == j else 0 for j in range(len(finite))] for i, m in enumerate(finite)]
        factors = smith_normal_form(D).invariant_factors
        return cls(free, tuple(d for d in factors if d > 1))

    def cyclic_orders(self) -> list[int]:
        return [0] * self.free_rank + list(self.torsion)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for m in self.torsion:
            out *= m
        return out

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{m}" for m in self.torsion)
        return " + ".join(parts) or "0"

    def to_tree(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}


@dataclass(frozen=True)
class K0Group:
    """Free abelian group with a labelled basis."""

    rank: int
    basis: tuple[str, ...]


def k0_perf(alg) -> K0Group:
    return K0Group(alg.n, tuple(f"[P{v}]" for v in alg.quiver.vertices))


def k0_db(alg) -> K0Group:
    return K0Group(alg.n, tuple(f"[S{v}]" for v in alg.quiver.vertices))


def k0_inclusion(alg) -> list[list[int]]:
    """Matrix of K0(Perf) -> K0(D^b): row i expresses [P_i] through a composition series."""
    rows = cartan_by_composition(alg)
    if rows != cartan_matrix(alg).rows():
        raise CartanMismatchError("K0 inclusion matrix differs from the Cartan matrix")
    return rows


def _as_rows(C):
    return C.rows() if isinstance(C, CartanMatrix) else [list(map(int, r)) for r in C]


def _snf_orders(C) -> tuple[SNFDecomposition, list[int]]:
    """SNF of C and the cyclic orders of its cokernel (0 for each free summand)."""
    rows = _as_rows(C)
    snf = smith_normal_form(rows)
    diag = snf.diagonal
    n = len(rows[0]) if rows else 0
    return snf, diag + [0] * (n - len(diag))


def k0_singularity(C) -> AbelianGroup:
    """coker(C: Z^n -> Z^n)."""
    _, orders = _snf_orders(C)
    return AbelianGroup.from_cyclic(orders)


@dataclass(frozen=True)
class MotiveVerdict:
    trivial: bool
    det: int
    k0_singularity: AbelianGroup

    def __str__(self):
        if self.trivial:
            return f"trivial motive (det = {self.det}): every A1-invariant of Dsg vanishes"
        return f"nontrivial (det = {self.det}); K0(Dsg) = {self.k0_singularity}"


def motive_triviality(C) -> MotiveVerdict:
    """All A1-homotopy invariants of Dsg vanish iff C is invertible over Z."""
    rows = _as_rows(C)
    d = det(rows)
    return MotiveVerdict(d in (1, -1), d, k0_singularity(rows))


@dataclass(frozen=True)
class GradedGroupSpec:
    """E_*(k) given degreewise as finitely many abelian groups."""

    groups: dict = field(default_factory=dict)

    def __post_init__(self):
        for k, g in self.groups.items():
            if not isinstance(k, int) or not isinstance(g, AbelianGroup):
                raise TypeError("GradedGroupSpec maps int degrees to AbelianGroup")

    def at(self, i: int) -> AbelianGroup:
        return self.groups.get(i, AbelianGroup())

    def support(self) -> list[int]:
        return sorted(k for k, g in self.groups.items() if not g.is_zero())

    @classmethod
    def k0_only(cls) -> GradedGroupSpec:
        return cls({0: AbelianGroup(1)})

    @classmethod
    def from_tree(cls, tree) -> GradedGroupSpec:
        if not isinstance(tree, dict) or not isinstance(tree.get("degrees"), list):
            raise ValueError("group spec must be a mapping with a 'degrees' list")
        groups = {}
        for entry in tree["degrees"]:
            deg = int(entry["degree"])
            if deg in groups:
                raise ValueError(f"degree {deg} listed twice")
            free = int(entry.get("free_rank", 0))
            tors = [int(m) for m in entry.get("torsion", [])]
            if any(m < 2 for m in tors):
                raise ValueError("torsion orders must be >= 2")
            groups[deg] = AbelianGroup.from_cyclic([0] * free + tors)
        return cls(groups)

    def to_tree(self) -> dict:
        return {
            "degrees": [
                {"degree": k, "free_rank": g.free_rank, "torsion": list(g.torsion)}
                for k, g in sorted(self.groups.items())
            ]
        }


def _coker_orders(d: int, m: int) -> int:
    """Order of coker(d on Z/m) (m = 0 meaning Z); 0 encodes Z."""
    return gcd(d, m)


def _ker_orders(d: int, m: int) -> int:
    """Order of ker(d on Z/m) (m = 0 meaning Z); 0 encodes Z, 1 trivial."""
    if m == 0:
        return 0 if d == 0 else 1
    return gcd(d, m)


@dataclass(frozen=True)
class ConeResult:
    """Per degree i: 0 -> coker(C on A_i) -> pi_i(cone) -> ker(C on A_{i-1}) -> 0."""

    parts: dict

    @property
    def trivial(self) -> bool:
        return all(c.is_zero() and k.is_zero() for c, k in self.parts.values())

    def to_tree(self) -> dict:
        return {
            "trivial": self.trivial,
            "degrees": [
                {"degree": i, "cokernel_part": c.to_tree(), "kernel_part": k.to_tree()}
                for i, (c, k) in sorted(self.parts.items())
            ],
        }


def cone_invariant(C, spec: GradedGroupSpec) -> ConeResult:
    """Degreewise pieces of the cone of C acting diagonally on E(k)^n.

    Over the Smith form C ~ diag(d_1, ..., d_r, 0, ...), so each cyclic
    summand Z/m of A_i contributes coker = ker = Z/gcd(d, m) (with Z/0 = Z and
    ker(d on Z) = 0 for d != 0).  The extension is not resolved.
    """
    _, diag = _snf_orders(C)
    degrees = sorted(set(spec.support()) | {i + 1 for i in spec.support()})
    parts = {}
    for i in degrees:
        coker = [_coker_orders(d, m) for d in diag for m in spec.at(i).cyclic_orders()]
        ker = [_ker_orders(d, m) for d in diag for m in spec.at(i - 1).cyclic_orders()]
        parts[i] = (AbelianGroup.from_cyclic(coker), AbelianGroup.from_cyclic(ker))
    return ConeResult(parts)
