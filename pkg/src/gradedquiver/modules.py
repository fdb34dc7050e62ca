"""Finite-dimensional graded right modules over a graded quiver algebra.

A module is stored as a representation: a basis of vectors each living at a
vertex and an internal degree, plus one sparse matrix per arrow.  An arrow
a: v -> w of degree d sends basis vectors at (v, t) to combinations at
(w, t + d).  Every map below is degree 0 and vertex-preserving, so all
linear algebra splits into (vertex, degree) blocks.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property

from .algebra import GradedAlgebra
from .linalg import Vector, axpy, nullspace, rref


@dataclass(frozen=True, eq=False)
class GradedModule:
    algebra: GradedAlgebra = field(repr=False)
    basis: tuple[tuple[int, int], ...]
    actions: tuple[dict, ...] = field(repr=False)
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if len(self.actions) != len(self.algebra.quiver.arrows):
            raise ValueError("one action matrix per arrow is required")
        if self.validate:
            self._check()

    def _check(self):
        arrows = self.algebra.quiver.arrows
        for k, (arr, act) in enumerate(zip(arrows, self.actions)):
            for i, img in act.items():
                v, t = self.basis[i]
                if v != arr.source:
                    raise ValueError(f"arrow {arr.name} acts on a basis vector at vertex {v}")
                for j in img:
                    if self.basis[j] != (arr.target, t + arr.degree):
                        raise ValueError(
                            f"arrow {arr.name} maps {self.basis[i]} to {self.basis[j]}; "
                            "action must respect vertices and raise degree by the arrow degree"
                        )
        for r, rel in enumerate(self.algebra.presentation.relations):
            for i, (v, _) in enumerate(self.basis):
                total: Vector = {}
                for c, w in rel.terms:
                    if arrows[w[0]].source == v:
                        axpy(total, c, self.act_word({i: self.algebra.field.one}, w))
                if total:
                    raise ValueError(f"relation {r} does not act as zero")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self):
        return self.algebra.field

    def is_zero(self) -> bool:
        return not self.basis

    @cached_property
    def blocks(self) -> dict:
        out = defaultdict(list)
        for i, key in enumerate(self.basis):
            out[key].append(i)
        return dict(sorted(out.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    def degrees(self) -> list[int]:
        return sorted({t for _, t in self.basis})

    def act(self, x: Vector, a: int) -> Vector:
        out: Vector = {}
        act = self.actions[a]
        for i, c in x.items():
            img = act.get(i)
            if img:
                axpy(out, c, img)
        return out

    def act_word(self, x: Vector, word) -> Vector:
        for a in word:
            if not x:
                break
            x = self.act(x, a)
        return x

    def act_element(self, x: Vector, elem: Vector) -> Vector:
        """x . lambda for lambda an algebra element in basis coordinates."""
        out: Vector = {}
        for k, c in elem.items():
            b = self.algebra.basis[k]
            part = {i: y for i, y in x.items() if self.basis[i][0] == b.source}
            if part:
                axpy(out, c, self.act_word(part, b.word))
        return out

    def dimension_vector(self) -> tuple[int, ...]:
        dims = [0] * self.algebra.n
        for v, _ in self.basis:
            dims[v] += 1
        return tuple(dims)

    def describe(self) -> str:
        labels = self.algebra.quiver.vertices
        parts = [f"{labels[v]}@{t}x{len(ix)}" for (v, t), ix in self.blocks.items()]
        return "GradedModule(dim=%d; %s)" % (self.dim, ", ".join(parts) or "zero")


@dataclass(frozen=True, eq=False)
class GradedMorphism:
    """Degree-0 module map; ``matrix[i]`` is the image of source basis vector i."""

    source: GradedModule
    target: GradedModule
    matrix: dict
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise ValueError("morphism between modules over different algebras")
        if not self.validate:
            return
        for i, img in self.matrix.items():
            for j in img:
                if self.target.basis[j] != self.source.basis[i]:
                    raise ValueError("morphism must preserve vertex and internal degree")
        for a in range(len(self.source.actions)):
            for i in range(self.source.dim):
                lhs = self(self.source.act({i: self.source.field.one}, a))
                rhs = self.target.act(self.matrix.get(i, {}), a)
                if lhs != rhs:
                    raise ValueError("morphism does not commute with the arrow actions")

    def __call__(self, x: Vector) -> Vector:
        out: Vector = {}
        for i, c in x.items():
            img = self.matrix.get(i)
            if img:
                axpy(out, c, img)
        return out

    def compose(self, other: GradedMorphism) -> GradedMorphism:
        """self o other."""
        mat = {i: self(img) for i, img in other.matrix.items()}
        return GradedMorphism(other.source, self.target, {i: v for i, v in mat.items() if v}, validate=False)

    def is_zero(self) -> bool:
        return not any(self.matrix.values())

    def rank(self) -> int:
        return len(rref(self.matrix.values())[1])


def zero_module(alg: GradedAlgebra) -> GradedModule:
    return GradedModule(alg, (), tuple({} for _ in alg.quiver.arrows))


def _check_vertex(alg, i):
    if not 0 <= i < alg.n:
        raise IndexError(f"vertex index {i} out of range 0..{alg.n - 1}")


def simple(alg: GradedAlgebra, i: int) -> GradedModule:
    _check_vertex(alg, i)
    return GradedModule(alg, ((i, 0),), tuple({} for _ in alg.quiver.arrows))


def projective_sum(alg: GradedAlgebra, gens) -> tuple[GradedModule, list[tuple[int, int]]]:
    """Direct sum of P_v generated in internal degree t, for (v, t) in gens.

    Returns the module and, per basis vector, its (generator index, algebra
    basis index) label; generator g's own basis vector is labelled (g, v).
    """
    basis, labels = [], []
    where = {}
    for g, (v, t) in enumerate(gens):
        _check_vertex(alg, v)
        for p in alg.paths_from(v):
            b = alg.basis[p]
            where[(g, p)] = len(basis)
            basis.append((b.target, t + b.degree))
            labels.append((g, p))
    one = alg.field.one
    actions = []
    for a in range(len(alg.quiver.arrows)):
        ea = {alg.arrow_element(a): one}
        act = {}
        for i, (g, p) in enumerate(labels):
            prod = alg.multiply({p: one}, ea)
            if prod:
                act[i] = {where[(g, q)]: c for q, c in prod.items()}
        actions.append(act)
    return GradedModule(alg, tuple(basis), tuple(actions), validate=False), labels


def projective(alg: GradedAlgebra, i: int) -> GradedModule:
    """P_i = e_i A, graded by path degree with its generator in degree 0."""
    return projective_sum(alg, [(i, 0)])[0]


def twist(M: GradedModule, i: int) -> GradedModule:
    """M(i), with M(i)_j = M_{i+j}: every internal degree drops by i."""
    basis = tuple((v, t - i) for v, t in M.basis)
    return GradedModule(M.algebra, basis, M.actions, validate=False)


def direct_sum(*mods: GradedModule) -> GradedModule:
    if not mods:
        raise ValueError("direct_sum needs at least one module")
    alg = mods[0].algebra
    basis, actions = [], [dict() for _ in alg.quiver.arrows]
    for M in mods:
        if M.algebra is not alg:
            raise ValueError("modules over different algebras")
        off = len(basis)
        basis.extend(M.basis)
        for a, act in enumerate(M.actions):
            for i, img in act.items():
                actions[a][i + off] = {j + off: c for j, c in img.items()}
    return GradedModule(alg, tuple(basis), tuple(actions), validate=False)


def semisimple_top(alg: GradedAlgebra) -> GradedModule:
    """S = S_1 + ... + S_n in degree 0, the top of the algebra."""
    return direct_sum(*(simple(alg, i) for i in range(alg.n)))


# -- sub- and quotient modules ---------------------------------------------


def _submodule(M: GradedModule, blocks: dict) -> tuple[GradedModule, GradedMorphism]:
    """Submodule from per-block bases.

    ``blocks[(v, t)] = (vectors, coord_cols)`` where the coordinates of a
    vector y of the block's span are ``[y[c] for c in coord_cols]``.
    """
    basis, vectors, start = [], [], {}
    for key in sorted(blocks, key=lambda k: (k[1], k[0])):
        vecs, _ = blocks[key]
        start[key] = len(basis)
        for x in vecs:
            basis.append(key)
            vectors.append(x)
    alg = M.algebra
    actions = []
    for a, arr in enumerate(alg.quiver.arrows):
        act = {}
        for i, x in enumerate(vectors):
            if basis[i][0] != arr.source:
                continue
            y = M.act(x, a)
            if not y:
                continue
            key = (arr.target, basis[i][1] + arr.degree)
            _, cols = blocks[key]
            img = {start[key] + k: y[c] for k, c in enumerate(cols) if c in y}
            if img:
                act[i] = img
        actions.append(act)
    sub = GradedModule(alg, tuple(basis), tuple(actions), validate=False)
    inc = GradedMorphism(sub, M, {i: x for i, x in enumerate(vectors)}, validate=False)
    return sub, inc


def _span_blocks(M: GradedModule, vectors) -> dict:
    """Echelon bases per block of the span of block-homogeneous vectors."""
    by_block = defaultdict(list)
    for x in vectors:
        if x:
            by_block[M.basis[next(iter(x))]].append(x)
    out = {}
    for key, vecs in by_block.items():
        red, piv = rref(vecs)
        out[key] = (red, piv)
    return out


def radical_blocks(M: GradedModule) -> dict:
    """Per-block echelon bases of rad(M) = sum of the images of the arrows."""
    one = M.field.one
    images = []
    for a, arr in enumerate(M.algebra.quiver.arrows):
        for i, (v, _) in enumerate(M.basis):
            if v == arr.source:
                images.append(M.act({i: one}, a))
    return _span_blocks(M, images)


def radical(M: GradedModule) -> GradedModule:
    """rad(M) = M . A_{>=1}."""
    return _submodule(M, radical_blocks(M))[0]


def top_generators(M: GradedModule) -> list[tuple[int, int, int]]:
    """Basis vectors of M lifting a basis of top(M), as (vertex, degree, index).

    In each block the lift is the set of standard vectors at the non-pivot
    columns of the radical's echelon basis.  Ordered by degree, then vertex.
    """
    rad = radical_blocks(M)
    gens = []
    for (v, t), idx in M.blocks.items():
        pivots = set(rad.get((v, t), ([], []))[1])
        gens.extend((v, t, i) for i in idx if i not in pivots)
    return gens


def top(M: GradedModule) -> GradedModule:
    """top(M) = M / rad(M); semisimple, so every arrow acts as zero."""
    basis = tuple((v, t) for v, t, _ in top_generators(M))
    return GradedModule(M.algebra, basis, tuple({} for _ in M.algebra.quiver.arrows), validate=False)


def projective_cover(M: GradedModule) -> tuple[GradedModule, GradedMorphism]:
    """Minimal graded projective cover P -> M.

    P has one summand P_v(-t) per top generator of M at (v, t).  The zero
    module gets the zero projective and the zero map.
    """
    P, pi, _, _ = labelled_cover(M)
    return P, pi


def labelled_cover(M: GradedModule):
    """Projective cover plus its generators (v, t) and the basis labels of P."""
    alg = M.algebra
    one = M.field.one
    gens = top_generators(M)
    P, labels = projective_sum(alg, [(v, t) for v, t, _ in gens])
    matrix = {}
    for i, (g, p) in enumerate(labels):
        img = M.act_word({gens[g][2]: one}, alg.basis[p].word)
        if img:
            matrix[i] = img
    return P, GradedMorphism(P, M, matrix, validate=False), [(v, t) for v, t, _ in gens], labels


def kernel(f: GradedMorphism) -> tuple[GradedModule, GradedMorphism]:
    """Kernel submodule of a graded morphism, computed block by block."""
    M, N = f.source, f.target
    one = M.field.one
    blocks = {}
    for key, idx in M.blocks.items():
        rows = defaultdict(dict)
        for i in idx:
            for j, c in f.matrix.get(i, {}).items():
                rows[j][i] = c
        vecs, free = nullspace(rows.values(), idx, one)
        if vecs:
            blocks[key] = (vecs, free)
    return _submodule(M, blocks)


def composition_multiplicities(M: GradedModule) -> tuple[int, ...]:
    """Multiplicity of each simple S_j; simples are 1-dimensional, so count basis vectors per vertex."""
    return M.dimension_vector()


def hom_graded(M: GradedModule, N: GradedModule) -> tuple[int, list[GradedMorphism]]:
    """Degree-0 homomorphisms M -> N: dimension and a basis."""
    if M.algebra is not N.algebra:
        raise ValueError("hom_graded: modules over different algebras")
    alg = M.algebra
    one = M.field.one
    var = {}
    for key, mi in M.blocks.items():
        for n in N.blocks.get(key, []):
            for m in mi:
                var[(n, m)] = len(var)
    rows = []
    for a, arr in enumerate(alg.quiver.arrows):
        for (v, t), mi in M.blocks.items():
            if v != arr.source:
                continue
            out_key = (arr.target, t + arr.degree)
            n_out = N.blocks.get(out_key, [])
            if not n_out:
                continue
            n_in = N.blocks.get((v, t), [])
            for m in mi:
                ma = M.act({m: one}, a)
                eqs = defaultdict(dict)
                # F(m . a)
                for m2, c in ma.items():
                    for n2 in n_out:
                        axpy(eqs[n2], c, {var[(n2, m2)]: one})
                # - F(m) . a
                for n in n_in:
                    for n2, c in N.act({n: one}, a).items():
                        axpy(eqs[n2], -c, {var[(n, m)]: one})
                rows.extend(e for e in eqs.values() if e)
    sols, _ = nullspace(rows, len(var), one)
    inv = {k: key for key, k in var.items()}
    maps = []
    for s in sols:
        mat = defaultdict(dict)
        for k, c in s.items():
            n, m = inv[k]
            mat[m][n] = c
        maps.append(GradedMorphism(M, N, dict(mat), validate=False))
    return len(sols), maps


# -- document-tree serialization -------------------------------------------


def module_to_tree(M: GradedModule) -> dict:
    q = M.algebra.quiver
    fld = M.field
    return {
        "basis": [[q.vertices[v], t] for v, t in M.basis],
        "actions": {
            q.arrows[a].name: [[i, j, fld.to_text(c)] for i in sorted(act) for j, c in sorted(act[i].items())]
            for a, act in enumerate(M.actions)
            if act
        },
    }


def module_from_tree(alg: GradedAlgebra, tree) -> GradedModule:
    q = alg.quiver
    basis = tuple((q.vertex_index(v), int(t)) for v, t in tree.get("basis", []))
    actions = [dict() for _ in q.arrows]
    for name, entries in (tree.get("actions") or {}).items():
        act = actions[q.arrow_index(name)]
        for i, j, c in entries:
            c = alg.field(c)
            if c != 0:
                act.setdefault(int(i), {})[int(j)] = c
    return GradedModule(alg, basis, tuple(actions))


_SELECTOR = re.compile(r"^\s*(top|S|P)(.*?)\s*(?:\((-?\d+)\))?\s*$")


def module_from_selector(alg: GradedAlgebra, text: str) -> GradedModule:
    """Module named by ``S<vertex>``, ``P<vertex>`` or ``top``, optionally twisted as ``S1(-2)``."""
    m = _SELECTOR.match(str(text))
    if not m:
        raise ValueError(f"bad module selector {text!r}")
    kind, label, shift = m.groups()
    if kind == "top":
        if label:
            raise ValueError(f"bad module selector {text!r}")
        M = semisimple_top(alg)
    else:
        v = alg.quiver.vertex_index(label)
        M = simple(alg, v) if kind == "S" else projective(alg, v)
    return twist(M, int(shift)) if shift else M
