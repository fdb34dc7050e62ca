"""Ungraded Ext engine, kept independent of the graded one.

Gradings are discarded on entry.  Covers, kernels and Hom spaces are
computed here from scratch (vertex blocks only, whole-matrix kernels,
different choice of top lifts), and Ext is obtained by dimension shifting

    dim Ext^i(M, N) = dim Hom(Omega^i, N) - dim Hom(P^{i-1}, N) + dim Hom(Omega^{i-1}, N)

from 0 -> Omega^i -> P^{i-1} -> Omega^{i-1} -> 0, never from a Hom complex.
Only the field arithmetic and row reduction primitives are shared.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Vector, axpy, in_span, nullspace, rref


@dataclass(frozen=True, eq=False)
class Rep:
    """Ungraded quiver representation: vertex per basis vector, sparse map per arrow."""

    algebra: object
    vertex: tuple[int, ...]
    maps: tuple[dict, ...]

    @property
    def dim(self) -> int:
        return len(self.vertex)

    def apply(self, a: int, x: Vector) -> Vector:
        out: Vector = {}
        for i, c in x.items():
            img = self.maps[a].get(i)
            if img:
                axpy(out, c, img)
        return out

    def at(self, v: int) -> list[int]:
        return [i for i, w in enumerate(self.vertex) if w == v]


def forget_grading(M) -> Rep:
    return Rep(M.algebra, tuple(v for v, _ in M.basis), tuple(dict(a) for a in M.actions))


def free_module(alg, vertices) -> tuple[Rep, list[int]]:
    """Sum of e_v A over the given vertices; returns the rep and the generator positions."""
    one = alg.field.one
    vertex, pos, gens = [], {}, []
    for g, v in enumerate(vertices):
        for k, b in enumerate(alg.basis):
            if b.source != v:
                continue
            if k == v:
                gens.append(len(vertex))
            pos[(g, k)] = len(vertex)
            vertex.append(b.target)
    maps = []
    for a in range(len(alg.quiver.arrows)):
        arrow = alg.arrow_element(a)
        m = {}
        for (g, k), i in pos.items():
            prod = alg.mul_basis(k, arrow)
            if prod:
                m[i] = {pos[(g, q)]: c for q, c in prod.items()}
        maps.append(m)
    return Rep(alg, tuple(vertex), tuple(maps)), gens


def cover(R: Rep):
    """Minimal projective cover F -> R, returned as (F, images of F's basis in R, vertices).

    Top lifts are chosen greedily from the *last* basis vector backwards.
    """
    alg = R.algebra
    one = alg.field.one
    rad = [R.apply(a, {i: one}) for a in range(len(R.maps)) for i in R.maps[a]]
    chosen = []
    for v in range(alg.n):
        span = [x for x in rad if x and R.vertex[next(iter(x))] == v]
        red, piv = rref(span)
        for i in reversed(R.at(v)):
            if not in_span({i: one}, red, piv):
                chosen.append((v, i))
                red, piv = rref(red + [{i: one}])
    F, gens = free_module(alg, [v for v, _ in chosen])
    images = {}
    # generator g's block in F is contiguous from gens[g]; walk it by path words
    for g, (v, i) in enumerate(chosen):
        start = gens[g]
        paths = [k for k, b in enumerate(alg.basis) if b.source == v]
        for off, k in enumerate(paths):
            x = {i: one}
            for a in alg.basis[k].word:
                x = R.apply(a, x)
            if x:
                images[start + off] = x
    return F, images, [v for v, _ in chosen]


def syzygy(F: Rep, images: dict, R: Rep) -> Rep:
    """Kernel of F -> R as a rep, from one global nullspace computation."""
    one = R.algebra.field.one
    rows: dict = {}
    for i, img in images.items():
        for j, c in img.items():
            rows.setdefault(j, {})[i] = c
    basis, free = nullspace(rows.values(), F.dim, one)
    slot = {c: k for k, c in enumerate(free)}
    vertex = tuple(F.vertex[c] for c in free)
    maps = []
    for a in range(len(F.maps)):
        m = {}
        for k, x in enumerate(basis):
            y = F.apply(a, x)
            img = {slot[c]: y[c] for c in y if c in slot}
            if img:
                m[k] = img
        maps.append(m)
    return Rep(R.algebra, vertex, tuple(maps))


def hom_dim(R: Rep, T: Rep) -> int:
    """dim Hom_A(R, T): vertex-preserving maps commuting with every arrow."""
    one = R.algebra.field.one
    unknown = {}
    for i, v in enumerate(R.vertex):
        for j, w in enumerate(T.vertex):
            if v == w:
                unknown[(j, i)] = len(unknown)
    if not unknown:
        return 0
    rows = []
    for a in range(len(R.maps)):
        src = R.algebra.quiver.arrows[a].source
        for i, v in enumerate(R.vertex):
            if v != src:
                continue
            eq: dict = {}
            # F(r . a) - F(r) . a, coordinate by coordinate
            for i2, c in R.maps[a].get(i, {}).items():
                for j2, w in enumerate(T.vertex):
                    if w == R.vertex[i2]:
                        eq.setdefault(j2, {})
                        axpy(eq[j2], c, {unknown[(j2, i2)]: one})
            for j, w in enumerate(T.vertex):
                if w != v:
                    continue
                for j2, c in T.maps[a].get(j, {}).items():
                    eq.setdefault(j2, {})
                    axpy(eq[j2], -c, {unknown[(j, i)]: one})
            rows.extend(e for e in eq.values() if e)
    return len(unknown) - len(rref(rows)[1])


@dataclass(frozen=True)
class UngradedResolution:
    syzygies: tuple[Rep, ...]
    frees: tuple[Rep, ...]
    betti: tuple[tuple[int, ...], ...]


def resolve_ungraded(M, depth: int) -> UngradedResolution:
    R = forget_grading(M)
    n = M.algebra.n
    syz, frees, betti = [R], [], []
    for _ in range(depth + 1):
        F, images, verts = cover(syz[-1])
        frees.append(F)
        betti.append(tuple(verts.count(v) for v in range(n)))
        syz.append(syzygy(F, images, syz[-1]))
        if syz[-1].dim == 0:
            break
    return UngradedResolution(tuple(syz), tuple(frees), tuple(betti))


def ext_ungraded(M, N, i_max: int) -> list[int]:
    """dim Ext^i_A(M, N) for 0 <= i <= i_max, gradings ignored."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    res = resolve_ungraded(M, max(i_max - 1, 0))
    T = forget_grading(N)
    zero = Rep(M.algebra, (), tuple({} for _ in M.actions))
    syz = list(res.syzygies) + [zero] * (i_max + 2)
    frees = list(res.frees) + [zero] * (i_max + 2)
    homs = [hom_dim(syz[i], T) for i in range(i_max + 1)]
    out = [homs[0]]
    for i in range(1, i_max + 1):
        out.append(homs[i] - hom_dim(frees[i - 1], T) + homs[i - 1])
    return out


def betti_ungraded(M, depth: int) -> list[tuple[int, ...]]:
    return list(resolve_ungraded(M, depth).betti)
