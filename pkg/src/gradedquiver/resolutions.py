"""Minimal graded projective resolutions and bigraded Ext dimensions.

Conventions: P_v(t) has its generator in internal degree -t, so a summand
recorded as (v, t) in a resolution term is generated in degree -t.
``ext_graded`` returns dim Ext^i_gr(M, N(j)) for cohomological degree i and
twist j, computed from Hom_gr(P^., N(j)).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .linalg import rank
from .modules import (
    GradedModule,
    GradedMorphism,
    kernel,
    labelled_cover,
    simple,
    top_generators,
)


class HypothesisError(ValueError):
    """Input violates a degree hypothesis; an input error, not a failed check."""

    exit_code = 3


@dataclass(frozen=True, eq=False)
class GradedResolution:
    """P^length -> ... -> P^0 -> M, truncated at ``depth`` unless it stops earlier.

    ``differentials[i]`` is P^{i+1} -> P^i; ``syzygies[i]`` is Omega^i with
    Omega^0 = M and ``syzygies[-1]`` the first syzygy not covered.
    """

    module: GradedModule
    depth: int
    projectives: tuple[GradedModule, ...]
    labels: tuple[list, ...] = field(repr=False)
    generators: tuple[tuple[tuple[int, int], ...], ...]
    augmentation: GradedMorphism = field(repr=False)
    differentials: tuple[GradedMorphism, ...] = field(repr=False)
    syzygies: tuple[GradedModule, ...] = field(repr=False)
    certificates: tuple[dict, ...] = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.projectives) - 1

    @property
    def terminated(self) -> bool:
        """True when a zero syzygy was reached, so the projective dimension is ``length``."""
        return self.syzygies[-1].is_zero()

    @property
    def terms(self) -> list[list[tuple[int, int]]]:
        """Per term, the summands as (vertex, twist) with twist = -generator degree."""
        return [[(v, -t) for v, t in gens] for gens in self.generators]

    def generator_degrees(self, i: int) -> list[int]:
        return [t for _, t in self.generators[i]]

    def betti(self, i: int) -> tuple[int, ...]:
        counts = [0] * self.module.algebra.n
        for v, _ in self.generators[i]:
            counts[v] += 1
        return tuple(counts)

    def generator_index(self, i: int, g: int) -> int:
        """Basis index in P^i of generator g (its trivial-path basis vector)."""
        v = self.generators[i][g][0]
        return self.labels[i].index((g, v))

    def is_complex(self) -> bool:
        maps = [self.augmentation, *self.differentials]
        return all(f.compose(g).is_zero() for f, g in zip(maps, maps[1:]))

    def is_minimal(self) -> bool:
        """Every differential lands in rad(P^i): no coefficient on a generator."""
        for i, d in enumerate(self.differentials):
            gen_rows = {self.generator_index(i, g) for g in range(len(self.generators[i]))}
            for img in d.matrix.values():
                if gen_rows & img.keys():
                    return False
        return True

    def is_exact(self) -> bool:
        return all(c["exact"] for c in self.certificates)


def minimal_graded_resolution(M: GradedModule, depth: int) -> GradedResolution:
    """Iterated projective covers of syzygies, through P^depth."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    projectives, labels, generators, diffs, syz, certs = [], [], [], [], [M], []
    omega, into_prev = M, None
    augmentation = None
    for i in range(depth + 1):
        P, pi, gens, lab = labelled_cover(omega)
        out = pi if into_prev is None else into_prev.compose(pi)
        if into_prev is None:
            augmentation = out
        else:
            diffs.append(out)
        K, inc = kernel(pi)
        out_rank = rank(out.matrix.values())
        certs.append(
            {
                "i": i,
                "dim_P": P.dim,
                "rank_out": out_rank,
                "dim_kernel": K.dim,
                "exact": out_rank + K.dim == P.dim and out_rank == omega.dim,
            }
        )
        projectives.append(P)
        labels.append(lab)
        generators.append(tuple(gens))
        syz.append(K)
        omega, into_prev = K, inc
        if K.is_zero():
            break
    return GradedResolution(
        M, depth, tuple(projectives), tuple(labels), tuple(generators),
        augmentation, tuple(diffs), tuple(syz), tuple(certs),
    )


@dataclass(frozen=True)
class NonnegativityReport:
    passed: bool
    depth: int
    generator_degrees: tuple[tuple[int, ...], ...]
    terminated: bool


def check_generated_nonnegative(M: GradedModule) -> None:
    bad = sorted({t for _, t, _ in top_generators(M) if t < 0})
    if bad:
        raise HypothesisError(f"module has generators in negative internal degrees {bad}")


def verify_resolution_nonnegativity(M: GradedModule, depth: int) -> NonnegativityReport:
    """All generators of all P^i sit in internal degree >= 0 when M is generated in degrees >= 0."""
    check_generated_nonnegative(M)
    res = minimal_graded_resolution(M, depth)
    degs = tuple(tuple(res.generator_degrees(i)) for i in range(res.length + 1))
    ok = all(t >= 0 for row in degs for t in row)
    return NonnegativityReport(ok, depth, degs, res.terminated)


@dataclass(frozen=True)
class ExtTable:
    """dim Ext^i_gr(M, N(j)) on the computed cells; cells outside are absent."""

    i_max: int
    j_window: tuple[int, int]
    entries: dict

    def row(self, i: int) -> dict:
        return {j: d for (ii, j), d in self.entries.items() if ii == i}

    def total(self, i: int) -> int:
        return sum(self.row(i).values())

    def nonzero(self) -> dict:
        return {k: d for k, d in self.entries.items() if d}


class HomComplex:
    """Hom_gr(P^., N(j)) for a fixed resolution and target, per twist j."""

    def __init__(self, res: GradedResolution, N: GradedModule):
        if res.module.algebra is not N.algebra:
            raise ValueError("modules over different algebras")
        self.res = res
        self.N = N
        alg = N.algebra
        self.one = alg.field.one
        # images of generators of P^{i+1}: per generator h, {g: [(path, coeff)]}
        self.gen_images = []
        for i, d in enumerate(res.differentials):
            lab = res.labels[i]
            per_gen = []
            for h in range(len(res.generators[i + 1])):
                img = d.matrix.get(res.generator_index(i + 1, h), {})
                terms = defaultdict(list)
                for k, c in img.items():
                    g, p = lab[k]
                    terms[g].append((alg.basis[p].word, c))
                per_gen.append(dict(terms))
            self.gen_images.append(per_gen)
        self._path_cache = {}

    def cochain_basis(self, i: int, j: int) -> list[tuple[int, int]]:
        """Coordinates (generator g, basis vector n of N) of Hom_gr(P^i, N(j))."""
        if i > self.res.length:
            return []
        out = []
        for g, (v, t) in enumerate(self.res.generators[i]):
            out.extend((g, n) for n in self.N.blocks.get((v, t + j), []))
        return out

    def _act(self, n: int, word) -> dict:
        key = (n, word)
        if key not in self._path_cache:
            self._path_cache[key] = self.N.act_word({n: self.one}, word)
        return self._path_cache[key]

    def coboundary_rank(self, i: int, j: int) -> int:
        """Rank of Hom(P^i, N(j)) -> Hom(P^{i+1}, N(j)), f -> f o d."""
        if i < 0 or i >= len(self.gen_images):
            return 0
        src = self.cochain_basis(i, j)
        tgt = {c: k for k, c in enumerate(self.cochain_basis(i + 1, j))}
        if not src or not tgt:
            return 0
        columns = []
        for g, n in src:
            col = {}
            for h, terms in enumerate(self.gen_images[i]):
                for word, c in terms.get(g, ()):
                    for n2, x in self._act(n, word).items():
                        k = tgt[(h, n2)]
                        s = col.get(k, 0) + c * x
                        if s == 0:
                            col.pop(k, None)
                        else:
                            col[k] = s
            columns.append(col)
        return rank(columns)

    def ext_dim(self, i: int, j: int) -> int:
        dim = len(self.cochain_basis(i, j))
        if dim == 0:
            return 0
        return dim - self.coboundary_rank(i, j) - self.coboundary_rank(i - 1, j)


def default_j_window(M: GradedModule, i_max: int) -> tuple[int, int]:
    alg = M.algebra
    max_deg = max((a.degree for a in alg.quiver.arrows), default=1)
    return (-((i_max + 1) * max_deg * alg.loewy_length), 2)


def ext_graded(M, N, i_max: int, j_window=None, resolution=None) -> ExtTable:
    """Bigraded dims dim Ext^i_gr(M, N(j)) for 0 <= i <= i_max and j in the window."""
    res = resolution or minimal_graded_resolution(M, i_max + 1)
    if res.depth < i_max + 1 and not res.terminated:
        raise ValueError("resolution too short for the requested i_max")
    lo, hi = j_window or default_j_window(M, i_max)
    hc = HomComplex(res, N)
    entries = {(i, j): hc.ext_dim(i, j) for i in range(i_max + 1) for j in range(lo, hi + 1)}
    return ExtTable(i_max, (lo, hi), entries)


@dataclass(frozen=True)
class GlobalDimension:
    bound: int
    value: int | None

    @property
    def finite(self) -> bool:
        return self.value is not None

    def __str__(self):
        return f"FiniteValue({self.value})" if self.finite else f"ExceedsBound({self.bound})"


def global_dimension_probe(alg, depth: int) -> GlobalDimension:
    """max projective dimension of the simples if all are <= depth."""
    pds = []
    for v in range(alg.n):
        res = minimal_graded_resolution(simple(alg, v), depth)
        if not res.terminated:
            return GlobalDimension(depth, None)
        pds.append(res.length)
    return GlobalDimension(depth, max(pds, default=0))
