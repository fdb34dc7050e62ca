"""Graded basic algebras kQ/I with a normal-form path basis."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .linalg import Vector, axpy, rref
from .presentation import Presentation, ValidationError


@dataclass(frozen=True)
class BasisPath:
    source: int
    target: int
    word: tuple[int, ...]
    degree: int

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_trivial(self) -> bool:
        return not self.word


def _order_key(word):
    return (len(word), word)


@dataclass(frozen=True)
class RewriteRule:
    lead: tuple[int, ...]
    tail: tuple[tuple[object, tuple[int, ...]], ...]


def orient_relations(pres: Presentation) -> list[RewriteRule]:
    """Turn each relation into lead -> tail with the length-lex largest path as lead."""
    rules = []
    for k, rel in enumerate(pres.relations):
        short = [w for _, w in rel.terms if len(w) < 2]
        if short:
            raise ValidationError(
                f"relation {k}: path {pres.quiver.word_text(short[0])} has length < 2 (not admissible)"
            )
        combined: dict = {}
        for c, w in rel.terms:
            combined[w] = combined.get(w, 0) + c
        combined = {w: c for w, c in combined.items() if c != 0}
        if not combined:
            continue
        lead = max(combined, key=_order_key)
        c = combined.pop(lead)
        tail = tuple((-x / c, w) for w, x in sorted(combined.items(), key=lambda t: _order_key(t[0])))
        rules.append(RewriteRule(lead, tail))
    return rules


class Rewriter:
    """Leftmost-occurrence rewriting of arrow words by oriented relations."""

    def __init__(self, rules: list[RewriteRule]):
        self.rules = rules

    def find(self, word):
        for pos in range(len(word)):
            for r in self.rules:
                n = len(r.lead)
                if word[pos:pos + n] == r.lead:
                    return pos, r
        return None

    def has_lead_suffix(self, word) -> bool:
        return any(word[len(word) - len(r.lead):] == r.lead for r in self.rules if len(r.lead) <= len(word))

    def reduce(self, vec: dict) -> dict:
        """Normal form of a combination {word: coeff} of parallel words."""
        todo = dict(vec)
        out: dict = {}
        while todo:
            w = max(todo, key=_order_key)
            c = todo.pop(w)
            if c == 0:
                continue
            hit = self.find(w)
            if hit is None:
                s = out.get(w, 0) + c
                if s == 0:
                    out.pop(w, None)
                else:
                    out[w] = s
                continue
            pos, r = hit
            pre, post = w[:pos], w[pos + len(r.lead):]
            for x, t in r.tail:
                nw = pre + t + post
                todo[nw] = todo.get(nw, 0) + c * x
        return out


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    """Finite-dimensional kQ/I with its semi-simple grading by arrow degrees.

    ``basis[:n]`` are the trivial paths e_1..e_n in vertex order; the rest are
    normal-form words in length-lex order.  ``table[(i, j)]`` is the product
    of basis elements i and j as a sparse vector (absent means zero).
    """

    presentation: Presentation
    basis: tuple[BasisPath, ...]
    table: dict = field(repr=False)
    loewy_length: int

    @property
    def quiver(self):
        return self.presentation.quiver

    @property
    def field(self):
        return self.presentation.field

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> dict:
        return {(b.source, b.word): i for i, b in enumerate(self.basis)}

    def idempotent(self, v: int) -> int:
        return v

    def arrow_element(self, a: int) -> int:
        arr = self.quiver.arrows[a]
        return self.index[(arr.source, (a,))]

    def paths_from(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.source == v]

    def paths_between(self, v: int, w: int) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.source == v and b.target == w]

    def mul_basis(self, i: int, j: int) -> Vector:
        return self.table.get((i, j), {})

    def multiply(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.table.get((i, j))
                if prod:
                    axpy(out, a * b, prod)
        return out

    def word_element(self, source: int, word) -> Vector:
        """Image of an arbitrary path in the algebra, by iterated multiplication."""
        x: Vector = {source: self.field.one}
        for a in word:
            x = self.multiply(x, {self.arrow_element(a): self.field.one})
        return x

    def element_text(self, x: Vector) -> str:
        if not x:
            return "0"
        parts = []
        for i in sorted(x):
            b = self.basis[i]
            name = f"e{self.quiver.vertices[b.source]}" if b.is_trivial else self.quiver.word_text(b.word)
            c = x[i]
            parts.append(name if c == 1 else f"{self.field.to_text(c)}*{name}")
        return " + ".join(parts)


# Guards the enumeration when the arrow ideal is not nilpotent and paths branch.
MAX_BASIS = 4000


def _normal_words(quiver, rw: Rewriter, cap: int) -> list[tuple[int, tuple[int, ...]]]:
    """All (source, word) with word nonempty and free of rule leads."""
    level = [(a.source, (k,)) for k, a in enumerate(quiver.arrows)]
    words = []
    length = 1
    while level:
        if length > cap:
            raise ValidationError(
                f"normal-form paths of length {length} survive (cap {cap}): "
                "infinite-dimensional or cap too small"
            )
        words.extend(level)
        if len(words) > MAX_BASIS:
            raise ValidationError(
                f"more than {MAX_BASIS} normal-form paths by length {length}: "
                "infinite-dimensional or cap too small"
            )
        nxt = []
        for src, w in level:
            tgt = quiver.arrows[w[-1]].target
            for k, a in enumerate(quiver.arrows):
                if a.source == tgt and not rw.has_lead_suffix(w + (k,)):
                    nxt.append((src, w + (k,)))
        level = nxt
        length += 1
    return sorted(words, key=lambda sw: (_order_key(sw[1]), sw[0]))


def build_algebra(pres: Presentation) -> GradedAlgebra:
    """Normal-form basis and multiplication table, certified associative."""
    q = pres.quiver
    fld = pres.field
    rw = Rewriter(orient_relations(pres))
    words = _normal_words(q, rw, pres.path_cap)
    basis = [BasisPath(v, v, (), 0) for v in range(q.n)]
    for src, w in words:
        basis.append(BasisPath(src, q.arrows[w[-1]].target, w, q.path_degree(w)))
    index = {(b.source, b.word): i for i, b in enumerate(basis)}

    table = {}
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if x.target != y.source:
                continue
            if x.is_trivial:
                table[(i, j)] = {j: fld.one}
            elif y.is_trivial:
                table[(i, j)] = {i: fld.one}
            else:
                nf = rw.reduce({x.word + y.word: fld.one})
                if nf:
                    table[(i, j)] = {index[(x.source, w)]: c for w, c in nf.items()}

    alg = GradedAlgebra(pres, tuple(basis), table, loewy_length=0)
    _certify(alg)
    ll = 0
    while radical_power(alg, ll):
        ll += 1
    object.__setattr__(alg, "loewy_length", ll)
    return alg


def _certify(alg: GradedAlgebra) -> None:
    """Check that the span of normal words with this product really is kQ/I.

    Associativity plus vanishing of every relation under the induced map
    kQ -> span(normal words) gives a surjection kQ/I -> span; reduction shows
    kQ/I is spanned by normal words, so the dimensions agree.
    """
    one = alg.field.one
    basis = alg.basis
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if x.target != y.source:
                continue
            ij = alg.mul_basis(i, j)
            for k, z in enumerate(basis):
                if y.target != z.source:
                    continue
                left = alg.multiply(ij, {k: one})
                right = alg.multiply({i: one}, alg.mul_basis(j, k))
                if left != right:
                    raise ValidationError(
                        "rewriting system is not confluent (non-associative normal-form product); "
                        "complete the relations"
                    )
    for k, rel in enumerate(alg.presentation.relations):
        total: Vector = {}
        for c, w in rel.terms:
            src = alg.quiver.arrows[w[0]].source
            axpy(total, c, alg.word_element(src, w))
        if total:
            raise ValidationError(
                f"relation {k} does not vanish on the normal-form basis; complete the relations"
            )


def radical_power(alg: GradedAlgebra, m: int) -> list[Vector]:
    """Echelon basis of rad(A)^m (rad^0 = A)."""
    one = alg.field.one
    if m == 0:
        return [{i: one} for i in range(alg.dim)]
    current = [{i: one} for i, b in enumerate(alg.basis) if not b.is_trivial]
    arrows = [alg.arrow_element(a) for a in range(len(alg.quiver.arrows))]
    for _ in range(m - 1):
        if not current:
            break
        products = [alg.multiply(x, {a: one}) for x in current for a in arrows]
        current, _ = rref(products)
    return rref(current)[0]


@dataclass(frozen=True)
class GradingReport:
    nonnegative_degrees: bool
    degree_zero_is_idempotent_span: bool
    positive_part_nilpotent: bool
    quotient_is_semisimple: bool
    nilpotency_index: int
    positive_part_dim: int

    @property
    def radical_is_positive_part(self) -> bool:
        return self.positive_part_nilpotent and self.quotient_is_semisimple

    @property
    def passed(self) -> bool:
        return self.nonnegative_degrees and self.degree_zero_is_idempotent_span and self.radical_is_positive_part


def validate_grading(alg: GradedAlgebra) -> GradingReport:
    """Check that the arrow-degree grading is a semi-simple grading."""
    one = alg.field.one
    nonneg = all(b.degree >= 0 for b in alg.basis)
    deg0 = [i for i, b in enumerate(alg.basis) if b.degree == 0]
    deg0_ok = deg0 == list(range(alg.n)) and all(alg.basis[i].is_trivial for i in deg0)

    positive = [i for i, b in enumerate(alg.basis) if b.degree >= 1]
    pos_set = set(positive)
    # least k with (positive part)^k = 0
    power = [{i: one} for i in positive]
    index = 1
    nilpotent = True
    while power:
        index += 1
        if index > alg.dim + 1:
            nilpotent = False
            break
        power, _ = rref(alg.multiply(x, {j: one}) for x in power for j in positive)

    # the quotient by the positive part is spanned by e_i with e_i e_j = delta_ij e_i
    quotient_ok = len(alg.basis) - len(positive) == alg.n
    for i in range(alg.n):
        for j in range(alg.n):
            prod = {k: c for k, c in alg.mul_basis(i, j).items() if k not in pos_set}
            quotient_ok &= prod == ({i: one} if i == j else {})
    return GradingReport(nonneg, deg0_ok, nilpotent, quotient_ok, index, len(positive))
