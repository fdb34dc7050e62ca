"""Quiver-with-relations presentations and their document format.

A presentation document is a YAML (or JSON) mapping::

    field: Q            # or F<p>
    vertices: ["1", "2"]
    arrows:
      - {name: a, source: "1", target: "2", degree: 1}   # degree defaults to 1
    relations:
      - [{coeff: 1, path: [a, b]}, {coeff: "-1/2", path: [c, d]}]
    options: {path_cap: 32}

Paths are read left to right: ``[a, b]`` is "a then b", matching the right
module convention where ``m . a . b`` means apply a, then b.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .field import FieldSpec

DEFAULT_PATH_CAP = 32


class PresentationError(ValueError):
    """Malformed document (exit code 2)."""

    exit_code = 2


class ValidationError(ValueError):
    """Well-formed input violating a mathematical requirement (exit code 3)."""

    exit_code = 3


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int
    degree: int = 1


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("vertex labels must be distinct")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValidationError("arrow labels must be distinct")
        for a in self.arrows:
            if a.degree < 1:
                raise ValidationError(f"arrow {a.name!r} has degree {a.degree}; degrees must be >= 1")
            for v in (a.source, a.target):
                if not 0 <= v < len(self.vertices):
                    raise ValidationError(f"arrow {a.name!r} refers to vertex index {v}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, label) -> int:
        try:
            return self.vertices.index(str(label))
        except ValueError:
            raise ValidationError(f"unknown vertex {label!r}") from None

    def arrow_index(self, name) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == str(name):
                return i
        raise ValidationError(f"unknown arrow {name!r}")

    def path_degree(self, word) -> int:
        return sum(self.arrows[a].degree for a in word)

    def check_path(self, word) -> tuple[int, int]:
        """Source and target of a nonempty composable arrow word."""
        if not word:
            raise ValidationError("relation paths must be nonempty")
        for a, b in zip(word, word[1:]):
            if self.arrows[a].target != self.arrows[b].source:
                raise ValidationError(
                    f"path {self.word_text(word)} is not composable at "
                    f"{self.arrows[a].name}.{self.arrows[b].name}"
                )
        return self.arrows[word[0]].source, self.arrows[word[-1]].target

    def word_text(self, word) -> str:
        return ".".join(self.arrows[a].name for a in word)


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel, equal-degree paths (arrow-index words)."""

    terms: tuple[tuple[object, tuple[int, ...]], ...]


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    field: FieldSpec = field(default_factory=FieldSpec)
    path_cap: int = DEFAULT_PATH_CAP

    def __post_init__(self):
        if self.path_cap < 1:
            raise ValidationError("path_cap must be positive")
        for k, rel in enumerate(self.relations):
            ends = {self.quiver.check_path(w) for _, w in rel.terms}
            if len(ends) > 1:
                raise ValidationError(f"relation {k}: paths are not parallel")
            degs = {self.quiver.path_degree(w) for _, w in rel.terms}
            if len(degs) > 1:
                raise ValidationError(
                    f"relation {k}: inhomogeneous, term degrees {sorted(degs)}"
                )


def _require(node, key, where):
    if not isinstance(node, dict) or key not in node:
        raise PresentationError(f"{where}: missing key {key!r}")
    return node[key]


def _as_list(node, where) -> list:
    if not isinstance(node, list):
        raise PresentationError(f"{where}: expected a list, got {type(node).__name__}")
    return node


def _as_int(node, where) -> int:
    if isinstance(node, bool) or not isinstance(node, int):
        raise PresentationError(f"{where}: expected an integer, got {node!r}")
    return node


def load_tree(text: str):
    """Parse a document, reporting syntax errors with line and column."""
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        problem = getattr(exc, "problem", None) or str(exc)
        raise PresentationError(f"syntax error at {where}: {problem}") from None


def presentation_from_tree(tree) -> Presentation:
    if not isinstance(tree, dict):
        raise PresentationError("document root must be a mapping")
    try:
        fld = FieldSpec.parse(tree.get("field", "Q"))
    except ValueError as exc:
        raise ValidationError(str(exc)) from None

    vertices = [str(v) for v in _as_list(_require(tree, "vertices", "root"), "vertices")]
    labels = {v: i for i, v in enumerate(vertices)}

    def vertex(label, where):
        if str(label) not in labels:
            raise ValidationError(f"{where}: unknown vertex {label!r}")
        return labels[str(label)]

    arrows = []
    for k, a in enumerate(_as_list(tree.get("arrows") or [], "arrows")):
        where = f"arrows[{k}]"
        arrows.append(
            Arrow(
                name=str(_require(a, "name", where)),
                source=vertex(_require(a, "source", where), where),
                target=vertex(_require(a, "target", where), where),
                degree=_as_int(a.get("degree", 1), where + ".degree"),
            )
        )
    quiver = Quiver(tuple(vertices), tuple(arrows))

    relations = []
    for k, rel in enumerate(_as_list(tree.get("relations") or [], "relations")):
        terms = []
        for t, term in enumerate(_as_list(rel, f"relations[{k}]")):
            where = f"relations[{k}][{t}]"
            raw = term.get("coeff", 1) if isinstance(term, dict) else None
            if isinstance(raw, (float, bool)) or raw is None:
                raise PresentationError(f"{where}.coeff: expected an integer or 'a/b', got {raw!r}")
            try:
                coeff = fld(raw)
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise PresentationError(f"{where}.coeff: bad coefficient {raw!r} ({exc})") from None
            path = _as_list(_require(term, "path", where), where + ".path")
            word = tuple(quiver.arrow_index(a) for a in path)
            if coeff != 0:
                terms.append((coeff, word))
        if terms:
            relations.append(Relation(tuple(terms)))

    options = tree.get("options") or {}
    if not isinstance(options, dict):
        raise PresentationError("options: expected a mapping")
    cap = _as_int(options.get("path_cap", DEFAULT_PATH_CAP), "options.path_cap")
    return Presentation(quiver, tuple(relations), fld, cap)


def parse_presentation(text: str) -> Presentation:
    return presentation_from_tree(load_tree(text))


def load_presentation(path) -> Presentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


def presentation_to_tree(pres: Presentation) -> dict:
    q = pres.quiver
    return {
        "field": pres.field.label,
        "vertices": list(q.vertices),
        "arrows": [
            {"name": a.name, "source": q.vertices[a.source], "target": q.vertices[a.target], "degree": a.degree}
            for a in q.arrows
        ],
        "relations": [
            [{"coeff": pres.field.to_text(c), "path": [q.arrows[a].name for a in w]} for c, w in rel.terms]
            for rel in pres.relations
        ],
        "options": {"path_cap": pres.path_cap},
    }


def dump_presentation(pres: Presentation) -> str:
    """Canonical serialization (JSON is valid YAML, so it round-trips)."""
    return json.dumps(presentation_to_tree(pres), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
