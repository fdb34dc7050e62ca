"""Sparse exact linear algebra over a field.

Vectors are ``dict[int, elem]`` with no stored zeros; a matrix is a list of
such rows.  Elements only need ``+ - * /`` and comparison with 0, so the same
code runs over ``Fraction`` and ``Fp``.
"""

from __future__ import annotations

from typing import Iterable

Vector = dict


def axpy(y: Vector, a, x: Vector) -> None:
    """y += a*x in place."""
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s == 0:
            y.pop(k, None)
        else:
            y[k] = s


def scale(a, x: Vector) -> Vector:
    if a == 0:
        return {}
    return {k: a * v for k, v in x.items()}


def rref(rows: Iterable[Vector]) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns).

    Rows come back sorted by pivot column.  Pivots are chosen as the leftmost
    surviving column, so the result depends only on the row space.
    """
    work = [dict(r) for r in rows if r]
    done: dict[int, Vector] = {}
    for row in work:
        for c, r in done.items():
            if c in row:
                axpy(row, -row[c], r)
        if not row:
            continue
        c = min(row)
        inv = 1 / row[c]
        row = scale(inv, row)
        for r in done.values():
            if c in r:
                axpy(r, -r[c], row)
        done[c] = row
    pivots = sorted(done)
    return [done[c] for c in pivots], pivots


def rank(rows: Iterable[Vector]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Iterable[Vector], columns, one) -> tuple[list[Vector], list[int]]:
    """Basis of {x : A x = 0} for A given by rows, unknowns indexed by ``columns``.

    ``columns`` is an int (meaning ``range(columns)``) or an ordered list of keys.

    ``one`` is the unit of the field (entries must stay field elements).

    The basis vector attached to free column f is 1 at f and 0 at every other
    free column, so the coordinates of a kernel element in this basis are its
    entries at the free columns (returned second).
    """
    red, pivots = rref(rows)
    pivset = set(pivots)
    if isinstance(columns, int):
        columns = range(columns)
    free = [c for c in sorted(columns) if c not in pivset]
    basis = []
    for f in free:
        x = {f: one}
        for c, r in zip(pivots, red):
            v = r.get(f)
            if v is not None:
                x[c] = -v
        basis.append(x)
    return basis, free


def transpose(rows: list[Vector]) -> dict[int, Vector]:
    cols: dict[int, Vector] = {}
    for i, r in enumerate(rows):
        for j, v in r.items():
            cols.setdefault(j, {})[i] = v
    return cols


def in_span(x: Vector, red: list[Vector], pivots: list[int]) -> bool:
    """Membership test against an rref basis."""
    y = dict(x)
    for c, r in zip(pivots, red):
        if c in y:
            axpy(y, -y[c], r)
    return not y


def echelon_coordinates(x: Vector, red: list[Vector], pivots: list[int]) -> list:
    """Coordinates of x (assumed in the span) in an rref basis."""
    return [x.get(c, 0) for c in pivots]
