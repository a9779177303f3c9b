"""Gaussian elimination over a FieldSpec on integer-index matrices."""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec

__all__ = ["row_reduce", "rank", "null_space_basis", "mat_vec"]


def row_reduce(field: FieldSpec, matrix) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(map(int, r)) for r in np.asarray(matrix).tolist()]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        piv = next((r for r in range(top, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        s = field.inv(rows[top][col])
        rows[top] = [field.mul(s, x) for x in rows[top]]
        for r in range(len(rows)):
            c = rows[r][col]
            if r != top and c:
                rows[r] = [field.sub(x, field.mul(c, y)) for x, y in zip(rows[r], rows[top])]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows, pivots


def rank(field: FieldSpec, matrix) -> int:
    return len(row_reduce(field, matrix)[1])


def null_space_basis(field: FieldSpec, matrix) -> list[list[int]]:
    """Basis of ``{v : matrix @ v = 0}``, one vector per free column."""
    ncols = np.asarray(matrix).shape[1]
    rref, pivots = row_reduce(field, matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(rref[r][f])
        basis.append(v)
    return basis


def mat_vec(field: FieldSpec, matrix, vec) -> list[int]:
    out = []
    for row in np.asarray(matrix).tolist():
        acc = 0
        for x, y in zip(row, vec):
            acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return out
