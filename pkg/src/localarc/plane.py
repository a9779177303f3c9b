"""AG(2,q) in MOLS coordinates and its embedding into PG(2,q).

Affine lines carry labels ``(k, l)``: ``k = 1..q-1`` is the MOLS member with
entry ``w^(k-1) * i + j``, ``k = 0`` the horizontal lines ``{(x, l)}`` and
``k = INF`` the vertical lines ``{(l, y)}``. Projective points are triples of
element indices scaled so the first nonzero coordinate is 1.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, NamedTuple, Union

import numpy as np

from .gf import FieldSpec
from .latin import cyclic_square

__all__ = [
    "INF",
    "AffinePoint",
    "ProjPoint",
    "AffLine",
    "proj_point",
    "line_points",
    "line_through",
    "embed",
    "cross",
    "dot",
    "det3",
    "collinear",
    "is_arc",
    "all_points",
    "slope_matrix",
    "slope_blocks_ok",
]

INF = "inf"


class AffinePoint(NamedTuple):
    i: int
    j: int


class ProjPoint(NamedTuple):
    x0: int
    x1: int
    x2: int


class AffLine(NamedTuple):
    k: Union[int, str]
    l: int


def proj_point(field: FieldSpec, coords: Iterable[int]) -> ProjPoint:
    """Canonical representative of the span of a nonzero triple."""
    coords = tuple(coords)
    lead = next((c for c in coords if c), 0)
    if len(coords) != 3 or not lead:
        raise ValueError(f"not a projective point: {coords!r}")
    s = field.inv(lead)
    return ProjPoint(*(field.mul(s, c) for c in coords))


def _check_slope(field: FieldSpec, k) -> None:
    if k != INF and not (isinstance(k, int) and 0 <= k <= field.q - 1):
        raise ValueError(f"invalid line slope label {k!r}")


def line_points(field: FieldSpec, k, l: int) -> frozenset[AffinePoint]:
    _check_slope(field, k)
    q = field.q
    if k == INF:
        return frozenset(AffinePoint(l, y) for y in range(q))
    if k == 0:
        return frozenset(AffinePoint(x, l) for x in range(q))
    c = field.exp(k - 1)
    # w^(k-1) i + j = l  <=>  j = l - w^(k-1) i
    return frozenset(AffinePoint(i, field.sub(l, field.mul(c, i))) for i in range(q))


def line_through(field: FieldSpec, p1, p2) -> AffLine:
    (i, j), (i2, j2) = p1, p2
    if (i, j) == (i2, j2):
        raise ValueError("a line needs two distinct points")
    if i == i2:
        return AffLine(INF, i)
    if j == j2:
        return AffLine(0, j)
    slope = field.div(field.sub(j2, j), field.sub(i, i2))
    m = field.dlog(slope) + 1
    return AffLine(m, field.add(field.mul(slope, i), j))


def embed(field: FieldSpec, p) -> ProjPoint:
    return ProjPoint(1, p[0], p[1])


def cross(field: FieldSpec, a, b) -> tuple[int, int, int]:
    m, s = field.mul, field.sub
    return (
        s(m(a[1], b[2]), m(a[2], b[1])),
        s(m(a[2], b[0]), m(a[0], b[2])),
        s(m(a[0], b[1]), m(a[1], b[0])),
    )


def dot(field: FieldSpec, a, b) -> int:
    acc = 0
    for x, y in zip(a, b):
        acc = field.add(acc, field.mul(x, y))
    return acc


def det3(field: FieldSpec, a, b, c) -> int:
    return dot(field, a, cross(field, b, c))


def collinear(field: FieldSpec, a, b, c) -> bool:
    if len({tuple(a), tuple(b), tuple(c)}) < 3:
        raise ValueError("collinearity needs three distinct points")
    return det3(field, a, b, c) == 0


def is_arc(field: FieldSpec, points) -> bool:
    points = [tuple(p) for p in points]
    if len(set(points)) != len(points):
        raise ValueError("repeated point")
    return not any(det3(field, *t) == 0 for t in combinations(points, 3))


def all_points(field: FieldSpec) -> list[ProjPoint]:
    """All q^2+q+1 canonical points in lexicographic order."""
    q = field.q
    pts = [ProjPoint(0, 0, 1)]
    pts += [ProjPoint(0, 1, z) for z in range(q)]
    pts += [ProjPoint(1, y, z) for y in range(q) for z in range(q)]
    return pts


def slope_matrix(field: FieldSpec) -> np.ndarray:
    """Slope-class labels of the points (w^a, w^b), q odd.

    Entry ``(a, b)`` is the ``m`` in ``1..(q-1)/2`` such that ``(w^a, w^b)``
    lies on ``L(m, 0)`` or ``L(m + (q-1)/2, 0)``, found by testing membership.
    """
    q = field.q
    if q % 2 == 0 or q < 5:
        raise ValueError(f"slope matrix needs odd q >= 5, got {q}")
    half = (q - 1) // 2
    lines = {m: line_points(field, m, 0) for m in range(1, q)}
    out = np.zeros((q - 1, q - 1), dtype=np.int64)
    for a in range(q - 1):
        for b in range(q - 1):
            pt = AffinePoint(field.exp(a), field.exp(b))
            hits = [m for m in range(1, q) if pt in lines[m]]
            if len(hits) != 1:
                raise AssertionError(f"{pt} lies on {len(hits)} lines through the origin")
            m = hits[0]
            out[a, b] = m if m <= half else m - half
    return out


def slope_blocks_ok(matrix: np.ndarray) -> bool:
    """All four quadrants equal, the first one the cyclic square in 1..n labels."""
    n = matrix.shape[0] // 2
    tl = matrix[:n, :n]
    quads_equal = all(
        np.array_equal(tl, blk) for blk in (matrix[:n, n:], matrix[n:, :n], matrix[n:, n:])
    )
    cyc = cyclic_square(n).entries.copy()
    cyc[cyc == 0] = n
    return quads_equal and np.array_equal(tl, cyc)
