"""Parity-check synthesis from 4-local arcs and verification of LRC parameters.

The parity-check matrix has one all-ones locality row per repair group of
four coordinates, followed by three rows whose columns in group ``g`` are
``0, u_g, v_g, w_g``. The four points of block ``g`` are the duals of the
lines ``<u,v>``, ``<v,w>``, ``<w,u>`` and ``<u-v, v-w>``.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .arcs import ArcBlock, FourLocalArc
from .gf import FieldSpec
from .linalg import null_space_basis, rank
from .plane import ProjPoint, cross, det3, dot, proj_point

log = logging.getLogger(__name__)

__all__ = [
    "ParityCheckMatrix",
    "LrcParams",
    "LineQuadruple",
    "DistanceReport",
    "group_columns",
    "arc_to_parity",
    "rank",
    "null_space_basis",
    "min_distance",
    "dependency_search",
    "verify_locality",
    "singleton_defect",
    "length_upper_bound",
    "quadruple_of_group",
    "quadruples_ok",
    "code_params",
]

LOCALITY = 3


@dataclass(frozen=True, eq=False)
class ParityCheckMatrix:
    field: FieldSpec
    groups: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.ndim != 2 or self.matrix.shape[1] != 4 * self.groups:
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not fit {self.groups} groups of 4"
            )
        self.matrix.setflags(write=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def lower_rows(self) -> int:
        return self.matrix.shape[0] - self.groups

    @property
    def upper(self) -> np.ndarray:
        return self.matrix[: self.groups]

    @property
    def lower(self) -> np.ndarray:
        return self.matrix[self.groups :]

    def __eq__(self, other):
        return (
            isinstance(other, ParityCheckMatrix)
            and self.field == other.field
            and self.groups == other.groups
            and np.array_equal(self.matrix, other.matrix)
        )


@dataclass(frozen=True)
class LrcParams:
    n: int
    k: int
    d: Optional[int]
    r: int
    groups: int
    lower_rows: int

    def as_tuple(self):
        return (self.n, self.k, self.d, self.r)


@dataclass(frozen=True)
class LineQuadruple:
    """Four lines of PG(2,q), each given by its normal vector."""

    lines: tuple[ProjPoint, ProjPoint, ProjPoint, ProjPoint]

    def dual_points(self) -> frozenset[ProjPoint]:
        return frozenset(self.lines)


# --- synthesis -------------------------------------------------------------


def group_columns(field: FieldSpec, block) -> tuple[tuple[int, ...], ...]:
    """Columns ``(u, v, w)`` whose line quadruple dualises to the block.

    With points P1..P4 in block order, ``u`` spans P1 ∩ P3, ``v`` P1 ∩ P2 and
    ``w`` P2 ∩ P3 (as dual lines), each scaled so its product with P4 is 1;
    then ``u - v`` and ``v - w`` both lie on the dual line of P4.
    """
    pts = block.points if isinstance(block, ArcBlock) else block
    p1, p2, p3, p4 = pts
    out = []
    for a, b in ((p1, p3), (p1, p2), (p2, p3)):
        x = cross(field, a, b)
        s = dot(field, p4, x)
        if s == 0:
            raise AssertionError(f"block {list(pts)} is not a 4-arc")
        s = field.inv(s)
        out.append(tuple(field.mul(s, c) for c in x))
    return tuple(out)


def arc_to_parity(arc: FourLocalArc) -> ParityCheckMatrix:
    if arc.m < 2:
        raise ValueError(f"need at least 2 blocks, got {arc.m}")
    F, m = arc.field, arc.m
    H = np.zeros((m + 3, 4 * m), dtype=np.int64)
    for g, blk in enumerate(arc.blocks):
        H[g, 4 * g : 4 * g + 4] = 1
        for t, col in enumerate(group_columns(F, blk), start=1):
            H[m:, 4 * g + t] = col
    return ParityCheckMatrix(F, m, H)


# --- minimum distance ------------------------------------------------------


@dataclass
class DistanceReport:
    """Outcome of the column-dependence search.

    ``distance`` is None when no dependent set of size <= cap exists.
    ``checked[w]`` counts the w-subsets tested.
    """

    distance: Optional[int]
    cap: int
    witness: Optional[tuple[int, ...]] = None
    checked: dict[int, int] = dc_field(default_factory=dict)


def _chunks(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    step = max(1, math.ceil((hi - lo) / parts))
    return [(a, min(a + step, hi)) for a in range(lo, hi, step)]


def dependency_search(
    field: FieldSpec, matrix, cap: int = 6, parallel: bool = False, workers: int = 8
) -> DistanceReport:
    """Smallest number of linearly dependent columns, up to ``cap``.

    Sizes 1, 2, ... are exhausted in turn, each in lexicographic column order,
    so the witness is the lexicographically first dependent set of minimal
    size. ``parallel`` splits the first-column range across threads and keeps
    the result schedule-independent.
    """
    from ._kernels import search_level

    if cap < 1:
        raise ValueError("cap must be at least 1")
    H = np.ascontiguousarray(np.asarray(matrix, dtype=np.int64))
    n = H.shape[1]
    add, neg, exp, logt = field.tables
    report = DistanceReport(None, cap)
    for w in range(1, min(cap, n) + 1):
        if parallel:
            parts = _chunks(0, n - w + 1, workers * 4)
            with ThreadPoolExecutor(workers) as pool:
                results = list(
                    pool.map(lambda c: search_level(H, w, c[0], c[1], add, neg, exp, logt), parts)
                )
            # chunks are in column order, so counting up to the first hit matches a serial scan
            total = 0
            for ok, idx, cnt in results:
                total += int(cnt)
                if ok:
                    report.checked[w] = total
                    report.distance, report.witness = w, tuple(int(i) for i in idx)
                    return report
            report.checked[w] = total
        else:
            ok, idx, cnt = search_level(H, w, 0, n - w + 1, add, neg, exp, logt)
            report.checked[w] = int(cnt)
            if ok:
                report.distance, report.witness = w, tuple(int(i) for i in idx)
                return report
        log.debug("no dependent %d-subset among %d", w, report.checked[w])
    return report


def min_distance(field: FieldSpec, matrix, cap: int = 6, parallel: bool = False) -> Optional[int]:
    """Least w <= cap with some w columns dependent, else None (meaning > cap)."""
    if isinstance(matrix, ParityCheckMatrix):
        matrix = matrix.matrix
    return dependency_search(field, matrix, cap, parallel).distance


# --- locality and bounds ---------------------------------------------------


def verify_locality(pcm: ParityCheckMatrix) -> int:
    """Check the canonical layout and return the locality (3)."""
    up, low, m = pcm.upper, pcm.lower, pcm.groups
    for g in range(m):
        expect = np.zeros(pcm.n, dtype=np.int64)
        expect[4 * g : 4 * g + 4] = 1
        if not np.array_equal(up[g], expect):
            raise ValueError(f"row {g} is not the locality indicator of group {g}")
        if np.any(low[:, 4 * g]):
            raise ValueError(f"group {g} lower block does not start with a zero column")
    # each coordinate sits in exactly one weight-4 locality check
    if not np.array_equal(up.sum(axis=0), np.ones(pcm.n, dtype=np.int64)):
        raise ValueError("locality rows do not partition the coordinates")
    return int(up.sum(axis=1).max()) - 1


def singleton_defect(n: int, k: int, d: int, r: int) -> int:
    """Gap to the Singleton-type bound ``d <= n - k - ceil(k/r) + 2``; 0 means optimal."""
    return (n - k - math.ceil(k / r) + 2) - d


def length_upper_bound(q: int) -> int:
    """``4 * floor((7q + 3 + sqrt(24q^3 + q^2 - 6q - 63)) / 24)`` in exact integers."""
    radicand = 24 * q**3 + q**2 - 6 * q - 63
    if q < 2 or radicand < 0:
        raise ValueError(f"bound undefined for q = {q}")
    # floor((a + sqrt(D)) / 24) == floor((a + isqrt(D)) / 24) for integer a
    return 4 * ((7 * q + 3 + math.isqrt(radicand)) // 24)


# --- line quadruples -------------------------------------------------------


def quadruple_of_group(pcm: ParityCheckMatrix, g: int) -> LineQuadruple:
    """The lines <u,v>, <v,w>, <w,u>, <u-v, v-w> of group ``g`` (0-based)."""
    if not 0 <= g < pcm.groups:
        raise IndexError(f"group {g} out of range")
    F = pcm.field
    low = pcm.lower
    u, v, w = (tuple(int(x) for x in low[:, 4 * g + t]) for t in (1, 2, 3))
    umv = tuple(F.sub(a, b) for a, b in zip(u, v))
    vmw = tuple(F.sub(a, b) for a, b in zip(v, w))
    lines = []
    for a, b in ((u, v), (v, w), (w, u), (umv, vmw)):
        normal = cross(F, a, b)
        if not any(normal):
            raise ValueError(f"group {g}: columns {a} and {b} do not span a line")
        lines.append(proj_point(F, normal))
    return LineQuadruple(tuple(lines))


def quadruples_ok(field: FieldSpec, quads: Sequence[LineQuadruple]) -> bool:
    """No three lines concurrent within one quadruple or across any two."""
    for a, b in combinations(range(len(quads)), 2):
        lines = list(quads[a].lines) + list(quads[b].lines)
        if len(set(lines)) != 8:
            return False
        if any(det3(field, *t) == 0 for t in combinations(lines, 3)):
            return False
    if len(quads) == 1:
        return not any(det3(field, *t) == 0 for t in combinations(quads[0].lines, 3))
    return True


def code_params(pcm: ParityCheckMatrix, cap: int = 6, parallel: bool = False) -> LrcParams:
    F = pcm.field
    k = pcm.n - rank(F, pcm.matrix)
    d = min_distance(F, pcm.matrix, cap, parallel)
    return LrcParams(pcm.n, k, d, verify_locality(pcm), pcm.groups, pcm.lower_rows)
