"""4-local arcs: the even/odd constructions, the validator and an exhaustive search.

A 4-local arc is a family of m >= 2 pairwise disjoint 4-arcs whose pairwise
unions are 8-arcs. Each block is built from an anchor cell ``(i, j)`` as the
four corners ``(i, j), (i, j'), (i', j), (i', j')`` where ``i'`` and ``j'``
are ``i + w^(r-1)``, ``j + w^(r-1)`` (q even) or ``-i``, ``-j`` (q odd).
The point order inside a block matters for parity-check synthesis: the last
corner plays the role of the difference line.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .gf import FieldSpec, prime_power
from .latin import binary_half, cayley_transversal, cyclic_transversal
from .plane import (
    AffinePoint,
    ProjPoint,
    all_points,
    cross,
    det3,
    dot,
    embed,
    proj_point,
)

log = logging.getLogger(__name__)

__all__ = [
    "ArcBlock",
    "FourLocalArc",
    "LocalArcReport",
    "SearchResult",
    "UnsupportedOrder",
    "block_corners",
    "build_even",
    "build_odd",
    "build",
    "validate_local_arc",
    "expected_size",
    "exhaustive_search",
]


class UnsupportedOrder(ValueError):
    """q outside the range where the constructions give m >= 2 blocks."""


RESTRICTION = (
    "constructions need even q >= 8 or odd q >= 7: PG(2,4) and PG(2,5) contain no "
    "8-arc (arcs have at most q+2 points), so no two blocks can coexist; for q = 4 "
    "the order-2 Cayley table also has no transversal"
)


@dataclass(frozen=True)
class ArcBlock:
    points: tuple[ProjPoint, ProjPoint, ProjPoint, ProjPoint]
    anchor: Optional[tuple[int, int]] = None
    kind: str = "given"

    def __post_init__(self):
        if len(self.points) != 4:
            raise ValueError(f"a block has 4 points, got {len(self.points)}")


@dataclass(frozen=True)
class FourLocalArc:
    field: FieldSpec
    blocks: tuple[ArcBlock, ...]

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return 4 * len(self.blocks)

    def point_sets(self) -> list[frozenset[ProjPoint]]:
        return [frozenset(b.points) for b in self.blocks]


@dataclass
class LocalArcReport:
    blocks_are_arcs: bool = True
    disjoint: bool = True
    unions_are_arcs: bool = True
    witness: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.blocks_are_arcs and self.disjoint and self.unions_are_arcs

    def lines(self) -> list[str]:
        out = [
            f"blocks are 4-arcs: {'pass' if self.blocks_are_arcs else 'FAIL'}",
            f"blocks pairwise disjoint: {'pass' if self.disjoint else 'FAIL'}",
            f"pairwise unions are 8-arcs: {'pass' if self.unions_are_arcs else 'FAIL'}",
        ]
        if self.witness:
            out.append(f"witness: {self.witness}")
        return out


def block_corners(field: FieldSpec, anchor, partner_i: int, partner_j: int) -> list[AffinePoint]:
    i, j = anchor
    return [
        AffinePoint(i, j),
        AffinePoint(i, partner_j),
        AffinePoint(partner_i, j),
        AffinePoint(partner_i, partner_j),
    ]


def _block(field, anchor, pi, pj, kind) -> ArcBlock:
    pts = tuple(embed(field, p) for p in block_corners(field, anchor, pi, pj))
    return ArcBlock(pts, anchor=tuple(anchor), kind=kind)


def build_even(field: FieldSpec) -> FourLocalArc:
    """q = 2^r blocks anchored on a Cayley-table transversal of the half subgroup."""
    if field.p != 2:
        raise UnsupportedOrder(f"build_even needs characteristic 2, got GF({field.q})")
    if field.r < 3:
        raise UnsupportedOrder(f"q = {field.q}: {RESTRICTION}")
    half = binary_half(field)
    c = field.exp(field.r - 1)
    blocks = []
    for a, b in cayley_transversal(field):
        i, j = half[a], half[b]
        blocks.append(_block(field, (i, j), field.add(i, c), field.add(j, c), "even"))
    return FourLocalArc(field, tuple(blocks))


def build_odd(field: FieldSpec) -> FourLocalArc:
    """Odd q blocks anchored on a cyclic partial transversal of order (q-1)/2."""
    q = field.q
    if q % 2 == 0:
        raise UnsupportedOrder(f"build_odd needs odd q, got {q}")
    if q < 7:
        raise UnsupportedOrder(f"q = {q}: {RESTRICTION}")
    blocks = []
    for a, b in cyclic_transversal((q - 1) // 2):
        i, j = field.exp(a), field.exp(b)
        blocks.append(_block(field, (i, j), field.neg(i), field.neg(j), "odd"))
    return FourLocalArc(field, tuple(blocks))


def build(field: FieldSpec) -> FourLocalArc:
    return build_even(field) if field.p == 2 else build_odd(field)


def expected_size(q: int) -> int:
    """Length 2q, 2q-2 or 2q-6 of the construction, by q even / 3 mod 4 / 1 mod 4."""
    if prime_power(q) is None:
        raise UnsupportedOrder(f"{q} is not a prime power")
    if q % 2 == 0:
        if q < 8:
            raise UnsupportedOrder(f"q = {q}: {RESTRICTION}")
        return 2 * q
    if q < 7:
        raise UnsupportedOrder(f"q = {q}: {RESTRICTION}")
    return 2 * q - 2 if q % 4 == 3 else 2 * q - 6


def validate_local_arc(arc: FourLocalArc) -> LocalArcReport:
    """Check every block is a 4-arc, blocks are disjoint, pairwise unions are 8-arcs.

    Stops at the first violation of each kind and records a witness.
    """
    if arc.m < 2:
        raise ValueError(f"a 4-local arc has at least 2 blocks, got {arc.m}")
    F = arc.field
    rep = LocalArcReport()
    for g, blk in enumerate(arc.blocks):
        pts = [tuple(p) for p in blk.points]
        if len(set(pts)) != 4:
            rep.blocks_are_arcs = False
            rep.witness = rep.witness or f"block {g} repeats a point"
            continue
        for t in combinations(pts, 3):
            if det3(F, *t) == 0:
                rep.blocks_are_arcs = False
                rep.witness = rep.witness or f"block {g}: collinear {list(t)}"
                break
    sets = [set(map(tuple, b.points)) for b in arc.blocks]
    for g, h in combinations(range(arc.m), 2):
        common = sets[g] & sets[h]
        if common:
            rep.disjoint = False
            rep.witness = rep.witness or f"blocks {g} and {h} share {sorted(common)[0]}"
            continue
        union = sorted(sets[g] | sets[h])
        if len(union) != 8:
            continue
        for t in combinations(union, 3):
            if det3(F, *t) == 0:
                rep.unions_are_arcs = False
                rep.witness = rep.witness or f"blocks {g} and {h}: collinear {list(t)}"
                break
    return rep


# --- exhaustive search --------------------------------------------------------


@dataclass
class SearchResult:
    status: str  # "found", "none", "budget"
    arc: Optional[FourLocalArc] = None
    nodes: int = 0

    @property
    def conclusive(self) -> bool:
        return self.status != "budget"


class _Incidence:
    """Points of PG(2,q) as bit positions; line masks for each point pair."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.points = all_points(field)
        index = {p: k for k, p in enumerate(self.points)}
        n = len(self.points)
        line_mask: dict[ProjPoint, int] = {}
        # lines are indexed by their normal vectors, which range over the points
        for normal in self.points:
            mask = 0
            for k, p in enumerate(self.points):
                if dot(field, normal, p) == 0:
                    mask |= 1 << k
            line_mask[normal] = mask
        self.pair = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                normal = proj_point(field, cross(field, self.points[a], self.points[b]))
                self.pair[a][b] = self.pair[b][a] = line_mask[normal]
        self.index = index
        self.full = (1 << n) - 1


def exhaustive_search(
    field: FieldSpec, m: int, budget: int | None = 10_000_000
) -> SearchResult:
    """Backtracking search for a 4-local arc with ``m`` blocks.

    Blocks are built point by point; points within a block increase, blocks
    increase by their first point, so each family is visited once and the
    first hit is the lexicographically least witness. ``budget`` caps the
    number of search nodes (None for no cap).
    """
    if m < 2:
        raise ValueError("a 4-local arc has at least 2 blocks")
    inc = _Incidence(field)
    npts = len(inc.points)
    pair = inc.pair
    blocks: list[list[int]] = []
    nodes = 0

    class _Budget(Exception):
        pass

    def allowed(cur: list[int], lo: int, used: int) -> int:
        # points forbidden by lines through two points of cur, or of cur + another block
        bad = used
        for a, b in combinations(cur, 2):
            bad |= pair[a][b]
        for other in blocks:
            for a in cur:
                for b in other:
                    bad |= pair[a][b]
            for a, b in combinations(other, 2):
                bad |= pair[a][b]
        return inc.full & ~bad & ~((1 << lo) - 1)

    def extend_block(cur: list[int], used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _Budget
        if len(cur) == 4:
            blocks.append(cur)
            if len(blocks) == m:
                return True
            if new_block(used):
                return True
            blocks.pop()
            return False
        # a fresh block's first point must exceed the previous block's first point
        cand = allowed(cur, cur[-1] + 1, used)
        while cand:
            low = cand & -cand
            k = low.bit_length() - 1
            if extend_block(cur + [k], used | low):
                return True
            cand ^= low
        return False

    def new_block(used: int) -> bool:
        lo = blocks[-1][0] + 1 if blocks else 0
        need = 4 * (m - len(blocks))
        for k in range(lo, npts):
            if (used >> k) & 1:
                continue
            if npts - k < 4 and need:
                break
            if blocks and any(
                any(pair[a][b] >> k & 1 for a, b in combinations(other, 2)) for other in blocks
            ):
                continue
            if extend_block([k], used | 1 << k):
                return True
        return False

    try:
        found = new_block(0)
    except _Budget:
        log.info("search budget of %d nodes exhausted", budget)
        return SearchResult("budget", nodes=nodes)
    if not found:
        return SearchResult("none", nodes=nodes)
    out = tuple(
        ArcBlock(tuple(inc.points[k] for k in blk), kind="search") for blk in blocks
    )
    arc = FourLocalArc(field, out)
    assert validate_local_arc(arc).ok
    return SearchResult("found", arc, nodes)
