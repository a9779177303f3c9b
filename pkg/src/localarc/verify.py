"""Verifier suites shared by the CLI and the acceptance tests."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .arcs import FourLocalArc, expected_size, validate_local_arc
from .linalg import rank
from .lrc import (
    LrcParams,
    ParityCheckMatrix,
    arc_to_parity,
    dependency_search,
    quadruple_of_group,
    quadruples_ok,
    singleton_defect,
    verify_locality,
)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    params: Optional[LrcParams] = None

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), detail))
        return ok

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def render(self) -> str:
        out = []
        for c in self.checks:
            line = f"[{'pass' if c.ok else 'FAIL'}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            out.append(line)
        out.append(f"overall: {'pass' if self.ok else 'FAIL'}")
        return "\n".join(out)


def verify_arc(arc: FourLocalArc, report: Optional[Report] = None) -> Report:
    report = report or Report()
    rep = validate_local_arc(arc)
    report.add("blocks are 4-arcs", rep.blocks_are_arcs, "" if rep.blocks_are_arcs else rep.witness)
    report.add("blocks pairwise disjoint", rep.disjoint, "" if rep.disjoint else rep.witness)
    report.add(
        "pairwise unions are 8-arcs", rep.unions_are_arcs, "" if rep.unions_are_arcs else rep.witness
    )
    return report


def verify_matrix(
    pcm: ParityCheckMatrix,
    claimed: Optional[dict] = None,
    report: Optional[Report] = None,
    parallel: bool = False,
) -> Report:
    """Locality layout, dimension, exhaustive distance and Singleton optimality."""
    report = report or Report()
    F = pcm.field
    try:
        r = verify_locality(pcm)
        report.add("canonical locality layout", True, f"r = {r}")
    except ValueError as exc:
        report.add("canonical locality layout", False, str(exc))
        return report
    k = pcm.n - rank(F, pcm.matrix)
    report.add("dimension", k > 0, f"k = n - rank = {k}")
    # no code beats the Singleton-type bound, so searching up to it finds d exactly
    cap = max(1, pcm.n - k - math.ceil(k / r) + 2)
    ds = dependency_search(F, pcm.matrix, cap, parallel)
    d = ds.distance if ds.distance is not None else cap + 1
    report.add(
        "minimum distance",
        d == 6,
        f"d = {d}; first dependent columns {ds.witness}; subsets checked {ds.checked}",
    )
    defect = singleton_defect(pcm.n, k, d, r)
    report.add("Singleton-type bound met", defect == 0, f"defect = {defect}")
    report.params = LrcParams(pcm.n, k, d, r, pcm.groups, pcm.lower_rows)
    if claimed:
        got = {"n": pcm.n, "k": k, "d": d, "r": r}
        bad = {key: (claimed[key], got[key]) for key in got if key in claimed and claimed[key] != got[key]}
        report.add("claimed parameters", not bad, f"mismatch (claimed, computed): {bad}" if bad else "")
    return report


def verify_generated(
    arc: FourLocalArc, pcm: Optional[ParityCheckMatrix] = None, parallel: bool = False
) -> Report:
    """Full suite for a constructed arc and its parity-check matrix."""
    report = verify_arc(arc)
    try:
        n_exp = expected_size(arc.field.q)
        report.add("size matches the construction", arc.n == n_exp, f"n = {arc.n}, expected {n_exp}")
    except ValueError as exc:
        report.add("size matches the construction", False, str(exc))
    pcm = pcm if pcm is not None else arc_to_parity(arc)
    quads = [quadruple_of_group(pcm, g) for g in range(pcm.groups)]
    round_trip = all(q.dual_points() == frozenset(b.points) for q, b in zip(quads, arc.blocks))
    report.add("line quadruples dualise to the blocks", round_trip)
    report.add("no three lines concurrent", quadruples_ok(arc.field, quads))
    verify_matrix(pcm, report=report, parallel=parallel)
    return report
