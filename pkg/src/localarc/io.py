"""JSON, text and CSV forms of fields, arcs and parity-check matrices.

All field elements are written as canonical indices.

Matrix text::

    q=<q> rows=<rows> cols=<n> groups=<groups>
    <row of space-separated indices>
    ...

Arc text::

    q=<q> modulus=<c0,...,cr> primitive=<index> blocks=<m>
    <x0,x1,x2> <x0,x1,x2> <x0,x1,x2> <x0,x1,x2>
    ...
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Optional

import numpy as np

from .arcs import ArcBlock, FourLocalArc
from .gf import FieldSpec, field_new, prime_power
from .lrc import LrcParams, ParityCheckMatrix
from .plane import proj_point


class FormatError(ValueError):
    """Input that does not parse as an arc or parity-check matrix."""


def field_to_dict(field: FieldSpec) -> dict[str, Any]:
    return {
        "p": field.p,
        "r": field.r,
        "modulus": list(field.modulus),
        "primitive": field.primitive,
    }


def field_from_dict(data: dict[str, Any]) -> FieldSpec:
    try:
        return field_new(
            int(data["p"]), int(data["r"]), [int(c) for c in data["modulus"]], int(data["primitive"])
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad field description: {exc}") from exc


def field_for_q(q: int, modulus=None, primitive: Optional[int] = None) -> FieldSpec:
    pr = prime_power(q)
    if pr is None:
        raise ValueError(f"q = {q} is not a prime power")
    return field_new(pr[0], pr[1], modulus, primitive)


# --- arcs ------------------------------------------------------------------


def arc_to_dict(arc: FourLocalArc) -> dict[str, Any]:
    return {
        "field": field_to_dict(arc.field),
        "blocks": [[list(p) for p in b.points] for b in arc.blocks],
    }


def _parse_point(field: FieldSpec, raw) -> tuple[int, int, int]:
    try:
        coords = [int(c) for c in raw]
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad point {raw!r}") from exc
    if len(coords) != 3 or any(not 0 <= c < field.q for c in coords):
        raise FormatError(f"bad point {raw!r} for GF({field.q})")
    try:
        return proj_point(field, coords)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _arc_from_blocks(field: FieldSpec, blocks) -> FourLocalArc:
    if not isinstance(blocks, list) or len(blocks) < 2:
        raise FormatError("an arc file needs at least 2 blocks")
    out = []
    for raw in blocks:
        if not isinstance(raw, list) or len(raw) != 4:
            raise FormatError(f"a block needs 4 points: {raw!r}")
        out.append(ArcBlock(tuple(_parse_point(field, p) for p in raw)))
    return FourLocalArc(field, tuple(out))


def arc_from_dict(data: dict[str, Any]) -> FourLocalArc:
    if "field" not in data or "blocks" not in data:
        raise FormatError("arc JSON needs 'field' and 'blocks'")
    return _arc_from_blocks(field_from_dict(data["field"]), data["blocks"])


def arc_to_text(arc: FourLocalArc) -> str:
    F = arc.field
    head = (
        f"q={F.q} modulus={','.join(map(str, F.modulus))} "
        f"primitive={F.primitive} blocks={arc.m}"
    )
    lines = [" ".join(",".join(map(str, p)) for p in b.points) for b in arc.blocks]
    return "\n".join([head, *lines]) + "\n"


def _header(line: str) -> dict[str, str]:
    try:
        return dict(tok.split("=", 1) for tok in line.split())
    except ValueError as exc:
        raise FormatError(f"bad header line {line!r}") from exc


def arc_from_text(text: str) -> FourLocalArc:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty arc file")
    head = _header(lines[0])
    try:
        field = field_for_q(
            int(head["q"]), [int(c) for c in head["modulus"].split(",")], int(head["primitive"])
        )
        m = int(head["blocks"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad arc header: {exc}") from exc
    blocks = [[tok.split(",") for tok in ln.split()] for ln in lines[1:]]
    if len(blocks) != m:
        raise FormatError(f"header announces {m} blocks, found {len(blocks)}")
    return _arc_from_blocks(field, blocks)


def arc_to_csv(arc: FourLocalArc) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["block", "point", "x0", "x1", "x2"])
    for g, b in enumerate(arc.blocks):
        for t, p in enumerate(b.points):
            w.writerow([g, t, *p])
    return buf.getvalue()


# --- matrices --------------------------------------------------------------


def matrix_to_dict(pcm: ParityCheckMatrix, params: Optional[LrcParams] = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "field": field_to_dict(pcm.field),
        "upper": pcm.upper.tolist(),
        "lower": pcm.lower.tolist(),
    }
    if params is not None:
        out["params"] = {"n": params.n, "k": params.k, "d": params.d, "r": params.r}
    return out


def _matrix(field: FieldSpec, rows, groups: int) -> ParityCheckMatrix:
    try:
        arr = np.array(rows, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"ragged or non-integer matrix: {exc}") from exc
    if arr.ndim != 2 or arr.size == 0:
        raise FormatError("matrix is empty or not rectangular")
    if arr.min() < 0 or arr.max() >= field.q:
        raise FormatError(f"entries must be indices of GF({field.q})")
    try:
        return ParityCheckMatrix(field, groups, arr)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def matrix_from_dict(data: dict[str, Any]) -> tuple[ParityCheckMatrix, Optional[dict]]:
    if not all(k in data for k in ("field", "upper", "lower")):
        raise FormatError("matrix JSON needs 'field', 'upper' and 'lower'")
    field = field_from_dict(data["field"])
    upper, lower = data["upper"], data["lower"]
    if not upper:
        raise FormatError("matrix has no locality rows")
    return _matrix(field, list(upper) + list(lower), len(upper)), data.get("params")


def matrix_to_text(pcm: ParityCheckMatrix) -> str:
    rows, cols = pcm.matrix.shape
    head = f"q={pcm.field.q} rows={rows} cols={cols} groups={pcm.groups}"
    body = [" ".join(str(int(x)) for x in row) for row in pcm.matrix]
    return "\n".join([head, *body]) + "\n"


def matrix_from_text(text: str, field: Optional[FieldSpec] = None) -> ParityCheckMatrix:
    """Parse the text form; the field defaults to the standard GF(q)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty matrix file")
    head = _header(lines[0])
    try:
        q, nrows, ncols, groups = (int(head[k]) for k in ("q", "rows", "cols", "groups"))
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad matrix header: {exc}") from exc
    if field is None:
        field = field_for_q(q)
    elif field.q != q:
        raise FormatError(f"file is over GF({q}) but GF({field.q}) was requested")
    try:
        rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    pcm = _matrix(field, rows, groups)
    if pcm.matrix.shape != (nrows, ncols):
        raise FormatError(f"header says {nrows}x{ncols}, body is {pcm.matrix.shape}")
    return pcm


def matrix_to_csv(pcm: ParityCheckMatrix) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(pcm.matrix.tolist())
    return buf.getvalue()


# --- dispatch --------------------------------------------------------------


def load(text: str, field: Optional[FieldSpec] = None):
    """Parse an arc or matrix from JSON or text. Returns ``(kind, obj, extra)``."""
    stripped = text.strip()
    if not stripped:
        raise FormatError("empty input")
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from exc
        if "blocks" in data:
            return "arc", arc_from_dict(data), None
        pcm, params = matrix_from_dict(data)
        return "matrix", pcm, params
    head = _header(stripped.splitlines()[0])
    if "blocks" in head:
        return "arc", arc_from_text(stripped), None
    return "matrix", matrix_from_text(stripped, field), None


def dumps_arc(arc: FourLocalArc, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(arc_to_dict(arc), indent=1) + "\n"
    if fmt == "csv":
        return arc_to_csv(arc)
    return arc_to_text(arc)


def dumps_matrix(pcm: ParityCheckMatrix, fmt: str, params: Optional[LrcParams] = None) -> str:
    if fmt == "json":
        return json.dumps(matrix_to_dict(pcm, params), indent=1) + "\n"
    if fmt == "csv":
        return matrix_to_csv(pcm)
    return matrix_to_text(pcm)
