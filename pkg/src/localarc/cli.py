"""Command-line interface: generate, verify, params, search, export-matrix.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import io as lio
from .arcs import RESTRICTION, UnsupportedOrder, build, exhaustive_search, expected_size
from .lrc import arc_to_parity, length_upper_bound
from .verify import verify_arc, verify_generated, verify_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
_EXT = {"text": "txt", "json": "json", "csv": "csv"}


@dataclass
class RunConfig:
    command: str
    q: Optional[int] = None
    modulus: Optional[list[int]] = None
    primitive: Optional[int] = None
    out: Optional[Path] = None
    input: Optional[Path] = None
    format: str = "text"
    budget: Optional[int] = None
    blocks: Optional[int] = None
    parallel: bool = False


class UsageError(Exception):
    pass


def _coeffs(text: str) -> list[int]:
    try:
        return [int(c) for c in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"modulus must be comma-separated integers: {text!r}")


def _field(cfg: RunConfig):
    if cfg.q is None:
        raise UsageError("--q is required")
    try:
        return lio.field_for_q(cfg.q, cfg.modulus, cfg.primitive)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _construct(cfg: RunConfig):
    field = _field(cfg)
    try:
        expected_size(field.q)
        return build(field)
    except UnsupportedOrder as exc:
        raise UsageError(str(exc)) from exc


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def cmd_generate(cfg: RunConfig) -> int:
    arc = _construct(cfg)
    pcm = arc_to_parity(arc)
    report = verify_generated(arc, pcm, parallel=cfg.parallel)
    out = cfg.out or Path(".")
    ext = _EXT[cfg.format]
    arc_path = out / f"arc_q{arc.field.q}.{ext}"
    mat_path = out / f"parity_q{arc.field.q}.{ext}"
    _write(arc_path, lio.dumps_arc(arc, cfg.format))
    _write(mat_path, lio.dumps_matrix(pcm, cfg.format, report.params))
    print(report.render())
    p = report.params
    if p is not None:
        print(f"(n, k, d, r) = ({p.n}, {p.k}, {p.d}, {p.r})")
    print(f"wrote {arc_path} and {mat_path}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.input is None:
        raise UsageError("--input is required")
    try:
        text = Path(cfg.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    field = _field(cfg) if cfg.q is not None else None
    try:
        kind, obj, claimed = lio.load(text, field)
    except ValueError as exc:
        raise UsageError(f"cannot parse {cfg.input}: {exc}") from exc
    if field is not None and obj.field.q != field.q:
        raise UsageError(f"file is over GF({obj.field.q}), --q says {field.q}")
    if kind == "arc":
        report = verify_arc(obj)
    else:
        report = verify_matrix(obj, claimed, parallel=cfg.parallel)
    print(f"{kind} over GF({obj.field.q})")
    print(report.render())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_params(cfg: RunConfig) -> int:
    if cfg.q is None:
        raise UsageError("--q is required")
    try:
        n = expected_size(cfg.q)
    except UnsupportedOrder as exc:
        raise UsageError(str(exc)) from exc
    m = n // 4
    bound = length_upper_bound(cfg.q)
    rows = [
        ("q", cfg.q),
        ("blocks", m),
        ("n", n),
        ("k", n - m - 3),
        ("d", 6),
        ("r", 3),
        ("length bound", bound),
    ]
    for key, val in rows:
        print(f"{key:>13}  {val}")
    return EXIT_OK


def cmd_search(cfg: RunConfig) -> int:
    field = _field(cfg)
    m = cfg.blocks or 2
    if m < 2:
        raise UsageError("--blocks must be at least 2")
    res = exhaustive_search(field, m, cfg.budget)
    if res.status == "found":
        print(f"found a 4-local arc with {m} blocks in PG(2,{field.q}) after {res.nodes} nodes")
        print(lio.dumps_arc(res.arc, cfg.format), end="")
    elif res.status == "none":
        print(
            f"no 4-local arc with {m} blocks exists in PG(2,{field.q}): "
            f"search exhausted after {res.nodes} nodes"
        )
    else:
        print(f"inconclusive: budget of {cfg.budget} nodes exhausted")
    return EXIT_OK


def cmd_export_matrix(cfg: RunConfig) -> int:
    if cfg.input is not None:
        try:
            kind, arc, _ = lio.load(Path(cfg.input).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        if kind != "arc":
            raise UsageError("export-matrix --input expects an arc file")
    else:
        arc = _construct(cfg)
    text = lio.dumps_matrix(arc_to_parity(arc), cfg.format)
    if cfg.out is None:
        print(text, end="")
    else:
        _write(Path(cfg.out), text)
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "params": cmd_params,
    "search": cmd_search,
    "export-matrix": cmd_export_matrix,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localarc",
        description="Singleton-optimal (n, k, 6; 3) locally repairable codes from 4-local arcs.",
        epilog=f"Supported orders: {RESTRICTION}.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("generate", "build the arc and parity-check matrix, verify, write files"),
        ("verify", "check an arc or matrix file"),
        ("params", "predicted parameters and the length upper bound"),
        ("search", "exhaustive search for a 4-local arc"),
        ("export-matrix", "write the parity-check matrix only"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--q", type=int)
        p.add_argument("--modulus", type=_coeffs, help="coefficients, constant term first")
        p.add_argument("--primitive", type=int, help="index of the primitive element")
        p.add_argument("--out", type=Path)
        p.add_argument("--input", type=Path)
        p.add_argument("--format", choices=sorted(_EXT), default="text")
        p.add_argument("--blocks", type=int)
        p.add_argument("--budget", type=int, default=10_000_000)
        p.add_argument("--parallel", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    cfg = RunConfig(
        command=args.command,
        q=args.q,
        modulus=args.modulus,
        primitive=args.primitive,
        out=args.out,
        input=args.input,
        format=args.format,
        budget=args.budget,
        blocks=args.blocks,
        parallel=args.parallel,
    )
    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
