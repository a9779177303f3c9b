"""Latin squares over field labels, MOLS, Cayley tables and cyclic squares.

Entries are stored as integers: field element indices for the field-based
squares, residues mod ``n`` for :func:`cyclic_square`. A :class:`CellSet`
addresses cells by (row position, column position) in its host square.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .gf import FieldSpec, field_new

__all__ = [
    "LatinSquare",
    "CellSet",
    "CellSetReport",
    "mols_member",
    "mols_degenerate",
    "is_latin",
    "is_orthogonal",
    "cayley_square",
    "cayley_blocks_ok",
    "binary_half",
    "cyclic_square",
    "cyclic_transversal",
    "cayley_transversal",
    "transversals_from_mate",
    "validate_cellset",
    "iter_transversals",
]


@dataclass(frozen=True, eq=False)
class LatinSquare:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self):
        n = len(self.rows)
        if len(self.cols) != n or self.entries.shape != (n, n):
            raise ValueError("labels and entries disagree on the order")
        self.entries.setflags(write=False)

    @property
    def order(self) -> int:
        return len(self.rows)

    def __getitem__(self, cell: tuple[int, int]) -> int:
        return int(self.entries[cell])

    def __eq__(self, other):
        return (
            isinstance(other, LatinSquare)
            and self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.entries, other.entries)
        )

    def to_text(self) -> str:
        """Rows of space-separated entries."""
        return "\n".join(" ".join(str(int(x)) for x in row) for row in self.entries)


@dataclass(frozen=True)
class CellSet:
    cells: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def labels(self, square: LatinSquare) -> list[tuple[int, int]]:
        """The cells as (row label, column label) pairs."""
        return [(square.rows[i], square.cols[j]) for i, j in self.cells]


@dataclass(frozen=True)
class CellSetReport:
    length: int
    rows_distinct: bool
    cols_distinct: bool
    symbols_distinct: bool

    @property
    def valid(self) -> bool:
        return self.rows_distinct and self.cols_distinct and self.symbols_distinct


def _square(rows: Sequence[int], cols: Sequence[int], entries) -> LatinSquare:
    return LatinSquare(tuple(rows), tuple(cols), np.asarray(entries, dtype=np.int64))


def mols_member(field: FieldSpec, k: int) -> LatinSquare:
    """Square with entry ``w^(k-1) * i + j`` at (i, j), labels in index order."""
    q = field.q
    if not 1 <= k <= q - 1:
        raise ValueError(f"k must lie in [1, {q - 1}], got {k}")
    c = field.exp(k - 1)
    entries = [[field.add(field.mul(c, i), j) for j in range(q)] for i in range(q)]
    return _square(range(q), range(q), entries)


def mols_degenerate(field: FieldSpec, which: str) -> np.ndarray:
    """The two non-Latin arrays completing the MOLS to the affine plane.

    ``"rows"`` (M_inf) is constant along each row, ``"columns"`` (M_0)
    constant along each column.
    """
    idx = np.arange(field.q, dtype=np.int64)
    if which in ("rows", "inf"):
        return np.repeat(idx[:, None], field.q, axis=1)
    if which in ("columns", "0"):
        return np.repeat(idx[None, :], field.q, axis=0)
    raise ValueError(f"unknown degenerate array {which!r}")


def is_latin(square: LatinSquare) -> bool:
    e = square.entries
    n = square.order
    symbols = set(np.unique(e).tolist())
    if len(symbols) != n:
        return False
    return all(len(set(e[i].tolist())) == n for i in range(n)) and all(
        len(set(e[:, j].tolist())) == n for j in range(n)
    )


def is_orthogonal(a: LatinSquare, b: LatinSquare) -> bool:
    if a.order != b.order:
        raise ValueError(f"orders differ: {a.order} vs {b.order}")
    pairs = set(zip(a.entries.ravel().tolist(), b.entries.ravel().tolist()))
    return len(pairs) == a.order**2


def cayley_square(field: FieldSpec, labels: Sequence[int]) -> LatinSquare:
    """Addition table of an additive subgroup of GF(2^r), in the given label order."""
    if field.p != 2:
        raise ValueError("Cayley squares are built over characteristic 2")
    labels = list(labels)
    members = set(labels)
    if len(members) != len(labels):
        raise ValueError("labels repeat")
    entries = [[field.add(i, j) for j in labels] for i in labels]
    if any(x not in members for row in entries for x in row):
        raise ValueError("labels are not closed under addition")
    return _square(labels, labels, entries)


def binary_half(field: FieldSpec) -> list[int]:
    """span{1, w, ..., w^(r-2)} in binary counting order over that basis."""
    if field.p != 2 or field.r < 2:
        raise ValueError("needs GF(2^r) with r >= 2")
    basis = [field.exp(k) for k in range(field.r - 1)]
    out = []
    for n in range(1 << (field.r - 1)):
        acc = 0
        for k, b in enumerate(basis):
            if n >> k & 1:
                acc ^= b
        out.append(acc)
    return out


def cayley_blocks_ok(square: LatinSquare, field: FieldSpec) -> bool:
    """Check the half/half block identity of the full Cayley table.

    Diagonal blocks coincide and each off-diagonal block is a diagonal block
    with ``w^(r-1)`` added entrywise.
    """
    h = square.order // 2
    e = square.entries
    c = field.exp(field.r - 1)
    shifted = np.vectorize(lambda x: field.add(int(x), c), otypes=[np.int64])(e[:h, :h])
    return (
        np.array_equal(e[:h, :h], e[h:, h:])
        and np.array_equal(e[:h, h:], shifted)
        and np.array_equal(e[h:, :h], shifted)
    )


def cyclic_square(n: int) -> LatinSquare:
    """``L(i, j) = j - i + 1 (mod n)`` with residues as symbols."""
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return _square([0], [0], [[1]])
    entries = [[(j - i + 1) % n for j in range(n)] for i in range(n)]
    return _square(range(n), range(n), entries)


def cyclic_transversal(n: int) -> CellSet:
    """Transversal (n odd) or length n-1 partial transversal (n even) of the cyclic square."""
    if n < 3:
        raise ValueError(f"cyclic transversal needs n >= 3, got {n}")
    if n % 2:
        return CellSet(tuple((i, 2 * i % n) for i in range(n)))
    k = n // 2
    cells = [(i, 2 * i) for i in range(k)]
    cells += [(i + 1, (2 * i - 2 * k + 1) % n) for i in range(k, 2 * k - 1)]
    return CellSet(tuple(cells))


def cayley_transversal(field: FieldSpec) -> CellSet:
    """A full transversal of the Cayley table on the half subgroup.

    The half ``H = span{1, ..., w^(r-2)}`` is identified coefficientwise with
    GF(2^(r-1)); the column partner of row ``h`` is ``x * h`` there. Both
    ``h -> x*h`` and ``h -> (1+x)*h`` are bijections, so rows, columns and
    symbols are all distinct.

    Cells are positions in ``cayley_square(field, binary_half(field))``.
    """
    if field.p != 2:
        raise ValueError("needs characteristic 2")
    if field.r < 3:
        raise ValueError(
            f"GF({field.q}): the half subgroup has order {1 << (field.r - 1)}, "
            "and Cayley tables of order <= 2 have no usable transversal"
        )
    small = field_new(2, field.r - 1)
    # positions in binary_half are exactly coefficient vectors over {1, ..., w^(r-2)}
    return CellSet(tuple((h, small.mul(2, h)) for h in range(small.q)))


def transversals_from_mate(a: LatinSquare, b: LatinSquare) -> list[CellSet]:
    """Slice ``a`` by the symbols of an orthogonal mate ``b``."""
    if not is_orthogonal(a, b):
        raise ValueError("squares are not orthogonal")
    out = []
    for s in np.unique(b.entries).tolist():
        ii, jj = np.nonzero(b.entries == s)
        out.append(CellSet(tuple(zip(ii.tolist(), jj.tolist()))))
    return out


def validate_cellset(square: LatinSquare, cells) -> CellSetReport:
    cells = list(cells)
    n = square.order
    for i, j in cells:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"cell {(i, j)} outside a square of order {n}")
    rows = [i for i, _ in cells]
    cols = [j for _, j in cells]
    syms = [square[i, j] for i, j in cells]
    return CellSetReport(
        length=len(cells),
        rows_distinct=len(set(rows)) == len(rows),
        cols_distinct=len(set(cols)) == len(cols),
        symbols_distinct=len(set(syms)) == len(syms),
    )


def iter_transversals(square: LatinSquare) -> Iterator[CellSet]:
    """All full transversals, row by row with forward checking.

    Exhaustive; intended for orders up to about 16.
    """
    n = square.order
    e = square.entries.tolist()
    cols_used = [False] * n
    syms_used: set[int] = set()
    chosen: list[int] = []

    def extend(i):
        if i == n:
            yield CellSet(tuple(enumerate(chosen)))
            return
        row = e[i]
        for j in range(n):
            if cols_used[j] or row[j] in syms_used:
                continue
            # forward check: every later row must keep an admissible cell
            cols_used[j] = True
            syms_used.add(row[j])
            if all(
                any(not cols_used[c] and e[t][c] not in syms_used for c in range(n))
                for t in range(i + 1, n)
            ):
                chosen.append(j)
                yield from extend(i + 1)
                chosen.pop()
            cols_used[j] = False
            syms_used.discard(row[j])

    yield from extend(0)
