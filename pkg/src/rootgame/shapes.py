"""01-strings, French Young diagrams and skew shapes.

Partitions are tuples of row lengths listed top row first, weakly increasing
downward (French convention).  Rows of length 0 are allowed so that a shape
can carry a fixed number of rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

Partition = tuple[int, ...]


class ShapeError(ValueError):
    pass


def check_string(word: str) -> str:
    if not word or set(word) - {"0", "1"}:
        raise ShapeError(f"not a 01-string: {word!r}")
    return word


def ones(word: str) -> int:
    return word.count("1")


def reverse(word: str) -> str:
    return word[::-1]


def zero_positions(word: str) -> list[int]:
    return [pos for pos, ch in enumerate(word, 1) if ch == "0"]


def one_positions(word: str) -> list[int]:
    return [pos for pos, ch in enumerate(word, 1) if ch == "1"]


def all_strings(n: int, l: int) -> list[str]:
    """Every 0^(n-l)1^l-string, in lexicographic order."""
    out = []
    for pos in combinations(range(n), l):
        chars = ["0"] * n
        for p in pos:
            chars[p] = "1"
        out.append("".join(chars))
    return sorted(out)


def shape_of_string(word: str) -> Partition:
    """Row ``i`` counts the ones before the ``i``-th zero."""
    check_string(word)
    rows, seen = [], 0
    for ch in word:
        if ch == "1":
            seen += 1
        else:
            rows.append(seen)
    return tuple(rows)


def string_of_shape(shape: Sequence[int], l: int) -> str:
    """Inverse of :func:`shape_of_string` for a shape with ``n - l`` rows, entries <= l."""
    out, placed = [], 0
    for row in shape:
        if row < placed or row > l:
            raise ShapeError(f"{tuple(shape)} is not a shape inside a {len(shape)}x{l} box")
        out.append("1" * (row - placed) + "0")
        placed = row
    out.append("1" * (l - placed))
    return "".join(out)


def shift_shape(shape: Sequence[int], extra: int) -> Partition:
    """Add ``extra`` boxes to every row, empty rows included."""
    if extra < 0:
        raise ShapeError("shift must be nonnegative")
    return tuple(row + extra for row in shape)


def is_partition(shape: Sequence[int]) -> bool:
    return all(0 <= a <= b for a, b in zip(shape, shape[1:])) and all(r >= 0 for r in shape)


def size(shape: Sequence[int]) -> int:
    return sum(shape)


def contains(outer: Sequence[int], inner: Sequence[int]) -> bool:
    """Containment of French shapes aligned at the bottom row."""
    if len(inner) > len(outer):
        extra = inner[: len(inner) - len(outer)]
        if any(extra):
            return False
        inner = inner[len(inner) - len(outer):]
    pad = (0,) * (len(outer) - len(inner)) + tuple(inner)
    return all(a >= b for a, b in zip(outer, pad))


def standard(shape: Sequence[int]) -> Partition:
    """Weakly decreasing form with zero rows dropped (the usual partition tuple)."""
    return tuple(sorted((r for r in shape if r), reverse=True))


def french(shape: Sequence[int], rows: int | None = None) -> Partition:
    """Weakly increasing form, left-padded with zeros to ``rows`` rows."""
    parts = sorted(r for r in shape if r)
    if rows is None:
        rows = len(parts)
    if len(parts) > rows:
        raise ShapeError(f"{tuple(shape)} has more than {rows} nonzero rows")
    return (0,) * (rows - len(parts)) + tuple(parts)


def boxes(shape: Sequence[int]) -> list[tuple[int, int]]:
    """Boxes ``(row, col)`` of a French shape, 1-indexed, row-major."""
    return [(r, c) for r, length in enumerate(shape, 1) for c in range(1, length + 1)]


def complement_in_box(shape: Sequence[int], rows: int, cols: int) -> Partition:
    """Complement inside a ``rows x cols`` rectangle, rotated to French form."""
    pad = french(shape, rows)
    return tuple(cols - r for r in reversed(pad))


def partitions_in_box(rows: int, cols: int, total: int | None = None) -> Iterator[Partition]:
    """French partitions with ``rows`` rows (zeros allowed) and entries <= cols."""

    def rec(prefix: list[int], lo: int) -> Iterator[Partition]:
        if len(prefix) == rows:
            if total is None or sum(prefix) == total:
                yield tuple(prefix)
            return
        for v in range(lo, cols + 1):
            prefix.append(v)
            yield from rec(prefix, v)
            prefix.pop()

    yield from rec([], 0)


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition

    def __post_init__(self):
        if len(self.outer) != len(self.inner):
            raise ShapeError("skew shape needs equal row counts")
        if any(b > a for a, b in zip(self.outer, self.inner)):
            raise ShapeError("inner shape not contained in outer shape")

    def boxes(self) -> list[tuple[int, int]]:
        return [(r, c) for r, (a, b) in enumerate(zip(self.outer, self.inner), 1)
                for c in range(b + 1, a + 1)]

    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)
