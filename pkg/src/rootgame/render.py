"""ASCII pictures of positions.

Square (i, j) is drawn in text row i and text column j, so the board is the
strict upper triangle.  Borders between squares of different regions are
drawn with ``|`` and ``-``; squares in the same region are separated by
spaces.  An empty square shows ``.``.
"""

from __future__ import annotations

from typing import Sequence

from .game import GamePosition, Square


def cell_text(pos: GamePosition, sq: Square) -> str:
    labels = sorted(pos.labels_at(sq))
    if not labels:
        return "."
    sep = "" if pos.m < 10 else ","
    return sep.join(map(str, labels))


def render(pos: GamePosition, highlight: Sequence[Square] = ()) -> str:
    n = pos.n
    if n < 2:
        return "(empty board)"
    region_index = {}
    for idx, reg in enumerate(pos.regions):
        for sq in reg:
            region_index[sq] = idx
    marks = set(highlight)
    texts = {sq: cell_text(pos, sq) + ("*" if sq in marks else "")
             for sq in region_index}
    width = max(3, max(len(t) for t in texts.values()) + 1)

    def rid(i, j):
        return region_index.get((i, j))

    def corner(i, j):
        # corner above-left of square (i, j)
        near = (rid(i - 1, j - 1), rid(i - 1, j), rid(i, j - 1), rid(i, j))
        return "+" if any(r is not None for r in near) else " "

    def rule(i):
        # border line above row i
        out = ["    "]
        for j in range(2, n + 1):
            here, above = rid(i, j), rid(i - 1, j)
            out.append(corner(i, j) + ("-" * width if here != above else " " * width))
        out.append(corner(i, n + 1))
        return "".join(out).rstrip()

    lines = ["    " + "".join(f" {j:^{width}}" for j in range(2, n + 1)).rstrip()]
    for i in range(1, n):
        lines.append(rule(i))
        row = [f"{i:>3} "]
        for j in range(2, n + 1):
            here = rid(i, j)
            bar = "|" if here != rid(i, j - 1) else " "
            row.append(bar + (texts[(i, j)].center(width) if here is not None else " " * width))
        row.append("|")
        lines.append("".join(row).rstrip())
    lines.append(rule(n))
    return "\n".join(lines)
