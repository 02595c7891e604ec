"""Littlewood-Richardson tableaux, pictures and Schur product expansions.

These are the combinatorial oracles for Grassmannian problems.  Partition
arguments are French shapes (weakly increasing); internally the tableau code
works with ordinary weakly decreasing tuples.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .shapes import (Partition, SkewShape, check_string, ones, reverse,
                     shape_of_string, standard)

Box = tuple[int, int]


# ---------------------------------------------------------------------------
# LR tableaux

def _contains_std(outer: Partition, inner: Partition) -> bool:
    if len(inner) > len(outer):
        return False
    return all(a >= b for a, b in zip(outer, inner))


def lr_tableaux(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> Iterator[dict]:
    """Yield LR tableaux of shape nu/mu with content lam.

    Each tableau is a dict from English-convention cells ``(row, col)``
    (0-indexed, rows of ``standard(nu)`` from the longest) to entries.
    Rows weakly increase, columns strictly increase, and the reverse reading
    word (right to left, top to bottom) is a lattice word.
    """
    lam, mu, nu = standard(lam), standard(mu), standard(nu)
    if sum(lam) + sum(mu) != sum(nu) or not _contains_std(nu, mu):
        return
    mu_pad = mu + (0,) * (len(nu) - len(mu))
    cells = [(r, c) for r in range(len(nu)) for c in range(nu[r] - 1, mu_pad[r] - 1, -1)]
    filled: dict[Box, int] = {}
    counts = [0] * (len(lam) + 1)

    def rec(idx: int) -> Iterator[dict]:
        if idx == len(cells):
            yield dict(filled)
            return
        r, c = cells[idx]
        hi = min(len(lam), filled.get((r, c + 1), len(lam)))
        lo = filled[(r - 1, c)] + 1 if (r - 1, c) in filled else 1
        for x in range(lo, hi + 1):
            if counts[x] >= lam[x - 1]:
                continue
            if x > 1 and counts[x] >= counts[x - 1]:
                continue
            counts[x] += 1
            filled[(r, c)] = x
            yield from rec(idx + 1)
            del filled[(r, c)]
            counts[x] -= 1

    yield from rec(0)


@lru_cache(maxsize=None)
def _lr_count(lam: Partition, mu: Partition, nu: Partition) -> int:
    return sum(1 for _ in lr_tableaux(lam, mu, nu))


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """The coefficient of s_nu in s_lam * s_mu."""
    lam, mu, nu = standard(lam), standard(mu), standard(nu)
    if sum(lam) + sum(mu) != sum(nu):
        return 0
    if not (_contains_std(nu, mu) and _contains_std(nu, lam)):
        return 0
    # c^nu_{lam,mu} is symmetric; fill the skew by the shape with fewer parts
    if (len(mu), mu) > (len(lam), lam):
        lam, mu = mu, lam
    return _lr_count(lam, mu, nu)


# ---------------------------------------------------------------------------
# pictures

@dataclass(frozen=True)
class Picture:
    """A bijection from the boxes of a straight shape onto a skew shape.

    ``source`` and ``images`` are parallel tuples; ``source`` lists the boxes
    of the straight shape in row-major order.
    """

    source: tuple[Box, ...]
    images: tuple[Box, ...]

    def mapping(self) -> dict[Box, Box]:
        return dict(zip(self.source, self.images))

    def inverse(self) -> dict[Box, Box]:
        return dict(zip(self.images, self.source))


def _above_right(a: Box, b: Box) -> bool:
    """``a`` weakly above and weakly right of ``b`` (rows counted from the top)."""
    return a[0] <= b[0] and a[1] >= b[1]


def _compatible(a: Box, fa: Box, b: Box, fb: Box) -> bool:
    if _above_right(a, b) and not fa < fb:
        return False
    if _above_right(b, a) and not fb < fa:
        return False
    if _above_right(fa, fb) and not a < b:
        return False
    if _above_right(fb, fa) and not b < a:
        return False
    return True


def is_picture(mapping: dict[Box, Box]) -> bool:
    """Two-sided lexicographic condition, checked pairwise."""
    if len(set(mapping.values())) != len(mapping):
        return False
    items = list(mapping.items())
    for idx, (a, fa) in enumerate(items):
        for b, fb in items[idx + 1:]:
            if not _compatible(a, fa, b, fb):
                return False
    return True


def iter_pictures(lam: Sequence[int], skew: SkewShape) -> Iterator[Picture]:
    src = [(r, c) for r, length in enumerate(lam, 1) for c in range(1, length + 1)]
    targets = sorted(skew.boxes())
    if len(src) != len(targets):
        return
    chosen: list[Box] = []
    used: set[Box] = set()

    def rec(idx: int) -> Iterator[Picture]:
        if idx == len(src):
            yield Picture(tuple(src), tuple(chosen))
            return
        a = src[idx]
        for fa in targets:
            if fa in used:
                continue
            if all(_compatible(a, fa, src[t], chosen[t]) for t in range(idx)):
                chosen.append(fa)
                used.add(fa)
                yield from rec(idx + 1)
                used.discard(fa)
                chosen.pop()

    yield from rec(0)


def enumerate_pictures(lam: Sequence[int], skew: SkewShape) -> list[Picture]:
    """All pictures from French ``lam`` onto ``skew``, ordered by image sequence."""
    return list(iter_pictures(lam, skew))


def first_picture(lam: Sequence[int], skew: SkewShape) -> Picture | None:
    return next(iter_pictures(lam, skew), None)


def count_pictures(lam: Sequence[int], skew: SkewShape) -> int:
    return sum(1 for _ in iter_pictures(lam, skew))


# ---------------------------------------------------------------------------
# Schur expansions

class SchurExpansion(Counter):
    """Map from partitions (weakly decreasing, zeros dropped) to coefficients."""

    def terms(self) -> list[tuple[Partition, int]]:
        return sorted((p, c) for p, c in self.items() if c)


def _fits(part: Partition, box: tuple[int, int] | None) -> bool:
    if box is None:
        return True
    rows, cols = box
    return len(part) <= rows and (not part or part[0] <= cols)


def _supersets(inner: Partition, total: int, rows: int, cols: int) -> Iterator[Partition]:
    """Partitions containing ``inner`` with ``total`` boxes, at most rows x cols."""
    inner = inner + (0,) * (rows - len(inner))

    def rec(prefix: list[int], remaining: int) -> Iterator[Partition]:
        r = len(prefix)
        if r == rows:
            if remaining == 0:
                yield tuple(v for v in prefix if v)
            return
        hi = min(cols if r == 0 else prefix[-1], inner[r] + remaining)
        for v in range(hi, inner[r] - 1, -1):
            prefix.append(v)
            yield from rec(prefix, remaining - (v - inner[r]))
            prefix.pop()

    yield from rec([], total - sum(inner))


@lru_cache(maxsize=None)
def _product_pair(a: Partition, b: Partition, box: tuple[int, int] | None) -> tuple:
    if not a:
        return ((b, 1),) if _fits(b, box) else ()
    if not b:
        return ((a, 1),) if _fits(a, box) else ()
    rows = len(a) + len(b)
    cols = (a[0] if a else 0) + (b[0] if b else 0)
    if box is not None:
        rows, cols = min(rows, box[0]), min(cols, box[1])
    out = []
    for nu in _supersets(a, sum(a) + sum(b), rows, cols):
        c = lr_coefficient(a, b, nu)
        if c:
            out.append((nu, c))
    return tuple(out)


def multiply(expansion: SchurExpansion, part: Sequence[int],
             box: tuple[int, int] | None = None) -> SchurExpansion:
    part = standard(part)
    out = SchurExpansion()
    for nu, c in expansion.items():
        for rho, d in _product_pair(nu, part, box):
            out[rho] += c * d
    return out


def schur_product_expand(parts: Sequence[Sequence[int]],
                         box: tuple[int, int] | None = None) -> SchurExpansion:
    """Expand a product of Schur functions, dropping partitions outside ``box``.

    Dropping is exact for the kept terms: LR coefficients vanish unless the
    product partition contains each factor.
    """
    out = SchurExpansion({(): 1})
    for part in parts:
        out = multiply(out, part, box)
    return SchurExpansion({p: c for p, c in out.items() if c})


# ---------------------------------------------------------------------------
# Grassmannian intersection numbers

def check_problem_strings(sigmas: Sequence[str], mu: str, nu: str) -> tuple[int, int]:
    words = [check_string(w) for w in (*sigmas, mu, nu)]
    n = len(words[0])
    l = ones(words[0])
    for w in words:
        if len(w) != n or ones(w) != l:
            raise ValueError("all strings need the same length and the same number of ones")
    return n, l


def grassmann_product(words: Sequence[str]) -> SchurExpansion:
    """Schur expansion of the product of the classes of ``words`` in Gr_l(n)."""
    n, l = len(words[0]), ones(words[0])
    return schur_product_expand([shape_of_string(w) for w in words], (n - l, l))


def grassmann_intersection(sigmas: Sequence[str], mu: str, nu: str) -> int:
    """Intersection number of the classes of sigmas, mu and nu on Gr_l(n).

    Computed as the coefficient of the dual class of ``nu`` (its reversal)
    in the product of the others.
    """
    n, l = check_problem_strings(sigmas, mu, nu)
    expansion = grassmann_product([*sigmas, mu])
    return expansion.get(standard(shape_of_string(reverse(nu))), 0)
