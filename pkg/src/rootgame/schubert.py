"""Schubert polynomials and intersection numbers on Fl(n).

Two independent routes to structure constants:

* polynomial: Schubert polynomials by divided differences from the staircase
  monomial, multiplied out and read back in the Schubert basis;
* Monk: products computed entirely in the Schubert basis, peeling one
  variable at a time with the transition formula and multiplying by ``x_r``
  with Monk's rule.

Permutations are one-line tuples over 1..n.  Polynomials are dicts from
exponent tuples to nonzero integer coefficients.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Sequence

from .game import longest_element, perm_length

Perm = tuple[int, ...]
Poly = dict  # dict[tuple[int, ...], int]


class OracleError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# permutation helpers

def trim(perm: Sequence[int]) -> Perm:
    """Drop trailing fixed points, the stable form used as cache key."""
    p = list(perm)
    while p and p[-1] == len(p):
        p.pop()
    return tuple(p)


def pad(perm: Sequence[int], n: int) -> Perm:
    return tuple(perm) + tuple(range(len(perm) + 1, n + 1))


def swap(perm: Sequence[int], a: int, b: int) -> Perm:
    """Right multiplication by the transposition of positions ``a`` and ``b`` (1-indexed)."""
    p = list(pad(perm, max(a, b)))
    p[a - 1], p[b - 1] = p[b - 1], p[a - 1]
    return tuple(p)


def lehmer_code(perm: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(1 for b in perm[a + 1:] if b < perm[a]) for a in range(len(perm)))


def perm_from_code(code: Sequence[int]) -> Perm:
    n = max((i + c + 1 for i, c in enumerate(code)), default=0)
    n = max(n, len(code))
    available = list(range(1, n + 1))
    out = []
    for i in range(n):
        c = code[i] if i < len(code) else 0
        out.append(available.pop(c))
    return trim(out)


def compose(u: Sequence[int], v: Sequence[int]) -> Perm:
    """(u v)(i) = u(v(i))."""
    n = max(len(u), len(v))
    u, v = pad(u, n), pad(v, n)
    return tuple(u[v[i] - 1] for i in range(n))


# ---------------------------------------------------------------------------
# polynomial arithmetic

def poly_mul(p: Poly, q: Poly) -> Poly:
    out: dict = defaultdict(int)
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            if len(e1) < len(e2):
                e1p = e1 + (0,) * (len(e2) - len(e1))
                e2p = e2
            else:
                e1p = e1
                e2p = e2 + (0,) * (len(e1) - len(e2))
            out[tuple(a + b for a, b in zip(e1p, e2p))] += c1 * c2
    return {e: c for e, c in out.items() if c}


def _norm(exp: Sequence[int]) -> tuple[int, ...]:
    e = list(exp)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def normalize(p: Poly) -> Poly:
    out: dict = defaultdict(int)
    for e, c in p.items():
        out[_norm(e)] += c
    return {e: c for e, c in out.items() if c}


def divided_difference(p: Poly, i: int) -> Poly:
    """(f - s_i f) / (x_i - x_{i+1}), variables 1-indexed."""
    out: dict = defaultdict(int)
    for exp, c in p.items():
        e = list(exp) + [0] * max(0, i + 1 - len(exp))
        a, b = e[i - 1], e[i]
        if a == b:
            continue
        lo, hi, sign = (b, a, 1) if a > b else (a, b, -1)
        for t in range(hi - lo):
            e[i - 1], e[i] = hi - 1 - t, lo + t
            out[_norm(e)] += sign * c
    return {e: c for e, c in out.items() if c}


def constant_term(p: Poly) -> int:
    return p.get((), 0)


# ---------------------------------------------------------------------------
# Schubert polynomials

@lru_cache(maxsize=None)
def _schubert_from_top(perm: Perm, ambient: int) -> tuple:
    w0 = longest_element(ambient)
    full = pad(perm, ambient)
    if full == w0:
        return ((_norm(tuple(ambient - 1 - i for i in range(ambient))), 1),)
    # climb one ascent towards w0, then come back down
    for i in range(1, ambient):
        if full[i - 1] < full[i]:
            up = swap(full, i, i + 1)
            poly = dict(_schubert_from_top(tuple(up), ambient))
            return tuple(divided_difference(poly, i).items())
    raise AssertionError("unreachable")


def schubert_polynomial(perm: Sequence[int], ambient: int | None = None) -> Poly:
    """Schubert polynomial by divided differences from x1^(n-1) ... x_(n-1)."""
    ambient = len(perm) if ambient is None else ambient
    if len(trim(perm)) > ambient:
        raise OracleError(f"{tuple(perm)} does not lie in S_{ambient}")
    return dict(_schubert_from_top(pad(trim(perm), ambient), ambient))


@lru_cache(maxsize=None)
def _transition_data(perm: Perm) -> tuple[int, Perm, tuple[Perm, ...]]:
    """Last descent r, v = w t_rs, and the v t_ir of the transition formula."""
    n = len(perm)
    r = max(i for i in range(1, n) if perm[i - 1] > perm[i])
    s = max(j for j in range(r + 1, n + 1) if perm[j - 1] < perm[r - 1])
    v = trim(swap(perm, r, s))
    length = perm_length(perm)
    others = []
    for i in range(1, r):
        cand = trim(swap(v, i, r))
        if perm_length(cand) == length:
            others.append(cand)
    return r, v, tuple(others)


@lru_cache(maxsize=None)
def _schubert_transition(perm: Perm) -> tuple:
    if not perm:
        return (((), 1),)
    r, v, others = _transition_data(perm)
    out: dict = defaultdict(int)
    for exp, c in _schubert_transition(v):
        e = list(exp) + [0] * max(0, r - len(exp))
        e[r - 1] += 1
        out[_norm(e)] += c
    for other in others:
        for exp, c in _schubert_transition(other):
            out[exp] += c
    return tuple((e, c) for e, c in out.items() if c)


def schubert_polynomial_transition(perm: Sequence[int]) -> Poly:
    """Schubert polynomial via Lascoux-Schutzenberger transition; any permutation."""
    return dict(_schubert_transition(trim(perm)))


def expand_in_schubert_basis(p: Poly) -> dict[Perm, int]:
    """Write ``p`` as an integer combination of Schubert polynomials.

    Repeatedly removes the lexicographically leading monomial x^c by
    subtracting its coefficient times S_w, where c is the Lehmer code of w.
    """
    rem = normalize(p)
    out: dict[Perm, int] = {}
    while rem:
        lead = max(rem, key=lambda e: (e + (0,) * 64)[:64])
        coeff = rem[lead]
        w = perm_from_code(lead)
        out[w] = out.get(w, 0) + coeff
        for exp, c in _schubert_transition(w):
            val = rem.get(exp, 0) - coeff * c
            if val:
                rem[exp] = val
            else:
                rem.pop(exp, None)
        if len(out) > 10**6:
            raise OracleError("expansion did not terminate")
    return {w: c for w, c in out.items() if c}


def schubert_coefficient(p: Poly, perm: Sequence[int]) -> int:
    """Coefficient of S_perm in ``p``, by applying divided differences down to the identity.

    ``d_i S_w = S_{w s_i}`` when ``i`` is a descent of ``w`` and 0 otherwise, so
    stripping a reduced word of ``perm`` leaves that coefficient as the constant term.
    """
    w = list(trim(perm))
    q = dict(p)
    while w:
        i = next(i for i in range(1, len(w)) if w[i - 1] > w[i])
        w = list(trim(swap(w, i, i + 1)))
        q = divided_difference(q, i)
        if not q:
            return 0
    return constant_term(q)


# ---------------------------------------------------------------------------
# Monk route

def monk_x(perm: Perm, r: int) -> dict[Perm, int]:
    """x_r S_w = sum_{b>r} S_{w t_rb} - sum_{a<r} S_{w t_ar}, length going up by one."""
    w = pad(perm, r)
    length = perm_length(w)
    out: dict[Perm, int] = defaultdict(int)
    for b in range(r + 1, len(w) + 2):
        cand = swap(w, r, b)
        if perm_length(cand) == length + 1:
            out[trim(cand)] += 1
    for a in range(1, r):
        cand = swap(w, a, r)
        if perm_length(cand) == length + 1:
            out[trim(cand)] -= 1
    return {k: c for k, c in out.items() if c}


def monk_multiply(perm: Sequence[int], expansion: dict[Perm, int]) -> dict[Perm, int]:
    """S_perm times an expansion, computed without polynomials."""
    perm = trim(perm)
    if not perm:
        return dict(expansion)
    r, v, others = _transition_data(perm)
    out: dict[Perm, int] = defaultdict(int)
    for w, c in monk_multiply(v, expansion).items():
        for w2, d in monk_x(w, r).items():
            out[w2] += c * d
    for other in others:
        for w, c in monk_multiply(other, expansion).items():
            out[w] += c
    return {k: c for k, c in out.items() if c}


@lru_cache(maxsize=None)
def _monk_pair(u: Perm, v: Perm) -> tuple:
    return tuple(sorted(monk_multiply(u, {v: 1}).items()))


def monk_product(perms: Iterable[Sequence[int]]) -> dict[Perm, int]:
    out: dict[Perm, int] = {(): 1}
    for perm in perms:
        acc: dict[Perm, int] = defaultdict(int)
        for w, c in out.items():
            for w2, d in _monk_pair(trim(perm), w):
                acc[w2] += c * d
        out = {k: c for k, c in acc.items() if c}
    return out


# ---------------------------------------------------------------------------
# intersection numbers

def _degree_ok(perms: Sequence[Sequence[int]], n: int) -> bool:
    return sum(perm_length(p) for p in perms) == n * (n - 1) // 2


def _check(perms: Sequence[Sequence[int]], n: int) -> None:
    for p in perms:
        if len(p) != n or sorted(p) != list(range(1, n + 1)):
            raise OracleError(f"{tuple(p)} is not in S_{n}")


def flag_intersection(perms: Sequence[Sequence[int]], n: int | None = None) -> int:
    """Integral over Fl(n) of the product of the Schubert classes of ``perms``.

    Equals the coefficient of S_{w0 pi_m} in the product of the other classes.
    The product is commutative, so the longest permutation plays the dual
    role; that keeps the polynomial product small.
    """
    if not perms:
        return 1 if n == 1 else 0
    n = len(perms[0]) if n is None else n
    _check(perms, n)
    if not _degree_ok(perms, n):
        return 0
    order = sorted(range(len(perms)), key=lambda k: perm_length(perms[k]))
    last = perms[order[-1]]
    rest = [perms[k] for k in order[:-1]]
    product: Poly = {(): 1}
    for p in rest:
        product = poly_mul(product, schubert_polynomial_transition(p))
    dual = compose(longest_element(n), last)
    value = schubert_coefficient(product, dual)
    if value < 0:
        raise OracleError(f"negative intersection number {value}")
    return value


def flag_intersection_monk(perms: Sequence[Sequence[int]], n: int | None = None) -> int:
    """Same number as :func:`flag_intersection`, through Monk's rule only."""
    if not perms:
        return 1 if n == 1 else 0
    n = len(perms[0]) if n is None else n
    _check(perms, n)
    if not _degree_ok(perms, n):
        return 0
    expansion = monk_product(perms[:-1])
    dual = trim(compose(longest_element(n), perms[-1]))
    return expansion.get(dual, 0)


def flag_product_nonzero(perms: Sequence[Sequence[int]], n: int | None = None) -> bool:
    """Whether the product of the classes is nonzero in H*(Fl(n)) (any degree)."""
    n = len(perms[0]) if n is None else n
    expansion = monk_product(perms)
    return any(len(w) <= n for w in expansion)
