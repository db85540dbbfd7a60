"""Quantum K-theory Chevalley coefficients of the type A flag variety.

Permutations are one-line tuples of 1..n.  A root (i, j) with i < j stands
for epsilon_i - epsilon_j and for the transposition of positions i and j.

>>> w = coset_reorder(5, 2, (1, 2, 5, 3, 4), (3, 4, 1, 2, 5))
>>> w
(4, 3, 2, 1, 5)
>>> find_coeff(5, 2, (1, 2, 5, 3, 4), (3, 4, 1, 2, 5))
((4, 3, 2, 1, 5), (1, 2, 1, 0), -1)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .alcove import typeA_omega_chain, typeA_pair
from .model import enumerate_admissible, stats
from .qbg import typeA_edge_check
from .rootsys import InvariantError, build_root_system

__all__ = [
    "QKElt",
    "degree_interval",
    "qk_chevalley",
    "circ_key",
    "rcirc_key",
    "condition_check",
    "coset_reorder",
    "unique_chain_path",
    "chain_paths",
    "find_coeff",
    "degree_formula",
    "gamma_set",
    "min_max_degree",
    "global_max_degree",
    "omega_pairs",
    "is_min_coset_rep",
    "coset_reps",
]


def circ_key(a: int, x: int, n: int) -> int:
    """Position of x in the circular order a < a+1 < ... < n < 1 < ... < a-1."""
    return (x - a) % n


def rcirc_key(a: int, x: int, n: int) -> int:
    """Position of x in the reverse circular order a < a-1 < ... < 1 < n < ... < a+1."""
    return (a - x) % n


def degree_interval(n: int, i: int, j: int) -> tuple:
    """d(i, j): ones in positions i..j-1."""
    return tuple(1 if i <= m < j else 0 for m in range(1, n))


def omega_pairs(n: int, k: int, sign: int = 1, variant: str = "rows") -> list:
    """Roots of Gamma(varpi_k) (sign=1) or Gamma(-varpi_k) (sign=-1) as pairs (i, j)."""
    pairs = (
        [(i, j) for i in range(k, 0, -1) for j in range(k + 1, n + 1)]
        if variant == "rows"
        else [(i, j) for j in range(k + 1, n + 1) for i in range(k, 0, -1)]
    )
    return pairs if sign > 0 else pairs[::-1]


def _swap(w: Sequence[int], i: int, j: int) -> tuple:
    w = list(w)
    w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
    return tuple(w)


def _is_quantum(w, i, j) -> bool:
    return w[i - 1] > w[j - 1]


def _check_perm(n, w):
    if sorted(w) != list(range(1, n + 1)):
        raise ValueError(f"{w!r} is not a permutation of 1..{n}")
    return tuple(w)


# -- the product formula ---------------------------------------------------------


class QKElt(dict):
    """(v, d) -> coefficient; an integer, or {weight: int} in the equivariant case."""

    def __init__(self, n: int, k: int, equivariant: bool = False):
        super().__init__()
        self.n, self.k, self.equivariant = n, k, equivariant

    def add(self, v, d, coeff):
        if self.equivariant:
            cur = dict(self.get((v, d), {}))
            for mu, c in coeff.items():
                cur[mu] = cur.get(mu, 0) + c
                if cur[mu] == 0:
                    del cur[mu]
            if cur:
                self[(v, d)] = cur
            else:
                self.pop((v, d), None)
        else:
            c = self.get((v, d), 0) + coeff
            if c:
                self[(v, d)] = c
            else:
                self.pop((v, d), None)

    def specialize(self) -> "QKElt":
        """e^mu -> 1."""
        out = QKElt(self.n, self.k, False)
        for (v, d), c in self.items():
            out.add(v, d, sum(c.values()) if self.equivariant else c)
        return out

    def rows(self, w) -> list:
        """CSV-style rows (k, w, v, d_1..d_{n-1}, N) sorted by w, v, d."""
        out = []
        for (v, d), c in sorted(self.items()):
            out.append([self.k, _label(w), _label(v), *d, c if not self.equivariant else json.dumps(_eq_json(c))])
        return out


def _eq_json(c):
    return {",".join(map(str, mu)): x for mu, x in sorted(c.items())}


def _label(w):
    return "".join(map(str, w)) if len(w) < 10 else ",".join(map(str, w))


def qk_chevalley(n: int, k: int, w: Sequence[int], equivariant: bool = False) -> QKElt:
    """[O^{s_k}] . [O^w] in QK_T(Fl_n) (or QK(Fl_n)), via the (-varpi_k)-chain."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}")
    w = _check_perm(n, w)
    rs = build_root_system("A", n - 1, max_order=10**9)
    chain = typeA_omega_chain(n, k, "rows", -1)
    we = rs.from_one_line(w)
    omega = tuple(-x for x in chain.weight)
    out = QKElt(n, k, equivariant)
    if equivariant:
        diag = {(0,) * (n - 1): 1}
        shift = tuple(a - b for a, b in zip(we.act(omega), omega))
        diag[shift] = diag.get(shift, 0) - 1
        out.add(w, (0,) * (n - 1), {m: c for m, c in diag.items() if c})
    for adm in enumerate_admissible(rs, we, chain):
        if not adm.A:
            continue
        st = stats(rs, we, adm, chain)
        sign = -1 if (len(adm.A) - 1) % 2 else 1
        end = rs.one_line(st.end)
        if equivariant:
            out.add(end, st.down, {tuple(-o - x for o, x in zip(omega, st.wt)): sign})
        else:
            out.add(end, st.down, sign)
    return out


# -- conditions and the reordering algorithm ----------------------------------------


def condition_check(v: Sequence[int], w: Sequence[int], k: int, which: str) -> bool:
    """Literal evaluation of Condition A1, A1', B1 or B1' (spelled "A1p", "B1p" also accepted)."""
    n = len(v)
    which = which.replace("'", "p").replace("′", "p")
    forward = which in ("A1", "B1p")
    if which in ("A1", "B1"):
        pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    elif which in ("A1p", "B1p"):
        pairs = [(i, j) for i in range(k + 1, n + 1) for j in range(k + 1, i)]
    else:
        raise ValueError("which must be one of A1, A1', B1, B1'")
    key = circ_key if forward else rcirc_key
    for i, j in pairs:
        a = v[i - 1]
        if a == w[j - 1]:
            return False
        if 0 < key(a, w[j - 1], n) < key(a, w[i - 1], n):
            return False
    return True


def is_min_coset_rep(sigma: Sequence[int], k: int) -> bool:
    return all(sigma[i] < sigma[i + 1] for i in range(len(sigma) - 1) if i + 1 != k)


def coset_reps(n: int, k: int) -> list:
    from itertools import combinations

    out = []
    for first in combinations(range(1, n + 1), k):
        rest = tuple(x for x in range(1, n + 1) if x not in first)
        out.append(tuple(first) + rest)
    return out


def coset_reorder(n: int, k: int, v: Sequence[int], sigma: Sequence[int]) -> tuple:
    """The unique w in sigma W_{I minus k} with (v, w) satisfying B1 and B1'."""
    v, sigma = _check_perm(n, v), _check_perm(n, sigma)
    if not is_min_coset_rep(sigma, k):
        raise ValueError(f"{sigma} is not a minimal coset representative for k={k}")
    w = [0] * n
    left = set(sigma[:k])
    for i in range(1, k + 1):
        w[i - 1] = min(left, key=lambda x: rcirc_key(v[i - 1], x, n))
        left.discard(w[i - 1])
    right = set(sigma[k:])
    for i in range(n, k, -1):
        w[i - 1] = min(right, key=lambda x: circ_key(v[i - 1], x, n))
        right.discard(w[i - 1])
    return tuple(w)


# -- paths with labels from the varpi_k chains -----------------------------------------


@dataclass(frozen=True)
class ChainPath:
    vertices: tuple
    labels: tuple
    quantum: tuple  # labels of the quantum steps

    @property
    def degree(self) -> tuple:
        n = len(self.vertices[0])
        d = [0] * (n - 1)
        for i, j in self.quantum:
            for m in range(i, j):
                d[m - 1] += 1
        return tuple(d)


def chain_paths(n: int, k: int, start: Sequence[int], sign: int = -1) -> list:
    """Every path from ``start`` in QB(S_n) labeled by a subsequence of Gamma(sign varpi_k)."""
    labels = omega_pairs(n, k, sign)
    out = []

    def grow(pos, verts, labs, quantum):
        out.append(ChainPath(tuple(verts), tuple(labs), tuple(quantum)))
        u = verts[-1]
        for p in range(pos, len(labels)):
            i, j = labels[p]
            if typeA_edge_check(n, u, i, j):
                q = quantum + [(i, j)] if _is_quantum(u, i, j) else quantum
                grow(p + 1, verts + [_swap(u, i, j)], labs + [(i, j)], q)

    grow(0, [tuple(start)], [], [])
    return out


def unique_chain_path(n: int, k: int, w: Sequence[int], v: Sequence[int], direction: int = -1) -> ChainPath:
    """direction=-1: the path w -> v with labels in Gamma(-varpi_k);
    direction=+1: the path w -> v with labels in Gamma(varpi_k)."""
    w, v = _check_perm(n, w), _check_perm(n, v)
    found = [p for p in chain_paths(n, k, w, direction) if p.vertices[-1] == v]
    if len(found) != 1:
        raise InvariantError(f"{len(found)} chain paths from {w} to {v}")
    path = found[0]
    _check_circular_monotone(n, k, path, direction)
    return path


def _check_circular_monotone(n, k, path, direction):
    # read from the Gamma(varpi_k) source: entries in positions <= k move forward
    # circularly and entries in positions > k backward; the reversed chain swaps them
    verts = path.vertices if direction > 0 else path.vertices[::-1]
    for i in range(1, n + 1):
        key = circ_key if (i <= k) == (direction > 0) else rcirc_key
        a = verts[0][i - 1]
        seq = [key(a, u[i - 1], n) for u in verts]
        if seq != sorted(seq):
            raise InvariantError("entries are not circularly monotone along the path")


def find_coeff(n: int, k: int, v: Sequence[int], sigma: Sequence[int]):
    """The unique (w, d, N) with w in sigma W_{I minus k} and N = N^{v,d}_{s_k,w} nonzero, or None."""
    v, sigma = _check_perm(n, v), _check_perm(n, sigma)
    if set(v[:k]) == set(sigma[:k]):
        return None
    w = coset_reorder(n, k, v, sigma)
    path = unique_chain_path(n, k, w, v, -1)
    sign = -1 if (len(path.labels) - 1) % 2 else 1
    return w, path.degree, sign


def degree_formula(v: Sequence[int], w: Sequence[int], k: int) -> tuple:
    n = len(v)
    d = []
    for i in range(1, n):
        if i <= k:
            d.append(sum(1 for j in range(1, i + 1) if v[j - 1] < w[j - 1]))
        else:
            d.append(sum(1 for j in range(i + 1, n + 1) if v[j - 1] > w[j - 1]))
    return tuple(d)


# -- degree extrema ----------------------------------------------------------------------


def gamma_set(v: Sequence[int], k: int) -> list:
    """Roots (i, j) of Gamma(-varpi_k) giving a quantum edge out of v, in chain order."""
    n = len(v)
    return [(i, j) for i, j in omega_pairs(n, k, -1) if typeA_edge_check(n, v, i, j) and _is_quantum(v, i, j)]


def _below(x, y, k) -> bool:
    """x preceq y: c <= a <= k < b <= d for x = (a, b), y = (c, d)."""
    (a, b), (c, d) = x, y
    return c <= a <= k < b <= d


def _strictly_inside(x, y, k) -> bool:
    (a, b), (c, d) = x, y
    return c < a <= k < b < d


def _maximum(elems, k):
    tops = [x for x in elems if all(_below(y, x, k) for y in elems)]
    if len(tops) != 1:
        raise InvariantError("no maximum in the partial order")
    return tops[0]


def _minimum(elems, k):
    bots = [x for x in elems if all(_below(x, y, k) for y in elems)]
    if len(bots) != 1:
        raise InvariantError("no minimum in the partial order")
    return bots[0]


def min_max_degree(w: Sequence[int], k: int):
    """(d_min, d_max) over the quantum terms of [O^{s_k}].[O^w], or None when there are none."""
    n = len(w)
    gw = gamma_set(w, k)
    if not gw:
        return None
    d_max = [0] * (n - 1)
    current = gw
    while current:
        p, q = _maximum(current, k)
        d_max = [a + b for a, b in zip(d_max, degree_interval(n, p, q))]
        current = [x for x in gw if _strictly_inside(x, (p, q), k)]
    r, s = _minimum(gw, k)
    return degree_interval(n, r, s), tuple(d_max)


def global_max_degree(n: int, k: int) -> tuple:
    kb = min(k, n - k)
    return tuple(min(i, n - i, kb) for i in range(1, n))
