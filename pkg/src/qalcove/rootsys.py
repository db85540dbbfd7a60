"""Finite root systems of types A, B, C, D and their Weyl groups.

Roots are integer tuples in the simple-root basis, coroots are integer
tuples in the simple-coroot basis, and weights are integer (or Fraction)
tuples in the basis of fundamental weights.  With these conventions the
pairing <mu, alpha_i^vee> is just the i-th coordinate of mu.

>>> rs = build_root_system("A", 2)
>>> rs.positive_roots
((1, 0), (0, 1), (1, 1))
>>> rs.coxeter_number
3
>>> w0 = rs.longest_element()
>>> w0.act(rs.rho)
(-1, -1)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "InvariantError",
    "RootSystem",
    "WeylElt",
    "build_root_system",
    "weyl_act",
    "min_coset_rep",
    "DEFAULT_MAX_ORDER",
]

DEFAULT_MAX_ORDER = 50000

Root = tuple  # simple-root coordinates
Weight = tuple  # fundamental-weight coordinates


class InvariantError(RuntimeError):
    """A structural property that must hold was found to fail."""


def _cartan_matrix(kind: str, r: int) -> tuple[list[list[int]], list[int]]:
    """Cartan matrix a[i][j] = <alpha_j, alpha_i^vee> and symmetrizer d_i = (alpha_i, alpha_i)/2."""
    a = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    if kind == "D":
        for i in range(r - 2):
            a[i][i + 1] = a[i + 1][i] = -1
        a[r - 3][r - 1] = a[r - 1][r - 3] = -1
    else:
        for i in range(r - 1):
            a[i][i + 1] = a[i + 1][i] = -1
    d = [1] * r
    if kind == "B":
        a[r - 1][r - 2] = -2
        d = [2] * (r - 1) + [1]
    elif kind == "C":
        a[r - 2][r - 1] = -2
        d = [1] * (r - 1) + [2]
    return a, d


def weyl_order(kind: str, r: int) -> int:
    if kind == "A":
        return math.factorial(r + 1)
    if kind in "BC":
        return 2**r * math.factorial(r)
    return 2 ** (r - 1) * math.factorial(r)


class RootSystem:
    """Root datum of an irreducible finite root system.

    Build instances with :func:`build_root_system`.  Everything is computed
    once at construction; the Weyl group is enumerated lazily.
    """

    def __init__(self, kind: str, rank: int, max_order: int = DEFAULT_MAX_ORDER):
        self.cartan_type = kind
        self.rank = r = rank
        self.max_order = max_order
        a, d = _cartan_matrix(kind, r)
        self.cartan = tuple(tuple(row) for row in a)
        self.symmetrizer = tuple(d)
        self.simple_roots = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        self.simple_coroots = self.simple_roots

        roots = set(self.simple_roots)
        frontier = list(roots)
        while frontier:
            new = []
            for beta in frontier:
                for i in range(r):
                    gamma = self._reflect_simple(i, beta)
                    if all(c >= 0 for c in gamma) and gamma not in roots:
                        roots.add(gamma)
                        new.append(gamma)
            frontier = new
        self.positive_roots = tuple(sorted(roots, key=lambda b: (sum(b), b[::-1])))
        self.roots = self.positive_roots + tuple(_neg(b) for b in self.positive_roots)
        self._coroot = {b: self._compute_coroot(b) for b in self.roots}
        self._weight_of_root = {b: self._compute_root_weight(b) for b in self.roots}
        self._root_of_weight = {v: b for b, v in self._weight_of_root.items()}

        self.fundamental_weights = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        self.rho = (1,) * r
        self.highest_root = self.positive_roots[-1]
        self.coxeter_number = 2 * len(self.positive_roots) // r
        self._length_cache: dict = {}
        self._word_cache: dict = {}

    def __repr__(self):
        return f"RootSystem({self.cartan_type}{self.rank})"

    def __reduce__(self):
        return (build_root_system, (self.cartan_type, self.rank, self.max_order))

    @property
    def label(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    def _reflect_simple(self, i: int, beta: Root) -> Root:
        p = sum(self.cartan[i][j] * beta[j] for j in range(self.rank))
        return tuple(c - p * (j == i) for j, c in enumerate(beta))

    def _compute_coroot(self, beta: Root) -> tuple:
        r, a, d = self.rank, self.cartan, self.symmetrizer
        norm = sum(beta[i] * beta[j] * d[i] * a[i][j] for i in range(r) for j in range(r))
        dbeta = norm // 2
        out = []
        for i in range(r):
            num = beta[i] * d[i]
            if num % dbeta:
                raise InvariantError(f"non-integral coroot for {beta}")
            out.append(num // dbeta)
        return tuple(out)

    def _compute_root_weight(self, beta: Root) -> Weight:
        r = self.rank
        return tuple(sum(self.cartan[i][j] * beta[j] for j in range(r)) for i in range(r))

    # -- roots and pairings -------------------------------------------------

    def coroot(self, beta: Root) -> tuple:
        """Coefficients of beta^vee in the simple-coroot basis."""
        return self._coroot[beta]

    def root_weight(self, beta: Root) -> Weight:
        """beta written in the fundamental-weight basis."""
        return self._weight_of_root[beta]

    def root_from_weight(self, mu: Sequence) -> Root | None:
        return self._root_of_weight.get(tuple(mu))

    def pair(self, mu: Sequence, beta: Root):
        """<mu, beta^vee> for mu in fundamental-weight coordinates."""
        return sum(m * c for m, c in zip(mu, self._coroot[beta]))

    def coroot_pair(self, mu: Sequence, xi: Sequence):
        """<mu, xi> for a coroot-lattice point xi in simple-coroot coordinates."""
        return sum(m * c for m, c in zip(mu, xi))

    def is_positive(self, beta: Root) -> bool:
        return any(c > 0 for c in beta)

    def abs_root(self, beta: Root) -> Root:
        return beta if self.is_positive(beta) else _neg(beta)

    def sgn(self, beta: Root) -> int:
        return 1 if self.is_positive(beta) else -1

    def is_simple(self, beta: Root) -> bool:
        return sum(abs(c) for c in beta) == 1

    def reflect_weight(self, beta: Root, mu: Sequence) -> tuple:
        """s_beta(mu) = mu - <mu, beta^vee> beta."""
        p = self.pair(mu, beta)
        bw = self._weight_of_root[beta]
        return tuple(m - p * b for m, b in zip(mu, bw))

    def reflect_root(self, beta: Root, gamma: Root) -> Root:
        p = self.pair(self._weight_of_root[gamma], beta)
        return tuple(g - p * b for g, b in zip(gamma, beta))

    def dominant(self, mu: Sequence) -> bool:
        return all(m >= 0 for m in mu)

    def stabilizer(self, mu: Sequence) -> frozenset:
        """Indices i with <mu, alpha_i^vee> = 0 (0-based)."""
        return frozenset(i for i, m in enumerate(mu) if m == 0)

    def parabolic_positive_roots(self, J: Iterable[int]) -> tuple:
        J = frozenset(J)
        return tuple(b for b in self.positive_roots if all(c == 0 or i in J for i, c in enumerate(b)))

    def twice_rho_J(self, J: Iterable[int]) -> tuple:
        """2 rho_J in fundamental-weight coordinates."""
        out = [0] * self.rank
        for b in self.parabolic_positive_roots(J):
            for i, c in enumerate(self._weight_of_root[b]):
                out[i] += c
        return tuple(out)

    # -- Weyl group ---------------------------------------------------------

    def element(self, matrix) -> "WeylElt":
        return WeylElt(tuple(tuple(row) for row in matrix), self)

    @cached_property
    def identity(self) -> "WeylElt":
        r = self.rank
        return self.element([[int(i == j) for j in range(r)] for i in range(r)])

    def reflection(self, beta: Root) -> "WeylElt":
        """s_beta as a matrix on fundamental-weight coordinates."""
        r = self.rank
        c = self._coroot[beta]
        bw = self._weight_of_root[beta]
        return self.element([[int(i == j) - bw[i] * c[j] for j in range(r)] for i in range(r)])

    @cached_property
    def simple_reflections(self) -> tuple:
        return tuple(self.reflection(a) for a in self.simple_roots)

    def s(self, i: int) -> "WeylElt":
        """Simple reflection s_i with 1-based index."""
        return self.simple_reflections[i - 1]

    def from_word(self, word: Iterable[int]) -> "WeylElt":
        """Product s_{i1} s_{i2} ... with 1-based indices."""
        w = self.identity
        for i in word:
            if not 1 <= i <= self.rank:
                raise ValueError(f"simple reflection index {i} out of range")
            w = w * self.s(i)
        return w

    def length(self, w: "WeylElt") -> int:
        ln = self._length_cache.get(w.matrix)
        if ln is None:
            wr = w.act(self.rho)
            ln = sum(1 for b in self.positive_roots if self.pair(wr, b) < 0)
            self._length_cache[w.matrix] = ln
        return ln

    def reduced_word(self, w: "WeylElt") -> tuple:
        """Lexicographically smallest reduced word (1-based indices)."""
        word = self._word_cache.get(w.matrix)
        if word is None:
            # i is a left descent of u exactly when <u(rho), alpha_i^vee> < 0
            x = list(w.act(self.rho))
            word = []
            while True:
                i = next((i for i, c in enumerate(x) if c < 0), None)
                if i is None:
                    break
                word.append(i + 1)
                ai = self._weight_of_root[self.simple_roots[i]]
                c = x[i]
                x = [xm - c * am for xm, am in zip(x, ai)]
            word = tuple(word)
            self._word_cache[w.matrix] = word
        return word

    def longest_element(self, J: Iterable[int] | None = None) -> "WeylElt":
        """Longest element of W, or of the parabolic subgroup W_J (0-based J)."""
        gens = range(self.rank) if J is None else sorted(J)
        w = self.identity
        while True:
            for i in gens:
                ws = w * self.simple_reflections[i]
                if self.length(ws) > self.length(w):
                    w = ws
                    break
            else:
                return w

    def weyl_group(self) -> tuple:
        """All elements, sorted by (length, reduced word)."""
        return self._group

    @cached_property
    def _group(self) -> tuple:
        order = weyl_order(self.cartan_type, self.rank)
        if order > self.max_order:
            raise ValueError(f"|W| = {order} exceeds the configured limit {self.max_order}")
        return self.min_coset_reps(())

    def min_coset_reps(self, J: Iterable[int]) -> tuple:
        """W^J, enumerated by left multiplication from the identity."""
        J = frozenset(J)
        seen = {self.identity}
        layer = [self.identity]
        out = [self.identity]
        while layer:
            nxt = []
            for u in layer:
                for s in self.simple_reflections:
                    v = s * u
                    if v in seen or v.length <= u.length:
                        continue
                    if any((v * self.simple_reflections[j]).length < v.length for j in J):
                        continue
                    seen.add(v)
                    nxt.append(v)
            nxt.sort(key=lambda v: v.word)
            out.extend(nxt)
            layer = nxt
        return tuple(out)

    def parabolic_subgroup(self, J: Iterable[int]) -> tuple:
        J = sorted(J)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for u in frontier:
                for j in J:
                    v = u * self.simple_reflections[j]
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return tuple(sorted(seen, key=lambda v: (v.length, v.word)))

    # -- type A helpers -----------------------------------------------------

    def from_one_line(self, perm: Sequence[int]) -> "WeylElt":
        """Type A_{n-1}: the element sending epsilon_i to epsilon_{perm(i)}."""
        if self.cartan_type != "A":
            raise ValueError("one-line notation is only available in type A")
        n = self.rank + 1
        if sorted(perm) != list(range(1, n + 1)):
            raise ValueError(f"{perm!r} is not a permutation of 1..{n}")
        cols = []
        for j in range(1, n):
            eps = [0] * (n + 1)
            for i in range(1, j + 1):
                eps[perm[i - 1]] += 1
            cols.append([eps[m] - eps[m + 1] for m in range(1, n)])
        return self.element([[cols[j][i] for j in range(n - 1)] for i in range(n - 1)])

    def one_line(self, w: "WeylElt") -> tuple:
        if self.cartan_type != "A":
            raise ValueError("one-line notation is only available in type A")
        n = self.rank + 1
        # w(varpi_i) - w(varpi_{i-1}) = epsilon_{w(i)}; recover via pairings.
        images = []
        prev = [0] * (n - 1)
        for i in range(1, n + 1):
            cur = [0] * (n - 1) if i == n else [w.matrix[m][i - 1] for m in range(n - 1)]
            eps = [c - p for c, p in zip(cur, prev)]
            images.append(_epsilon_index(eps, n))
            prev = cur
        return tuple(images)


def _epsilon_index(mu: list, n: int) -> int:
    # epsilon_a in fundamental-weight coordinates is varpi_a - varpi_{a-1}
    for a in range(1, n + 1):
        cand = [0] * (n - 1)
        if a <= n - 1:
            cand[a - 1] += 1
        if a >= 2:
            cand[a - 2] -= 1
        if cand == list(mu):
            return a
    raise InvariantError(f"{mu} is not the image of a basis vector")


def _neg(b):
    return tuple(-c for c in b)


@dataclass(frozen=True)
class WeylElt:
    """A Weyl group element, stored as its matrix on fundamental-weight coordinates.

    Column j holds w(varpi_j).  Equality and hashing use the matrix only.
    """

    matrix: tuple
    rs: RootSystem = field(compare=False, hash=False, repr=False)

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        a, b = self.matrix, other.matrix
        r = len(a)
        return WeylElt(
            tuple(tuple(sum(a[i][m] * b[m][j] for m in range(r)) for j in range(r)) for i in range(r)),
            self.rs,
        )

    def act(self, mu: Sequence) -> tuple:
        return tuple(sum(row[j] * mu[j] for j in range(len(mu))) for row in self.matrix)

    def act_root(self, beta: Root) -> Root:
        img = self.rs.root_from_weight(self.act(self.rs.root_weight(beta)))
        if img is None:
            raise InvariantError(f"image of root {beta} is not a root")
        return img

    def inverse(self) -> "WeylElt":
        u = self.rs.identity
        for i in reversed(self.word):
            u = u * self.rs.s(i)
        return u

    def times_reflection(self, beta: Root) -> "WeylElt":
        return self * self.rs.reflection(beta)

    @property
    def length(self) -> int:
        return self.rs.length(self)

    @property
    def word(self) -> tuple:
        return self.rs.reduced_word(self)

    def one_line(self) -> tuple:
        return self.rs.one_line(self)

    def label(self) -> str:
        if self.rs.cartan_type == "A":
            return "".join(map(str, self.one_line())) if self.rs.rank < 9 else ",".join(map(str, self.one_line()))
        return word_label(self.word)

    def __repr__(self):
        return f"WeylElt({self.label()})"


def word_label(word: Sequence[int]) -> str:
    return "".join(f"s{i}" for i in word) or "e"


_SUPPORTED_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}
_CACHE: dict = {}


def build_root_system(kind: str, rank: int, max_order: int = DEFAULT_MAX_ORDER) -> RootSystem:
    """Root system of type ``kind`` (one of A, B, C, D) and the given rank.

    Instances are cached, so repeated calls share Weyl group enumerations.
    """
    kind = kind.upper()
    if kind not in _SUPPORTED_MIN_RANK:
        raise ValueError(f"unsupported Cartan type {kind!r}; expected one of A, B, C, D")
    if not isinstance(rank, int) or rank < _SUPPORTED_MIN_RANK[kind]:
        raise ValueError(f"type {kind} needs rank >= {_SUPPORTED_MIN_RANK[kind]}, got {rank}")
    key = (kind, rank, max_order)
    if key not in _CACHE:
        _CACHE[key] = RootSystem(kind, rank, max_order)
    return _CACHE[key]


def weyl_act(rs: RootSystem, w: WeylElt, mu: Sequence) -> tuple:
    return w.act(mu)


def min_coset_rep(rs: RootSystem, w: WeylElt, J: Iterable[int]) -> WeylElt:
    """The minimal-length element of the coset w W_J (J is 0-based)."""
    J = tuple(J)
    while True:
        for j in J:
            ws = w * rs.simple_reflections[j]
            if ws.length < w.length:
                w = ws
                break
        else:
            return w


def to_fraction_weight(mu: Sequence) -> tuple:
    return tuple(Fraction(m) for m in mu)
