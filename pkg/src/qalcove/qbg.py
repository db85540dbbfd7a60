"""Quantum Bruhat graphs, reflection orderings, monotone paths and Deodhar lifts.

A vertex of QB(W^J) is a minimal coset representative.  For a positive root
beta outside the parabolic subsystem there is an edge w -> floor(w s_beta)
when the length goes up by one (Bruhat) or changes by
1 - 2<rho - rho_J, beta^vee> (quantum).  Parabolic subsets J use 0-based
simple-root indices throughout.

>>> from qalcove.rootsys import build_root_system
>>> rs = build_root_system("A", 1)
>>> g = qbg(rs)
>>> sorted((e.source.label(), e.target.label(), e.kind) for e in g.edges())
[('12', '21', 'bruhat'), ('21', '12', 'quantum')]
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rootsys import InvariantError, RootSystem, WeylElt, min_coset_rep

__all__ = [
    "QBGEdge",
    "PathInQBG",
    "QuantumBruhatGraph",
    "ReflectionOrder",
    "qbg",
    "qbg_edges",
    "edge_kind",
    "typeA_edge_check",
    "shortest_data",
    "reflection_order_from_word",
    "lambda_reflection_order",
    "is_reflection_order",
    "increasing_paths",
    "increasing_path",
    "lift_min",
    "lift_max",
    "deodhar_path",
    "in_restricted",
]

BRUHAT = "bruhat"
QUANTUM = "quantum"


@dataclass(frozen=True)
class QBGEdge:
    source: WeylElt
    target: WeylElt
    label: tuple
    kind: str


@dataclass(frozen=True)
class PathInQBG:
    start: WeylElt
    edges: tuple = ()

    @property
    def end(self) -> WeylElt:
        return self.edges[-1].target if self.edges else self.start

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def labels(self) -> tuple:
        return tuple(e.label for e in self.edges)

    @property
    def vertices(self) -> tuple:
        return (self.start,) + tuple(e.target for e in self.edges)

    @property
    def weight(self) -> tuple:
        rs = self.start.rs
        out = [0] * rs.rank
        for e in self.edges:
            if e.kind == QUANTUM:
                for i, c in enumerate(rs.coroot(e.label)):
                    out[i] += c
        return tuple(out)

    def extend(self, edge: QBGEdge) -> "PathInQBG":
        if edge.source != self.end:
            raise ValueError("edge does not start where the path ends")
        return PathInQBG(self.start, self.edges + (edge,))


def edge_kind(rs: RootSystem, w: WeylElt, beta: tuple, J: Iterable[int] = ()) -> str | None:
    """Kind of the edge w -> floor(w s_beta) in QB(W^J), or None."""
    J = frozenset(J)
    v = min_coset_rep(rs, w.times_reflection(beta), J) if J else w.times_reflection(beta)
    lw, lv = w.length, v.length
    if lv == lw + 1:
        return BRUHAT
    shift = 2 * rs.pair(rs.rho, beta) - rs.pair(rs.twice_rho_J(J), beta)
    if lv == lw + 1 - shift:
        return QUANTUM
    return None


def typeA_edge_check(n: int, w: Sequence[int], i: int, j: int) -> bool:
    """Edge test w -> w.(i,j) in QB(S_n) by the circular-order criterion (1-based i<j)."""
    if not 1 <= i < j <= n:
        raise ValueError("need 1 <= i < j <= n")
    a = w[i - 1]
    top = (w[j - 1] - a) % n
    return not any(0 < (w[l - 1] - a) % n < top for l in range(i + 1, j))


class QuantumBruhatGraph:
    """QB(W^J) with cached BFS data.  Build through :func:`qbg` to share instances."""

    def __init__(self, rs: RootSystem, J: Iterable[int] = ()):
        self.rs = rs
        self.J = frozenset(J)
        self.labels = tuple(b for b in rs.positive_roots if b not in set(rs.parabolic_positive_roots(self.J)))
        self.vertices = rs.min_coset_reps(self.J)
        self.out_edges: dict = {}
        self.in_edges: dict = {v: [] for v in self.vertices}
        for v in self.vertices:
            outs = []
            for b in self.labels:
                kind = edge_kind(rs, v, b, self.J)
                if kind is not None:
                    t = v.times_reflection(b)
                    if self.J:
                        t = min_coset_rep(rs, t, self.J)
                    e = QBGEdge(v, t, b, kind)
                    outs.append(e)
                    self.in_edges[t].append(e)
            self.out_edges[v] = outs
        self._from: dict = {}
        self._to: dict = {}

    def edges(self):
        for v in self.vertices:
            yield from self.out_edges[v]

    def edge(self, source: WeylElt, label: tuple) -> QBGEdge | None:
        for e in self.out_edges[source]:
            if e.label == label:
                return e
        return None

    def bfs_from(self, source: WeylElt) -> dict:
        """Vertex -> (distance, weight of the BFS-tree path from source)."""
        if source not in self._from:
            self._from[source] = self._bfs(source, self.out_edges, lambda e: e.target)
        return self._from[source]

    def bfs_to(self, target: WeylElt) -> dict:
        """Vertex -> (distance, weight of a shortest path to target)."""
        if target not in self._to:
            self._to[target] = self._bfs(target, self.in_edges, lambda e: e.source)
        return self._to[target]

    def _bfs(self, root, adjacency, step):
        zero = (0,) * self.rs.rank
        data = {root: (0, zero)}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du, wu = data[u]
            for e in adjacency[u]:
                x = step(e)
                if x not in data:
                    wx = wu
                    if e.kind == QUANTUM:
                        wx = tuple(a + b for a, b in zip(wu, self.rs.coroot(e.label)))
                    data[x] = (du + 1, wx)
                    queue.append(x)
        return data

    def distance(self, v: WeylElt, w: WeylElt) -> int:
        return self.bfs_from(v)[w][0]

    def shortest_weight(self, v: WeylElt, w: WeylElt) -> tuple:
        """wt(v => w), projected away from the J coordinates."""
        wt = self.bfs_from(v)[w][1]
        return tuple(0 if i in self.J else c for i, c in enumerate(wt))

    def shortest_path(self, v: WeylElt, w: WeylElt) -> PathInQBG:
        dist = self.bfs_to(w)
        path = PathInQBG(v)
        u = v
        while u != w:
            e = next(e for e in self.out_edges[u] if dist.get(e.target, (None,))[0] == dist[u][0] - 1)
            path = path.extend(e)
            u = e.target
        return path

    def shortest_weight_classes(self, v: WeylElt) -> dict:
        """Vertex -> set of weights (mod Q_J^vee) over all shortest paths from v."""
        dist = self.bfs_from(v)
        order = sorted(self.vertices, key=lambda x: dist[x][0])
        zero = (0,) * self.rs.rank
        classes = {v: {zero}}
        for x in order[1:]:
            acc = set()
            for e in self.in_edges[x]:
                if dist[e.source][0] == dist[x][0] - 1:
                    bump = self.rs.coroot(e.label) if e.kind == QUANTUM else zero
                    for wt in classes[e.source]:
                        acc.add(tuple(0 if i in self.J else a + b for i, (a, b) in enumerate(zip(wt, bump))))
            classes[x] = acc
        return classes

    def strongly_connected(self) -> bool:
        root = self.vertices[0]
        n = len(self.vertices)
        return len(self.bfs_from(root)) == n and len(self.bfs_to(root)) == n

    def reachable(self, v: WeylElt, w: WeylElt, b=None, lam=None) -> bool:
        """Is there a path v -> w, optionally inside the restricted graph QB_{b lam}?"""
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            if u == w:
                return True
            for e in self.out_edges[u]:
                if b is not None and not in_restricted(self.rs, e.label, b, lam):
                    continue
                if e.target not in seen:
                    seen.add(e.target)
                    queue.append(e.target)
        return False

    def to_dot(self) -> str:
        lines = [f'digraph "QB({self.rs.label}, J={sorted(j + 1 for j in self.J)})" {{']
        for v in self.vertices:
            lines.append(f'  "{v.label()}";')
        for e in self.edges():
            style = "solid" if e.kind == BRUHAT else "dashed"
            lab = ",".join(map(str, e.label))
            lines.append(f'  "{e.source.label()}" -> "{e.target.label()}" [label="{lab}", kind="{e.kind}", style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "root_system": self.rs.label,
            "parabolic": sorted(j + 1 for j in self.J),
            "nodes": [v.label() for v in self.vertices],
            "edges": [
                {"source": e.source.label(), "target": e.target.label(), "label": list(e.label), "kind": e.kind}
                for e in self.edges()
            ],
        }


def in_restricted(rs: RootSystem, beta: tuple, b, lam: Sequence) -> bool:
    """Edge predicate of QB_{b lam}: b <lam, beta^vee> is an integer."""
    return (Fraction(b) * rs.pair(lam, beta)).denominator == 1


_GRAPHS: dict = {}


def qbg(rs: RootSystem, J: Iterable[int] = (), limit: int | None = None) -> QuantumBruhatGraph:
    J = frozenset(J)
    key = (rs.cartan_type, rs.rank, rs.max_order, J)
    if key not in _GRAPHS:
        size = len(rs.min_coset_reps(J))
        if limit is not None and size > limit:
            raise ValueError(f"|W^J| = {size} exceeds the limit {limit}")
        _GRAPHS[key] = QuantumBruhatGraph(rs, J)
    g = _GRAPHS[key]
    if limit is not None and len(g.vertices) > limit:
        raise ValueError(f"|W^J| = {len(g.vertices)} exceeds the limit {limit}")
    return g


def qbg_edges(rs: RootSystem, J: Iterable[int] = ()) -> set:
    return set(qbg(rs, J).edges())


def shortest_data(rs: RootSystem, v: WeylElt, w: WeylElt, J: Iterable[int] = ()) -> tuple:
    """(length of a shortest path v -> w, its weight) in QB(W^J)."""
    g = qbg(rs, J)
    return g.distance(v, w), g.shortest_weight(v, w)


# -- reflection orderings ---------------------------------------------------


@dataclass(frozen=True)
class ReflectionOrder:
    roots: tuple
    tag: str = "word"

    def position(self, beta: tuple) -> int:
        return self.roots.index(beta)

    def ranks(self) -> dict:
        return {b: i for i, b in enumerate(self.roots)}

    def reversed(self) -> "ReflectionOrder":
        return ReflectionOrder(self.roots[::-1], "reversed:" + self.tag)


def reflection_order_from_word(rs: RootSystem, word: Sequence[int]) -> ReflectionOrder:
    """Inversion sequence beta_k = s_{i1}...s_{i(k-1)}(alpha_{ik}) of a reduced word of w0."""
    if len(word) != len(rs.positive_roots):
        raise ValueError("word length differs from the number of positive roots")
    u = rs.identity
    roots = []
    for i in word:
        beta = u.act_root(rs.simple_roots[i - 1])
        if not rs.is_positive(beta) or beta in roots:
            raise ValueError(f"{tuple(word)} is not a reduced word of the longest element")
        roots.append(beta)
        u = u * rs.s(i)
    return ReflectionOrder(tuple(roots), "word:" + "".join(map(str, word)))


def _solve_pair(alpha, beta, gamma):
    """(a, b) with gamma = a alpha + b beta, or None."""
    r = len(alpha)
    for p in range(r):
        for q in range(p + 1, r):
            det = alpha[p] * beta[q] - alpha[q] * beta[p]
            if det:
                a = Fraction(gamma[p] * beta[q] - gamma[q] * beta[p], det)
                b = Fraction(alpha[p] * gamma[q] - alpha[q] * gamma[p], det)
                if all(a * x + b * y == z for x, y, z in zip(alpha, beta, gamma)):
                    return a, b
                return None
    return None


def is_reflection_order(rs: RootSystem, order: ReflectionOrder) -> bool:
    """Betweenness axiom: a alpha + b beta (a, b > 0) sits between alpha and beta."""
    rank = order.ranks()
    if set(rank) != set(rs.positive_roots) or len(order.roots) != len(rank):
        return False
    pos = rs.positive_roots
    for x in range(len(order.roots)):
        for y in range(x + 1, len(order.roots)):
            alpha, beta = order.roots[x], order.roots[y]
            for gamma in pos:
                if gamma in (alpha, beta):
                    continue
                sol = _solve_pair(alpha, beta, gamma)
                if sol and sol[0] > 0 and sol[1] > 0 and not x < rank[gamma] < y:
                    return False
    return True


def _greedy_word(rs: RootSystem, w: WeylElt, largest: bool = False) -> tuple:
    if not largest:
        return rs.reduced_word(w)
    word = []
    u = w
    while u.length:
        i = max(i for i in range(1, rs.rank + 1) if (rs.s(i) * u).length < u.length)
        word.append(i)
        u = rs.s(i) * u
    return tuple(word)


def lambda_reflection_order(rs: RootSystem, lam: Sequence[int], top: str = "lex-min") -> ReflectionOrder:
    """The order <_lam adapted to a dominant weight lam.

    Roots outside the stabilizer come first, in the order in which their
    level-zero hyperplanes appear in the lex lam-chain; the stabilizer's
    positive roots follow in the inversion order of the lexicographically
    smallest (``top="lex-min"``) or largest (``"lex-max"``) reduced word of
    its longest element.
    """
    from .alcove import lex_chain

    lam = tuple(lam)
    if not rs.dominant(lam):
        raise ValueError("lambda must be dominant")
    J = rs.stabilizer(lam)
    bottom = [beta for beta, l in lex_chain(rs, lam).entries if l == 0]
    u = rs.identity
    upper = []
    for i in _greedy_word(rs, rs.longest_element(J), largest=(top == "lex-max")):
        upper.append(u.act_root(rs.simple_roots[i - 1]))
        u = u * rs.s(i)
    return ReflectionOrder(tuple(bottom) + tuple(upper), f"lambda:{lam}:{top}")


# -- monotone paths ----------------------------------------------------------


def increasing_paths(
    rs: RootSystem,
    start: WeylElt,
    order: ReflectionOrder,
    decreasing: bool = False,
    allowed: Iterable[tuple] | None = None,
    b=None,
    lam=None,
) -> list:
    """Every path in QB(W) from ``start`` whose labels strictly increase in ``order``."""
    g = qbg(rs)
    rank = order.ranks()
    allowed = set(rank) if allowed is None else set(allowed)
    sign = -1 if decreasing else 1
    out = []

    def walk(path: PathInQBG, last):
        out.append(path)
        for e in g.out_edges[path.end]:
            if e.label not in allowed:
                continue
            if b is not None and not in_restricted(rs, e.label, b, lam):
                continue
            key = sign * rank[e.label]
            if last is None or key > last:
                walk(path.extend(e), key)

    walk(PathInQBG(start), None)
    return out


def increasing_path(rs: RootSystem, v: WeylElt, w: WeylElt, order: ReflectionOrder, decreasing: bool = False) -> PathInQBG:
    """The unique label-monotone path v -> w; raises if it is missing or not unique."""
    found = [p for p in increasing_paths(rs, v, order, decreasing) if p.end == w]
    if len(found) != 1:
        raise InvariantError(f"{len(found)} monotone paths from {v} to {w}")
    return found[0]


# -- Deodhar lifts -----------------------------------------------------------


def _unique_argmin(candidates, score, what):
    scored = sorted(((score(x), i, x) for i, x in enumerate(candidates)), key=lambda t: (t[0], t[1]))
    if len(scored) > 1 and scored[0][0] == scored[1][0]:
        raise InvariantError(f"tie in {what}")
    return scored[0][2]


def lift_min(rs: RootSystem, v: WeylElt, J: Iterable[int], w: WeylElt) -> WeylElt:
    """The element x of v W_J closest to w, i.e. minimizing the distance w -> x in QB(W)."""
    dist = qbg(rs).bfs_from(w)
    coset = [v * u for u in rs.parabolic_subgroup(J)]
    return _unique_argmin(coset, lambda x: dist[x][0], "quantum right Deodhar lift")


def lift_max(rs: RootSystem, w: WeylElt, J: Iterable[int], v: WeylElt) -> WeylElt:
    """The element x of w W_J minimizing the distance x -> v in QB(W)."""
    dist = qbg(rs).bfs_to(v)
    coset = [w * u for u in rs.parabolic_subgroup(J)]
    return _unique_argmin(coset, lambda x: dist[x][0], "quantum left Deodhar lift")


def deodhar_path(
    rs: RootSystem,
    sigma: WeylElt,
    tau: WeylElt,
    wJ: WeylElt,
    lam: Sequence[int],
    direction: str = "right",
    order: ReflectionOrder | None = None,
) -> PathInQBG:
    """Monotone path with labels outside the stabilizer J of the dominant weight lam.

    right: the unique <_lam-increasing path from sigma wJ into the coset tau W_J.
    left:  the unique <*_lam-increasing path from some x in sigma W_J to tau wJ.
    """
    lam = tuple(lam)
    J = rs.stabilizer(lam)
    order = order or lambda_reflection_order(rs, lam)
    outside = set(rs.positive_roots) - set(rs.parabolic_positive_roots(J))
    if direction == "right":
        found = [
            p
            for p in increasing_paths(rs, sigma * wJ, order, allowed=outside)
            if min_coset_rep(rs, p.end, J) == tau
        ]
    elif direction == "left":
        target = tau * wJ
        found = [
            p
            for x in (sigma * u for u in rs.parabolic_subgroup(J))
            for p in increasing_paths(rs, x, order.reversed(), allowed=outside)
            if p.end == target
        ]
    else:
        raise ValueError("direction must be 'right' or 'left'")
    if len(found) != 1:
        raise InvariantError(f"{len(found)} Deodhar paths for {sigma}, {tau}")
    return found[0]
