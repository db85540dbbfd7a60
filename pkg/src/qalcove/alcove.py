"""Lambda-chains of roots and the alcove walks they encode.

A lambda-chain is a sequence of pairs (beta_i, l_i); the i-th step of the
walk crosses the hyperplane H_{beta_i,-l_i} = {mu : <mu, beta_i^vee> = -l_i}
in the direction of -beta_i.  The walk starts at the fundamental alcove and
must end at its translate by -lambda.  Walks are checked exactly by tracking
the central point rho/h of each alcove through affine reflections.

>>> from qalcove.rootsys import build_root_system
>>> rs = build_root_system("A", 2)
>>> lex_chain(rs, (1, 0)).entries
(((1, 0), 0), ((1, 1), 0))
>>> concat_chain(rs, (1, -1)).entries
(((1, 0), 0), ((1, 1), 0), ((-1, -1), 0), ((0, -1), 1))
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .rootsys import RootSystem, build_root_system

__all__ = [
    "AffineRefl",
    "LambdaChain",
    "affine_apply",
    "lex_chain",
    "lex_chain_antidominant",
    "concat_chain",
    "concat_parts",
    "delete_backtracks",
    "typeA_omega_chain",
    "typeA_root",
    "typeA_pair",
    "alcove_walk",
    "is_lambda_chain",
    "apply_deletion",
    "apply_yb",
    "find_yb_moves",
    "find_deletions",
    "find_pair_insertions",
    "insert_pair",
    "chain_procedures",
    "central_point",
]


@dataclass(frozen=True)
class AffineRefl:
    """s_{beta,l}: mu -> mu - (<mu, beta^vee> - l) beta."""

    beta: tuple
    level: int


def affine_apply(rs: RootSystem, r: AffineRefl, mu: Sequence) -> tuple:
    p = rs.pair(mu, r.beta) - r.level
    bw = rs.root_weight(r.beta)
    return tuple(m - p * b for m, b in zip(mu, bw))


@dataclass(frozen=True)
class LambdaChain:
    weight: tuple
    entries: tuple
    rs: RootSystem = field(compare=False, repr=False)

    def __len__(self):
        return len(self.entries)

    @property
    def roots(self) -> tuple:
        return tuple(b for b, _ in self.entries)

    @property
    def heights(self) -> tuple:
        return tuple(l for _, l in self.entries)

    @property
    def complementary_heights(self) -> tuple:
        return tuple(self.rs.pair(self.weight, b) - l for b, l in self.entries)

    def hyperplane(self, i: int) -> tuple:
        """H_{beta_i,-l_i} normalized as (positive root, value of <., root^vee>)."""
        beta, l = self.entries[i]
        return (beta, -l) if self.rs.is_positive(beta) else (self.rs.abs_root(beta), l)

    @property
    def reduced(self) -> bool:
        hs = [self.hyperplane(i) for i in range(len(self))]
        return len(set(hs)) == len(hs)

    def affine_reflection(self, i: int) -> AffineRefl:
        beta, l = self.entries[i]
        return AffineRefl(beta, -l)

    def heights_in_range(self) -> bool:
        for beta, l in self.entries:
            m = self.rs.pair(self.weight, beta)
            ok = 0 <= l <= m - 1 if self.rs.is_positive(beta) else 1 <= l <= m
            if not ok:
                return False
        return True

    def to_json(self) -> list:
        return [{"root": list(b), "height": l} for b, l in self.entries]

    def replace(self, entries) -> "LambdaChain":
        return LambdaChain(self.weight, tuple(entries), self.rs)


def _chain(rs, lam, entries) -> LambdaChain:
    return LambdaChain(tuple(lam), tuple(entries), rs)


def central_point(rs: RootSystem) -> tuple:
    h = rs.coxeter_number
    return tuple(Fraction(1, h) for _ in range(rs.rank))


def _floors(rs: RootSystem, c) -> tuple:
    return tuple(math.floor(rs.pair(c, b)) for b in rs.positive_roots)


def _crossing(rs: RootSystem, c, beta, l):
    """Central point after crossing H_{beta,-l} from the alcove with central point c, or None."""
    before = rs.pair(c, beta)
    if not before > -l:
        return None
    nxt = affine_apply(rs, AffineRefl(beta, -l), c)
    f0, f1 = _floors(rs, c), _floors(rs, nxt)
    target = rs.positive_roots.index(rs.abs_root(beta))
    if any(a != b for k, (a, b) in enumerate(zip(f0, f1)) if k != target):
        return None
    return nxt


def alcove_walk(chain: LambdaChain, start=None) -> list:
    """Central points of A_0, A_1, ..., A_m; raises ValueError on an invalid step."""
    rs = chain.rs
    c = central_point(rs) if start is None else start
    points = [c]
    for i, (beta, l) in enumerate(chain.entries):
        c = _crossing(rs, c, beta, l)
        if c is None:
            raise ValueError(f"step {i + 1} ({beta}, {l}) does not cross a wall in direction -beta")
        points.append(c)
    return points


def is_lambda_chain(chain: LambdaChain) -> bool:
    try:
        points = alcove_walk(chain)
    except ValueError:
        return False
    c0 = central_point(chain.rs)
    return points[-1] == tuple(a - b for a, b in zip(c0, chain.weight))


# -- constructions -------------------------------------------------------------


def lex_chain(rs: RootSystem, lam: Sequence[int]) -> LambdaChain:
    """The lex lambda-chain of a nonzero dominant weight."""
    lam = tuple(lam)
    if not rs.dominant(lam) or not any(lam):
        raise ValueError("lex chains need a nonzero dominant weight")
    keyed = []
    for beta in rs.positive_roots:
        m = rs.pair(lam, beta)
        for l in range(m):
            key = (Fraction(l, m),) + tuple(Fraction(c, m) for c in rs.coroot(beta))
            keyed.append((key, (beta, l)))
    keyed.sort()
    if len({k for k, _ in keyed}) != len(keyed):
        raise ValueError("lex keys are not injective")
    return _chain(rs, lam, [e for _, e in keyed])


def lex_chain_antidominant(rs: RootSystem, lam: Sequence[int]) -> LambdaChain:
    """Reverse of the lex (-lambda)-chain with negated roots, for anti-dominant lambda."""
    lam = tuple(lam)
    neg = tuple(-x for x in lam)
    base = lex_chain(rs, neg)
    entries = [(tuple(-c for c in b), rs.pair(neg, b) - l) for b, l in reversed(base.entries)]
    return _chain(rs, lam, entries)


def concat_parts(rs: RootSystem, lam: Sequence[int]) -> tuple:
    """(Gamma+, Gamma- with shifted heights, Gamma0) for an arbitrary nonzero weight."""
    lam = tuple(lam)
    if not any(lam):
        raise ValueError("lambda must be nonzero")
    plus = tuple(max(x, 0) for x in lam)
    minus = tuple(min(x, 0) for x in lam)
    head = lex_chain(rs, plus).entries if any(plus) else ()
    tail = lex_chain_antidominant(rs, minus).entries if any(minus) else ()
    shifted = tuple((b, l + rs.pair(plus, b)) for b, l in tail)
    return _chain(rs, plus, head), _chain(rs, minus, tail), _chain(rs, lam, head + shifted)


def concat_chain(rs: RootSystem, lam: Sequence[int]) -> LambdaChain:
    return concat_parts(rs, lam)[2]


def typeA_root(n: int, i: int, j: int) -> tuple:
    """epsilon_i - epsilon_j (i < j) in simple-root coordinates of A_{n-1}."""
    return tuple(1 if i - 1 <= m < j - 1 else 0 for m in range(n - 1))


def typeA_pair(beta: Sequence[int]) -> tuple:
    """Inverse of typeA_root for positive roots (1-based (i, j))."""
    ones = [m for m, c in enumerate(beta) if c]
    return ones[0] + 1, ones[-1] + 2


def typeA_omega_chain(n: int, k: int, variant: str = "rows", sign: int = 1) -> LambdaChain:
    """The explicit varpi_k-chains of S_n, read by rows or by columns.

    sign=-1 gives the (-varpi_k)-chain: the reversed chain with negated roots.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}")
    if variant == "rows":
        pairs = [(i, j) for i in range(k, 0, -1) for j in range(k + 1, n + 1)]
    elif variant == "columns":
        pairs = [(i, j) for j in range(k + 1, n + 1) for i in range(k, 0, -1)]
    else:
        raise ValueError("variant must be 'rows' or 'columns'")
    rs = build_root_system("A", n - 1)
    lam = tuple(int(m == k - 1) for m in range(n - 1))
    if sign > 0:
        return _chain(rs, lam, [(typeA_root(n, i, j), 0) for i, j in pairs])
    neg = tuple(-x for x in lam)
    return _chain(rs, neg, [(tuple(-c for c in typeA_root(n, i, j)), 1) for i, j in reversed(pairs)])


# -- chain moves -------------------------------------------------------------------


def apply_deletion(chain: LambdaChain, p: int) -> LambdaChain:
    """(D): drop entries p, p+1 (0-based) when they cross the same hyperplane back and forth."""
    (b1, l1), (b2, l2) = chain.entries[p], chain.entries[p + 1]
    if b2 != tuple(-c for c in b1) or l2 != -l1:
        raise ValueError("entries do not form a (D) segment")
    return chain.replace(chain.entries[:p] + chain.entries[p + 2 :])


def find_deletions(chain: LambdaChain) -> list:
    out = []
    for p in range(len(chain) - 1):
        (b1, l1), (b2, l2) = chain.entries[p], chain.entries[p + 1]
        if b2 == tuple(-c for c in b1) and l2 == -l1:
            out.append(p)
    return out


def delete_backtracks(chain: LambdaChain) -> LambdaChain:
    """Apply (D) at the leftmost available position until none is left."""
    while True:
        dels = find_deletions(chain)
        if not dels:
            return chain
        chain = apply_deletion(chain, dels[0])


def _dihedral_sequence(rs: RootSystem, alpha, beta, m: int) -> list:
    seq = []
    u = []
    for k in range(m):
        x = alpha if k % 2 == 0 else beta
        gamma = x
        for y in reversed(u):
            gamma = rs.reflect_root(y, gamma)
        seq.append(gamma)
        u.append(x)
    return seq


def _yb_pattern(chain: LambdaChain, u: int, t: int) -> bool:
    rs = chain.rs
    seg = chain.roots[u : t + 1]
    alpha, beta = seg[0], seg[-1]
    if len(seg) < 2 or rs.pair(rs.root_weight(alpha), beta) > 0:
        return False
    return _dihedral_sequence(rs, alpha, beta, len(seg)) == list(seg)


def apply_yb(chain: LambdaChain, u: int, t: int) -> LambdaChain:
    """(YB): reverse the segment u..t (0-based, inclusive) of the form alpha, s_alpha(beta), ..., beta."""
    if not _yb_pattern(chain, u, t):
        raise ValueError("segment does not match the (YB) pattern")
    seg = chain.entries[u : t + 1]
    return chain.replace(chain.entries[:u] + seg[::-1] + chain.entries[t + 1 :])


def find_yb_moves(chain: LambdaChain) -> list:
    """All (u, t) where a (YB) move applies and yields a valid lambda-chain."""
    out = []
    for u in range(len(chain)):
        for t in range(u + 1, min(len(chain), u + 6)):
            if _yb_pattern(chain, u, t) and is_lambda_chain(apply_yb(chain, u, t)):
                out.append((u, t))
    return out


def insert_pair(chain: LambdaChain, p: int, gamma: tuple, value: int) -> LambdaChain:
    """Inverse of (D): at alcove A_p cross the wall <., gamma^vee> = value and come back."""
    rs = chain.rs
    c = alcove_walk(chain)[p]
    if rs.pair(c, gamma) < value:
        first = (tuple(-x for x in gamma), value)
    else:
        first = (gamma, -value)
    second = (tuple(-x for x in first[0]), -first[1])
    new = chain.replace(chain.entries[:p] + (first, second) + chain.entries[p:])
    if not is_lambda_chain(new):
        raise ValueError("hyperplane is not a wall of the alcove")
    return new


def find_pair_insertions(chain: LambdaChain, nonsimple: bool = True) -> list:
    """(p, gamma, value) for every wall of every alcove on the walk."""
    rs = chain.rs
    out = []
    for p, c in enumerate(alcove_walk(chain)):
        for gamma in rs.positive_roots:
            if nonsimple and rs.is_simple(gamma):
                continue
            x = rs.pair(c, gamma)
            for value in (math.floor(x), math.floor(x) + 1):
                first = (tuple(-g for g in gamma), value) if x < value else (gamma, -value)
                if _crossing(rs, c, *first) is not None:
                    out.append((p, gamma, value))
    return out


def chain_procedures(chain: LambdaChain, op: str, *position) -> LambdaChain:
    if op == "YB":
        return apply_yb(chain, *position)
    if op == "D":
        return apply_deletion(chain, *position)
    raise ValueError("op must be 'YB' or 'D'")
