"""The quantum alcove model and quantum LS paths.

Chain positions are 1-based in every public object, matching the way
admissible subsets are usually written down.

>>> from qalcove.rootsys import build_root_system
>>> from qalcove.alcove import LambdaChain
>>> rs = build_root_system("A", 2)
>>> chain = LambdaChain((1, -1), (((1, 0), 0), ((0, -1), 1)), rs)
>>> [a.A for a in enumerate_admissible(rs, rs.s(1), chain)]
[(), (1,), (2,), (1, 2)]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .alcove import LambdaChain, affine_apply, lex_chain, lex_chain_antidominant
from .qbg import QUANTUM, deodhar_path, edge_kind, lift_max, lift_min, qbg
from .rootsys import InvariantError, RootSystem, WeylElt, min_coset_rep

__all__ = [
    "AdmissibleSubset",
    "AdmissibleStats",
    "QLSPath",
    "enumerate_admissible",
    "admissible_path",
    "stats",
    "qls_validate",
    "qls_wt",
    "qls_deg",
    "qls_initial_data",
    "qls_final_data",
    "enumerate_qls",
    "qam_to_qls",
    "qls_to_qam",
    "qam_to_qls_anti",
    "qls_to_qam_anti",
]

_EDGE_CACHE: dict = {}


def _step(rs: RootSystem, u: WeylElt, beta: tuple):
    key = (rs.label, u.matrix, beta)
    if key not in _EDGE_CACHE:
        _EDGE_CACHE[key] = edge_kind(rs, u, beta)
    return _EDGE_CACHE[key]


@dataclass(frozen=True)
class AdmissibleSubset:
    w: WeylElt
    A: tuple
    chain: LambdaChain = field(compare=False, repr=False)
    path: tuple = field(compare=False, repr=False, default=())
    kinds: tuple = field(compare=False, repr=False, default=())

    @property
    def end(self) -> WeylElt:
        return self.path[-1]


@dataclass(frozen=True)
class AdmissibleStats:
    wt: tuple
    end: WeylElt
    down: tuple
    height: int
    n: int
    a_minus: tuple

    def to_json(self) -> dict:
        return {
            "wt": list(self.wt),
            "end": self.end.label(),
            "down": list(self.down),
            "height": self.height,
            "n": self.n,
            "A_minus": list(self.a_minus),
        }


def admissible_path(rs: RootSystem, w: WeylElt, A: Sequence[int], chain: LambdaChain) -> AdmissibleSubset:
    """Follow the folding path of A; raises ValueError if a step is not an edge of QB(W)."""
    u = w
    path, kinds = [w], []
    last = 0
    for j in A:
        if not last < j <= len(chain):
            raise ValueError(f"positions must increase inside 1..{len(chain)}")
        last = j
        beta = rs.abs_root(chain.roots[j - 1])
        kind = _step(rs, u, beta)
        if kind is None:
            raise ValueError(f"{tuple(A)} is not {w.label()}-admissible")
        u = u.times_reflection(beta)
        path.append(u)
        kinds.append(kind)
    return AdmissibleSubset(w, tuple(A), chain, tuple(path), tuple(kinds))


def enumerate_admissible(rs: RootSystem, w: WeylElt, chain: LambdaChain) -> list:
    """All w-admissible subsets, in colex order of the index sets."""
    absroots = [rs.abs_root(b) for b in chain.roots]
    out = []

    def grow(start, u, A, path, kinds):
        out.append(AdmissibleSubset(w, tuple(A), chain, tuple(path), tuple(kinds)))
        for j in range(start, len(chain)):
            kind = _step(rs, u, absroots[j])
            if kind is not None:
                v = u.times_reflection(absroots[j])
                grow(j + 1, v, A + [j + 1], path + [v], kinds + [kind])

    grow(0, w, [], [w], [])
    out.sort(key=lambda a: sum(1 << j for j in a.A))
    return out


def stats(rs: RootSystem, w: WeylElt, A, chain: LambdaChain) -> AdmissibleStats:
    adm = A if isinstance(A, AdmissibleSubset) else admissible_path(rs, w, A, chain)
    lam = chain.weight
    mu = tuple(-x for x in lam)
    for j in reversed(adm.A):
        mu = affine_apply(rs, chain.affine_reflection(j - 1), mu)
    wt = tuple(-x for x in w.act(mu))
    ltilde = chain.complementary_heights
    down = [0] * rs.rank
    height = 0
    a_minus = []
    for j, kind in zip(adm.A, adm.kinds):
        if kind == QUANTUM:
            beta = chain.roots[j - 1]
            a_minus.append(j)
            for i, c in enumerate(rs.coroot(rs.abs_root(beta))):
                down[i] += c
            height += rs.sgn(beta) * ltilde[j - 1]
    n = sum(1 for j in adm.A if not rs.is_positive(chain.roots[j - 1]))
    return AdmissibleStats(wt, adm.end, tuple(down), height, n, tuple(a_minus))


# -- quantum LS paths ----------------------------------------------------------------


@dataclass(frozen=True)
class QLSPath:
    """Cut points 0 = b_1 < ... < b_{t+1} = 1 and directions sigma_1..sigma_t."""

    b: tuple
    sigma: tuple

    def __post_init__(self):
        b = tuple(Fraction(x) for x in self.b)
        object.__setattr__(self, "b", b)
        if len(b) != len(self.sigma) + 1 or b[0] != 0 or b[-1] != 1:
            raise ValueError("need 0 = b_1 < ... < b_{t+1} = 1 and t directions")
        if any(x >= y for x, y in zip(b, b[1:])):
            raise ValueError("cut points must strictly increase")

    @property
    def t(self) -> int:
        return len(self.sigma)

    def __repr__(self):
        bs = ",".join(str(x) for x in self.b)
        return f"QLSPath(b=({bs}); {'; '.join(s.label() for s in self.sigma)})"


def qls_validate(rs: RootSystem, lam: Sequence[int], eta: QLSPath) -> bool:
    lam = tuple(lam)
    J = rs.stabilizer(lam)
    g = qbg(rs, J)
    if any(min_coset_rep(rs, s, J) != s for s in eta.sigma):
        return False
    for k in range(1, eta.t):
        prev, cur = eta.sigma[k - 1], eta.sigma[k]
        if prev == cur or not g.reachable(prev, cur, eta.b[k], lam):
            return False
    return True


def qls_wt(rs: RootSystem, lam: Sequence[int], eta: QLSPath) -> tuple:
    total = [Fraction(0)] * rs.rank
    for k, s in enumerate(eta.sigma):
        step = eta.b[k + 1] - eta.b[k]
        for i, c in enumerate(s.act(lam)):
            total[i] += step * c
    return _maybe_int(total)


def _maybe_int(vec):
    return tuple(int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in vec)


def qls_deg(rs: RootSystem, lam: Sequence[int], eta: QLSPath):
    lam = tuple(lam)
    g = qbg(rs, rs.stabilizer(lam))
    deg = Fraction(0)
    for k in range(1, eta.t):
        wt = g.shortest_weight(eta.sigma[k - 1], eta.sigma[k])
        deg -= (1 - eta.b[k]) * rs.coroot_pair(lam, wt)
    return int(deg) if deg.denominator == 1 else deg


def qls_initial_data(rs: RootSystem, lam: Sequence[int], eta: QLSPath, w: WeylElt) -> tuple:
    """(iota(eta, w), xi(eta, w), Deg_w(eta)) via right Deodhar lifts."""
    lam = tuple(lam)
    J = rs.stabilizer(lam)
    g = qbg(rs)
    prev = w
    xi = [0] * rs.rank
    deg = Fraction(0)
    for k, s in enumerate(eta.sigma):
        cur = lift_min(rs, s, J, prev)
        wt = g.shortest_weight(prev, cur)
        xi = [a + b for a, b in zip(xi, wt)]
        deg -= (1 - eta.b[k]) * rs.coroot_pair(lam, wt)
        prev = cur
    return prev, tuple(xi), int(deg) if deg.denominator == 1 else deg


def qls_final_data(rs: RootSystem, lam: Sequence[int], eta: QLSPath, v: WeylElt) -> tuple:
    """(kappa(eta, v), zeta(eta, v)) via left Deodhar lifts."""
    J = rs.stabilizer(tuple(lam))
    g = qbg(rs)
    nxt = v
    zeta = [0] * rs.rank
    for s in reversed(eta.sigma):
        cur = lift_max(rs, s, J, nxt)
        zeta = [a + b for a, b in zip(zeta, g.shortest_weight(cur, nxt))]
        nxt = cur
    return nxt, tuple(zeta)


def enumerate_qls(rs: RootSystem, lam: Sequence[int]) -> list:
    """Every element of QLS(lam), by brute force over cut points and directions."""
    lam = tuple(lam)
    J = rs.stabilizer(lam)
    g = qbg(rs, J)
    cuts = sorted(
        {Fraction(l, m) for beta in rs.positive_roots for m in [rs.pair(lam, beta)] if m > 0 for l in range(1, m)}
    )
    out = []
    for size in range(len(cuts) + 1):
        for inner in combinations(cuts, size):
            b = (Fraction(0),) + inner + (Fraction(1),)

            def extend(seq):
                if len(seq) == len(b) - 1:
                    out.append(QLSPath(b, tuple(seq)))
                    return
                for s in g.vertices:
                    if s != seq[-1] and g.reachable(seq[-1], s, b[len(seq)], lam):
                        extend(seq + [s])

            for s in g.vertices:
                extend([s])
    return out


# -- bijections -------------------------------------------------------------------------


def _require_chain(chain: LambdaChain, expected: LambdaChain):
    if chain.entries != expected.entries:
        raise ValueError("the bijection is defined for the lex chain only")


def qam_to_qls(rs: RootSystem, w: WeylElt, A: Sequence[int], chain: LambdaChain) -> QLSPath:
    """Dominant case: group A by relative height and project the milestones."""
    lam = chain.weight
    _require_chain(chain, lex_chain(rs, lam))
    admissible_path(rs, w, A, chain)
    J = rs.stabilizer(lam)
    rel = [Fraction(l, rs.pair(lam, beta)) for beta, l in (chain.entries[j - 1] for j in A)]
    levels = sorted({h for h in rel if h})
    b = (Fraction(0),) + tuple(levels) + (Fraction(1),)
    u = w
    sigma = []
    for level in b[:-1]:
        for j, h in zip(A, rel):
            if h == level:
                u = u.times_reflection(chain.roots[j - 1])
        sigma.append(min_coset_rep(rs, u, J))
    return QLSPath(b, tuple(sigma))


def qls_to_qam(rs: RootSystem, lam: Sequence[int], eta: QLSPath, w: WeylElt) -> AdmissibleSubset:
    """Inverse of qam_to_qls: concatenate right Deodhar paths and read off hyperplanes."""
    lam = tuple(lam)
    chain = lex_chain(rs, lam)
    J = rs.stabilizer(lam)
    where = {e: i + 1 for i, e in enumerate(chain.entries)}
    prev = w
    A = []
    for k, s in enumerate(eta.sigma):
        target = lift_min(rs, s, J, prev)
        floor = min_coset_rep(rs, prev, J)
        path = deodhar_path(rs, floor, s, floor.inverse() * prev, lam, "right")
        if path.end != target:
            raise InvariantError("Deodhar path does not end at the quantum lift")
        for beta in path.labels:
            l = eta.b[k] * rs.pair(lam, beta)
            if l.denominator != 1:
                raise InvariantError("hyperplane height is not integral")
            A.append(where[(beta, int(l))])
        prev = target
    if A != sorted(A):
        raise InvariantError("recovered positions are not increasing")
    return admissible_path(rs, w, A, chain)


def qam_to_qls_anti(rs: RootSystem, w: WeylElt, A: Sequence[int], chain: LambdaChain) -> tuple:
    """Anti-dominant case: returns (eta in QLS(-lam), v)."""
    lam = chain.weight
    _require_chain(chain, lex_chain_antidominant(rs, lam))
    admissible_path(rs, w, A, chain)
    mu = tuple(-x for x in lam)
    J = rs.stabilizer(mu)
    rel = [Fraction(l, rs.pair(lam, beta)) for beta, l in (chain.entries[j - 1] for j in A)]
    levels = sorted({h for h in rel if h < 1})
    b = (Fraction(0),) + tuple(levels) + (Fraction(1),)
    u = w
    sigma = [min_coset_rep(rs, u, J)]
    for level in b[1:]:
        for j, h in zip(A, rel):
            if h == level:
                u = u.times_reflection(chain.roots[j - 1])
        if level < 1:
            sigma.append(min_coset_rep(rs, u, J))
    return QLSPath(b, tuple(sigma)), u


def qls_to_qam_anti(rs: RootSystem, lam: Sequence[int], eta: QLSPath, v: WeylElt) -> AdmissibleSubset:
    """Inverse of qam_to_qls_anti; lam is the anti-dominant weight of the chain."""
    lam = tuple(lam)
    chain = lex_chain_antidominant(rs, lam)
    mu = tuple(-x for x in lam)
    J = rs.stabilizer(mu)
    where = {e: i + 1 for i, e in enumerate(chain.entries)}
    milestones = [v]
    for s in reversed(eta.sigma):
        milestones.append(lift_max(rs, s, J, milestones[-1]))
    milestones.reverse()  # w_1, ..., w_{t+1}
    A = []
    for k, s in enumerate(eta.sigma):
        nxt = milestones[k + 1]
        floor = min_coset_rep(rs, nxt, J)
        path = deodhar_path(rs, s, floor, floor.inverse() * nxt, mu, "left")
        if path.start != milestones[k]:
            raise InvariantError("Deodhar path does not start at the quantum lift")
        for gamma in path.labels:
            l = eta.b[k + 1] * rs.pair(mu, gamma)
            if l.denominator != 1:
                raise InvariantError("hyperplane height is not integral")
            A.append(where[(tuple(-c for c in gamma), int(l))])
    if A != sorted(A):
        raise InvariantError("recovered positions are not increasing")
    return admissible_path(rs, milestones[0], A, chain)
