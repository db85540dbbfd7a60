"""Truncated K-group arithmetic, Chevalley expansions and the operator calculus.

A :class:`KElt` is a finite sum of terms  c q^a e^{mu/denom} [u t_xi],
stored flat as ``{(u, xi, a, mu): c}``.  Public expansions use denom 1;
the operators X^nu multiply by e^{u nu / h} and therefore work over
denom h, the Coxeter number.  Sums are truncated at a cutoff D on the
total height sum(xi); dropped terms set the ``truncated`` flag.

>>> from qalcove.rootsys import build_root_system
>>> rs = build_root_system("A", 1)
>>> x = op_Q(rs, (1,), 0, KElt.basis(rs, rs.identity))
>>> [(u.label(), xi) for (u, xi, a, mu), c in x.items()]
[('21', (0,))]
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .alcove import LambdaChain, lex_chain, lex_chain_antidominant
from .model import enumerate_admissible, enumerate_qls, qls_deg, qls_final_data, qls_initial_data, qls_wt, stats
from .qbg import BRUHAT, QUANTUM, edge_kind
from .rootsys import RootSystem, WeylElt

__all__ = [
    "GroupAlgElt",
    "LaurentQ",
    "KElt",
    "ParTuple",
    "par_tuples",
    "chevalley",
    "chevalley_dominant",
    "chevalley_antidominant",
    "chevalley_via_operators",
    "chevalley_via_qls",
    "op_Q",
    "op_Q1",
    "op_X",
    "op_t",
    "op_R",
    "op_R_chain",
    "q1_specialize",
    "yang_baxter_check",
    "dihedral_roots",
]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class GroupAlgElt(dict):
    """Element of Z[P/denom]: weight numerators -> integer coefficients."""

    def __init__(self, terms=(), denom: int = 1):
        super().__init__()
        self.denom = denom
        for mu, c in dict(terms).items():
            if c:
                self[tuple(mu)] = self.get(tuple(mu), 0) + c
        for mu in [m for m, c in self.items() if c == 0]:
            del self[mu]

    def __add__(self, other):
        d, a, b = _common(self, other)
        out = dict(a)
        for mu, c in b.items():
            out[mu] = out.get(mu, 0) + c
        return GroupAlgElt(out, d)

    def __mul__(self, other):
        d, a, b = _common(self, other)
        out: dict = {}
        for mu, c in a.items():
            for nu, e in b.items():
                key = _add(mu, nu)
                out[key] = out.get(key, 0) + c * e
        return GroupAlgElt(out, d)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgElt):
            return NotImplemented
        d, a, b = _common(self, other)
        return dict(a) == dict(b)

    __hash__ = None

    def rescaled(self, denom: int) -> dict:
        f = denom // self.denom
        return {tuple(f * x for x in mu): c for mu, c in self.items()}

    def augmentation(self) -> int:
        """Image under e^mu -> 1."""
        return sum(self.values())


def _common(a: GroupAlgElt, b: GroupAlgElt):
    d = a.denom * b.denom // _gcd(a.denom, b.denom)
    return d, a.rescaled(d), b.rescaled(d)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class LaurentQ(dict):
    """q-exponent -> GroupAlgElt."""

    def q1(self) -> GroupAlgElt:
        out = GroupAlgElt()
        for g in self.values():
            out = out + g
        return out


class KElt:
    """Truncated element of the K-group; immutable by convention."""

    def __init__(self, terms=None, denom: int = 1, cutoff: int | None = None, truncated: bool = False):
        self.terms = {k: c for k, c in (terms or {}).items() if c}
        self.denom = denom
        self.cutoff = cutoff
        self.truncated = truncated

    @classmethod
    def basis(cls, rs: RootSystem, u: WeylElt, xi: Sequence[int] | None = None, denom: int = 1, cutoff=None):
        xi = tuple(xi) if xi is not None else (0,) * rs.rank
        return cls({(u, xi, 0, (0,) * rs.rank): 1}, denom, cutoff)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __len__(self):
        return len(self.terms)

    def _with(self, terms, truncated=False, denom=None):
        return KElt(terms, self.denom if denom is None else denom, self.cutoff, self.truncated or truncated)

    def rescaled(self, denom: int) -> "KElt":
        if denom % self.denom:
            raise ValueError("new denominator must be a multiple of the old one")
        f = denom // self.denom
        return self._with({(u, xi, a, tuple(f * m for m in mu)): c for (u, xi, a, mu), c in self.terms.items()}, denom=denom)

    def normalized(self) -> "KElt":
        """Smallest denominator that keeps all weight numerators integral."""
        g = self.denom
        for (_, _, _, mu) in self.terms:
            for m in mu:
                g = _gcd(g, abs(m))
        return self._with(
            {(u, xi, a, tuple(m // g for m in mu)): c for (u, xi, a, mu), c in self.terms.items()},
            denom=self.denom // g,
        )

    def __add__(self, other: "KElt") -> "KElt":
        d = self.denom * other.denom // _gcd(self.denom, other.denom)
        a, b = self.rescaled(d), other.rescaled(d)
        out = dict(a.terms)
        for k, c in b.terms.items():
            out[k] = out.get(k, 0) + c
        cutoff = _min_cutoff(self.cutoff, other.cutoff)
        return KElt(out, d, cutoff, self.truncated or other.truncated)

    def scale(self, c: int) -> "KElt":
        return self._with({k: c * v for k, v in self.terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, KElt):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return a.denom == b.denom and a.terms == b.terms

    __hash__ = None

    def coefficient(self, u: WeylElt, xi: Sequence[int]) -> LaurentQ:
        out = LaurentQ()
        for (v, zeta, a, mu), c in self.terms.items():
            if v == u and zeta == tuple(xi):
                g = out.get(a, GroupAlgElt(denom=self.denom))
                out[a] = g + GroupAlgElt({mu: c}, self.denom)
        return out

    def truncate(self, cutoff: int) -> "KElt":
        kept = {k: c for k, c in self.terms.items() if sum(k[1]) <= cutoff}
        dropped = len(kept) != len(self.terms)
        return KElt(kept, self.denom, _min_cutoff(self.cutoff, cutoff), self.truncated or dropped)

    def to_json(self) -> dict:
        grouped: dict = {}
        for (u, xi, a, mu), c in self.items():
            grouped.setdefault((u.label(), xi), []).append(
                {"q_exp": a, "weight": _weight_json(mu, self.denom), "coeff": c}
            )
        return {
            "denominator": self.denom,
            "cutoff": self.cutoff,
            "truncated": self.truncated,
            "entries": [{"w": w, "xi": list(xi), "terms": terms} for (w, xi), terms in grouped.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def __repr__(self):
        return f"KElt({len(self.terms)} terms, denom={self.denom}, truncated={self.truncated})"


def _weight_json(mu, denom):
    return list(mu) if denom == 1 else [f"{m}/{denom}" for m in mu]


def _sort_key(key):
    u, xi, a, mu = key
    return (sum(xi), xi, u.length, u.label(), -a, mu)


def _min_cutoff(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# -- partitions ----------------------------------------------------------------


@dataclass(frozen=True)
class ParTuple:
    parts: tuple  # one partition (tuple of positive parts) per simple index

    @property
    def size(self) -> int:
        return sum(sum(p) for p in self.parts)

    @property
    def iota(self) -> tuple:
        return tuple(p[0] if p else 0 for p in self.parts)


def _partitions(max_parts: int, max_part: int):
    if max_parts == 0 or max_part == 0:
        yield ()
        return
    yield ()
    for first in range(1, max_part + 1):
        for rest in _partitions(max_parts - 1, first):
            yield (first,) + rest


def par_tuples(lam: Sequence[int], budget: int) -> list:
    """Tuples of partitions chi^(i) with at most max(lam_i, 0) parts and sum of first parts <= budget."""
    if budget < 0:
        return []
    per = [list(_partitions(max(l, 0), budget)) for l in lam]
    return [ParTuple(p) for p in product(*per) if sum(x[0] if x else 0 for x in p) <= budget]


# -- Chevalley expansions ------------------------------------------------------------


def chevalley(
    rs: RootSystem,
    lam: Sequence[int],
    w: WeylElt,
    xi: Sequence[int],
    chain: LambdaChain,
    cutoff: int,
) -> KElt:
    """Chevalley expansion of [O(-w0 lam)] . [w t_xi] over a lam-chain, truncated at total height cutoff."""
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    lam, xi = tuple(lam), tuple(xi)
    if chain.weight != lam:
        raise ValueError("chain weight differs from lambda")
    base_q = -rs.coroot_pair(lam, xi)
    terms: dict = {}
    dropped = False
    infinite = any(l > 0 for l in lam)
    for adm in enumerate_admissible(rs, w, chain):
        st = stats(rs, w, adm, chain)
        start = _add(xi, st.down)
        budget = cutoff - sum(start)
        if budget < 0:
            dropped = True
            continue
        if infinite:
            dropped = True
        sign = -1 if st.n % 2 else 1
        for chi in par_tuples(lam, budget):
            key = (st.end, _add(start, chi.iota), base_q - st.height - chi.size, st.wt)
            terms[key] = terms.get(key, 0) + sign
    return KElt(terms, 1, cutoff, dropped)


def chevalley_dominant(rs: RootSystem, lam, w, xi, cutoff: int) -> KElt:
    if not rs.dominant(lam):
        raise ValueError("lambda must be dominant")
    return chevalley(rs, lam, w, xi, lex_chain(rs, lam), cutoff)


def chevalley_antidominant(rs: RootSystem, lam, w, xi, cutoff: int) -> KElt:
    if any(x > 0 for x in lam):
        raise ValueError("lambda must be anti-dominant")
    return chevalley(rs, lam, w, xi, lex_chain_antidominant(rs, lam), cutoff)


def chevalley_via_operators(rs: RootSystem, lam, w, xi, chain: LambdaChain, cutoff: int) -> KElt:
    """Sum over chi of q^{-|chi| - <lam, xi>} R_{Gamma, ltilde}[w t_{xi + iota(chi)}]."""
    lam, xi = tuple(lam), tuple(xi)
    total = KElt({}, 1, cutoff)
    for chi in par_tuples(lam, cutoff - sum(xi)):
        start = KElt.basis(rs, w, _add(xi, chi.iota), cutoff=cutoff)
        image = op_R_chain(rs, chain.roots, chain.complementary_heights, start)
        shift = -chi.size - rs.coroot_pair(lam, xi)
        total = total + image._with({(u, z, a + shift, mu): c for (u, z, a, mu), c in image.terms.items()})
    if any(l > 0 for l in lam):
        total.truncated = True
    out = total.normalized()
    if out.denom != 1:
        raise ValueError("operator expansion has non-integral weights")
    return out


def chevalley_via_qls(rs: RootSystem, lam, w, xi, cutoff: int) -> KElt:
    """The same expansion computed from quantum LS paths (lam dominant or anti-dominant)."""
    lam, xi = tuple(lam), tuple(xi)
    base_q = -rs.coroot_pair(lam, xi)
    terms: dict = {}
    if rs.dominant(lam):
        for eta in enumerate_qls(rs, lam):
            iota, zeta, deg = qls_initial_data(rs, lam, eta, w)
            start = _add(xi, zeta)
            wt = qls_wt(rs, lam, eta)
            for chi in par_tuples(lam, cutoff - sum(start)):
                key = (iota, _add(start, chi.iota), base_q + deg - chi.size, wt)
                terms[key] = terms.get(key, 0) + 1
        return KElt(terms, 1, cutoff, True)
    mu = tuple(-x for x in lam)
    dropped = False
    for eta in enumerate_qls(rs, mu):
        deg = qls_deg(rs, mu, eta)
        wt = tuple(-x for x in qls_wt(rs, mu, eta))
        for v in rs.weyl_group():
            kappa, zeta = qls_final_data(rs, mu, eta, v)
            if kappa != w:
                continue
            end = _add(xi, zeta)
            if sum(end) > cutoff:
                dropped = True
                continue
            key = (v, end, base_q - deg, wt)
            terms[key] = terms.get(key, 0) + (-1) ** (v.length - w.length)
    return KElt(terms, 1, cutoff, dropped)


# -- operators ---------------------------------------------------------------------


def _map_terms(x: KElt, fn) -> KElt:
    out: dict = {}
    dropped = False
    for key, c in x.terms.items():
        for nkey, nc in fn(key, c):
            if x.cutoff is not None and sum(nkey[1]) > x.cutoff:
                dropped = True
                continue
            out[nkey] = out.get(nkey, 0) + nc
    return x._with(out, truncated=dropped)


def op_Q(rs: RootSystem, beta: tuple, k: int, x: KElt) -> KElt:
    """Q_{beta,k}: move along the edge u -> u s_beta of QB(W), with sign sgn(beta)."""
    absb = rs.abs_root(beta)
    sg = rs.sgn(beta)
    cor = rs.coroot(absb)

    def act(key, c):
        u, xi, a, mu = key
        kind = edge_kind(rs, u, absb)
        if kind == BRUHAT:
            yield (u.times_reflection(absb), xi, a, mu), sg * c
        elif kind == QUANTUM:
            yield (u.times_reflection(absb), _add(xi, cor), a - sg * k, mu), sg * c

    return _map_terms(x, act)


def op_Q1(rs: RootSystem, beta: tuple, x: KElt) -> KElt:
    """Q_beta at q = 1."""
    return q1_specialize(op_Q(rs, beta, 0, x))


def op_X(rs: RootSystem, nu: Sequence[int], x: KElt) -> KElt:
    """X^nu [u t_xi] = e^{u nu / h} [u t_xi]."""
    h = rs.coxeter_number
    y = x if x.denom == h else x.rescaled(h)
    return _map_terms(y, lambda key, c: [((key[0], key[1], key[2], _add(key[3], key[0].act(nu))), c)])


def op_t(rs: RootSystem, i: int, x: KElt) -> KElt:
    """t_i: shift xi by alpha_i^vee (1-based i)."""
    bump = tuple(int(m == i - 1) for m in range(rs.rank))
    return _map_terms(x, lambda key, c: [((key[0], _add(key[1], bump), key[2], key[3]), c)])


def op_R(rs: RootSystem, beta: tuple, k: int, x: KElt) -> KElt:
    """R_{beta,k} = X^rho (X^beta + Q_{beta,k}) X^{-rho}."""
    neg_rho = tuple(-r for r in rs.rho)
    y = op_X(rs, neg_rho, x)
    y = op_X(rs, rs.root_weight(beta), y) + op_Q(rs, beta, k, y)
    return op_X(rs, rs.rho, y)


def op_R_chain(rs: RootSystem, roots: Sequence[tuple], ks: Sequence[int], x: KElt) -> KElt:
    """R_{beta_m,k_m} ... R_{beta_1,k_1} x (beta_1 acts first)."""
    if len(roots) != len(ks):
        raise ValueError("roots and levels differ in length")
    for beta, k in zip(roots, ks):
        x = op_R(rs, beta, k, x)
    return x


def q1_specialize(x: KElt) -> KElt:
    out: dict = {}
    for (u, xi, a, mu), c in x.terms.items():
        key = (u, xi, 0, mu)
        out[key] = out.get(key, 0) + c
    return x._with(out)


# -- Yang-Baxter ------------------------------------------------------------------


def dihedral_roots(rs: RootSystem, alpha: tuple, beta: tuple) -> list:
    """alpha, s_alpha(beta), s_alpha s_beta(alpha), ..., beta for <alpha, beta^vee> <= 0."""
    if rs.pair(rs.root_weight(alpha), beta) > 0:
        raise ValueError("need <alpha, beta^vee> <= 0")
    seq = [alpha]
    gens = [alpha]
    while seq[-1] != beta:
        x = beta if len(gens) % 2 else alpha
        gamma = x
        for y in reversed(gens):
            gamma = rs.reflect_root(y, gamma)
        seq.append(gamma)
        gens.append(x)
        if len(seq) > 6:
            raise ValueError("roots do not span a rank-2 subsystem in this position")
    return seq


def levels_compatible(rs: RootSystem, roots: Sequence[tuple], levels: Sequence[int]) -> bool:
    """Is there a point mu with <mu, beta_p^vee> = k_p for every p?"""
    from fractions import Fraction

    rows = [[Fraction(c) for c in rs.coroot(b)] + [Fraction(k)] for b, k in zip(roots, levels)]
    n = rs.rank
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return all(any(row[:n]) or row[n] == 0 for row in rows)


def yang_baxter_check(
    rs: RootSystem,
    alpha: tuple,
    beta: tuple,
    levels: Sequence[int] | None = None,
    max_height: int = 2,
) -> bool:
    """Compare R over alpha, s_alpha(beta), ..., beta with the reversed product.

    ``levels=None`` works at q = 1.  Otherwise ``levels`` are k_1..k_m for the
    forward sequence; the reversed product uses them reversed, and they must
    be the values of a common point on the coroots.
    """
    seq = dihedral_roots(rs, alpha, beta)
    if levels is None:
        ks = [0] * len(seq)
    else:
        ks = list(levels)
        if len(ks) != len(seq):
            raise ValueError("one level per root is required")
        if not levels_compatible(rs, seq, ks):
            raise ValueError("levels have no common intersection point")
    for u in rs.weyl_group():
        for xi in _small_coroots(rs.rank, max_height):
            x = KElt.basis(rs, u, xi)
            left = op_R_chain(rs, seq, ks, x)
            right = op_R_chain(rs, seq[::-1], ks[::-1], x)
            if levels is None:
                left, right = q1_specialize(left), q1_specialize(right)
            if left != right:
                return False
    return True


def _small_coroots(rank: int, max_height: int) -> Iterable[tuple]:
    for xi in product(range(max_height + 1), repeat=rank):
        if sum(xi) <= max_height:
            yield xi
