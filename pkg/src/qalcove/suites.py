"""Verification suites shared by the command line and the test-suite.

Each suite returns a :class:`Report` whose items are sorted by key, so two
runs with the same arguments print the same text.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .alcove import (
    apply_deletion,
    apply_yb,
    concat_chain,
    find_deletions,
    find_pair_insertions,
    find_yb_moves,
    insert_pair,
    is_lambda_chain,
    lex_chain,
    lex_chain_antidominant,
)
from .ktheory import (
    KElt,
    chevalley,
    dihedral_roots,
    op_Q,
    op_t,
    op_X,
    q1_specialize,
    yang_baxter_check,
)
from .model import (
    enumerate_admissible,
    enumerate_qls,
    qam_to_qls,
    qam_to_qls_anti,
    qls_deg,
    qls_final_data,
    qls_initial_data,
    qls_to_qam,
    qls_to_qam_anti,
    qls_validate,
    qls_wt,
    stats,
)
from .qbg import increasing_paths, lambda_reflection_order, qbg, reflection_order_from_word
from .qk_flag import (
    coset_reorder,
    coset_reps,
    degree_formula,
    find_coeff,
    global_max_degree,
    min_max_degree,
    qk_chevalley,
)
from .rootsys import RootSystem, build_root_system

__all__ = ["Report", "SUITES", "run_suite"]


@dataclass
class Report:
    suite: str
    params: dict
    items: list = field(default_factory=list)
    seconds: float = 0.0

    def add(self, key: str, ok: bool, detail: str = ""):
        self.items.append((key, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return bool(self.items) and all(ok for _, ok, _ in self.items)

    @property
    def failures(self) -> list:
        return [it for it in self.items if not it[1]]

    def lines(self) -> list:
        out = []
        for key, ok, detail in sorted(self.items):
            out.append(f"{'PASS' if ok else 'FAIL'} {key}" + (f"  {detail}" if detail else ""))
        n_ok = sum(ok for _, ok, _ in self.items)
        out.append(f"{self.suite}: {n_ok}/{len(self.items)} passed")
        return out


def _guard(report: Report, key: str, fn: Callable[[], tuple]):
    """Run one work item; an exception is recorded as a failure."""
    try:
        ok, detail = fn()
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    report.add(key, ok, detail)


def _neg(v):
    return tuple(-x for x in v)


# -- quantum Bruhat graph ---------------------------------------------------------


def suite_shortest_weight(kind: str, rank: int, max_coset: int = 200, **_) -> Report:
    """Weights of shortest paths are well defined and QB(W^J) is strongly connected."""
    rs = build_root_system(kind, rank)
    rep = Report("shortest-weight", {"type": kind, "rank": rank, "max_coset": max_coset})
    for r in range(rank + 1):
        for J in itertools.combinations(range(rank), r):
            if len(rs.min_coset_reps(J)) > max_coset:
                continue

            def item(J=J):
                g = qbg(rs, J)
                if not g.strongly_connected():
                    return False, "not strongly connected"
                for v in g.vertices:
                    classes = g.shortest_weight_classes(v)
                    bad = [w for w, ws in classes.items() if len(ws) != 1]
                    if bad:
                        return False, f"several weights from {v.label()} to {bad[0].label()}"
                return True, f"|W^J|={len(g.vertices)}"

            _guard(rep, f"J={list(J)}", item)
    return rep


def _shell_orders(rs: RootSystem, lam=None):
    word = rs.reduced_word(rs.longest_element())
    yield "reduced-word", reflection_order_from_word(rs, word)
    lam = tuple(lam) if lam is not None else rs.fundamental_weights[0]
    yield f"lambda={list(lam)}", lambda_reflection_order(rs, lam)


def suite_shellability(kind: str, rank: int, lam=None, **_) -> Report:
    """Each ordered pair (v, w) has one increasing path, and it is a shortest path."""
    rs = build_root_system(kind, rank)
    rep = Report("shellability", {"type": kind, "rank": rank, "lambda": lam})
    g = qbg(rs)
    for name, order in _shell_orders(rs, lam):
        for decreasing in (False, True):

            def item(order=order, decreasing=decreasing):
                for v in g.vertices:
                    dist = g.bfs_from(v)
                    ends: dict = {}
                    for p in increasing_paths(rs, v, order, decreasing):
                        ends.setdefault(p.end, []).append(p)
                    for w in g.vertices:
                        found = ends.get(w, [])
                        if len(found) != 1:
                            return False, f"{len(found)} paths {v.label()} -> {w.label()}"
                        if found[0].length != dist[w][0]:
                            return False, f"path {v.label()} -> {w.label()} is not shortest"
                return True, f"{len(g.vertices) ** 2} pairs"

            _guard(rep, f"{name}:{'decreasing' if decreasing else 'increasing'}", item)
    return rep


# -- operator calculus ------------------------------------------------------------------


def _small_basis(rs: RootSystem, max_height: int = 2):
    for u in rs.weyl_group():
        for xi in itertools.product(range(max_height + 1), repeat=rs.rank):
            if sum(xi) <= max_height:
                yield KElt.basis(rs, u, xi)


def suite_operator_relations(kind: str, rank: int, max_height: int = 2, **_) -> Report:
    """Squares of Q, the X relations and the commutation of Q with X, at q = 1."""
    rs = build_root_system(kind, rank)
    rep = Report("operator-relations", {"type": kind, "rank": rank, "max_height": max_height})
    basis = list(_small_basis(rs, max_height))

    def Q(beta, x):
        return q1_specialize(op_Q(rs, beta, 0, x))

    def X(nu, x):
        return op_X(rs, nu, x)

    def check(pred, what):
        for x in basis:
            if not pred(x):
                return False, f"{what} fails on {x!r}"
        return True, f"{len(basis)} basis elements"

    for beta in rs.positive_roots:
        for b in (beta, _neg(beta)):
            if rs.is_simple(beta):
                i = beta.index(1) + 1
                _guard(rep, f"Q_{list(b)}^2=t", lambda b=b, i=i: check(lambda x: Q(b, Q(b, x)) == op_t(rs, i, x), "square"))
            else:
                _guard(rep, f"Q_{list(b)}^2=0", lambda b=b: check(lambda x: len(Q(b, Q(b, x))) == 0, "square"))
    for i, alpha in enumerate(rs.simple_roots, 1):
        a = rs.root_weight(alpha)
        na = _neg(a)
        _guard(
            rep,
            f"Q_a Q_-a=-t ({i})",
            lambda alpha=alpha, i=i: check(lambda x: Q(alpha, Q(_neg(alpha), x)) == -op_t(rs, i, x), "product"),
        )

        def factor(x, alpha=alpha, a=a, na=na, first=1):
            if first > 0:
                y = X(na, x) + Q(_neg(alpha), x)
                return X(a, y) + Q(alpha, y)
            y = X(a, x) + Q(alpha, x)
            return X(na, y) + Q(_neg(alpha), y)

        for first in (1, -1):
            _guard(
                rep,
                f"(X+Q)(X+Q)=1-t ({i},{first:+d})",
                lambda factor=factor, first=first, i=i: check(
                    lambda x: (factor(x, first=first) - x + op_t(rs, i, x)).normalized() == KElt({}, 1), "factorization"
                ),
            )
    weights = [rs.fundamental_weights[j] for j in range(rank)] + [rs.rho]
    for nu, mu in itertools.product(weights, repeat=2):
        _guard(
            rep,
            f"X^{list(nu)}X^{list(mu)}",
            lambda nu=nu, mu=mu: check(lambda x: X(nu, X(mu, x)) == X(tuple(p + q for p, q in zip(nu, mu)), x), "additivity"),
        )
    for beta in rs.roots:
        for nu in weights:
            _guard(
                rep,
                f"Q_{list(beta)}X^{list(nu)}",
                lambda beta=beta, nu=nu: check(
                    lambda x: Q(beta, X(nu, x)) == X(rs.reflect_weight(beta, nu), Q(beta, x)), "commutation"
                ),
            )
    return rep


def _yb_pairs(rs: RootSystem):
    for alpha, beta in itertools.product(rs.roots, repeat=2):
        if alpha == beta or alpha == _neg(beta):
            continue
        if rs.pair(rs.root_weight(alpha), beta) > 0:
            continue
        try:
            seq = dihedral_roots(rs, alpha, beta)
        except ValueError:
            continue
        yield alpha, beta, seq


def suite_yang_baxter(kind: str, rank: int, seed: int = 0, generic: bool = True, samples: int = 3, **_) -> Report:
    """Yang-Baxter equation for every admissible root pair; at q = 1 and with compatible levels."""
    rs = build_root_system(kind, rank)
    rep = Report("yang-baxter", {"type": kind, "rank": rank, "seed": seed, "generic": generic})
    rng = random.Random(seed)
    for alpha, beta, seq in _yb_pairs(rs):
        key = f"{list(alpha)},{list(beta)}"
        _guard(rep, f"q=1 {key}", lambda a=alpha, b=beta: (yang_baxter_check(rs, a, b), f"{len(seq)} roots"))
        if not generic:
            continue
        for s in range(samples):
            mu = tuple(rng.randint(-3, 3) for _ in range(rs.rank))
            levels = [rs.pair(mu, g) for g in seq]
            _guard(
                rep,
                f"levels#{s} {key}",
                lambda a=alpha, b=beta, levels=levels: (yang_baxter_check(rs, a, b, levels), f"levels {levels}"),
            )
    return rep


# -- Chevalley expansions -----------------------------------------------------------------


def base_chain(rs: RootSystem, lam):
    lam = tuple(lam)
    if rs.dominant(lam):
        return "lex", lex_chain(rs, lam)
    if rs.dominant(_neg(lam)):
        return "lex-anti", lex_chain_antidominant(rs, lam)
    return "concat", concat_chain(rs, lam)


def alternative_chain(rs: RootSystem, chain):
    """A second lambda-chain: one Yang-Baxter move, else one deletion, else one pair insertion."""
    moves = find_yb_moves(chain)
    if moves:
        u, t = moves[0]
        return f"yb@{u},{t}", apply_yb(chain, u, t)
    dels = find_deletions(chain)
    if dels:
        return f"delete@{dels[0]}", apply_deletion(chain, dels[0])
    p, gamma, value = find_pair_insertions(chain)[0]
    return f"insert@{p}:{list(gamma)}", insert_pair(chain, p, gamma, value)


def suite_chain_independence(kind: str, rank: int, lam, cutoff: int = 2, **_) -> Report:
    """Expansions agree over two different lambda-chains, for every w."""
    rs = build_root_system(kind, rank)
    lam = tuple(lam)
    rep = Report("chain-independence", {"type": kind, "rank": rank, "lambda": list(lam), "cutoff": cutoff})
    name0, ch0 = base_chain(rs, lam)
    name1, ch1 = alternative_chain(rs, ch0)
    if not (is_lambda_chain(ch0) and is_lambda_chain(ch1)) or ch0.entries == ch1.entries:
        rep.add("chains", False, "could not build two distinct lambda-chains")
        return rep
    zero = (0,) * rs.rank
    for w in rs.weyl_group():
        _guard(
            rep,
            f"w={w.label()}",
            lambda w=w: (chevalley(rs, lam, w, zero, ch0, cutoff) == chevalley(rs, lam, w, zero, ch1, cutoff), f"{name0} vs {name1}"),
        )
    return rep


def suite_bijection(kind: str, rank: int, lam, **_) -> Report:
    """Round trips between admissible subsets and quantum LS paths, with statistics."""
    rs = build_root_system(kind, rank)
    lam = tuple(lam)
    rep = Report("bijection", {"type": kind, "rank": rank, "lambda": list(lam)})
    if rs.dominant(lam):
        chain = lex_chain(rs, lam)
        qls = enumerate_qls(rs, lam)

        def item(w):
            images = []
            for adm in enumerate_admissible(rs, w, chain):
                eta = qam_to_qls(rs, w, adm.A, chain)
                if not qls_validate(rs, lam, eta) or qls_to_qam(rs, lam, eta, w).A != adm.A:
                    return False, f"round trip fails at A={adm.A}"
                st = stats(rs, w, adm, chain)
                iota, xi, deg = qls_initial_data(rs, lam, eta, w)
                if (st.wt, st.end, st.down, -st.height) != (qls_wt(rs, lam, eta), iota, xi, deg):
                    return False, f"statistics differ at A={adm.A}"
                images.append(eta)
            ok = len(images) == len(set(images)) == len(qls) and set(images) == set(qls)
            return ok, f"{len(images)} paths"

    elif rs.dominant(_neg(lam)):
        mu = _neg(lam)
        chain = lex_chain_antidominant(rs, lam)
        qls = enumerate_qls(rs, mu)
        W = rs.weyl_group()

        def item(w):
            pairs = []
            for adm in enumerate_admissible(rs, w, chain):
                eta, v = qam_to_qls_anti(rs, w, adm.A, chain)
                back = qls_to_qam_anti(rs, lam, eta, v)
                if not qls_validate(rs, mu, eta) or back.A != adm.A or back.w != w:
                    return False, f"round trip fails at A={adm.A}"
                st = stats(rs, w, adm, chain)
                kappa, zeta = qls_final_data(rs, mu, eta, v)
                if (kappa, st.end, st.down, st.height, st.wt) != (w, v, zeta, qls_deg(rs, mu, eta), _neg(qls_wt(rs, mu, eta))):
                    return False, f"statistics differ at A={adm.A}"
                pairs.append((eta, v))
            expected = {(eta, v) for eta in qls for v in W if qls_final_data(rs, mu, eta, v)[0] == w}
            return set(pairs) == expected and len(pairs) == len(expected), f"{len(pairs)} pairs"

    else:
        rep.add("lambda", False, "lambda must be dominant or anti-dominant")
        return rep
    for w in rs.weyl_group():
        _guard(rep, f"w={w.label()}", lambda w=w: item(w))
    return rep


# -- type A quantum K-theory ----------------------------------------------------------------


def _qk_range(n: int, ks, n_cap: int) -> list:
    if not 2 <= n <= n_cap:
        raise ValueError(f"exhaustive suites need 2 <= n <= {n_cap}, got {n}")
    ks = list(ks) if ks else list(range(1, n))
    if any(not 1 <= k < n for k in ks):
        raise ValueError(f"k must lie in 1..{n - 1}")
    return ks


def suite_qk_coeff(n: int, ks: Sequence[int] | None = None, n_cap: int = 8, **_) -> Report:
    """Every Chevalley coefficient is 0 or +-1, with one nonzero term per (v, coset)."""
    ks = _qk_range(n, ks, n_cap)
    rep = Report("qk-coeff", {"n": n, "k": ks})
    perms = list(itertools.permutations(range(1, n + 1)))
    for k in ks:
        table = {w: qk_chevalley(n, k, w) for w in perms}
        for sigma in coset_reps(n, k):
            coset = [w for w in perms if set(w[:k]) == set(sigma[:k])]

            def item(sigma=sigma, coset=coset, k=k):
                for v in perms:
                    terms = [(w, d, c) for w in coset for (u, d), c in table[w].items() if u == v]
                    if any(c not in (1, -1) for *_, c in terms):
                        return False, f"coefficient outside 0,+-1 at v={v}"
                    if v in coset:
                        if terms:
                            return False, f"nonzero term inside the coset at v={v}"
                        continue
                    if len(terms) != 1:
                        return False, f"{len(terms)} nonzero terms at v={v}"
                    w, d, c = terms[0]
                    if find_coeff(n, k, v, sigma) != (w, d, c) or coset_reorder(n, k, v, sigma) != w:
                        return False, f"reordering disagrees at v={v}"
                    if degree_formula(v, w, k) != d:
                        return False, f"degree formula disagrees at v={v}"
                return True, ""

            _guard(rep, f"k={k} sigma={''.join(map(str, sigma))}", item)
    return rep


def expansion_degree_extrema(n: int, k: int, w) -> tuple | None:
    ds = [d for (_, d) in qk_chevalley(n, k, w) if any(d)]
    if not ds:
        return None
    lo = tuple(min(d[i] for d in ds) for i in range(n - 1))
    hi = tuple(max(d[i] for d in ds) for i in range(n - 1))
    return lo, hi


def suite_qk_degrees(n: int, ks: Sequence[int] | None = None, n_cap: int = 8, **_) -> Report:
    """Degree extrema from the recursion match the full expansion; the global maximum formula."""
    ks = _qk_range(n, ks, n_cap)
    rep = Report("qk-degrees", {"n": n, "k": ks})
    perms = list(itertools.permutations(range(1, n + 1)))
    for k in ks:

        def item(k=k):
            glob = [0] * (n - 1)
            for w in perms:
                got = min_max_degree(w, k)
                if got != expansion_degree_extrema(n, k, w):
                    return False, f"extrema differ at w={w}"
                if got:
                    glob = [max(a, b) for a, b in zip(glob, got[1])]
            expected = global_max_degree(n, k)
            ok = tuple(glob) == expected and sum(expected) == k * (n - k)
            return ok, f"max degree {tuple(glob)}"

        _guard(rep, f"k={k}", item)
    return rep


SUITES = {
    "shortest-weight": suite_shortest_weight,
    "shellability": suite_shellability,
    "operator-relations": suite_operator_relations,
    "yang-baxter": suite_yang_baxter,
    "chain-independence": suite_chain_independence,
    "bijection": suite_bijection,
    "qk-coeff": suite_qk_coeff,
    "qk-degrees": suite_qk_degrees,
}


def run_suite(name: str, **params) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    t0 = time.perf_counter()
    rep = SUITES[name](**params)
    rep.seconds = time.perf_counter() - t0
    return rep
