import itertools
from fractions import Fraction

import pytest

from qalcove.alcove import (
    concat_chain,
    concat_parts,
    lex_chain,
    lex_chain_antidominant,
)
from qalcove.model import (
    QLSPath,
    admissible_path,
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
from qalcove.qbg import deodhar_path, lambda_reflection_order
from qalcove.rootsys import build_root_system, min_coset_rep

A2 = build_root_system("A", 2)
LAM = (1, -1)


def worked_chain():
    ch = concat_chain(A2, LAM)
    return ch.replace((((1, 0), 0), ((0, -1), 1)))


def length_edge(rs, u, beta):
    """QB(W) edge u -> u s_beta straight from lengths, or None."""
    b = rs.abs_root(beta)
    t = u.times_reflection(b)
    if t.length == u.length + 1:
        return t
    if t.length == u.length + 1 - 2 * rs.pair(rs.rho, b):
        return t
    return None


def brute_admissible(rs, w, chain):
    out = []
    m = len(chain)
    for r in range(m + 1):
        for A in itertools.combinations(range(1, m + 1), r):
            u = w
            for j in A:
                u = length_edge(rs, u, chain.roots[j - 1])
                if u is None:
                    break
            if u is not None:
                out.append(A)
    return sorted(out, key=lambda A: sum(1 << (j - 1) for j in A))


def test_worked_example_subsets():
    ch = worked_chain()
    adm = enumerate_admissible(A2, A2.s(1), ch)
    assert [a.A for a in adm] == [(), (1,), (2,), (1, 2)]


def test_worked_example_rows():
    ch = worked_chain()
    w = A2.s(1)
    s1lam = w.act(LAM)
    rows = {a.A: stats(A2, w, a, ch) for a in enumerate_admissible(A2, w, ch)}
    e, s2 = A2.identity, A2.s(2)
    s1s2 = A2.from_word([1, 2])
    assert (rows[()].n, rows[()].height, rows[()].wt, rows[()].end, rows[()].down) == (0, 0, s1lam, w, (0, 0))
    assert (rows[(1,)].n, rows[(1,)].height, rows[(1,)].wt, rows[(1,)].end, rows[(1,)].down) == (0, 1, LAM, e, (1, 0))
    assert (rows[(2,)].n, rows[(2,)].height, rows[(2,)].wt, rows[(2,)].end, rows[(2,)].down) == (1, 0, s1lam, s1s2, (0, 0))
    assert (rows[(1, 2)].n, rows[(1, 2)].height, rows[(1, 2)].wt, rows[(1, 2)].end, rows[(1, 2)].down) == (
        1,
        1,
        LAM,
        s2,
        (1, 0),
    )


def test_empty_subset_stats():
    for kind in "ABC":
        rs = build_root_system(kind, 2)
        ch = lex_chain(rs, (1, 1))
        for w in rs.weyl_group():
            st = stats(rs, w, (), ch)
            assert (st.wt, st.end, st.down, st.height, st.n) == (w.act((1, 1)), w, (0, 0), 0, 0)


@pytest.mark.parametrize("kind", ["A", "B", "C"])
def test_enumeration_matches_subset_scan(kind):
    rs = build_root_system(kind, 2)
    for lam in [(1, 0), (1, 1), (0, -1), (1, -1), (2, -1)]:
        ch = concat_chain(rs, lam)
        for w in rs.weyl_group():
            assert [a.A for a in enumerate_admissible(rs, w, ch)] == brute_admissible(rs, w, ch)


def test_empty_chain():
    ch = lex_chain(A2, (1, 0)).replace(())
    assert [a.A for a in enumerate_admissible(A2, A2.s(1), ch)] == [()]


def test_not_admissible_raises():
    ch = lex_chain(A2, (1, 1))
    good = set(brute_admissible(A2, A2.identity, ch))
    bad = next(A for r in range(5) for A in itertools.combinations(range(1, 5), r) if A not in good)
    with pytest.raises(ValueError):
        admissible_path(A2, A2.identity, bad, ch)


def test_concatenation_splits():
    for kind in "ABC":
        rs = build_root_system(kind, 2)
        for lam in [(1, -1), (2, -1), (-1, 2), (1, -2)]:
            plus_ch, minus_ch, whole = concat_parts(rs, lam)
            minus = tuple(min(x, 0) for x in lam)
            cut = len(plus_ch)
            for w in rs.weyl_group():
                for adm in enumerate_admissible(rs, w, whole):
                    A1 = tuple(j for j in adm.A if j <= cut)
                    B = tuple(j - cut for j in adm.A if j > cut)
                    s1 = stats(rs, w, A1, plus_ch)
                    s2 = stats(rs, s1.end, B, minus_ch)
                    s = stats(rs, w, adm, whole)
                    assert s.n == len(B)
                    assert s.end == s2.end
                    assert s.down == tuple(a + b for a, b in zip(s1.down, s2.down))
                    assert s.height == s1.height + s2.height + rs.coroot_pair(minus, s1.down)
                    assert s.wt == tuple(a + b for a, b in zip(s1.wt, s2.wt))


def test_dropping_top_hyperplanes_keeps_height():
    for kind in "AB":
        rs = build_root_system(kind, 2)
        lam = (-1, -1)
        ch = lex_chain_antidominant(rs, lam)
        for w in rs.weyl_group():
            for adm in enumerate_admissible(rs, w, ch):
                ones = [j for j in adm.A if ch.heights[j - 1] == rs.pair(lam, ch.roots[j - 1])]
                if not ones:
                    continue
                rest = tuple(j for j in adm.A if j not in ones)
                try:
                    other = stats(rs, w, rest, ch)
                except ValueError:
                    continue
                assert other.height == stats(rs, w, adm, ch).height


def test_qls_basic():
    lam = (1, 1)
    for s in A2.weyl_group():
        eta = QLSPath((Fraction(0), Fraction(1)), (s,))
        assert qls_validate(A2, lam, eta)
        assert qls_deg(A2, lam, eta) == 0
        assert qls_initial_data(A2, lam, eta, s) == (s, (0, 0), 0)
        assert qls_final_data(A2, lam, eta, s) == (s, (0, 0))


def test_qls_rejects_bad_level():
    lam = (1, 1)
    e, w0 = A2.identity, A2.longest_element()
    # b = 1/3 makes b<lam, beta^vee> non-integral for every root
    eta = QLSPath((Fraction(0), Fraction(1, 3), Fraction(1)), (w0, e))
    assert not qls_validate(A2, lam, eta)
    with pytest.raises(ValueError):
        QLSPath((Fraction(0), Fraction(1, 2)), (e,))


def test_qls_enumeration_counts_match_admissible():
    for kind in "ABC":
        rs = build_root_system(kind, 2)
        for lam in [(1, 0), (0, 1), (1, 1), (2, 0)]:
            q = enumerate_qls(rs, lam)
            ch = lex_chain(rs, lam)
            for w in rs.weyl_group():
                assert len(enumerate_admissible(rs, w, ch)) == len(q)


def test_empty_subset_maps_to_trivial_path():
    lam = (1, 0)
    ch = lex_chain(A2, lam)
    J = A2.stabilizer(lam)
    for w in A2.weyl_group():
        eta = qam_to_qls(A2, w, (), ch)
        assert eta.b == (0, 1) and eta.sigma == (min_coset_rep(A2, w, J),)
        anti = lex_chain_antidominant(A2, (-1, 0))
        eta2, v = qam_to_qls_anti(A2, w, (), anti)
        assert v == w and eta2.t == 1


@pytest.mark.parametrize("lam", [(1, 1), (1, 0), (0, 1), (2, 1)])
def test_dominant_bijection_A2(lam):
    ch = lex_chain(A2, lam)
    for w in A2.weyl_group():
        images = set()
        for adm in enumerate_admissible(A2, w, ch):
            eta = qam_to_qls(A2, w, adm.A, ch)
            assert qls_validate(A2, lam, eta)
            assert qls_to_qam(A2, lam, eta, w).A == adm.A
            st = stats(A2, w, adm, ch)
            iota, xi, deg = qls_initial_data(A2, lam, eta, w)
            assert (st.wt, st.end, st.down, -st.height) == (qls_wt(A2, lam, eta), iota, xi, deg)
            images.add(eta)
        assert images == set(enumerate_qls(A2, lam))


@pytest.mark.parametrize("lam", [(-1, 0), (-1, -1), (0, -2)])
def test_antidominant_bijection_A2(lam):
    mu = tuple(-x for x in lam)
    ch = lex_chain_antidominant(A2, lam)
    for w in A2.weyl_group():
        for adm in enumerate_admissible(A2, w, ch):
            eta, v = qam_to_qls_anti(A2, w, adm.A, ch)
            back = qls_to_qam_anti(A2, lam, eta, v)
            assert back.A == adm.A and back.w == w
            st = stats(A2, w, adm, ch)
            assert st.height == qls_deg(A2, mu, eta)
            assert st.wt == tuple(-x for x in qls_wt(A2, mu, eta))
            assert qls_final_data(A2, mu, eta, v) == (w, st.down)


def test_top_order_does_not_change_deodhar_paths():
    for kind, rank in [("A", 2), ("B", 2), ("A", 3)]:
        rs = build_root_system(kind, rank)
        for lam in [rs.fundamental_weights[0], rs.fundamental_weights[-1]]:
            J = rs.stabilizer(lam)
            reps = rs.min_coset_reps(J)
            other = lambda_reflection_order(rs, lam, "lex-max")
            for sigma, tau in itertools.product(reps, repeat=2):
                for wJ in rs.parabolic_subgroup(J):
                    for direction in ("right", "left"):
                        a = deodhar_path(rs, sigma, tau, wJ, lam, direction)
                        b = deodhar_path(rs, sigma, tau, wJ, lam, direction, other)
                        assert a.labels == b.labels and a.start == b.start


def test_wrong_chain_rejected():
    with pytest.raises(ValueError):
        qam_to_qls(A2, A2.identity, (), concat_chain(A2, (1, 1)).replace(lex_chain(A2, (1, 1)).entries[::-1]))
