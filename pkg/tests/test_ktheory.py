import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qalcove.alcove import apply_yb, concat_chain, find_yb_moves, lex_chain, lex_chain_antidominant
from qalcove.ktheory import (
    GroupAlgElt,
    KElt,
    chevalley,
    chevalley_antidominant,
    chevalley_dominant,
    chevalley_via_operators,
    chevalley_via_qls,
    dihedral_roots,
    levels_compatible,
    op_Q,
    op_Q1,
    op_R_chain,
    op_t,
    op_X,
    par_tuples,
    q1_specialize,
    yang_baxter_check,
)
from qalcove.rootsys import build_root_system

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)
B2 = build_root_system("B", 2)


def worked_series(xi, cutoff):
    """The four-term family of the worked example, written out for m = 0, 1, ...

    Keys are (w, xi', q exponent, weight) as in KElt.terms.
    """
    lam, s1lam = (1, -1), (-1, 0)
    s1, e, s2 = A2.s(1), A2.identity, A2.s(2)
    s1s2 = A2.from_word([1, 2])
    base = -A2.coroot_pair(lam, xi)
    out = {}
    for m in range(cutoff + 1):
        z0 = (xi[0] + m, xi[1])
        z1 = (xi[0] + m + 1, xi[1])
        for key, c in [
            ((s1, z0, base - m, s1lam), 1),
            ((e, z1, base - m - 1, lam), 1),
            ((s1s2, z0, base - m, s1lam), -1),
            ((s2, z1, base - m - 1, lam), -1),
        ]:
            if sum(key[1]) <= cutoff:
                out[key] = out.get(key, 0) + c
    return out


@pytest.mark.parametrize("cutoff", [0, 1, 2, 3])
def test_worked_example_series(cutoff):
    chain = concat_chain(A2, (1, -1)).replace((((1, 0), 0), ((0, -1), 1)))
    got = chevalley(A2, (1, -1), A2.s(1), (0, 0), chain, cutoff)
    assert got.terms == worked_series((0, 0), cutoff)
    assert got.truncated
    assert chevalley(A2, (1, -1), A2.s(1), (0, 0), concat_chain(A2, (1, -1)), cutoff) == got


def test_worked_example_shifted_xi():
    chain = concat_chain(A2, (1, -1)).replace((((1, 0), 0), ((0, -1), 1)))
    got = chevalley(A2, (1, -1), A2.s(1), (1, 1), chain, 4)
    assert got.terms == worked_series((1, 1), 4)


def test_A1_antidominant_two_terms():
    chain = lex_chain_antidominant(A1, (-1,))
    e, s = A1.identity, A1.s(1)
    got = chevalley(A1, (-1,), e, (0,), chain, 5)
    assert got.terms == {(e, (0,), 0, (-1,)): 1, (s, (0,), 0, (-1,)): -1}
    got = chevalley(A1, (-1,), s, (0,), chain, 5)
    assert got.terms == {(s, (0,), 0, (1,)): 1, (e, (1,), 0, (1,)): -1}
    assert not got.truncated


def test_dominant_identity_term():
    for kind in "ABC":
        rs = build_root_system(kind, 2)
        lam = (1, 1)
        got = chevalley_dominant(rs, lam, rs.identity, (0, 0), 0)
        assert got.terms.get((rs.identity, (0, 0), 0, lam)) == 1


def test_A1_dominant_has_positive_signs():
    got = chevalley_dominant(A1, (1,), A1.identity, (0,), 3)
    assert all(c > 0 for c in got.terms.values())
    assert got.truncated


def test_antidominant_wrapper_and_signs():
    lam = (-1, 0)
    ch = lex_chain_antidominant(A2, lam)
    for w in A2.weyl_group():
        a = chevalley_antidominant(A2, lam, w, (0, 0), 3)
        assert a == chevalley(A2, lam, w, (0, 0), ch, 3)
        assert not a.truncated
        assert a == chevalley_antidominant(A2, lam, w, (0, 0), 10)
    with pytest.raises(ValueError):
        chevalley_antidominant(A2, (1, 0), A2.identity, (0, 0), 1)
    with pytest.raises(ValueError):
        chevalley_dominant(A2, (1, -1), A2.identity, (0, 0), 1)


WEIGHTS = [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1), (1, -1), (-1, 1), (2, -1)]


@pytest.mark.parametrize("rs", [A2, B2], ids=["A2", "B2"])
def test_operator_formula_matches_model(rs):
    for lam in WEIGHTS:
        ch = concat_chain(rs, lam)
        for w in rs.weyl_group():
            for xi in [(0, 0), (1, 0)]:
                a = chevalley(rs, lam, w, xi, ch, 2)
                assert a == chevalley_via_operators(rs, lam, w, xi, ch, 2)
                assert a.denom == 1


@pytest.mark.parametrize("rs", [A2, B2], ids=["A2", "B2"])
def test_qls_formula_matches_model(rs):
    for lam in [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)]:
        ch = concat_chain(rs, lam)
        for w in rs.weyl_group():
            assert chevalley(rs, lam, w, (0, 0), ch, 2) == chevalley_via_qls(rs, lam, w, (0, 0), 2)


def test_cutoff_only_drops_flagged_tail():
    for lam in [(1, 0), (1, 1), (2, -1)]:
        ch = concat_chain(A2, lam)
        for w in A2.weyl_group():
            small = chevalley(A2, lam, w, (0, 0), ch, 0)
            big = chevalley(A2, lam, w, (0, 0), ch, 1)
            assert small.truncated and big.truncated
            assert big.truncate(0) == small
            assert all(sum(z) <= 1 for (_, z, _, _) in big.terms)


def test_yang_baxter_chain_gives_same_expansion():
    for rs in (A2, B2):
        for lam in [(1, 1), (2, 1), (-1, -1)]:
            ch = lex_chain(rs, lam) if lam[0] > 0 else lex_chain_antidominant(rs, lam)
            for u, t in find_yb_moves(ch):
                other = apply_yb(ch, u, t)
                for w in rs.weyl_group():
                    assert chevalley(rs, lam, w, (0, 0), ch, 2) == chevalley(rs, lam, w, (0, 0), other, 2)


def test_par_tuples():
    assert [p.size for p in par_tuples((1, 0), 2)] == [0, 1, 2]
    assert par_tuples((-1, 0), 3)[0].size == 0 and len(par_tuples((-1, 0), 3)) == 1
    tuples = par_tuples((2, 0), 3)
    # at most two parts, each at most 3
    assert len(tuples) == 10
    assert all(len(p.parts[0]) <= 2 and not p.parts[1] for p in tuples)


# -- operators -----------------------------------------------------------------------


def test_Q_on_A1():
    e, s = A1.identity, A1.s(1)
    assert op_Q(A1, (1,), 0, KElt.basis(A1, e, (0,))) == KElt.basis(A1, s, (0,))
    for k in (-2, 0, 3):
        got = op_Q(A1, (1,), k, KElt.basis(A1, s, (0,)))
        assert got.terms == {(e, (1,), -k, (0,)): 1}


def test_Q_square_vanishes_for_theta():
    theta = A2.highest_root
    for u in A2.weyl_group():
        x = KElt.basis(A2, u, (0, 0))
        for b1, b2 in itertools.product([theta, (-1, -1)], repeat=2):
            for k, l in [(0, 0), (1, -2)]:
                assert len(op_Q(A2, b2, l, op_Q(A2, b1, k, x))) == 0


def test_X_zero_is_identity():
    for u in B2.weyl_group():
        x = KElt.basis(B2, u, (1, 0))
        assert op_X(B2, (0, 0), x) == x


def test_A1_factorization():
    for u in A1.weyl_group():
        x = KElt.basis(A1, u, (0,))
        y = op_X(A1, (-2,), x) + op_Q1(A1, (-1,), x)
        z = op_X(A1, (2,), y) + op_Q1(A1, (1,), y)
        assert z == x - op_t(A1, 1, x)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2"]), st.data())
def test_Q_X_commutation(name, data):
    rs = A2 if name == "A2" else B2
    beta = data.draw(st.sampled_from(rs.roots))
    k = data.draw(st.integers(-2, 2))
    nu = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=2, max_size=2)))
    u = data.draw(st.sampled_from(rs.weyl_group()))
    xi = tuple(data.draw(st.lists(st.integers(0, 2), min_size=2, max_size=2)))
    x = KElt.basis(rs, u, xi)
    assert op_Q(rs, beta, k, op_X(rs, nu, x)) == op_X(rs, rs.reflect_weight(beta, nu), op_Q(rs, beta, k, x))


def test_empty_operator_chain():
    x = KElt.basis(A2, A2.s(1), (1, 0))
    assert op_R_chain(A2, [], [], x) == x
    with pytest.raises(ValueError):
        op_R_chain(A2, [(1, 0)], [], x)


def test_yang_baxter_examples():
    assert yang_baxter_check(A2, (1, 0), (0, 1))
    a3 = build_root_system("A", 3)
    assert dihedral_roots(a3, (1, 0, 0), (0, 0, 1)) == [(1, 0, 0), (0, 0, 1)]
    assert yang_baxter_check(a3, (1, 0, 0), (0, 0, 1), max_height=1)
    assert yang_baxter_check(B2, (1, 0), (0, 1))
    assert len(dihedral_roots(B2, (1, 0), (0, 1))) == 4


def test_yang_baxter_generic_levels():
    rng = random.Random(7)
    for alpha, beta in [((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (-1, 0))]:
        seq = dihedral_roots(A2, alpha, beta)
        for _ in range(3):
            mu = (rng.randint(-3, 3), rng.randint(-3, 3))
            levels = [A2.pair(mu, g) for g in seq]
            assert levels_compatible(A2, seq, levels)
            assert yang_baxter_check(A2, alpha, beta, levels)


def test_incompatible_levels():
    seq = dihedral_roots(A2, (1, 0), (0, 1))
    assert not levels_compatible(A2, seq, [0, 0, 1])
    with pytest.raises(ValueError):
        yang_baxter_check(A2, (1, 0), (0, 1), [0, 0, 1])
    with pytest.raises(ValueError):
        dihedral_roots(A2, (1, 0), (1, 1))


def test_generic_q_specializes():
    seq = dihedral_roots(A2, (1, 0), (0, 1))
    levels = [1, 2, 1]
    for u in A2.weyl_group():
        x = KElt.basis(A2, u, (0, 0))
        generic = op_R_chain(A2, seq, levels, x)
        flat = op_R_chain(A2, seq, [0, 0, 0], x)
        assert q1_specialize(generic) == q1_specialize(flat)


def test_group_algebra_arithmetic():
    a = GroupAlgElt({(1, 0): 2, (0, 0): -1})
    b = GroupAlgElt({(0, 1): 1})
    assert (a * b) == GroupAlgElt({(1, 1): 2, (0, 1): -1})
    assert (a + a) == GroupAlgElt({(1, 0): 4, (0, 0): -2})
    assert a.augmentation() == 1
    half = GroupAlgElt({(3, 0): 1}, denom=3)
    assert half == GroupAlgElt({(1, 0): 1})


def test_json_output_is_stable():
    chain = concat_chain(A2, (1, -1))
    x = chevalley(A2, (1, -1), A2.s(1), (0, 0), chain, 2)
    assert x.dumps() == chevalley(A2, (1, -1), A2.s(1), (0, 0), chain, 2).dumps()
    js = x.to_json()
    assert js["truncated"] and js["denominator"] == 1 and js["entries"][0]["w"] == "213"


def test_one_q_power_per_basis_element_in_yang_baxter_products():
    # with compatible levels, each [v t_zeta] in R_{Xi,k}[u t_xi] carries a single power of q
    rng = random.Random(1)
    for rs in (A2, B2):
        for alpha, beta in itertools.permutations(rs.roots, 2):
            try:
                seq = dihedral_roots(rs, alpha, beta)
            except ValueError:
                continue
            mu = (rng.randint(-3, 3), rng.randint(-3, 3))
            levels = [rs.pair(mu, g) for g in seq]
            for u in rs.weyl_group():
                powers = {}
                for v, z, a, _ in op_R_chain(rs, seq, levels, KElt.basis(rs, u, (1, 0))).terms:
                    powers.setdefault((v, z), set()).add(a)
                assert all(len(p) == 1 for p in powers.values())
