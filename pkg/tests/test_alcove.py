import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qalcove.alcove import (
    AffineRefl,
    affine_apply,
    alcove_walk,
    apply_deletion,
    apply_yb,
    central_point,
    chain_procedures,
    concat_chain,
    concat_parts,
    delete_backtracks,
    find_deletions,
    find_pair_insertions,
    find_yb_moves,
    insert_pair,
    is_lambda_chain,
    lex_chain,
    lex_chain_antidominant,
    typeA_omega_chain,
    typeA_pair,
    typeA_root,
)
from qalcove.rootsys import build_root_system

SMALL = [("A", 2), ("B", 2), ("C", 2), ("A", 3), ("B", 3), ("C", 3)]


def affine_endpoint(chain):
    """Independent walk oracle: reflect the centre in each hyperplane of the chain in turn.

    Each step crosses a fixed hyperplane, so the last alcove is r_m ... r_1 (A_0),
    which for a lambda-chain must be A_0 - lambda.
    """
    rs = chain.rs
    point = central_point(rs)
    for i in range(len(chain)):
        point = affine_apply(rs, chain.affine_reflection(i), point)
    return point


def test_affine_examples():
    rs = build_root_system("A", 2)
    mu = (Fraction(1, 3), Fraction(-2, 3))
    for beta in rs.positive_roots:
        assert affine_apply(rs, AffineRefl(beta, 0), mu) == rs.reflect_weight(beta, mu)
    lam = (1, -1)
    neg = tuple(-x for x in lam)
    assert affine_apply(rs, AffineRefl((0, -1), -1), neg) == neg


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from(SMALL),
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=3, max_size=3),
    st.integers(-3, 3),
    st.data(),
)
def test_affine_reflection_is_involution(t, coords, level, data):
    rs = build_root_system(*t)
    beta = data.draw(st.sampled_from(rs.roots))
    mu = tuple(coords[: rs.rank])
    r = AffineRefl(beta, level)
    assert affine_apply(rs, r, affine_apply(rs, r, mu)) == mu


def test_lex_chain_examples():
    a1 = build_root_system("A", 1)
    assert lex_chain(a1, (1,)).entries == (((1,), 0),)
    a2 = build_root_system("A", 2)
    assert set(lex_chain(a2, (1, 0)).entries) == {((1, 0), 0), ((1, 1), 0)}
    rho = lex_chain(a2, (1, 1))
    assert len(rho) == 4 and sorted(rho.entries).count(((1, 1), 0)) == 1 and ((1, 1), 1) in rho.entries


def test_antidominant_examples():
    a1 = build_root_system("A", 1)
    assert lex_chain_antidominant(a1, (-1,)).entries == (((-1,), 1),)
    a2 = build_root_system("A", 2)
    anti = lex_chain_antidominant(a2, (-1, 0))
    base = lex_chain(a2, (1, 0))
    assert anti.roots == tuple(tuple(-c for c in b) for b in reversed(base.roots))
    assert is_lambda_chain(lex_chain_antidominant(a2, (-1, -1)))


def relative_heights(chain):
    rs = chain.rs
    return [Fraction(l, rs.pair(chain.weight, b)) for b, l in chain.entries]


@pytest.mark.parametrize("kind,rank", SMALL)
def test_all_constructions_are_walks(kind, rank):
    rs = build_root_system(kind, rank)
    for lam in itertools.product(range(-2, 3), repeat=rank):
        if not any(lam):
            continue
        chains = [concat_chain(rs, lam), delete_backtracks(concat_chain(rs, lam))]
        if rs.dominant(lam):
            chains.append(lex_chain(rs, lam))
            rel = relative_heights(chains[-1])
            assert rel == sorted(rel)
        if all(x <= 0 for x in lam):
            chains.append(lex_chain_antidominant(rs, lam))
        for ch in chains:
            assert is_lambda_chain(ch)
            assert affine_endpoint(ch) == tuple(a - b for a, b in zip(central_point(rs), lam))
            if ch.reduced:
                assert ch.heights_in_range()
        lex_like = chains[2:]
        for ch in lex_like:
            assert ch.reduced and ch.heights_in_range()


def test_concat_examples():
    rs = build_root_system("A", 2)
    assert concat_chain(rs, (2, 1)).entries == lex_chain(rs, (2, 1)).entries
    g0 = concat_chain(rs, (1, -1))
    assert len(g0) == 4
    assert sum(rs.is_positive(b) for b in g0.roots) == 2
    for a in rs.simple_roots:
        assert not (a in g0.roots and tuple(-c for c in a) in g0.roots)
    plus, minus, whole = concat_parts(rs, (1, -1))
    assert whole.entries[: len(plus)] == plus.entries
    # one deletion recovers the reduced chain (alpha_1, -alpha_2)
    assert delete_backtracks(g0).roots == ((1, 0), (0, -1))


def test_rejects_bad_chains():
    rs = build_root_system("A", 2)
    ch = lex_chain(rs, (1, 1))
    assert not is_lambda_chain(ch.replace(ch.entries[1:]))
    assert not is_lambda_chain(ch.replace(ch.entries[::-1]))
    assert not is_lambda_chain(ch.replace(((ch.roots[0], 5),) + ch.entries[1:]))


def test_typeA_chains():
    assert typeA_root(4, 1, 3) == (1, 1, 0)
    assert typeA_pair((0, 1, 1)) == (2, 4)
    rows = typeA_omega_chain(3, 1)
    assert [typeA_pair(b) for b in rows.roots] == [(1, 2), (1, 3)]
    cols = typeA_omega_chain(4, 2, "columns")
    assert [typeA_pair(b) for b in cols.roots] == [(2, 3), (1, 3), (2, 4), (1, 4)]
    neg = typeA_omega_chain(4, 2, "rows", -1)
    pos = typeA_omega_chain(4, 2, "rows")
    assert neg.roots == tuple(tuple(-c for c in b) for b in reversed(pos.roots))
    with pytest.raises(ValueError):
        typeA_omega_chain(4, 4)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_typeA_chains_are_walks(n):
    for k in range(1, n):
        rs = build_root_system("A", n - 1)
        lam = rs.fundamental_weights[k - 1]
        lex_planes = {lex_chain(rs, lam).hyperplane(i) for i in range(len(lex_chain(rs, lam)))}
        for variant in ("rows", "columns"):
            for sign in (1, -1):
                ch = typeA_omega_chain(n, k, variant, sign)
                assert is_lambda_chain(ch) and ch.reduced and ch.heights_in_range()
            ch = typeA_omega_chain(n, k, variant)
            assert {ch.hyperplane(i) for i in range(len(ch))} == lex_planes


def test_yang_baxter_move_is_involution():
    for kind in "ABC":
        rs = build_root_system(kind, 2)
        for lam in [(1, 1), (2, 1), (1, 2), (-1, -1)]:
            ch = lex_chain(rs, lam) if lam[0] > 0 else lex_chain_antidominant(rs, lam)
            for u, t in find_yb_moves(ch):
                moved = apply_yb(ch, u, t)
                assert is_lambda_chain(moved) and moved.entries != ch.entries
                assert apply_yb(moved, u, t).entries == ch.entries
                assert chain_procedures(ch, "YB", u, t).entries == moved.entries


def test_yb_found_on_rho():
    rs = build_root_system("A", 2)
    assert (0, 2) in find_yb_moves(lex_chain(rs, (1, 1)))
    assert (1, 3) in find_yb_moves(lex_chain_antidominant(rs, (-1, -1)))
    with pytest.raises(ValueError):
        apply_yb(lex_chain(rs, (1, 0)), 0, 1)


def test_deletion_and_insertion():
    rs = build_root_system("A", 2)
    g0 = concat_chain(rs, (1, -1))
    assert find_deletions(g0) == [1]
    reduced = apply_deletion(g0, 1)
    assert reduced.entries == (((1, 0), 0), ((0, -1), 1))
    assert chain_procedures(g0, "D", 1).entries == reduced.entries
    with pytest.raises(ValueError):
        apply_deletion(g0, 0)
    ch = lex_chain(rs, (1, 0))
    ins = find_pair_insertions(ch)
    assert ins
    for p, gamma, value in ins:
        bigger = insert_pair(ch, p, gamma, value)
        assert is_lambda_chain(bigger) and len(bigger) == len(ch) + 2
        assert apply_deletion(bigger, p).entries == ch.entries


def test_walk_starts_at_centre():
    rs = build_root_system("B", 2)
    ch = lex_chain(rs, (1, 1))
    walk = alcove_walk(ch)
    assert walk[0] == central_point(rs) and len(walk) == len(ch) + 1
