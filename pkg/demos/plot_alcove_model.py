"""
Admissible subsets of a lambda-chain
====================================

A lambda-chain lists the hyperplanes crossed by an alcove walk from the
fundamental alcove to its translate by -lambda.  Folding the walk at a subset
of positions gives a path in the quantum Bruhat graph; the subsets that work
are the admissible ones, and each carries a few statistics.
"""

from qalcove.alcove import concat_chain, find_yb_moves, apply_yb, lex_chain
from qalcove.model import enumerate_admissible, qam_to_qls, stats
from qalcove.rootsys import build_root_system

a2 = build_root_system("A", 2)
lam = (1, -1)  # varpi_1 - varpi_2, neither dominant nor anti-dominant

chain = concat_chain(a2, lam)
print("raw concatenation:", chain.entries, "reduced:", chain.reduced)
chain = chain.replace((((1, 0), 0), ((0, -1), 1)))
print("reduced chain:   ", chain.entries)

w = a2.s(1)
print(f"{'A':>8} {'n':>2} {'height':>6} {'wt':>9} {'end':>10} {'down':>7}")
for adm in enumerate_admissible(a2, w, chain):
    s = stats(a2, w, adm, chain)
    print(f"{str(adm.A):>8} {s.n:>2} {s.height:>6} {str(s.wt):>9} {str(s.end.one_line()):>10} {str(s.down):>7}")

# A Yang-Baxter move swaps a block of the chain for its reverse
rho = lex_chain(a2, (1, 1))
u, t = find_yb_moves(rho)[0]
print("lex chain for rho:", rho.roots)
print("after a YB move:  ", apply_yb(rho, u, t).roots)

# For dominant lambda, admissible subsets are quantum LS paths in disguise
for adm in enumerate_admissible(a2, a2.identity, lex_chain(a2, (1, 0))):
    eta = qam_to_qls(a2, a2.identity, adm.A, lex_chain(a2, (1, 0)))
    print(adm.A, "->", [str(b) for b in eta.b], [x.one_line() for x in eta.sigma])
