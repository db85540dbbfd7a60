"""
Chevalley formula in the semi-infinite K-group
==============================================

The product [O(-w0 lambda)] . [O(w t_xi)] is a sum over admissible subsets,
each dressed with a q-power and a geometric series in the translations.
Series are cut at a total height; ``truncated`` says whether anything was dropped.
"""

from qalcove.alcove import concat_chain, lex_chain_antidominant
from qalcove.ktheory import chevalley, chevalley_via_operators
from qalcove.rootsys import build_root_system

a2 = build_root_system("A", 2)
lam, w = (1, -1), a2.s(1)
chain = concat_chain(a2, lam)

x = chevalley(a2, lam, w, (0, 0), chain, cutoff=2)
print("truncated:", x.truncated)
for (u, xi, qexp, mu), c in sorted(x.terms.items(), key=lambda kv: (sum(kv[0][1]), kv[0][0].one_line())):
    print(f"{c:+d} q^{qexp} e^{mu} [{''.join(map(str, u.one_line()))} t_{xi}]")

# The same expansion from the quantum Bruhat operators
assert chevalley_via_operators(a2, lam, w, (0, 0), chain, 2) == x

# Anti-dominant weights give finite sums with signs (-1)^|A|
b2 = build_root_system("B", 2)
anti = (-1, 0)
y = chevalley(b2, anti, b2.identity, (0, 0), lex_chain_antidominant(b2, anti), cutoff=5)
print(len(y.terms), "terms, truncated:", y.truncated)
print(y.dumps()[:300])
