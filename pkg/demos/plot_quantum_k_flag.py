"""
Quantum K-theory of the type A flag variety
===========================================

[O^{s_k}] . [O^w] expands with coefficients 0 or +-1.  Inside each coset of
the maximal parabolic subgroup for k there is exactly one w giving a nonzero
coefficient at a fixed v, and it can be found by sorting.
"""

import itertools

from qalcove.qk_flag import (
    coset_reorder,
    find_coeff,
    global_max_degree,
    min_max_degree,
    qk_chevalley,
    unique_chain_path,
)

n, k = 5, 2
w = (4, 3, 2, 1, 5)
x = qk_chevalley(n, k, w)
print(len(x), "terms in [O^s2] . [O^43215]")
for (v, d), c in sorted(x.items())[:6]:
    print(f"  {c:+d} Q^{d} [O^{''.join(map(str, v))}]")

# Reorder sigma's entries against v to find the one contributing w
v, sigma = (1, 2, 5, 3, 4), (3, 4, 1, 2, 5)
w = coset_reorder(n, k, v, sigma)
path = unique_chain_path(n, k, w, v)
print("w =", w, " path", path.labels, " quantum steps", path.quantum)
print("(w, d, N) =", find_coeff(n, k, v, sigma))

# Extreme quantum degrees, read off the quantum edges out of w
print("4321, k=2:", min_max_degree((4, 3, 2, 1), 2))
for n in (3, 4, 5):
    for k in range(1, n):
        tops = [mm[1] for w in itertools.permutations(range(1, n + 1)) if (mm := min_max_degree(w, k))]
        best = tuple(map(max, zip(*tops)))
        print(n, k, best, global_max_degree(n, k))
