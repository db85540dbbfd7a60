"""
The quantum Bruhat graph
========================

Bruhat edges raise the length by one; quantum edges drop it by
2<rho, beta^vee> - 1.  The weight of a path adds up the coroots of its
quantum edges, and every shortest path between two vertices has the same weight.
"""

from qalcove.qbg import BRUHAT, qbg, reflection_order_from_word, increasing_path
from qalcove.rootsys import build_root_system

a2 = build_root_system("A", 2)
g = qbg(a2)

for e in sorted(g.edges(), key=lambda e: (e.source.length, e.source.one_line())):
    arrow = "-->" if e.kind == BRUHAT else "~~>"
    print(e.source.one_line(), arrow, e.target.one_line(), "label", e.label)

# distance and weight of shortest paths out of the longest element
w0 = a2.longest_element()
for v, (dist, wt) in sorted(g.bfs_from(w0).items(), key=lambda kv: kv[1][0]):
    print(f"w0 -> {v.one_line()}: distance {dist}, weight {wt}")

# A reflection order picks out one increasing path for each pair
order = reflection_order_from_word(a2, w0.word)
p = increasing_path(a2, w0, a2.s(1), order)
print("increasing path w0 -> s1:", [v.one_line() for v in p.vertices])

# The parabolic graph on W^J; DOT goes to stdout for graphviz
print(qbg(a2, (1,)).to_dot())
