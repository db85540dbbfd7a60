"""
Root systems and Weyl groups
============================

Roots live in the simple root basis, weights in the fundamental weight basis,
so pairing a weight with a simple coroot just reads off a coordinate.
"""

from qalcove.rootsys import build_root_system, min_coset_rep

# B2: four positive roots, a Weyl group of order 8
b2 = build_root_system("B", 2)
print("positive roots of B2:", b2.positive_roots)
print("highest root:", b2.highest_root, " rho:", b2.rho)
print("Coxeter number 2|Phi+|/r =", b2.coxeter_number)

W = b2.weyl_group()
print(len(W), "elements; longest", b2.longest_element().word)

# Weyl group elements act on weights
for w in W[:4]:
    print(f"{w.label():>6}  rho -> {w.act(b2.rho)}")

# In type A, elements print as permutations in one-line notation
a2 = build_root_system("A", 2)
w0 = a2.longest_element()
print("w0 in S3:", w0.one_line())

# Minimal representatives of the right cosets w W_J, with J = {s1}
for w in a2.weyl_group():
    print(w.one_line(), "->", min_coset_rep(a2, w, {0}).one_line())
