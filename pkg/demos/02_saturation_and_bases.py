"""Saturate a small cross t-intersecting pair and look at its bases.

Starting from one set on each side, saturation keeps adding every k-set that
still t-meets the whole opposite family until nothing changes. The result is
described compactly by its basis: the minimal t-transversals of the partner.
Every member of F contains some basis set, and vice versa.
"""
import random

from crossfam.core import Family
from crossfam.structure import random_saturated_pair, reconstruct_from_basis, saturate, tau_t

n, k, t = 8, 3, 2
seed = Family.of(n, [(1, 2, 3)])
P = saturate(seed, seed, t)
print(f"saturating {{1,2,3}} against itself: |F|={len(P.F)}, |G|={len(P.G)}")
print("basis of F:", P.basis_F.family.sets())
print("basis of G:", P.basis_G.family.sets())

rng = random.Random(11)
P = random_saturated_pair(n, k, t, rng)
print(f"\na random saturated pair: |F|={len(P.F)}, |G|={len(P.G)}, non-trivial={P.is_nontrivial()}")
print("tau_t(F) =", tau_t(P.F, t), " smallest basis member of G has size", P.basis_G.s)
assert reconstruct_from_basis(P.basis_F, n, k) == P.F
print("F is exactly the k-sets containing a member of its basis")
