"""Build the two extremal non-trivial t-intersecting families and compare them.

For small n the Hilton-Milner-type family H wins; once n grows past roughly
(k - t + 1)(t + 1) the other construction A takes over. We print both sizes
along a range of n and confirm each family really is t-intersecting without
a common t-set.
"""
from crossfam.constructions import build_A, build_H, size_A, size_H
from crossfam.structure import is_nontrivial, is_t_intersecting

k, t = 4, 2
print(f"k={k}, t={t}")
print(" n   |A|   |H|  larger")
for n in range(7, 17):
    A, H = build_A(n, k, t), build_H(n, k, t)
    assert len(A) == size_A(n, k, t) and len(H) == size_H(n, k, t)
    for X in (A, H):
        assert is_t_intersecting(X, t) and is_nontrivial(X, t)
    winner = "A" if len(A) > len(H) else "H" if len(H) > len(A) else "tie"
    print(f"{n:2d} {len(A):5d} {len(H):5d}  {winner}")

print("\nThe members of A at n=8:")
for s in build_A(8, k, t).sets():
    print("  ", s)
