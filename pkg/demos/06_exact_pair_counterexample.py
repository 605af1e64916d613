"""Exact cross 2-intersecting 3-uniform pairs that fit no clause.

We enumerate every exact pair on a small ground set and classify it. Pairs
where one side is a single set can have a large partner family: all 3(n-3)
triples meeting that set in exactly two elements. Such a pair is not a
sunflower, and the size clause needs k to be at least the partner count, so
at k=5 these pairs escape every clause.
"""
from collections import Counter

from crossfam.structure import classify_exact_pair, exact_pairs

k = 5
for n in (5, 6, 7):
    tally = Counter()
    witness = None
    for A, B in exact_pairs(n, 2):
        clauses = classify_exact_pair(A, B, 2, k)
        tally[bool(clauses)] += 1
        if not clauses and witness is None:
            witness = (A.sets(), B.sets())
    print(f"n={n}: {tally[True]} classified, {tally[False]} not")
    if witness:
        print("   e.g. A =", witness[0])
        print("        B =", witness[1])
