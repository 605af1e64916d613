"""Run the weighted branching process on a pair of bases.

Each sequence carries a rational weight. Whenever a sequence fails to t-meet
some basis member it splits into children that share its weight, so the total
stays exactly 1. The survivors bound the basis sizes through the two sums
printed at the end, both of which must stay at or below 1.
"""
from crossfam.branching import minimal_r, run_branching
from crossfam.core import Family, kset_masks

B = Family(4, kset_masks(4, 3))  # all 3-subsets of [4]
t, k = 2, 3
r1 = minimal_r(B, t, k)
rep = run_branching(B, B, r1, t, k)
print(f"r1 = {r1}, survivors = {len(rep.survivors)}")
for s in rep.survivors:
    print("  ", s.elements, "weight", s.weight)
print("weight conserved:", rep.weight_conserved, " cover holds:", rep.cover_holds)
print("second-stage sum:", rep.lhs14, " first-stage sum:", rep.lhs15)
