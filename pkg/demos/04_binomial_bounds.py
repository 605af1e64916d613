"""Check a few of the binomial inequalities exactly, then a whole grid.

All arithmetic is in Fractions, so a reported slack of 0 means equality and
not a rounding accident.
"""
from fractions import Fraction

from crossfam.bounds import check_key, check_key2, verify_hilton_sum
from crossfam.ineqgrid import csv_rows, parse_grid, run_grid

r = check_key(10, 3, 2)
print(f"{r.name}: {r.lhs} <= {r.rhs}  (slack {r.slack})")

r = check_key2(21, 5, 2, Fraction(2))
print(f"{r.name}: chain", " <= ".join(str(x) for x in r.steps), "->", r.verdict)

r = verify_hilton_sum(8, 2, 2)
print(f"best lex size vector at m=8, a=2, t=2: {r.witness}, sum {r.lhs} <= {r.rhs}")

grid = "t=2..3,k=5..6,n=min|min+10"
print(f"\nmono:phi on {len(parse_grid(grid, 'mono:phi'))} points")
cols, rows = csv_rows("mono:phi", run_grid("mono:phi", grid))
print(",".join(cols))
for row in rows:
    print(",".join(str(row[c]) for c in cols))
