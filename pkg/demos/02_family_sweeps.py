"""
Sweep the two parametric blow-up families and compare with closed forms.

(1,1,n+1,m+1): beta = 8/(3(m+1)^2) - 8/(3(n+1)^2), zero on the diagonal.
(1,3,3n+4,3n+5): beta re-derived with (-K)^2 = 4 O(1)^2.
"""

from fractions import Fraction as F

from kstab.presets import beta_11nm, beta_3n4, sweep

rows = sweep("fam-11nm", range(0, 6), range(0, 6), allow_boundary=True)
print("fam-11nm   beta(n, m)")
print("n\\m " + "".join(f"{m:>12}" for m in range(6)))
table = {(r["n"], r["m"]): r["beta"] for r in rows}
for n in range(6):
    print(f"{n:>3} " + "".join(f"{table.get((n, m), ''):>12}" for m in range(6)))
assert all(F(r["beta"]) == beta_11nm(r["n"], r["m"]) for r in rows)

print("\nfam-3n4")
for r in sweep("fam-3n4", range(0, 11)):
    b = F(r["beta"])
    assert b == beta_3n4(r["n"])
    print(f"n={r['n']:>2}  beta = {str(b):>22}  ~ {float(b):+.6f}  {r['verdict']}")
