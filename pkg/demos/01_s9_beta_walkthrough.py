"""
beta(E) on the degree-9 surface in P(1,3,3,4), step by step.

Blow up the 1/4(1,1) point with weights (1,1), trace the volume of
pi^*(-K) - tE through its Zariski chambers and integrate it exactly.
"""

from kstab.betaflow import beta, volume_curve
from kstab.geometry import blow_up, pullback_anticanonical
from kstab.presets import preset
from kstab.surface import antican_square

sc = preset("s9")
req = sc.blowup
point = sc.singularities[req.point]
print(f"surface        {sc.surface}   index {sc.surface.index}")
print(f"(-K)^2         {antican_square(sc.surface)}")
print(f"point          {point.type_label()}  weights {req.weights}")

br = blow_up(sc.surface, sc.curves, point, req.weights)
print(f"A(E) = {br.log_discrepancy}   E^2 = {br.e_square}")
print("pi^*(-K)      ", dict(zip(br.curves.names, map(str, pullback_anticanonical(br).coeffs))))

# ── intersection table on the blow-up ──────────────────────────────────────
names = br.curves.names
print("\n      " + "".join(f"{n:>8}" for n in names))
for a in names:
    print(f"{a:>6}" + "".join(f"{str(br.curves.product(a, b)):>8}" for b in names))

# ── volume curve ───────────────────────────────────────────────────────────
pq = volume_curve(br)
print()
for i, (c0, c1, c2) in enumerate(pq.segments):
    lo, hi = pq.breakpoints[i], pq.breakpoints[i + 1]
    support = ", ".join(pq.supports[i]) or "-"
    print(f"[{lo}, {hi}]  vol = {c0} + ({c1}) t + ({c2}) t^2   N supported on {{{support}}}")

rep = beta(sc.surface, br)
print(f"\ntau = {rep.tau}   integral = {rep.integral}   A(-K)^2 = {rep.a_times_volume}")
print(f"beta = {rep.beta}  ->  {rep.verdict}")
