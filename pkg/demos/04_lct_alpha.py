"""
Upper bounds for lct(S, H), alpha and delta on the single-hyperplane surfaces.

Each bound comes with the toric valuation that attains it.
"""

from kstab.lctalpha import alpha_verdict, lct_scan_at_point
from kstab.presets import preset

cases = [("s27", None), ("s45", None)] + [("fam-6n9", n) for n in (0, 1, 2, 5, 20)]
for name, n in cases:
    sc = preset(name, n)
    D = sc.lct.divisor
    pts = [sc.singularities[p] for p in sc.lct.points]
    rep = alpha_verdict(sc.surface, D, pts)
    w = rep.witness
    p = sc.singularities[w.point]
    # brute-force scan over weight vectors as a sanity check
    scan, _ = lct_scan_at_point(p, D.at(w.point), 60)
    print(f"{sc.name:<14} {p.type_label():<12} witness {str(w.weights):<9} "
          f"lct <= {str(rep.lct_ub):<6} delta <= {str(rep.delta_ub):<6} scan {str(scan):<6} {rep.verdict}")
