"""
O(1)^2 on S9 from counting sections.

h0(S, O(k)) grows like O(1)^2 k^2 / 2, and O(1)^2 = 9/(1*3*3*4) = 1/4,
so 2 h0 / k^2 -> 1/4.  Then (-K)^2 = 2^2 * 1/4 = 1.
"""

from fractions import Fraction as F

from kstab.presets import preset
from kstab.surface import hyperplane_square, h0_count

spec = preset("s9").surface
target = hyperplane_square(spec)
print(f"O(1)^2 = {target}")
for k in (12, 60, 120, 360, 720):
    h = h0_count(spec, k)
    ratio = F(2 * h, k * k)
    print(f"k = {k:>4}  h0 = {h:>7}  2 h0/k^2 = {float(ratio):.5f}  rel. err {float(abs(ratio - target) / target):.3%}")
