"""
Zariski decomposition of pi^*(-K) - tE on S9, against the brute-force oracle.

The fast routine grows the negative support; the oracle tries every
negative definite subset.  Past tau the divisor is not pseudoeffective.
"""

from fractions import Fraction as F

from kstab.geometry import RDivisor, blow_up, pullback_anticanonical
from kstab.presets import preset
from kstab.zariski import NotPseudoeffective, decompose, decompose_bruteforce

sc = preset("s9")
req = sc.blowup
br = blow_up(sc.surface, sc.curves, sc.singularities[req.point], req.weights)
cs = br.curves
d0 = pullback_anticanonical(br)
e = cs.index(br.exceptional)

for t in (F(0), F(1, 12), F(1, 6), F(1, 2), F(1), F(3, 2), F(2)):
    D = d0 - RDivisor(cs.names, tuple(t if i == e else F(0) for i in range(len(cs))))
    try:
        dec = decompose(cs, D)
    except NotPseudoeffective:
        print(f"t = {t}: not pseudoeffective")
        continue
    same = decompose_bruteforce(cs, D).key() == dec.key()
    N = {n: str(dec.negative[n]) for n in dec.negative_support}
    print(f"t = {str(t):<5} P^2 = {str(cs.square(dec.positive)):<6} N = {N}  oracle agrees: {same}")
