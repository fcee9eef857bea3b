"""Independent reference computations used by the tests.

Nothing here calls the segment walker: the closed forms are typed in from
hand derivations, the symbolic oracle integrates hand-written segment
formulas, and the numeric oracle samples zariski.volume pointwise.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction as F

from kstab.geometry import BlowupResult, RDivisor, blow_up, pullback_anticanonical
from kstab.presets import preset
from kstab.zariski import volume


def blown_up(name, n=None, m=None) -> tuple:
    sc = preset(name, n, m)
    req = sc.blowup
    return sc, blow_up(sc.surface, sc.curves, sc.singularities[req.point], req.weights)


def divisor_at(br: BlowupResult, lam) -> RDivisor:
    """pi^*(-K_S) - lam E as an RDivisor on the blown-up basis."""
    d0 = pullback_anticanonical(br)
    e = br.curves.index(br.exceptional)
    shift = tuple(F(lam) if i == e else F(0) for i in range(len(d0.names)))
    return d0 - RDivisor(d0.names, shift)


def rational_samples(seed: int, count: int, hi: F, den: int = 97) -> list[F]:
    """Deterministic rationals in [0, hi] with assorted denominators."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        q = rng.randint(1, den)
        out.append(hi * F(rng.randint(0, q), q))
    return out


def simpson_integral(br: BlowupResult, tau: F, steps: int = 60) -> F:
    """Composite Simpson rule on pointwise volumes; exact for piecewise quadratics
    whose breakpoints fall on the grid, an approximation otherwise."""
    h = tau / (2 * steps)
    total = F(0)
    for i in range(2 * steps + 1):
        w = 1 if i in (0, 2 * steps) else (4 if i % 2 else 2)
        total += w * volume(br.curves, divisor_at(br, i * h))
    return total * h / 3


def fam_3n4_segments_symbolic():
    """Hand-derived volume segments of the (1,3,3n+4,3n+5) family in sympy, in n and lambda."""
    import sympy as sp

    n, lam = sp.symbols("n lambda", nonnegative=True)
    tau = (4 * n + 8) / (3 * n + 5)
    b1 = (2 * n + 2) / ((3 * n + 4) * (3 * n + 5))
    b2 = sp.Rational(4, 3) / (3 * n + 5)
    k2 = 4 * (6 * n + 11) / (3 * (3 * n + 4) * (3 * n + 5))
    s1 = k2 - (3 * n + 5) / (2 * n + 2) * lam**2
    s2 = -sp.Rational(8, 3) + 4 * (tau - lam) - (6 * n + 7) / (4 * n + 6) * (tau - lam) ** 2
    s3 = (sp.Rational(3, 2) - (6 * n + 7) / (4 * n + 6)) * (tau - lam) ** 2
    return n, lam, [(0, b1, s1), (b1, b2, s2), (b2, tau, s3)]


def fam_3n4_integral_symbolic():
    import sympy as sp

    n, lam, segs = fam_3n4_segments_symbolic()
    total = sum(sp.integrate(q, (lam, a, b)) for a, b, q in segs)
    return n, sp.factor(sp.simplify(total))


# --- random small configurations --------------------------------------------

def random_config(rng: random.Random):
    """A random curve configuration with a blow-up request, or None if rejected.

    Curves N_1..N_{k-1} have a negative definite Gram block and a last curve H
    has H^2 > 0 and meets them nonnegatively, so the whole Gram has exactly one
    positive direction (the Schur complement of the negative block is positive).
    -K is a nonnegative combination that is positive on every curve.  Each curve passes
    through the marked point with probability 3/5, with a random monomial germ.
    """
    from kstab.geometry import CurveSystem, MonomialGerm
    from kstab.ratlin import is_negative_definite
    from kstab.surface import normalize_quotient

    k = rng.randint(2, 5)
    neg = k - 1
    gram = [[F(0)] * k for _ in range(k)]
    # |N_i^2| >= 1 > sum of off-diagonal entries: diagonally dominant, hence definite
    for i in range(neg):
        gram[i][i] = -F(rng.randint(4, 16), 4)
        for j in range(i + 1, neg):
            gram[i][j] = gram[j][i] = F(rng.randint(0, 1), 4)
    assert is_negative_definite([row[:neg] for row in gram[:neg]])
    h = k - 1
    gram[h][h] = F(rng.randint(1, 6), rng.randint(1, 3))
    for i in range(neg):
        gram[i][h] = gram[h][i] = F(rng.randint(1, 6), rng.randint(1, 2))
    names = tuple(f"N{i + 1}" for i in range(neg)) + ("H",)
    antican = tuple(F(rng.randint(0, 2), rng.randint(1, 2)) for _ in range(neg)) + (F(rng.randint(1, 3)),)

    m = rng.randint(1, 7)
    q = rng.choice([x for x in range(1, m) if math.gcd(x, m) == 1] or [1])
    point = normalize_quotient(m, (1, q), "p")
    weights = point.primitive_on_ray((rng.randint(1, 3), rng.randint(1, 3)))
    germs = {}
    for nm in names:
        if rng.random() < 0.6:
            mons = {(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(rng.randint(1, 2))}
            mons.discard((0, 0))
            if mons:
                germs[nm] = MonomialGerm.of(mons)
    if not germs:
        return None
    cs = CurveSystem(names, tuple(map(tuple, gram)), antican, point, germs)
    K = cs.anticanonical()
    if cs.square(K) <= 0 or any(cs.dot(K, cs.curve(nm)) <= 0 for nm in names):
        return None  # -K must be ample on the basis
    return cs, point, weights


def random_configs(seed: int, count: int, max_tries: int = 2000):
    """First ``count`` geometrically consistent configurations whose volume
    curve the walker can trace.

    Returns (accepted, rejected_by_walker) where accepted holds
    (CurveSystem, BlowupResult, PiecewiseQuadratic) triples; the walker only
    rejects configurations whose threshold tau is irrational.
    """
    from kstab.betaflow import DegenerateConfig, volume_curve
    from kstab.geometry import blow_up
    from kstab.surface import SurfaceSpec

    rng = random.Random(seed)
    spec = SurfaceSpec((1, 1, 1, 1), 3)  # only validated, not used by the blow-up numbers
    out, walker_rejects = [], 0
    for _ in range(max_tries):
        got = random_config(rng)
        if got is None:
            continue
        cs, point, weights = got
        br = blow_up(spec, cs, point, weights)
        g = br.curves.gram
        if any(g[i][j] < 0 for i in range(len(g)) for j in range(len(g)) if i != j):
            continue  # distinct strict transforms cannot meet negatively
        try:
            pq = volume_curve(br)
        except DegenerateConfig:
            walker_rejects += 1
            continue
        out.append((cs, br, pq))
        if len(out) == count:
            break
    return out, walker_rejects
