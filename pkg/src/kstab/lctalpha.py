"""Certified upper bounds on log canonical thresholds, alpha and delta.

For a toric valuation E with weights w at a quotient point,
lct_p(S, D) <= A(E) / ord_E(D) = (w1 + w2) / sum_j mu_j ord_w(D_j); the
factor 1/m cancels.  The ratio only depends on the direction of w and is
monotone between the kinks of the denominator, so its infimum over all
directions is attained at a kink or approached along a coordinate axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Sequence

from .betaflow import Verdict
from .geometry import MissingGerm, MonomialGerm
from .ratlin import as_fraction
from .surface import QuotientPoint, SurfaceSpec, validate


class NonUnitFirstWeight(ValueError):
    pass


@dataclass(frozen=True)
class Component:
    mult: Fraction
    germs: Mapping[str, MonomialGerm | None] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "mult", as_fraction(self.mult))
        if self.mult <= 0:
            raise ValueError(f"component multiplicity must be positive, got {self.mult}")


@dataclass(frozen=True)
class BoundaryDivisor:
    components: tuple[Component, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def scale(self, c) -> "BoundaryDivisor":
        c = as_fraction(c)
        return BoundaryDivisor(tuple(Component(x.mult * c, x.germs, x.name) for x in self.components))

    def at(self, label: str) -> list[tuple[Fraction, MonomialGerm]]:
        """(multiplicity, germ) of every component through the point ``label``."""
        local = []
        for comp in self.components:
            if label not in comp.germs:
                continue
            g = comp.germs[label]
            if g is None:
                raise MissingGerm(f"component {comp.name or '?'} passes through {label} without a germ")
            local.append((comp.mult, g))
        return local


@dataclass(frozen=True)
class Witness:
    """What certifies an lct bound.

    kind "valuation": the toric valuation with ``weights`` at ``point``;
    kind "axis": the local coordinate curve {x_i = 0} at ``point`` (i from
    ``weights`` = (1, 0) or (0, 1)) appearing with coefficient 1/value;
    kind "component": a component of D with coefficient 1/value.
    """

    kind: str
    value: Fraction
    point: str | None = None
    weights: tuple[int, int] | None = None
    component: str | None = None


def valuation_ratio(local: Sequence[tuple[Fraction, MonomialGerm]], weights: tuple[int, int]) -> Fraction | None:
    """(w1 + w2) / sum mu_j ord_w(germ_j); None when D has order 0 along w."""
    w1, w2 = weights
    order = sum((mu * g.weighted_order(weights) for mu, g in local), Fraction(0))
    if order == 0:
        return None
    return Fraction(w1 + w2) / order


def _kink_directions(germs: Iterable[MonomialGerm]) -> set[tuple[int, int]]:
    """Positive directions where two monomials of one germ tie."""
    dirs = set()
    for g in germs:
        for (a1, c1), (a2, c2) in combinations(g.sorted_monomials(), 2):
            # (a1 - a2) w1 = (c2 - c1) w2
            x, y = c2 - c1, a1 - a2
            if x < 0 or (x == 0 and y < 0):
                x, y = -x, -y
            if x > 0 and y > 0:
                d = gcd(x, y)
                dirs.add((x // d, y // d))
    return dirs


def lct_ub_at_point(point: QuotientPoint, local: Sequence[tuple[Fraction, MonomialGerm]]) -> tuple[Fraction, Witness] | None:
    """Smallest certified bound A(E)/ord_E(D) over kinks, the type vector,
    (1, 1) and the two coordinate axes.  None if D misses the point."""
    if not local:
        return None
    candidates: list[tuple[Fraction, int, tuple, Witness]] = []
    dirs = _kink_directions(g for _, g in local)
    raw = point.raw_weights or point.local_weights
    dirs.add(tuple(int(r) % point.order or point.order for r in raw) if point.order > 1 else (1, 1))
    dirs.add((1, 1))
    for d in sorted(dirs):
        w = point.primitive_on_ray(d)
        val = valuation_ratio(local, w)
        if val is not None:
            candidates.append((val, 0, w, Witness("valuation", val, point.label, w)))
    # limits along the axes: coefficient of {x1 = 0} resp. {x2 = 0} in D
    for axis, w in ((0, (1, 0)), (1, (0, 1))):
        coeff = sum((mu * min(m[axis] for m in g.monomials) for mu, g in local), Fraction(0))
        if coeff > 0:
            val = 1 / coeff
            candidates.append((val, 1, w, Witness("axis", val, point.label, w)))
    if not candidates:
        return None
    best = min(candidates, key=lambda c: (c[0], c[1], c[2]))
    return best[0], best[3]


def lct_scan_at_point(point: QuotientPoint, local, bound: int) -> tuple[Fraction, tuple[int, int]] | None:
    """Brute force over every admissible weight vector with entries <= bound."""
    best = None
    for w1 in range(1, bound + 1):
        for w2 in range(1, bound + 1):
            if not point.is_admissible((w1, w2)):
                continue
            val = valuation_ratio(local, (w1, w2))
            if val is not None and (best is None or val < best[0]):
                best = (val, (w1, w2))
    return best


def lct_ub(divisor: BoundaryDivisor, points: Sequence[QuotientPoint]) -> tuple[Fraction, Witness]:
    """min of 1/mu over components and of the pointwise valuation bounds."""
    best: tuple[Fraction, Witness] | None = None
    for comp in divisor.components:
        val = 1 / comp.mult
        if best is None or val < best[0]:
            best = (val, Witness("component", val, component=comp.name))
    for p in points:
        res = lct_ub_at_point(p, divisor.at(p.label))
        if res is not None and (best is None or res[0] < best[0]):
            best = res
    if best is None:
        raise ValueError("empty divisor has no log canonical threshold bound")
    return best


@dataclass(frozen=True)
class AlphaReport:
    lct_ub: Fraction
    witness: Witness
    alpha_ub: Fraction
    delta_ub: Fraction
    verdict: Verdict


def alpha_verdict(spec: SurfaceSpec, divisor: BoundaryDivisor, points: Sequence[QuotientPoint]) -> AlphaReport:
    """Turn lct(S, H) for H in |O(1)| into bounds alpha <= lct/I and delta <= 3 alpha."""
    index = validate(spec)
    if spec.weights[0] != 1:
        raise NonUnitFirstWeight(f"need a0 = 1 so that H_x is in |O(1)|, got a0 = {spec.weights[0]}")
    lct, witness = lct_ub(divisor, points)
    alpha = lct / index
    delta = 3 * alpha
    verdict = Verdict.NOT_K_SEMISTABLE if delta < 1 else Verdict.INCONCLUSIVE
    return AlphaReport(lct, witness, alpha, delta, verdict)
