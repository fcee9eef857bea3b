"""The volume curve of pi^*(-K_S) - t E and the beta invariant of E.

On an interval where the Zariski negative support is fixed, the nef part
P(t) is affine in t, so vol(t) = P(t)^2 is a quadratic and every product
P(t).C is affine.  The walker moves from t = 0 to the pseudoeffective
threshold jumping between the exact rational roots of those affine
functions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .geometry import BlowupResult, RDivisor, pullback_anticanonical
from .ratlin import dot, is_negative_definite, matvec, solve_many, submatrix
from .surface import SurfaceSpec, antican_square


class DegenerateConfig(ArithmeticError):
    pass


class IrrationalThreshold(DegenerateConfig):
    pass


class Verdict(str, enum.Enum):
    NOT_K_SEMISTABLE = "NotKSemistable"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


Quadratic = tuple[Fraction, Fraction, Fraction]


def _qeval(q: Quadratic, t: Fraction) -> Fraction:
    c0, c1, c2 = q
    return c0 + t * (c1 + t * c2)


def _qderiv(q: Quadratic, t: Fraction) -> Fraction:
    return q[1] + 2 * q[2] * t


def _qintegral(q: Quadratic, a: Fraction, b: Fraction) -> Fraction:
    c0, c1, c2 = q
    return c0 * (b - a) + c1 * (b * b - a * a) / 2 + c2 * (b ** 3 - a ** 3) / 3


@dataclass(frozen=True)
class PiecewiseQuadratic:
    """A continuous function given by quadratics c0 + c1 t + c2 t^2 on
    consecutive intervals [breakpoints[i], breakpoints[i+1]]."""

    breakpoints: tuple[Fraction, ...]
    segments: tuple[Quadratic, ...]
    supports: tuple[tuple[str, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.breakpoints) != len(self.segments) + 1:
            raise ValueError("need one more breakpoint than segments")
        if any(a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    @property
    def tau(self) -> Fraction:
        return self.breakpoints[-1]

    def segment_index(self, t: Fraction) -> int | None:
        bp = self.breakpoints
        if t < bp[0] or t > bp[-1]:
            return None
        for i in range(len(self.segments)):
            if t <= bp[i + 1]:
                return i
        return len(self.segments) - 1

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        i = self.segment_index(t)
        if i is None:
            return Fraction(0)
        return _qeval(self.segments[i], t)

    def refine(self, t) -> "PiecewiseQuadratic":
        """Split the segment containing t at t (no-op on existing breakpoints)."""
        t = Fraction(t)
        if t in self.breakpoints:
            return self
        i = self.segment_index(t)
        if i is None:
            raise ValueError(f"{t} lies outside [{self.breakpoints[0]}, {self.tau}]")
        bps = self.breakpoints[: i + 1] + (t,) + self.breakpoints[i + 1:]
        segs = self.segments[: i + 1] + (self.segments[i],) + self.segments[i + 1:]
        sups = ()
        if self.supports:
            sups = self.supports[: i + 1] + (self.supports[i],) + self.supports[i + 1:]
        return PiecewiseQuadratic(bps, segs, sups)

    def check(self) -> None:
        """Assert continuity, nonnegativity, vol(tau) = 0 and monotonicity."""
        bp, segs = self.breakpoints, self.segments
        for i in range(1, len(segs)):
            left, right = _qeval(segs[i - 1], bp[i]), _qeval(segs[i], bp[i])
            if left != right:
                raise AssertionError(f"discontinuous at {bp[i]}: {left} != {right}")
        if _qeval(segs[-1], bp[-1]) != 0:
            raise AssertionError("volume does not vanish at tau")
        for i, q in enumerate(segs):
            a, b = bp[i], bp[i + 1]
            for t in (a, (a + b) / 2, b):
                if _qeval(q, t) < 0:
                    raise AssertionError(f"negative volume at {t}")
            for t in (a, b):
                if _qderiv(q, t) > 0:
                    raise AssertionError(f"volume increasing at {t}")


def integrate(pq: PiecewiseQuadratic) -> Fraction:
    bp = pq.breakpoints
    return sum((_qintegral(q, bp[i], bp[i + 1]) for i, q in enumerate(pq.segments)), Fraction(0))


def _exact_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    p, q = isqrt(x.numerator), isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


def _first_root_after(q: Quadratic, lo: Fraction, hi: Fraction | None) -> Fraction | None:
    """Smallest t in (lo, hi] with q(t) = 0, assuming q(lo) > 0.

    hi = None means unbounded.  Raises IrrationalThreshold if the root exists
    but is irrational.
    """
    c0, c1, c2 = q
    if c2 == 0:
        if c1 >= 0:
            return None
        r = -c0 / c1
        return r if r > lo and (hi is None or r <= hi) else None
    disc = c1 * c1 - 4 * c0 * c2
    if disc < 0:
        return None
    s = _exact_sqrt(disc)
    if s is None:
        # decide exactly whether a root falls in the window before giving up
        inside = (hi is not None and _qeval(q, hi) <= 0) or (
            hi is None and c2 < 0
        )
        vertex = -c1 / (2 * c2)
        if not inside and c2 > 0 and vertex > lo and (hi is None or vertex <= hi):
            inside = True  # disc > 0 and q(lo) > 0 put two roots on the near side
        if inside:
            raise IrrationalThreshold(f"volume {c0} + {c1} t + {c2} t^2 vanishes at an irrational t")
        return None
    roots = sorted({(-c1 - s) / (2 * c2), (-c1 + s) / (2 * c2)})
    for r in roots:
        if r > lo and (hi is None or r <= hi):
            return r
    return None


class _Walk:
    """Affine data of D(t) = pi^*(-K_S) - t E, cached per negative support."""

    def __init__(self, br: BlowupResult):
        cs = br.curves
        self.br = br
        self.names = cs.names
        self.gram = cs.gram
        self.n = len(cs)
        e = cs.index(br.exceptional)
        self.d0 = list(pullback_anticanonical(br).coeffs)
        self.d1 = [Fraction(0)] * self.n
        self.d1[e] = Fraction(-1)
        self.prod0 = list(matvec(self.gram, self.d0))
        self.prod1 = list(matvec(self.gram, self.d1))
        self._cache: dict[tuple[int, ...], tuple] = {}

    def solve(self, support: tuple[int, ...]):
        """(n0, n1, A, B, pa, pb): negative part n0 + t n1 on the support,
        P(t) = A + t B, and P(t).C_i = pa[i] + t pb[i]."""
        hit = self._cache.get(support)
        if hit is not None:
            return hit
        A, B = list(self.d0), list(self.d1)
        n0 = n1 = ()
        if support:
            G = submatrix(self.gram, support)
            n0, n1 = solve_many(G, [[self.prod0[j] for j in support], [self.prod1[j] for j in support]])
            for i, x0, x1 in zip(support, n0, n1):
                A[i] -= x0
                B[i] -= x1
        res = (n0, n1, A, B, list(matvec(self.gram, A)), list(matvec(self.gram, B)))
        self._cache[support] = res
        return res

    def grow(self, support: tuple[int, ...], t: Fraction) -> tuple[int, ...]:
        """Add curves whose product with P vanishes at t and decreases, until stable."""
        while True:
            _, _, _, _, pa, pb = self.solve(support)
            new = []
            for i in range(self.n):
                if i in support:
                    continue
                val = pa[i] + t * pb[i]
                if val < 0 or (val == 0 and pb[i] < 0):
                    new.append(i)
            if not new:
                return support
            support = tuple(sorted(support + tuple(new)))
            if not is_negative_definite(submatrix(self.gram, support)):
                names = [self.names[i] for i in support]
                raise DegenerateConfig(f"support {names} stopped being negative definite at t = {t}")


def volume_curve(br: BlowupResult) -> PiecewiseQuadratic:
    """vol(pi^*(-K_S) - t E) for t in [0, tau] as an exact piecewise quadratic."""
    walk = _Walk(br)
    if dot(walk.d0, walk.prod0) <= 0:
        raise DegenerateConfig(f"vol(pi^*(-K_S)) = {dot(walk.d0, walk.prod0)} is not positive")
    bad = [nm for nm, p in zip(walk.names, walk.prod0) if p < 0]
    if bad:
        raise DegenerateConfig(f"pi^*(-K_S) is not nef: negative on {', '.join(bad)}")
    support: tuple[int, ...] = ()
    lo = Fraction(0)
    bps = [lo]
    segs: list[Quadratic] = []
    sups: list[tuple[str, ...]] = []
    prev: dict[int, Fraction] = {}

    while True:
        support = walk.grow(support, lo)
        n0, n1, A, B, pa, pb = walk.solve(support)
        now = {i: x0 + lo * x1 for i, x0, x1 in zip(support, n0, n1)}
        if any(x < 0 for x in now.values()) or any(x1 < 0 for x1 in n1):
            raise DegenerateConfig(f"negative part not monotone on the segment starting at {lo}")
        if any(now.get(i, Fraction(0)) != prev.get(i, Fraction(0)) for i in set(now) | set(prev)):
            raise DegenerateConfig(f"negative part jumps at {lo}")
        quad = (dot(A, pa), 2 * dot(A, pb), dot(B, pb))
        hi = None
        for i in range(walk.n):
            if i in support or pb[i] >= 0:
                continue
            r = -pa[i] / pb[i]
            if r > lo and (hi is None or r < hi):
                hi = r
        tau = _first_root_after(quad, lo, hi)
        sups.append(tuple(walk.names[i] for i in support))
        segs.append(quad)
        if tau is not None:
            bps.append(tau)
            break
        if hi is None:
            raise DegenerateConfig("volume never vanishes: E is not contractible against the basis")
        bps.append(hi)
        prev = {i: x0 + hi * x1 for i, x0, x1 in zip(support, n0, n1)}
        lo = hi

    pq = PiecewiseQuadratic(tuple(bps), tuple(segs), tuple(sups))
    pq.check()
    return pq


def positive_part_at(br: BlowupResult, pq: PiecewiseQuadratic, t) -> RDivisor:
    """The nef part P(t) read off the walker's support on the segment containing t."""
    t = Fraction(t)
    i = pq.segment_index(t)
    if i is None:
        raise ValueError(f"{t} outside [0, tau]")
    support = tuple(br.curves.index(nm) for nm in pq.supports[i])
    _, _, A, B, _, _ = _Walk(br).solve(support)
    return RDivisor(br.curves.names, tuple(a + t * b for a, b in zip(A, B)))


@dataclass(frozen=True)
class BetaReport:
    log_discrepancy: Fraction
    antican_sq: Fraction
    tau: Fraction
    volume_curve: PiecewiseQuadratic
    integral: Fraction
    beta: Fraction
    verdict: Verdict

    @property
    def a_times_volume(self) -> Fraction:
        return self.log_discrepancy * self.antican_sq


def beta(spec: SurfaceSpec, br: BlowupResult) -> BetaReport:
    """beta(E) = A(E) (-K_S)^2 - integral of vol(pi^*(-K_S) - t E) over [0, tau]."""
    pq = volume_curve(br)
    k2 = antican_square(spec)
    integral = integrate(pq)
    b = br.log_discrepancy * k2 - integral
    verdict = Verdict.NOT_K_SEMISTABLE if b < 0 else Verdict.INCONCLUSIVE
    return BetaReport(br.log_discrepancy, k2, pq.tau, pq, integral, b, verdict)
