"""Quasi-smooth hypersurfaces S_d in weighted projective 3-space.

Only the numerical data of the quintuple (a0, a1, a2, a3; d) is modelled:
index, degree-based intersection numbers of O(1), cyclic quotient points,
and a section count used as an independent check on volumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd


class SurfaceError(ValueError):
    pass


class NonPositiveIndex(SurfaceError):
    pass


class NotWellFormed(SurfaceError):
    pass


class UnsortedWeights(SurfaceError):
    pass


class NotCoprime(SurfaceError):
    pass


@dataclass(frozen=True)
class SurfaceSpec:
    weights: tuple[int, int, int, int]
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(a) for a in self.weights))
        object.__setattr__(self, "degree", int(self.degree))

    @property
    def index(self) -> int:
        return sum(self.weights) - self.degree

    def __str__(self) -> str:
        return "S_{}({})".format(self.degree, ",".join(map(str, self.weights)))


def validate(spec: SurfaceSpec) -> int:
    """Check the structural invariants of ``spec`` and return its index."""
    w, d = spec.weights, spec.degree
    if len(w) != 4 or any(a <= 0 for a in w) or d <= 0:
        raise SurfaceError(f"need four positive weights and a positive degree, got {w}; {d}")
    if list(w) != sorted(w):
        raise UnsortedWeights(f"weights must be ascending, got {w}")
    index = sum(w) - d
    if index <= 0:
        raise NonPositiveIndex(f"index {sum(w)} - {d} = {index} is not positive")
    for a, b, c in combinations(w, 3):
        if gcd(gcd(a, b), c) != 1:
            raise NotWellFormed(f"gcd({a},{b},{c}) != 1")
    for a, b in combinations(w, 2):
        g = gcd(a, b)
        if d % g:
            raise NotWellFormed(f"gcd({a},{b}) = {g} does not divide degree {d}")
    return index


def hyperplane_square(spec: SurfaceSpec) -> Fraction:
    """O_S(1)^2 = d / (a0 a1 a2 a3)."""
    a0, a1, a2, a3 = spec.weights
    return Fraction(spec.degree, a0 * a1 * a2 * a3)


def antican_square(spec: SurfaceSpec) -> Fraction:
    """(-K_S)^2 = I^2 * O_S(1)^2, using -K_S = O_S(I)."""
    return spec.index ** 2 * hyperplane_square(spec)


@dataclass(frozen=True)
class QuotientPoint:
    """A cyclic quotient singularity 1/m(1, q) in normalized form.

    ``raw_weights`` keeps the weights as read off the ambient action and
    ``unit`` is the multiplier u with u * raw = (1, q) mod m.  A smooth
    point is m = 1 with weights (1, 1).
    """

    label: str
    order: int
    local_weights: tuple[int, int]
    coordinate_names: tuple[str, str] = ("u", "v")
    raw_weights: tuple[int, int] | None = None
    unit: int = 1

    @property
    def is_smooth(self) -> bool:
        return self.order == 1

    def type_label(self) -> str:
        q1, q2 = self.local_weights
        return f"1/{self.order}({q1},{q2})"

    def is_admissible(self, weights: tuple[int, int]) -> bool:
        """Whether weights/m lies in the lattice Z^2 + Z*(q1, q2)/m."""
        w1, w2 = weights
        m = self.order
        if m == 1:
            return True
        # normalized q1 = 1, so the multiplier k is forced to be w1 mod m
        q = self.local_weights[1]
        return (w2 - w1 * q) % m == 0

    def is_primitive(self, weights: tuple[int, int]) -> bool:
        w1, w2 = weights
        g = gcd(w1, w2)
        return not any(g % d == 0 and self.is_admissible((w1 // d, w2 // d)) for d in range(2, g + 1))

    def primitive_on_ray(self, direction: tuple[int, int]) -> tuple[int, int]:
        """Shortest admissible integer vector on the ray through ``direction``."""
        a, b = direction
        g = gcd(a, b)
        a, b = a // g, b // g
        for j in range(1, self.order + 1):
            if self.is_admissible((j * a, j * b)):
                return (j * a, j * b)
        raise AssertionError("unreachable: m * direction is always admissible")


def normalize_quotient(
    m: int,
    raw: tuple[int, int],
    label: str = "p",
    coordinate_names: tuple[str, str] = ("u", "v"),
) -> QuotientPoint:
    """Bring 1/m(r1, r2) to the canonical form 1/m(1, r2 * r1^-1 mod m)."""
    r1, r2 = int(raw[0]), int(raw[1])
    m = int(m)
    if m <= 0:
        raise SurfaceError(f"order must be positive, got {m}")
    if m == 1:
        return QuotientPoint(label, 1, (1, 1), tuple(coordinate_names), (r1, r2), 1)
    for r in (r1, r2):
        if gcd(r, m) != 1:
            raise NotCoprime(f"weight {r} is not coprime to order {m} at {label}")
    unit = pow(r1, -1, m)
    q = (r2 * unit) % m
    return QuotientPoint(label, m, (1, q), tuple(coordinate_names), (r1 % m, r2 % m), unit)


def _count_two(a: int, b: int, r: int) -> int:
    """#{(x, y) >= 0 : a x + b y = r}."""
    if r < 0:
        return 0
    if a == 1:
        return r // b + 1
    # b*y = r (mod a): y runs over an arithmetic progression
    g = gcd(a, b)
    if r % g:
        return 0
    a_, b_, r_ = a // g, b // g, r // g
    y0 = (r_ * pow(b_, -1, a_)) % a_ if a_ > 1 else 0
    ymax = r // b
    if y0 > ymax:
        return 0
    return (ymax - y0) // a_ + 1


def count_monomials(weights: tuple[int, ...], k: int) -> int:
    """Number of monomials of weighted degree k in four variables."""
    if k < 0:
        return 0
    a0, a1, a2, a3 = weights
    total = 0
    for e3 in range(k // a3 + 1):
        r3 = k - e3 * a3
        for e2 in range(r3 // a2 + 1):
            total += _count_two(a0, a1, r3 - e2 * a2)
    return total


def h0_count(spec: SurfaceSpec, k: int) -> int:
    """h^0(S, O_S(k)) for a quasi-smooth hypersurface: monomials of degree k
    minus multiples of the defining equation."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return count_monomials(spec.weights, k) - count_monomials(spec.weights, k - spec.degree)
