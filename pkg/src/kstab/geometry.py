"""Curve configurations with exact Gram matrices and weighted blow-ups.

A :class:`CurveSystem` is a finite list of curves on a surface together with
their intersection matrix and an expression of -K_S as a nonnegative
combination of them.  :func:`blow_up` extracts the toric valuation with
weights (w1, w2) at a cyclic quotient point and returns the configuration on
the blown-up surface, with the exceptional curve appended last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .ratlin import Matrix, Vector, as_fraction, bilinear, sym_matrix, vector
from .surface import QuotientPoint, SurfaceSpec, antican_square, validate


class GeometryError(ValueError):
    pass


class InconsistentGram(GeometryError):
    pass


class InadmissibleWeights(GeometryError):
    pass


class NonPrimitiveWeights(GeometryError):
    pass


class MissingGerm(GeometryError):
    pass


@dataclass(frozen=True)
class MonomialGerm:
    """Local equation of a curve branch, kept as its Newton-minimal monomials.

    Exponent pairs refer to the two local coordinates of a marked point.
    """

    monomials: frozenset[tuple[int, int]]

    def __post_init__(self):
        mons = {(int(a), int(c)) for a, c in self.monomials}
        if not mons:
            raise GeometryError("a germ needs at least one monomial")
        if any(a < 0 or c < 0 for a, c in mons):
            raise GeometryError(f"negative exponent in {sorted(mons)}")
        minimal = {
            (a, c) for a, c in mons
            if not any((a2, c2) != (a, c) and a2 <= a and c2 <= c for a2, c2 in mons)
        }
        object.__setattr__(self, "monomials", frozenset(minimal))

    @classmethod
    def of(cls, monomials: Iterable[Sequence[int]]) -> "MonomialGerm":
        return cls(frozenset(tuple(m) for m in monomials))

    def weighted_order(self, weights: tuple[int, int]) -> int:
        """min over monomials of a*w1 + c*w2 (not yet divided by m)."""
        w1, w2 = weights
        return min(a * w1 + c * w2 for a, c in self.monomials)

    def sorted_monomials(self) -> list[tuple[int, int]]:
        return sorted(self.monomials)


@dataclass(frozen=True)
class RDivisor:
    """A Q-divisor class written in the basis of a curve system."""

    names: tuple[str, ...]
    coeffs: Vector

    def __post_init__(self):
        object.__setattr__(self, "coeffs", vector(self.coeffs))
        if len(self.names) != len(self.coeffs):
            raise GeometryError("divisor dimension does not match its basis")

    def __getitem__(self, name: str) -> Fraction:
        return self.coeffs[self.names.index(name)]

    def _check(self, other: "RDivisor"):
        if other.names != self.names:
            raise GeometryError("divisors live on different bases")

    def __add__(self, other: "RDivisor") -> "RDivisor":
        self._check(other)
        return RDivisor(self.names, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "RDivisor") -> "RDivisor":
        self._check(other)
        return RDivisor(self.names, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, q) -> "RDivisor":
        q = as_fraction(q)
        return RDivisor(self.names, tuple(q * a for a in self.coeffs))

    def __str__(self) -> str:
        terms = [f"{c}*{n}" for n, c in zip(self.names, self.coeffs) if c != 0]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class CurveSystem:
    """Curves C_i with Gram matrix C_i.C_j and -K_S = sum antican[i] * C_i.

    ``germs`` maps curve names to their local equation at ``marked_point``.
    A name mapped to ``None`` marks a curve known to pass through the point
    whose germ is missing; names absent from the map stay away from it.
    """

    names: tuple[str, ...]
    gram: Matrix
    antican: Vector
    marked_point: QuotientPoint | None = None
    germs: Mapping[str, MonomialGerm | None] = field(default_factory=dict)
    hyperplane_degrees: Vector | None = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "gram", sym_matrix(self.gram))
        object.__setattr__(self, "antican", vector(self.antican))
        if self.hyperplane_degrees is not None:
            object.__setattr__(self, "hyperplane_degrees", vector(self.hyperplane_degrees))
        n = len(self.names)
        if len(set(self.names)) != n:
            raise GeometryError(f"duplicate curve names in {self.names}")
        if len(self.gram) != n or len(self.antican) != n:
            raise GeometryError("gram/antican size does not match the number of curves")
        if self.hyperplane_degrees is not None and len(self.hyperplane_degrees) != n:
            raise GeometryError("hyperplane_degrees size does not match the number of curves")
        if any(c < 0 for c in self.antican):
            raise GeometryError("anticanonical coefficients must be nonnegative")
        unknown = set(self.germs) - set(self.names)
        if unknown:
            raise GeometryError(f"germs given for unknown curves {sorted(unknown)}")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def product(self, a: str, b: str) -> Fraction:
        return self.gram[self.index(a)][self.index(b)]

    def divisor(self, coeffs: Mapping[str, object] | Sequence) -> RDivisor:
        if isinstance(coeffs, Mapping):
            unknown = set(coeffs) - set(self.names)
            if unknown:
                raise GeometryError(f"unknown curves {sorted(unknown)}")
            vals = [as_fraction(coeffs.get(n, 0)) for n in self.names]
        else:
            vals = list(coeffs)
        return RDivisor(self.names, tuple(vals))

    def curve(self, name: str) -> RDivisor:
        return self.divisor({name: 1})

    def anticanonical(self) -> RDivisor:
        return RDivisor(self.names, self.antican)

    def dot(self, D: RDivisor, F: RDivisor) -> Fraction:
        return bilinear(self.gram, D.coeffs, F.coeffs)

    def square(self, D: RDivisor) -> Fraction:
        return self.dot(D, D)


@dataclass(frozen=True)
class ConfigReport:
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failures(self) -> list[tuple[str, str]]:
        return [(name, detail) for name, passed, detail in self.checks if not passed]


def validate_config(spec: SurfaceSpec, cs: CurveSystem, strict: bool = True) -> ConfigReport:
    """Check the decomposition identities a curve system has to satisfy.

    (sum c_i C_i)^2 must equal (-K_S)^2, and when hyperplane degrees H.C_j
    are supplied each must equal sum (c_i / I) C_i.C_j.  With ``strict`` the
    first failure raises InconsistentGram naming the violated identity.
    """
    checks = []
    K = cs.anticanonical()
    lhs, rhs = cs.square(K), antican_square(spec)
    checks.append(("antican_square", lhs == rhs, f"(sum c_i C_i)^2 = {lhs}, (-K_S)^2 = {rhs}"))
    if cs.hyperplane_degrees is not None:
        I = spec.index
        for j, name in enumerate(cs.names):
            lhs = cs.dot(K, cs.curve(name)) / I
            rhs = cs.hyperplane_degrees[j]
            checks.append((f"hyperplane_degree[{name}]", lhs == rhs, f"sum (c_i/I) C_i.{name} = {lhs}, H.{name} = {rhs}"))
    report = ConfigReport(tuple(checks))
    if strict and not report.ok:
        name, detail = report.failures()[0]
        raise InconsistentGram(f"identity {name} violated: {detail}")
    return report


@dataclass(frozen=True)
class BlowupResult:
    base: CurveSystem
    curves: CurveSystem
    point: QuotientPoint
    weights: tuple[int, int]
    log_discrepancy: Fraction
    pullback_coeffs: Mapping[str, Fraction]
    e_square: Fraction
    exceptional: str = "E"

    @property
    def discrepancy(self) -> Fraction:
        """Coefficient of E in K_Y - pi^*K_S."""
        return self.log_discrepancy - 1


def blow_up(
    spec: SurfaceSpec,
    cs: CurveSystem,
    point: QuotientPoint,
    weights: tuple[int, int],
    exceptional: str = "E",
) -> BlowupResult:
    """Weighted blow-up of ``point`` with weights (w1, w2) on its local coordinates.

    With v = (w1, w2)/m: A(E) = w1 + w2 over m, E^2 = -m/(w1 w2) and
    ord_E(C) = min over the germ of (a w1 + c w2)/m.  Strict transforms
    satisfy C'.D' = C.D - ord(C) ord(D) m/(w1 w2) and C'.E = ord(C) m/(w1 w2).
    """
    validate(spec)
    w1, w2 = int(weights[0]), int(weights[1])
    m = point.order
    if w1 <= 0 or w2 <= 0:
        raise InadmissibleWeights(f"weights must be positive, got {(w1, w2)}")
    if not point.is_admissible((w1, w2)):
        raise InadmissibleWeights(
            f"{(w1, w2)} is not congruent to a multiple of {point.local_weights} mod {m}"
        )
    if not point.is_primitive((w1, w2)):
        raise NonPrimitiveWeights(
            f"{(w1, w2)} is divisible in the lattice of {point.type_label()}; "
            f"use {point.primitive_on_ray((w1, w2))}"
        )
    if exceptional in cs.names:
        raise GeometryError(f"curve name {exceptional!r} already used")

    e_unit = Fraction(m, w1 * w2)
    ords: dict[str, Fraction] = {}
    for name in cs.names:
        if name not in cs.germs:
            ords[name] = Fraction(0)
            continue
        g = cs.germs[name]
        if g is None:
            raise MissingGerm(f"curve {name} passes through {point.label} without a local equation")
        ords[name] = Fraction(g.weighted_order((w1, w2)), m)

    n = len(cs)
    rows = []
    for i, a in enumerate(cs.names):
        row = [cs.gram[i][j] - ords[a] * ords[b] * e_unit for j, b in enumerate(cs.names)]
        row.append(ords[a] * e_unit)
        rows.append(row)
    rows.append([ords[a] * e_unit for a in cs.names] + [-e_unit])

    e_coeff = sum((c * ords[name] for c, name in zip(cs.antican, cs.names)), Fraction(0))
    new = CurveSystem(
        names=cs.names + (exceptional,),
        gram=tuple(tuple(r) for r in rows),
        antican=cs.antican + (e_coeff,),
        marked_point=None,
        germs={},
    )
    assert len(new) == n + 1
    return BlowupResult(
        base=cs,
        curves=new,
        point=point,
        weights=(w1, w2),
        log_discrepancy=Fraction(w1 + w2, m),
        pullback_coeffs=ords,
        e_square=-e_unit,
        exceptional=exceptional,
    )


def pullback(br: BlowupResult, D: RDivisor) -> RDivisor:
    """pi^* of a divisor on the base, in the blown-up basis."""
    if D.names != br.base.names:
        raise GeometryError("divisor is not on the blown-up configuration's base")
    e = sum((c * br.pullback_coeffs[n] for n, c in zip(D.names, D.coeffs)), Fraction(0))
    return RDivisor(br.curves.names, D.coeffs + (e,))


def pullback_anticanonical(br: BlowupResult) -> RDivisor:
    """pi^*(-K_S) = sum c_i C_i' + (sum c_i ord_E(C_i)) E."""
    return pullback(br, br.base.anticanonical())
