"""Zariski decomposition and volume of Q-divisor classes on a curve basis.

Nefness and pseudoeffectivity are relative to the supplied basis: the
results are only as good as the list of negative curves the caller provides.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from .geometry import CurveSystem, RDivisor
from .ratlin import SingularMatrix, is_negative_definite, matvec, solve, submatrix


class NotPseudoeffective(ArithmeticError):
    pass


@dataclass(frozen=True)
class Decomposition:
    positive: RDivisor
    negative_coeffs: Mapping[str, Fraction]
    volume: Fraction

    @property
    def negative_support(self) -> tuple[str, ...]:
        return tuple(n for n in self.positive.names if n in self.negative_coeffs)

    @property
    def negative(self) -> RDivisor:
        return RDivisor(
            self.positive.names,
            tuple(self.negative_coeffs.get(n, Fraction(0)) for n in self.positive.names),
        )

    def key(self):
        """Hashable summary used to compare two decompositions exactly."""
        return (self.negative_support, self.positive.coeffs, self.volume)


def products(cs: CurveSystem, D: RDivisor) -> tuple[Fraction, ...]:
    """(D.C_i) for every basis curve."""
    return matvec(cs.gram, D.coeffs)


def nef_check(cs: CurveSystem, D: RDivisor) -> bool:
    return all(p >= 0 for p in products(cs, D))


def _negative_part(cs: CurveSystem, D: RDivisor, support: tuple[int, ...], dprod=None) -> tuple[Fraction, ...]:
    """Coefficients x on ``support`` with (D - sum x_i C_i).C_j = 0 for j in support."""
    if not support:
        return ()
    if dprod is None:
        dprod = products(cs, D)
    return solve(submatrix(cs.gram, support), [dprod[j] for j in support])


def _subtract(D: RDivisor, support: tuple[int, ...], coeffs) -> RDivisor:
    c = list(D.coeffs)
    for i, x in zip(support, coeffs):
        c[i] -= x
    return RDivisor(D.names, tuple(c))


def _finish(cs: CurveSystem, P: RDivisor, support, coeffs) -> Decomposition:
    neg = {cs.names[i]: x for i, x in zip(support, coeffs) if x != 0}
    return Decomposition(P, neg, cs.square(P))


def decompose(cs: CurveSystem, D: RDivisor) -> Decomposition:
    """Zariski decomposition D = P + N by growing the negative support.

    Start with N = 0; repeatedly add every curve with P.C < 0 to the support
    and re-solve P.C = 0 on it, until P is nef.  Raises NotPseudoeffective
    when the support stops being negative definite, a coefficient of N comes
    out negative, or the nef part has negative square.
    """
    support: tuple[int, ...] = ()
    coeffs: tuple[Fraction, ...] = ()
    P = D
    while True:
        prods = products(cs, P)
        new = [i for i, p in enumerate(prods) if p < 0 and i not in support]
        if not new:
            break
        support = tuple(sorted(support + tuple(new)))
        if not is_negative_definite(submatrix(cs.gram, support)):
            names = [cs.names[i] for i in support]
            raise NotPseudoeffective(f"support {names} is not negative definite")
        coeffs = _negative_part(cs, D, support)
        P = _subtract(D, support, coeffs)

    if any(x < 0 for x in coeffs):
        raise NotPseudoeffective("negative part has a negative coefficient")
    dec = _finish(cs, P, support, coeffs)
    if dec.volume < 0:
        raise NotPseudoeffective(f"nef part has negative square {dec.volume}")
    return dec


def volume(cs: CurveSystem, D: RDivisor) -> Fraction:
    try:
        return decompose(cs, D).volume
    except NotPseudoeffective:
        return Fraction(0)


def decompose_bruteforce(cs: CurveSystem, D: RDivisor, max_curves: int = 16) -> Decomposition:
    """Oracle: try every subset of curves as the negative support.

    A subset qualifies when its Gram block is negative definite, the solved
    coefficients are nonnegative, P is nef on the basis and P^2 >= 0.  All
    qualifying subsets must give the same P (subsets differing only by
    zero-coefficient curves are the tie case); that P is returned.
    """
    n = len(cs)
    if n > max_curves:
        raise ValueError(f"brute force over {n} curves is too large (limit {max_curves})")
    dprod = products(cs, D)
    found: dict[tuple, Decomposition] = {}
    for support in _definite_subsets(cs.gram):
        try:
            coeffs = _negative_part(cs, D, support, dprod)
        except SingularMatrix:
            continue
        if any(x < 0 for x in coeffs):
            continue
        P = _subtract(D, support, coeffs)
        if not nef_check(cs, P):
            continue
        dec = _finish(cs, P, support, coeffs)
        if dec.volume < 0:
            continue
        found.setdefault(dec.key(), dec)
    if not found:
        raise NotPseudoeffective("no subset of curves yields a Zariski decomposition")
    if len(found) > 1:
        raise AssertionError(f"non-unique decompositions: {sorted(found)}")
    return next(iter(found.values()))


@lru_cache(maxsize=64)
def _definite_subsets(gram) -> tuple[tuple[int, ...], ...]:
    """Every subset of curves (the empty one included) with negative definite Gram block."""
    n = len(gram)
    out = [()]
    for size in range(1, n + 1):
        for support in combinations(range(n), size):
            if is_negative_definite(submatrix(gram, support)):
                out.append(support)
    return tuple(out)
