"""Artin-Schreier double covers y^2 - y = f(x) of the projective line over F_2."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .gf2n import gf_sqrt
from .poly import (
    ONE,
    X,
    Place,
    Poly2,
    RationalFunction,
    laurent_coefficients,
    parse_ratfunc,
    pole_orders,
)


class CurveError(ValueError):
    pass


class SplitCoverError(CurveError):
    """f is equivalent to a constant: the cover has no branch points."""


class UnsupportedReductionError(CurveError):
    """An even pole order sits at a place of degree > 1."""


class NotEtaleError(CurveError):
    pass


def _local_parameter_inverse(place: Place) -> RationalFunction:
    """1/t for the local parameter t at a rational place."""
    if place.poly is None:
        return RationalFunction(X)
    return RationalFunction(ONE, place.poly)


def as_reduce(f: RationalFunction):
    """Artin-Schreier reduction of f to odd pole orders.

    Returns ``(f_reduced, shift, ram)`` with
    ``f_reduced = f + shift^2 + shift`` and ``ram`` the (odd) pole orders of
    ``f_reduced``.  Raises :class:`SplitCoverError` when no pole survives.
    """
    shift = RationalFunction(Poly2(0))
    g = f
    while True:
        poles = pole_orders(g)
        even = [(P, d) for P, d in poles.items() if d % 2 == 0]
        if not even:
            break
        P, d = even[0]
        if not P.is_rational():
            raise UnsupportedReductionError(
                f"even pole order {d} at the degree-{P.degree} place {P} of {f}")
        _, (c, *_) = laurent_coefficients(g, P, 1)
        s = gf_sqrt(c)
        h = RationalFunction.of(s.bits) * _local_parameter_inverse(P) ** (d // 2)
        g = g + h.wp()
        shift = shift + h
    if not poles:
        raise SplitCoverError(
            f"{f} reduces to the constant {g}; the cover is not a branched double cover")
    return g, shift, poles


def riemann_hurwitz_genus(ram: dict[Place, int]) -> int:
    """Genus of a p = 2 Artin-Schreier cover of P^1 with reduced pole orders ``ram``.

    2g - 2 = -4 + sum (d_P + 1) deg P.
    """
    total = sum((d + 1) * P.degree for P, d in ram.items())
    assert total % 2 == 0, "reduced pole orders must be odd"
    return (total - 2) // 2


@dataclass(frozen=True)
class ASCurve:
    f_given: RationalFunction
    f_reduced: RationalFunction
    shift: RationalFunction
    ram: dict
    genus: int

    @classmethod
    def from_function(cls, f: RationalFunction | str) -> ASCurve:
        if isinstance(f, str):
            f = parse_ratfunc(f)
        f_red, shift, ram = as_reduce(f)
        return cls(f, f_red, shift, ram, riemann_hurwitz_genus(ram))

    def __hash__(self):
        return hash((self.f_given, self.f_reduced))

    @property
    def branch_locus(self) -> frozenset:
        return frozenset(self.ram)

    @property
    def curve_id(self) -> str:
        return hashlib.sha256(str(self.f_reduced).encode()).hexdigest()

    def __str__(self):
        return f"y^2 + y = {self.f_given}"


def genus(curve: ASCurve) -> int:
    return curve.genus


def sum_cover(C: ASCurve, D: ASCurve) -> ASCurve:
    """The cover w^2 - w = f_C + f_D, i.e. w = u + v."""
    return ASCurve.from_function(C.f_given + D.f_given)


def check_etale(C: ASCurve, D: ASCurve) -> bool:
    """Sufficient test that X = C x_P1 D -> sum_cover(C, D) is étale.

    True iff the branch loci are disjoint.  Overlapping loci give False, which
    means "not certified", not "ramified".
    """
    return C.branch_locus.isdisjoint(D.branch_locus)


@dataclass(frozen=True)
class FiberProduct:
    left: ASCurve
    right: ASCurve
    sum: ASCurve
    genus: int

    @property
    def curve_id(self) -> str:
        key = f"X:{self.left.f_reduced}|{self.right.f_reduced}"
        return hashlib.sha256(key.encode()).hexdigest()

    @property
    def components(self) -> tuple[ASCurve, ASCurve, ASCurve]:
        return self.left, self.right, self.sum


def fiber_product(C: ASCurve, D: ASCurve) -> FiberProduct:
    if not check_etale(C, D):
        common = sorted(C.branch_locus & D.branch_locus)
        raise NotEtaleError(
            "branch loci overlap at " + ", ".join(map(str, common)))
    Y = sum_cover(C, D)
    return FiberProduct(C, D, Y, C.genus + D.genus + Y.genus)
