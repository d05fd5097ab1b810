"""Newton polygons of zeta numerators, slope multiplicities and Crew's comparison.

Everything here is exact: valuations and indices are ints, slopes are
:class:`fractions.Fraction`, hull turns are decided by cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .zeta import ZetaPolynomial


def v2(n: int) -> int:
    if n == 0:
        raise ValueError("v_2(0) is infinite")
    return (n & -n).bit_length() - 1


def _valuation_q(a: int, q: int) -> int:
    if q != 2:
        raise NotImplementedError("only q = 2 is supported")
    return v2(a)


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[tuple[int, int], ...]
    vertices: tuple[tuple[int, int], ...]

    def segments(self):
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            yield Fraction(y1 - y0, x1 - x0), x1 - x0

    def height_at(self, x) -> Fraction:
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x0 <= x <= x1:
                return y0 + Fraction(y1 - y0, x1 - x0) * (x - x0)
        raise ValueError(f"{x} outside the polygon")


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(P: ZetaPolynomial) -> NewtonPolygon:
    """Lower convex hull of (i, v_q(a_i)) over the nonzero coefficients."""
    pts = tuple((i, _valuation_q(a, P.q)) for i, a in enumerate(P.coeffs) if a)
    if P.g == 0:
        return NewtonPolygon(pts, ())
    hull: list[tuple[int, int]] = []
    for p in pts:
        # pop while the turn is not strictly counter-clockwise, merging collinear points
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return NewtonPolygon(pts, tuple(hull))


class SlopeProfileError(AssertionError):
    pass


@dataclass(frozen=True)
class SlopeProfile:
    multiplicities: dict
    g: int

    def __post_init__(self):
        object.__setattr__(self, "multiplicities", dict(sorted(self.multiplicities.items())))

    def __getitem__(self, lam) -> int:
        return self.multiplicities.get(Fraction(lam), 0)

    def __eq__(self, other):
        if isinstance(other, SlopeProfile):
            return self.g == other.g and self.multiplicities == other.multiplicities
        if isinstance(other, dict):
            return self.multiplicities == {Fraction(k): v for k, v in other.items()}
        return NotImplemented

    def __hash__(self):
        return hash((self.g, tuple(self.multiplicities.items())))

    def __add__(self, other: SlopeProfile) -> SlopeProfile:
        m = dict(self.multiplicities)
        for lam, h in other.multiplicities.items():
            m[lam] = m.get(lam, 0) + h
        return SlopeProfile(m, self.g + other.g)

    def check(self) -> list[str]:
        m, g = self.multiplicities, self.g
        bad = []
        if sum(m.values()) != 2 * g:
            bad.append(f"sum of multiplicities {sum(m.values())} != 2g = {2 * g}")
        if sum(lam * h for lam, h in m.items()) != g:
            bad.append(f"sum of lambda*h != g = {g}")
        for lam, h in m.items():
            if not 0 <= lam <= 1:
                bad.append(f"slope {lam} outside [0, 1]")
            if m.get(1 - lam, 0) != h:
                bad.append(f"h_{lam} = {h} but h_{1 - lam} = {m.get(1 - lam, 0)}")
            if h % lam.denominator:
                bad.append(f"denominator of {lam} does not divide h = {h}")
        return bad

    def assert_valid(self) -> None:
        bad = self.check()
        if bad:
            raise SlopeProfileError("; ".join(bad))

    def label(self) -> str:
        return "{" + ", ".join(f"{lam}:{h}" for lam, h in self.multiplicities.items()) + "}"

    __str__ = label

    def is_supersingular(self) -> bool:
        return self.g > 0 and set(self.multiplicities) == {Fraction(1, 2)}


def slope_profile(np_: NewtonPolygon | ZetaPolynomial) -> SlopeProfile:
    if isinstance(np_, ZetaPolynomial):
        np_ = newton_polygon(np_)
    m: dict[Fraction, int] = {}
    for lam, length in np_.segments():
        m[lam] = m.get(lam, 0) + length
    g = np_.vertices[-1][1] if np_.vertices else 0
    return SlopeProfile(m, g)


def chi_lambda(profile: SlopeProfile, lam) -> int:
    """Euler characteristic [lam = 0] - h^1_lam + [lam = 1] of a curve."""
    lam = Fraction(lam)
    if not 0 <= lam <= 1:
        raise ValueError(f"slope {lam} outside [0, 1]")
    return int(lam == 0) - profile[lam] + int(lam == 1)


@dataclass(frozen=True)
class CrewRow:
    lam: Fraction
    chi_X: int
    deg_chi_Y: int

    @property
    def equal(self) -> bool:
        return self.chi_X == self.deg_chi_Y


@dataclass(frozen=True)
class CrewReport:
    degree: int
    rows: tuple[CrewRow, ...]
    euler_X: int
    euler_Y: int
    g_X: int
    g_Y: int

    @property
    def euler_check(self) -> bool:
        return self.euler_X == 2 - 2 * self.g_X and self.euler_Y == 2 - 2 * self.g_Y

    @property
    def violations(self) -> list[Fraction]:
        return [r.lam for r in self.rows if not r.equal]

    def row(self, lam) -> CrewRow:
        lam = Fraction(lam)
        for r in self.rows:
            if r.lam == lam:
                return r
        raise KeyError(lam)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "rows": [{"lambda": str(r.lam), "chi_X": r.chi_X, "deg_chi_Y": r.deg_chi_Y,
                      "equal": r.equal} for r in self.rows],
        }

    def to_table(self) -> str:
        head = f"{'lambda':>8} {'chi_X':>7} {self.degree}*chi_Y".rstrip()
        lines = [head]
        for r in self.rows:
            mark = "=" if r.equal else "!="
            lines.append(f"{str(r.lam):>8} {r.chi_X:>7} {r.deg_chi_Y:>7}  {mark}")
        lines.append(f"euler: sum chi_X = {self.euler_X} (2-2g = {2 - 2 * self.g_X}), "
                     f"sum chi_Y = {self.euler_Y} (2-2g = {2 - 2 * self.g_Y})")
        return "\n".join(lines)


def crew_compare(X_profile: SlopeProfile, Y_profile: SlopeProfile, degree: int) -> CrewReport:
    if degree < 1:
        raise ValueError("cover degree must be positive")
    lams = sorted(set(X_profile.multiplicities) | set(Y_profile.multiplicities)
                  | {Fraction(0), Fraction(1)})
    rows = tuple(CrewRow(lam, chi_lambda(X_profile, lam), degree * chi_lambda(Y_profile, lam))
                 for lam in lams)
    return CrewReport(
        degree, rows,
        euler_X=sum(chi_lambda(X_profile, lam) for lam in lams),
        euler_Y=sum(chi_lambda(Y_profile, lam) for lam in lams),
        g_X=X_profile.g, g_Y=Y_profile.g)
