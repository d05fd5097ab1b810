"""Random sampling of Artin-Schreier covers.

Two samplers live here: numerators A(x) for the family y^2 + y = A(x)/x^21
(the slope survey), and pairs of covers with disjoint branch loci (used to
exercise Crew's slope-0 identity).  Both draw from numpy's PCG64 generator,
``numpy.random.default_rng(seed)``, and draw all random bits up front so the
results do not depend on how work is later split across threads.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .curve import ASCurve
from .pipeline import curve_zeta
from .poly import X, Place, Poly2, RationalFunction
from .slopes import SlopeProfile, slope_profile
from .zeta import MAX_TWO_G

GENERATOR = "numpy PCG64 (numpy.random.default_rng)"
POLE_ORDER = 21
GENERIC_PROFILE = {Fraction(3, 7): 7, Fraction(1, 2): 6, Fraction(4, 7): 7}
SUPERSINGULAR_PROFILE = {Fraction(1, 2): 20}
SUPERSINGULAR_NUMERATOR = Poly2.from_exponents([0, 2, 8, 14, 18])
# 2 g_X = 4 (g_1 + g_2) + 2 <= MAX_TWO_G
MAX_PAIR_GENUS = (MAX_TWO_G - 2) // 4


@dataclass(frozen=True)
class SurveyConfig:
    samples: int = 200
    seed: int = 1
    degree_bound: int = 20
    pole_order: int = POLE_ORDER
    include_supersingular: bool = False

    def __post_init__(self):
        if self.samples < 0:
            raise ValueError("samples must be nonnegative")
        if not 0 <= self.degree_bound <= 20:
            raise ValueError("degree bound must be in 0..20")
        if self.pole_order != POLE_ORDER:
            raise ValueError("the survey family has pole order 21")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def sample_numerators(config: SurveyConfig) -> list[Poly2]:
    """A(x) = 1 + sum c_i x^i, i = 1..degree_bound, each c_i a fair bit."""
    rng = np.random.default_rng(config.seed)
    bits = rng.integers(0, 2, size=(config.samples, config.degree_bound), dtype=np.int64)
    out = []
    for row in bits:
        b = 1
        for i, c in enumerate(row, start=1):
            b |= int(c) << i
        out.append(Poly2(b))
    return out


@dataclass
class SurveyEntry:
    index: int
    numerator: Poly2
    profile: SlopeProfile


@dataclass
class SurveyResult:
    config: SurveyConfig
    entries: list[SurveyEntry] = field(default_factory=list)

    @property
    def histogram(self) -> list[tuple[str, int]]:
        c = Counter(e.profile.label() for e in self.entries)
        return sorted(c.items(), key=lambda kv: (-kv[1], kv[0]))

    @property
    def generic_count(self) -> int:
        return sum(1 for e in self.entries if e.profile == GENERIC_PROFILE)

    @property
    def generic_frequency(self) -> float:
        return self.generic_count / len(self.entries) if self.entries else 0.0

    @property
    def supersingular(self) -> list[SurveyEntry]:
        return [e for e in self.entries if e.profile.is_supersingular()]

    @property
    def invariant_violations(self) -> list[str]:
        return [f"sample {e.index}: {v}" for e in self.entries for v in e.profile.check()]

    def to_json(self) -> dict:
        cfg = self.config
        return {
            "generator": GENERATOR,
            "seed": cfg.seed,
            "samples": cfg.samples,
            "degree_bound": cfg.degree_bound,
            "pole_order": cfg.pole_order,
            "histogram": [{"profile": k, "count": v} for k, v in self.histogram],
            "generic_profile": SlopeProfile(GENERIC_PROFILE, 10).label(),
            "generic_count": self.generic_count,
            "generic_frequency": self.generic_frequency,
            "supersingular": [{"index": e.index, "numerator": str(e.numerator)}
                              for e in self.supersingular],
            "invariant_violations": self.invariant_violations,
        }

    def to_table(self) -> str:
        cfg = self.config
        lines = [f"survey of y^2 + y = A(x)/x^{cfg.pole_order}: {len(self.entries)} samples, "
                 f"seed {cfg.seed}, degree bound {cfg.degree_bound}, generator {GENERATOR}"]
        for label, count in self.histogram:
            share = count / len(self.entries)
            lines.append(f"  {count:>5}  {share:6.1%}  {label}")
        generic = SlopeProfile(GENERIC_PROFILE, 10).label()
        lines.append(f"generic profile {generic}: {self.generic_count} "
                     f"({self.generic_frequency:.1%})")
        for e in self.supersingular:
            lines.append(f"supersingular: sample {e.index}, A = {e.numerator}")
        if self.invariant_violations:
            lines.append(f"INVARIANT VIOLATIONS: {len(self.invariant_violations)}")
        return "\n".join(lines)


class SurveyError(AssertionError):
    pass


def _profile_for(index: int, A: Poly2, cache, threads: int) -> SurveyEntry:
    curve = ASCurve.from_function(RationalFunction(A, X ** POLE_ORDER))
    if curve.genus != 10:
        raise SurveyError(f"sample {index}: A = {A} gives genus {curve.genus}, expected 10")
    prof = slope_profile(curve_zeta(curve, cache, threads))
    return SurveyEntry(index, A, prof)


def run_survey(config: SurveyConfig, cache=None, threads: int = 1) -> SurveyResult:
    numerators = sample_numerators(config)
    if config.include_supersingular:
        numerators.append(SUPERSINGULAR_NUMERATOR)
    jobs = list(enumerate(numerators))
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            entries = list(pool.map(lambda j: _profile_for(j[0], j[1], cache, 1), jobs))
    else:
        entries = [_profile_for(i, A, cache, 1) for i, A in jobs]
    return SurveyResult(config, entries)


# -- random disjoint pairs ---------------------------------------------------

_PLACES = [
    Place.finite(X),
    Place.finite(Poly2(0b11)),
    Place.infinity(),
    Place.finite(Poly2(0b111)),
    Place.finite(Poly2(0b1011)),
    Place.finite(Poly2(0b1101)),
]


def _polar_part(rng, place: Place, order: int) -> RationalFunction:
    """A random function whose only pole is ``place``, of exact odd order."""
    if place.poly is None:
        # x^order plus random lower monomials
        bits = 1 << order
        for i in range(1, order):
            bits |= int(rng.integers(0, 2)) << i
        return RationalFunction(Poly2(bits))
    e = place.degree
    f = RationalFunction(Poly2(0))
    for k in range(1, order + 1):
        hi = 1 << e
        c = int(rng.integers(1 if k == order else 0, hi))
        if c:
            f = f + RationalFunction(Poly2(c), place.poly ** k)
    return f


def random_cover(rng, places: list[Place], max_genus: int) -> ASCurve:
    """Random cover branched exactly at ``places`` with genus <= max_genus.

    Pole orders are odd so the cover is already reduced.  The sum of
    (d_P + 1) deg P is capped at 2 max_genus + 2.
    """
    budget = 2 * max_genus + 2
    need = sum(2 * P.degree for P in places)
    if need > budget:
        raise ValueError("too many branch places for the genus bound")
    f = RationalFunction(Poly2(0))
    spare = budget - need
    for P in places:
        extra = int(rng.integers(0, spare // (2 * P.degree) + 1))
        spare -= 2 * P.degree * extra
        f = f + _polar_part(rng, P, 1 + 2 * extra)
    return ASCurve.from_function(f)


def random_disjoint_pair(rng, max_genus: int = 8,
                         max_total: int = MAX_PAIR_GENUS) -> tuple[ASCurve, ASCurve]:
    """Two covers with disjoint, nonempty branch loci, each of genus <= max_genus.

    The fiber product has genus 2(g_1 + g_2) + 1, so ``max_total`` bounds
    g_1 + g_2 to keep its zeta numerator within the degree cap.
    """
    idx = rng.permutation(len(_PLACES))
    k1 = int(rng.integers(1, 3))
    k2 = int(rng.integers(1, 3))
    left = _fit([_PLACES[i] for i in idx[:k1]], max_genus)
    C = random_cover(rng, left, max_genus)
    bound = min(max_genus, max_total - C.genus)
    right = _fit([_PLACES[i] for i in idx[k1:k1 + k2]], bound)
    return C, random_cover(rng, right, bound)


def _fit(places: list[Place], max_genus: int) -> list[Place]:
    while len(places) > 1 and sum(2 * P.degree for P in places) > 2 * max_genus + 2:
        places = places[:-1]
    return places
