"""The p = 2 counterexample to the slope-wise Crew formula, end to end.

C: u^2 - u = (1 + x^2 + x^8 + x^14 + x^18)/x^21, D: v^2 - v = 1/(x+1),
Y the sum cover w = u + v and X = C x_P1 D, which is étale of degree 2
over Y.  :func:`reproduce` rebuilds everything from point counts and
compares with the published values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .counting import CountCache
from .curve import ASCurve, fiber_product
from .pipeline import curve_zeta, verify_product_counts
from .slopes import CrewReport, crew_compare, slope_profile
from .zeta import ZetaPolynomial, poly_multiply, validate_weil

F_C = "(1 + x^2 + x^8 + x^14 + x^18)/x^21"
F_D = "1/(x+1)"
F_Y_LATEX = r"\frac{1 + x^2 + x^8 + x^{14} + x^{18}}{x^{21}} + \frac{1}{x+1}"

GENERA = {"C": 10, "D": 0, "Y": 11, "X": 21}

P_C_COEFFS = (1,) + (0,) * 9 + (-32,) + (0,) * 9 + (1024,)
P_Y_COEFFS = (1, 1, 2, 4, 4, 4, 8, 8, 8, 16, 32, 32, 64, 64, 64, 128, 256, 256,
              512, 1024, 1024, 1024, 2048)

_h = Fraction
PROFILE_C = {_h(1, 2): 20}
PROFILE_Y = {_h(0): 1, _h(3, 7): 7, _h(1, 2): 6, _h(4, 7): 7, _h(1): 1}
PROFILE_X = {_h(0): 1, _h(3, 7): 7, _h(1, 2): 26, _h(4, 7): 7, _h(1): 1}
# lambda -> (chi_X, 2 chi_Y)
CREW_ROWS = {_h(0): (0, 0), _h(3, 7): (-7, -14), _h(1, 2): (-26, -12),
             _h(4, 7): (-7, -14), _h(1): (0, 0)}
VIOLATING = [_h(3, 7), _h(1, 2), _h(4, 7)]


def curves():
    C = ASCurve.from_function(F_C)
    D = ASCurve.from_function(F_D)
    return C, D, fiber_product(C, D)


@dataclass
class Check:
    name: str
    expected: object
    computed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


@dataclass
class Reproduction:
    checks: list[Check] = field(default_factory=list)
    P_C: ZetaPolynomial | None = None
    P_Y: ZetaPolynomial | None = None
    P_X: ZetaPolynomial | None = None
    crew: CrewReport | None = None
    verified_to: int = 0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, expected, computed):
        self.checks.append(Check(name, expected, computed))

    def summary(self) -> str:
        if not self.ok:
            return "MISMATCH: " + ", ".join(c.name for c in self.checks if not c.ok)
        bad = ", ".join(str(l) for l in self.crew.violations)
        zero = "holds" if self.crew.row(0).equal else "FAILS"
        return f"violations at {bad}; Crew slope-0 equality {zero}"

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "verified_product_to": self.verified_to,
            "checks": [{"name": c.name, "ok": c.ok, "expected": _plain(c.expected),
                        "computed": _plain(c.computed)} for c in self.checks],
            "P_C": self.P_C.to_json() if self.P_C else None,
            "P_Y": self.P_Y.to_json() if self.P_Y else None,
            "P_X": self.P_X.to_json() if self.P_X else None,
            "crew": self.crew.to_json() if self.crew else None,
            "summary": self.summary(),
        }


def _plain(v):
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, Fraction):
        return str(v)
    return v


def reproduce(verify_product_to: int = 16, cache: CountCache | None = None,
              threads: int = 1) -> Reproduction:
    out = Reproduction()
    C, D, X = curves()
    Y = X.sum
    out.add("Y equation is f_C + f_D", str(ASCurve.from_function(F_Y_LATEX).f_given),
            str(Y.f_given))
    out.add("genera", GENERA, {"C": C.genus, "D": D.genus, "Y": Y.genus, "X": X.genus})

    # reconstruct, validating with a few counts beyond g
    P_C = curve_zeta(C, cache, threads, extra=2)
    P_D = curve_zeta(D, cache, threads, extra=8)
    P_Y = curve_zeta(Y, cache, threads, extra=2)
    out.P_C, out.P_Y = P_C, P_Y
    out.add("P_C", str(ZetaPolynomial(P_C_COEFFS, 10)), str(P_C))
    out.add("P_Y", str(ZetaPolynomial(P_Y_COEFFS, 11)), str(P_Y))
    out.add("P_D", "1", str(P_D))

    P_X = poly_multiply(P_C, P_Y)
    out.P_X = P_X
    out.add("deg P_X, leading coefficient", (42, 2 ** 21), (len(P_X.coeffs) - 1, P_X.coeffs[-1]))
    mism = verify_product_counts(X, P_X, verify_product_to, cache, threads)
    out.verified_to = max(verify_product_to, 0)
    out.add(f"N_n(X) = predicted from P_C P_Y for n <= {out.verified_to}", {}, mism)

    prof_C, prof_Y, prof_X = slope_profile(P_C), slope_profile(P_Y), slope_profile(P_X)
    out.add("slopes of C", _plain(PROFILE_C), _plain(prof_C.multiplicities))
    out.add("slopes of Y", _plain(PROFILE_Y), _plain(prof_Y.multiplicities))
    out.add("slopes of X", _plain(PROFILE_X), _plain(prof_X.multiplicities))

    crew = crew_compare(prof_X, prof_Y, 2)
    out.crew = crew
    out.add("crew rows", _plain(CREW_ROWS),
            _plain({r.lam: (r.chi_X, r.deg_chi_Y) for r in crew.rows}))
    out.add("crew violations", _plain(VIOLATING), _plain(crew.violations))

    problems = []
    for name, P in (("P_C", P_C), ("P_Y", P_Y), ("P_D", P_D), ("P_X", P_X)):
        problems += [f"{name}: {v}" for v in validate_weil(P, predict_to=24).violations]
    for name, prof in (("C", prof_C), ("Y", prof_Y), ("X", prof_X)):
        problems += [f"{name}: {v}" for v in prof.check()]
    if not crew.euler_check:
        problems.append("euler characteristic bookkeeping")
    out.add("invariants", [], problems)
    return out
