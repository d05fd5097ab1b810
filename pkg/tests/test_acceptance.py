"""Exit criteria for the counterexample build, one test per criterion.

Every test records a PASS/FAIL line that is printed in the terminal summary.
Run ``pytest tests/test_acceptance.py --slow`` to extend criterion 4 to n <= 21.
"""

import time
from fractions import Fraction as Fr

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS
from crewcheck.counting import count_series
from crewcheck.curve import ASCurve, fiber_product
from crewcheck.pipeline import crew_for_pair
from crewcheck.slopes import SlopeProfile, crew_compare, newton_polygon, slope_profile
from crewcheck.survey import GENERIC_PROFILE, SurveyConfig, random_disjoint_pair, run_survey
from crewcheck.zeta import ZetaPolynomial, poly_multiply, predicted_count, zeta_from_counts

P_C_EXPECTED = (1,) + (0,) * 9 + (-32,) + (0,) * 9 + (1024,)
P_Y_EXPECTED = (1, 1, 2, 4, 4, 4, 8, 8, 8, 16, 32, 32, 64, 64, 64, 128, 256, 256,
                512, 1024, 1024, 1024, 2048)
PROFILE_Y = {Fr(0): 1, Fr(3, 7): 7, Fr(1, 2): 6, Fr(4, 7): 7, Fr(1): 1}
PROFILE_X = {Fr(0): 1, Fr(3, 7): 7, Fr(1, 2): 26, Fr(4, 7): 7, Fr(1): 1}
PROFILE_C = {Fr(1, 2): 20}

# everything produced here is re-checked by criterion 7
PRODUCED_ZETAS: list[ZetaPolynomial] = []
PRODUCED_COUNTS = []
PRODUCED_PROFILES = []


def record(k, ok, detail):
    ACCEPTANCE_RESULTS[k] = (bool(ok), detail)
    assert ok, f"criterion {k}: {detail}"


def _zeta(curve, extra=0):
    n_max = max(curve.genus + extra, 1)
    counts = count_series(curve, n_max)
    PRODUCED_COUNTS.append(counts)
    P = zeta_from_counts(counts, curve.genus)
    PRODUCED_ZETAS.append(P)
    return P


def _profile(P):
    prof = slope_profile(P)
    PRODUCED_PROFILES.append(prof)
    return prof


@pytest.fixture(scope="module")
def paper():
    C = ASCurve.from_function("(1 + x^2 + x^8 + x^14 + x^18)/x^21")
    D = ASCurve.from_function("1/(x+1)")
    X = fiber_product(C, D)
    return C, D, X.sum, X


@pytest.fixture(scope="module")
def paper_zetas(paper):
    C, D, Y, _ = paper
    return _zeta(C), _zeta(D, extra=8), _zeta(Y)


def test_criterion_01_genera(paper):
    t0 = time.perf_counter()
    C, D, Y, X = paper
    got = (C.genus, D.genus, Y.genus, X.genus)
    dt = time.perf_counter() - t0
    record(1, got == (10, 0, 11, 21) and dt < 1.0, f"genera {got}, {dt:.3f}s")


def test_criterion_02_P_C(paper):
    t0 = time.perf_counter()
    P = _zeta(paper[0])
    dt = time.perf_counter() - t0
    record(2, P.coeffs == P_C_EXPECTED, f"P_C = {P} ({dt:.2f}s)")


def test_criterion_03_P_Y(paper):
    t0 = time.perf_counter()
    P = _zeta(paper[2])
    dt = time.perf_counter() - t0
    record(3, P.coeffs == P_Y_EXPECTED, f"P_Y has {len(P.coeffs)} coefficients, "
           f"ends {P.coeffs[-1]}t^22 ({dt:.2f}s)")


def test_criterion_04_product_identity(paper, paper_zetas, slow):
    X = paper[3]
    P_C, P_D, P_Y = paper_zetas
    P_X = poly_multiply(poly_multiply(P_C, P_D), P_Y)
    PRODUCED_ZETAS.append(P_X)
    top, budget = (21, 600.0) if slow else (16, 60.0)
    t0 = time.perf_counter()
    counts = count_series(X, top)
    PRODUCED_COUNTS.append(counts)
    dt = time.perf_counter() - t0
    bad = [n for n in range(1, top + 1) if counts.counts[n] != predicted_count(P_X, n)]
    record(4, not bad and dt < budget,
           f"N_n(X) = prediction from P_C*P_Y for n <= {top}; mismatches {bad} ({dt:.2f}s)")


def test_criterion_05_slope_profiles(paper_zetas):
    P_C, _, P_Y = paper_zetas
    t0 = time.perf_counter()
    pc, py, px = _profile(P_C), _profile(P_Y), _profile(poly_multiply(P_C, P_Y))
    dt = time.perf_counter() - t0
    ok = pc == PROFILE_C and py == PROFILE_Y and px == PROFILE_X and dt < 1.0
    record(5, ok, f"C {pc}, Y {py}, X {px}")


def test_criterion_06_crew_report(paper_zetas):
    P_C, _, P_Y = paper_zetas
    rep = crew_compare(slope_profile(poly_multiply(P_C, P_Y)), slope_profile(P_Y), 2)
    values = {r.lam: (r.chi_X, r.deg_chi_Y) for r in rep.rows}
    ok = (rep.violations == [Fr(3, 7), Fr(1, 2), Fr(4, 7)]
          and values == {Fr(0): (0, 0), Fr(3, 7): (-7, -14), Fr(1, 2): (-26, -12),
                         Fr(4, 7): (-7, -14), Fr(1): (0, 0)})
    record(6, ok, "violations at " + ", ".join(map(str, rep.violations))
           + "; " + ", ".join(f"{l}: {v}" for l, v in values.items()))


def test_criterion_08_crew_slope_zero_random_pairs():
    rng = np.random.default_rng(2001)
    t0 = time.perf_counter()
    failures = []
    pairs = 24
    for i in range(pairs):
        C, D = random_disjoint_pair(rng, max_genus=8)
        X, P_X, parts, prof_X, prof_Y, rep = crew_for_pair(C, D)
        PRODUCED_ZETAS.extend([P_X, *parts.values()])
        PRODUCED_PROFILES.extend([prof_X, prof_Y])
        if not rep.row(0).equal:
            failures.append((i, "chi_0"))
        if X.genus - 1 != 2 * (X.sum.genus - 1):
            failures.append((i, "genus"))
        # the factorisation itself, checked on direct counts of X
        counts = count_series(X, min(X.genus, 10))
        PRODUCED_COUNTS.append(counts)
        if any(N != predicted_count(P_X, n) for n, N in counts.counts.items()):
            failures.append((i, "counts"))
    dt = time.perf_counter() - t0
    record(8, not failures and dt < 120, f"{pairs} pairs, failures {failures} ({dt:.1f}s)")


def test_criterion_09_bruteforce_oracles():
    E = ASCurve.from_function("x^3")
    counts = count_series(E, 6)
    PRODUCED_COUNTS.append(counts)
    P = zeta_from_counts(counts, 1)
    PRODUCED_ZETAS.append(P)
    prof = _profile(P)
    R = ASCurve.from_function("1/x^2")
    rc = count_series(R, 8)
    PRODUCED_COUNTS.append(rc)
    rational = all(rc.counts[n] == 2 ** n + 1 for n in range(1, 9))
    ok = (counts.counts[1] == 3 and P.coeffs == (1, 0, 2) and prof == {Fr(1, 2): 2}
          and R.genus == 0 and rational)
    record(9, ok, f"x^3: N_1 = {counts.counts[1]}, P = {P}, slopes {prof}; "
           f"1/x^2: genus {R.genus}, N_n = 2^n + 1 for n <= 8: {rational}")


@pytest.fixture(scope="module")
def survey():
    t0 = time.perf_counter()
    res = run_survey(SurveyConfig(samples=200, seed=1))
    return res, time.perf_counter() - t0


def test_criterion_10a_survey_invariants(survey):
    res, dt = survey
    PRODUCED_PROFILES.extend(e.profile for e in res.entries)
    bad = res.invariant_violations
    assert not bad and dt < 30, bad


def test_criterion_10_survey_generic_profile(survey):
    res, dt = survey
    modal_label, modal_count = res.histogram[0]
    generic_label = SlopeProfile(GENERIC_PROFILE, 10).label()
    ok = (modal_label == generic_label and res.generic_frequency >= 0.5
          and not res.invariant_violations and dt < 30)
    record(10, ok, f"modal {modal_label} x{modal_count}; generic {generic_label} "
           f"{res.generic_frequency:.1%} ({dt:.1f}s)")


def test_criterion_07_property_suite():
    # runs last in this module: sweeps everything produced above
    violations = []
    for P in PRODUCED_ZETAS:
        violations += [f"FE at {i}" for i in P.functional_equation_violations()]
        if P.coeffs[0] != 1 or P.coeffs[-1] != 2 ** P.g:
            violations.append("endpoints of coefficients")
        np_ = newton_polygon(P)
        if P.g and (np_.vertices[0] != (0, 0) or np_.vertices[-1] != (2 * P.g, P.g)):
            violations.append(f"polygon endpoints {np_.vertices}")
        violations += slope_profile(P).check()
    for prof in PRODUCED_PROFILES:
        violations += prof.check()
    for pc in PRODUCED_COUNTS:
        violations += pc.check()
    detail = (f"{len(PRODUCED_ZETAS)} zeta polynomials, {len(PRODUCED_PROFILES)} profiles, "
              f"{len(PRODUCED_COUNTS)} count series; {len(violations)} violations")
    record(7, len(PRODUCED_ZETAS) > 10 and not violations, detail)
