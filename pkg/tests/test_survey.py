from fractions import Fraction as Fr

import numpy as np
import pytest

from crewcheck.survey import (
    SUPERSINGULAR_NUMERATOR,
    SurveyConfig,
    random_cover,
    random_disjoint_pair,
    run_survey,
    sample_numerators,
    _PLACES,
)


def test_numerators_have_unit_constant_term():
    cfg = SurveyConfig(samples=50, seed=9, degree_bound=12)
    for A in sample_numerators(cfg):
        assert A.bits & 1
        assert A.degree <= 12


def test_sampling_is_reproducible():
    cfg = SurveyConfig(samples=20, seed=123)
    assert sample_numerators(cfg) == sample_numerators(cfg)
    assert sample_numerators(cfg) != sample_numerators(SurveyConfig(samples=20, seed=124))


def test_survey_deterministic_across_threads():
    cfg = SurveyConfig(samples=24, seed=5)
    a = run_survey(cfg, threads=1)
    b = run_survey(cfg, threads=4)
    assert a.histogram == b.histogram
    assert [e.profile for e in a.entries] == [e.profile for e in b.entries]


def test_forced_supersingular_numerator():
    res = run_survey(SurveyConfig(samples=0, include_supersingular=True))
    assert len(res.entries) == 1
    e = res.entries[0]
    assert e.numerator == SUPERSINGULAR_NUMERATOR
    assert e.profile == {Fr(1, 2): 20}
    assert res.supersingular == [e]


def test_empty_survey():
    res = run_survey(SurveyConfig(samples=0))
    assert res.histogram == []
    assert res.generic_frequency == 0.0
    assert res.to_json()["histogram"] == []


def test_config_validation():
    with pytest.raises(ValueError):
        SurveyConfig(degree_bound=21)
    with pytest.raises(ValueError):
        SurveyConfig(samples=-1)
    with pytest.raises(ValueError):
        SurveyConfig(pole_order=19)


def test_random_cover_branches_exactly_where_asked():
    rng = np.random.default_rng(0)
    for _ in range(30):
        k = int(rng.integers(1, 3))
        places = [_PLACES[i] for i in rng.permutation(4)[:k]]
        c = random_cover(rng, places, 6)
        assert set(c.ram) == set(places)
        assert c.genus <= 6


def test_random_pairs_are_disjoint_and_bounded():
    rng = np.random.default_rng(1)
    for _ in range(30):
        C, D = random_disjoint_pair(rng)
        assert C.branch_locus.isdisjoint(D.branch_locus)
        assert C.genus <= 8 and D.genus <= 8
        assert 2 * (2 * (C.genus + D.genus) + 1) <= 64


def test_census_of_all_reduced_f2_forms():
    # every reduced x^-21 + sum_{j odd < 21} c_j x^-j over F_2, i.e. every
    # A(x) with only even exponents; the survey's histogram samples from these
    from collections import Counter

    from crewcheck.curve import ASCurve
    from crewcheck.pipeline import curve_zeta
    from crewcheck.poly import X, Poly2, RationalFunction
    from crewcheck.slopes import slope_profile

    census = Counter()
    for mask in range(1 << 10):
        exps = [0] + [2 * (k + 1) for k in range(10) if mask >> k & 1]
        c = ASCurve.from_function(RationalFunction(Poly2.from_exponents(exps), X ** 21))
        census[slope_profile(curve_zeta(c)).label()] += 1
    assert sum(census.values()) == 1024
    assert census["{1/2:20}"] == 8
    assert census["{1/4:4, 1/3:3, 1/2:6, 2/3:3, 3/4:4}"] == 512
    # the profile {3/7:7, 1/2:6, 4/7:7} does not occur over F_2
    assert census["{3/7:7, 1/2:6, 4/7:7}"] == 0
