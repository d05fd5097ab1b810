"""Glue: curve -> point counts -> zeta numerator -> slopes."""

from __future__ import annotations

from .counting import CountCache, count_series
from .curve import ASCurve, FiberProduct, fiber_product
from .slopes import SlopeProfile, crew_compare, slope_profile
from .zeta import (
    ZetaPolynomial,
    poly_multiply,
    predicted_count,
    validate_weil,
    zeta_from_counts,
)


def curve_zeta(curve: ASCurve, cache: CountCache | None = None, threads: int = 1,
               extra: int = 0) -> ZetaPolynomial:
    """P(t) from N_1..N_g; ``extra`` more counts are enumerated as a check."""
    n_max = min(max(curve.genus + extra, 1), 24)
    counts = count_series(curve, n_max, cache=cache, threads=threads)
    P = zeta_from_counts(counts, curve.genus)
    report = validate_weil(P, counts)
    if not report.ok:
        raise AssertionError(f"Weil checks failed for {curve}: {report}")
    return P


def product_zeta(X: FiberProduct, cache: CountCache | None = None, threads: int = 1,
                 extra: int = 0) -> tuple[ZetaPolynomial, dict[str, ZetaPolynomial]]:
    """P_X = P_left * P_right * P_sum, with the factors returned by name."""
    parts = {
        "left": curve_zeta(X.left, cache, threads, extra),
        "right": curve_zeta(X.right, cache, threads, extra),
        "sum": curve_zeta(X.sum, cache, threads, extra),
    }
    P = poly_multiply(poly_multiply(parts["left"], parts["right"]), parts["sum"])
    assert P.g == X.genus
    return P, parts


def verify_product_counts(X: FiberProduct, P_X: ZetaPolynomial, n_max: int,
                          cache: CountCache | None = None, threads: int = 1) -> dict[int, tuple[int, int]]:
    """Direct N_n(X) against the prediction from P_X; returns mismatches."""
    if n_max <= 0:
        return {}
    counts = count_series(X, n_max, cache=cache, threads=threads)
    out = {}
    for n, N in counts.counts.items():
        pred = predicted_count(P_X, n)
        if N != pred:
            out[n] = (N, pred)
    return out


def crew_for_pair(C: ASCurve, D: ASCurve, cache: CountCache | None = None, threads: int = 1):
    """Slope profiles of X = C x D and Y = sum cover, and their Crew report."""
    X = fiber_product(C, D)
    P_X, parts = product_zeta(X, cache, threads)
    prof_X: SlopeProfile = slope_profile(P_X)
    prof_Y: SlopeProfile = slope_profile(parts["sum"])
    return X, P_X, parts, prof_X, prof_Y, crew_compare(prof_X, prof_Y, 2)
