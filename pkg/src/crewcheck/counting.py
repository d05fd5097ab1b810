"""Point counts of Artin-Schreier curves and their fiber products over F_{2^n}.

Counting enumerates every x in F_{2^n} by its raw n-bit encoding.  The field
is cut into contiguous blocks; each block is evaluated with numpy through the
field's log/antilog tables and reduced to an integer partial sum, so any
number of worker threads gives the same total as a sequential run.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .curve import ASCurve, FiberProduct
from .gf2n import MAX_DEGREE, BinaryField, field_create
from .poly import Place, RationalFunction

log = logging.getLogger(__name__)

BLOCK = 1 << 18
DEFAULT_CACHE_DIR = "zeta-cache"


class PointCountError(AssertionError):
    pass


def _check_degree(n: int) -> None:
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"extension degree must be in 1..{MAX_DEGREE}, got {n}")


def _eval_poly(F: BinaryField, bits: int, xs, logx, nonzero):
    exp, _ = F.tables()
    m = F.order - 1
    out = np.full(xs.shape, bits & 1, dtype=np.int64)
    e = 1
    rest = bits >> 1
    while rest:
        if rest & 1:
            out ^= np.where(nonzero, exp[(e * logx) % m], 0)
        rest >>= 1
        e += 1
    return out


def _local_counts(F: BinaryField, f: RationalFunction, lo: int, hi: int) -> np.ndarray:
    """Points above each x in [lo, hi): 1 at a pole, else 2 or 0 by trace of f(x)."""
    exp, logt = F.tables()
    m = F.order - 1
    xs = np.arange(lo, hi, dtype=np.int64)
    lx = logt[xs]
    nz = xs != 0
    num = _eval_poly(F, f.num.bits, xs, lx, nz)
    den = _eval_poly(F, f.den.bits, xs, lx, nz)
    pole = den == 0
    val = np.zeros_like(xs)
    ok = (~pole) & (num != 0)
    val[ok] = exp[(logt[num[ok]] - logt[den[ok]]) % m]
    tr = F.trace_array(val)
    return np.where(pole, 1, 2 - 2 * tr).astype(np.int64)


def _points_at_infinity(curve: ASCurve, n: int) -> int:
    f = curve.f_reduced
    if Place.infinity() in curve.ram:
        return 1
    # no pole: the value at infinity is the ratio of leading coefficients, or 0
    c = 1 if f.num and f.num.degree == f.den.degree else 0
    return 2 if (c * n) % 2 == 0 else 0


def _blocks(order: int):
    return [(lo, min(lo + BLOCK, order)) for lo in range(0, order, BLOCK)]


def _run(blocks, work, threads: int) -> int:
    if threads <= 1 or len(blocks) == 1:
        return sum(work(lo, hi) for lo, hi in blocks)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(lambda b: work(*b), blocks))


def count_points(curve: ASCurve, n: int, threads: int = 1) -> int:
    """N_n for the smooth projective model of y^2 + y = f(x) over F_{2^n}."""
    _check_degree(n)
    F = field_create(n)
    f = curve.f_reduced

    def work(lo, hi):
        return int(_local_counts(F, f, lo, hi).sum())

    return _run(_blocks(F.order), work, threads) + _points_at_infinity(curve, n)


def count_fiber_product(X: FiberProduct, n: int, threads: int = 1) -> int:
    _check_degree(n)
    F = field_create(n)
    fl, fr = X.left.f_reduced, X.right.f_reduced

    def work(lo, hi):
        a = _local_counts(F, fl, lo, hi)
        b = _local_counts(F, fr, lo, hi)
        # disjoint branch loci: a ramified factor contributes 1, the other its own count
        return int((a * b).sum())

    inf = _points_at_infinity(X.left, n) * _points_at_infinity(X.right, n)
    return _run(_blocks(F.order), work, threads) + inf


# -- series, invariants, cache -----------------------------------------------

@dataclass
class PointCounts:
    curve_id: str
    genus: int
    sheets: int  # 2 for a double cover, 4 for a fiber product
    counts: dict[int, int] = field(default_factory=dict)
    q: int = 2

    def check(self) -> list[str]:
        """Violations of the counting invariants (empty when all hold)."""
        bad = []
        for n, N in sorted(self.counts.items()):
            qn = self.q ** n
            if not 0 <= N <= self.sheets * (qn + 1):
                bad.append(f"N_{n} = {N} exceeds {self.sheets}(q^{n}+1)")
            # |N - q^n - 1| <= 2g q^(n/2), squared to stay in integers
            if (N - qn - 1) ** 2 > 4 * self.genus ** 2 * qn:
                bad.append(f"N_{n} = {N} violates the Weil bound for g = {self.genus}")
            for m in self.counts:
                if m < n and n % m == 0 and self.counts[m] > N:
                    bad.append(f"N_{m} = {self.counts[m]} > N_{n} = {N}")
        return bad

    def assert_valid(self) -> None:
        bad = self.check()
        if bad:
            raise PointCountError("; ".join(bad))


def _describe(obj):
    if isinstance(obj, FiberProduct):
        return obj.curve_id, obj.genus, 4, count_fiber_product
    if isinstance(obj, ASCurve):
        return obj.curve_id, obj.genus, 2, count_points
    raise TypeError(f"cannot count points on {type(obj).__name__}")


class CountCache:
    """One JSON document per curve id under ``root``."""

    def __init__(self, root=DEFAULT_CACHE_DIR):
        self.root = Path(root)

    def path(self, curve_id: str) -> Path:
        return self.root / f"{curve_id}.json"

    def load(self, curve_id: str) -> dict[int, int]:
        p = self.path(curve_id)
        if not p.exists():
            return {}
        try:
            doc = json.loads(p.read_text())
            if doc["curve_id"] != curve_id or doc["q"] != 2:
                raise ValueError("header mismatch")
            counts = {}
            for k, v in doc["counts"].items():
                n = int(k)
                if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                    raise ValueError(f"bad count for n={k}")
                moduli = doc["field_moduli"]
                if int(moduli[str(n)], 16) != field_create(n).modulus:
                    raise ValueError(f"field modulus mismatch for n={n}")
                counts[n] = v
            return counts
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            log.warning("discarding corrupt count cache %s (%s); recomputing", p, exc)
            return {}

    def store(self, curve_id: str, counts: dict[int, int]) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        doc = {
            "curve_id": curve_id,
            "q": 2,
            "field_moduli": {str(n): format(field_create(n).modulus, "x") for n in sorted(counts)},
            "counts": {str(n): counts[n] for n in sorted(counts)},
        }
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, indent=1)
        os.replace(tmp, self.path(curve_id))


def count_series(obj, n_max: int, cache: CountCache | None = None,
                 threads: int = 1) -> PointCounts:
    """N_1..N_{n_max} for a curve or fiber product, reusing ``cache`` if given."""
    if n_max < 0 or n_max > MAX_DEGREE:
        raise ValueError(f"n_max must be in 0..{MAX_DEGREE}")
    curve_id, g, sheets, counter = _describe(obj)
    known = cache.load(curve_id) if cache is not None else {}
    missing = [n for n in range(1, n_max + 1) if n not in known]
    for n in missing:
        known[n] = counter(obj, n, threads=threads)
    if cache is not None and missing:
        cache.store(curve_id, known)
    pc = PointCounts(curve_id, g, sheets, {n: known[n] for n in range(1, n_max + 1)})
    pc.assert_valid()
    return pc
