"""Zeta numerators P(t) of curves over F_2 from point counts and back.

With P(t) = prod (1 - alpha_i t), the power sums s_n = sum alpha_i^n satisfy
N_n = q^n + 1 - s_n, and Newton's identities k a_k = -sum_{i<=k} s_i a_{k-i}
give a_1..a_g.  The functional equation a_{2g-i} = q^(g-i) a_i fills the
rest.  Python ints are exact, so none of this can overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .counting import PointCounts

MAX_TWO_G = 64


class InvalidCountsError(ValueError):
    pass


@dataclass(frozen=True)
class ZetaPolynomial:
    coeffs: tuple[int, ...]
    g: int
    q: int = 2

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != 2 * self.g + 1:
            raise ValueError(f"need {2 * self.g + 1} coefficients for genus {self.g}")
        if 2 * self.g > MAX_TWO_G:
            raise ValueError(f"degree {2 * self.g} exceeds the cap {MAX_TWO_G}")

    @classmethod
    def one(cls, q: int = 2) -> ZetaPolynomial:
        return cls((1,), 0, q)

    def functional_equation_violations(self) -> list[int]:
        a, g, q = self.coeffs, self.g, self.q
        return [i for i in range(g + 1) if a[2 * g - i] != q ** (g - i) * a[i]]

    def is_valid(self) -> bool:
        return self.coeffs[0] == 1 and not self.functional_equation_violations()

    def __call__(self, t):
        r = 0
        for c in reversed(self.coeffs):
            r = r * t + c
        return r

    def __mul__(self, other: ZetaPolynomial) -> ZetaPolynomial:
        return poly_multiply(self, other)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            body = "t" if i == 1 else f"t^{i}" if i else ""
            s = body if (mag == 1 and i) else f"{mag}{body}"
            terms.append(("-" if c < 0 else "+", s))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([head] + [f"{sgn} {s}" for sgn, s in terms[1:]])

    def to_json(self) -> dict:
        return {"q": self.q, "g": self.g, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc: dict) -> ZetaPolynomial:
        return cls(tuple(int(c) for c in doc["coeffs"]), int(doc["g"]), int(doc["q"]))


def _power_sums_to_coeffs(s: list[int], k_max: int) -> list[int]:
    """a_0..a_{k_max} from s[1..k_max] (s[0] unused)."""
    a = [1]
    for k in range(1, k_max + 1):
        acc = -sum(s[i] * a[k - i] for i in range(1, k + 1))
        if acc % k:
            raise InvalidCountsError(f"Newton recurrence: {acc} not divisible by {k}")
        a.append(acc // k)
    return a


def zeta_from_counts(counts: PointCounts | dict[int, int], g: int, q: int = 2) -> ZetaPolynomial:
    """Determine P from N_1..N_g; any further counts are only checked."""
    table = counts.counts if isinstance(counts, PointCounts) else dict(counts)
    missing = [n for n in range(1, g + 1) if n not in table]
    if missing:
        raise InvalidCountsError(f"counts missing for n = {missing}")
    s = [0] + [q ** n + 1 - table[n] for n in range(1, g + 1)]
    a = _power_sums_to_coeffs(s, g)
    a += [q ** (i - g) * a[2 * g - i] for i in range(g + 1, 2 * g + 1)]
    P = ZetaPolynomial(tuple(a), g, q)
    extra = {n: N for n, N in table.items() if n > g}
    wrong = [n for n, N in sorted(extra.items()) if predicted_count(P, n) != N]
    if wrong:
        raise InvalidCountsError(
            f"counts at n = {wrong} disagree with the functional equation")
    return P


def power_sums(P: ZetaPolynomial, n_max: int) -> list[int]:
    """[0, s_1, ..., s_{n_max}] with a_k = 0 beyond 2g."""
    a = P.coeffs
    s = [0]
    for n in range(1, n_max + 1):
        an = a[n] if n < len(a) else 0
        s.append(-n * an - sum(s[i] * a[n - i] for i in range(1, n) if n - i < len(a)))
    return s


def predicted_count(P: ZetaPolynomial, n: int) -> int:
    return P.q ** n + 1 - power_sums(P, n)[n]


def poly_multiply(P: ZetaPolynomial, Q: ZetaPolynomial) -> ZetaPolynomial:
    if P.q != Q.q:
        raise ValueError("cannot multiply zeta polynomials over different q")
    out = [0] * (len(P.coeffs) + len(Q.coeffs) - 1)
    for i, a in enumerate(P.coeffs):
        if a:
            for j, b in enumerate(Q.coeffs):
                out[i + j] += a * b
    R = ZetaPolynomial(tuple(out), P.g + Q.g, P.q)
    assert not R.functional_equation_violations()
    return R


@dataclass
class WeilReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        return "all Weil checks pass" if self.ok else "\n".join(self.violations)


def validate_weil(P: ZetaPolynomial, counts: PointCounts | dict[int, int] | None = None,
                  predict_to: int | None = None) -> WeilReport:
    rep = WeilReport()
    a, g, q = P.coeffs, P.g, P.q
    if a[0] != 1:
        rep.violations.append(f"a_0 = {a[0]}, expected 1")
    if a[-1] != q ** g:
        rep.violations.append(f"a_{2 * g} = {a[-1]}, expected q^g = {q ** g}")
    for i in P.functional_equation_violations():
        rep.violations.append(
            f"functional equation fails at i = {i}: a_{2 * g - i} = {a[2 * g - i]}"
            f" != q^{g - i} * a_{i} = {q ** (g - i) * a[i]}")
    table = counts.counts if isinstance(counts, PointCounts) else dict(counts or {})
    top = max([predict_to or 0, *table])
    s = power_sums(P, top)
    for n in range(1, top + 1):
        pred = q ** n + 1 - s[n]
        if (pred - q ** n - 1) ** 2 > 4 * g * g * q ** n:
            rep.violations.append(f"predicted N_{n} = {pred} violates the Weil bound")
        if n in table:
            N = table[n]
            if (N - q ** n - 1) ** 2 > 4 * g * g * q ** n:
                rep.violations.append(f"N_{n} = {N} violates the Weil bound")
            if N != pred:
                rep.violations.append(f"recurrence mismatch at n = {n}: counted {N}, predicted {pred}")
    return rep
