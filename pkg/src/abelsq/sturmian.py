"""Sturmian words as rotation codings, their interval partitions and abelian-square counts."""

from __future__ import annotations

import bisect
import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from abelsq.contfrac import (
    DEFAULT_PRECISION_CAP,
    GOLDEN,
    CertifiedReal,
    ContinuedFraction,
    FractionalParts,
    as_certified,
)
from abelsq.counting import DensityReport, density_rows, stable_spectrum
from abelsq.words import BINARY, Word

CONVENTIONS = ("s", "s'")
LIGHT, HEAVY = "light", "heavy"
A, B = 0, 1  # symbol codes of 'a' and 'b'


def _cf(alpha: ContinuedFraction | str) -> ContinuedFraction:
    return ContinuedFraction.parse(alpha) if isinstance(alpha, str) else alpha


def _check_angle(cf: ContinuedFraction) -> None:
    if cf.a0 != 0:
        raise ValueError(f"angle {cf} is not an irrational in (0, 1)")


@dataclass(frozen=True)
class SturmianSpec:
    """Angle, initial point and interval convention of a rotation coding.

    ``rho`` is a rational, or the string ``"alpha"`` for the characteristic
    word.  Under the ``s`` convention letter n is ``a`` exactly when
    {rho + n*alpha} lies in [1 - alpha, 1); ``s'`` uses (1 - alpha, 1].
    """

    alpha: ContinuedFraction
    rho: Fraction | str = "alpha"
    convention: str = "s"

    def __post_init__(self):
        object.__setattr__(self, "alpha", _cf(self.alpha))
        _check_angle(self.alpha)
        if self.convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {CONVENTIONS}")
        if self.rho != "alpha":
            object.__setattr__(self, "rho", Fraction(self.rho))

    @classmethod
    def fibonacci(cls) -> "SturmianSpec":
        return cls(GOLDEN)

    def rho_affine(self) -> tuple[Fraction, int]:
        """rho as c0 + c1*alpha."""
        return (Fraction(0), 1) if self.rho == "alpha" else (self.rho, 0)


def _letters(x: CertifiedReal, c0: Fraction, shift: int, n: int, convention: str) -> np.ndarray:
    """Letters 0..n-1 of the coding from the point c0 + shift*x."""
    ms = list(range(shift, shift + n + 1))
    if convention == "s":
        f = x.floor_affine_batch(c0, ms)
    else:  # ceil(y) = -floor(-y)
        f = [-v for v in x.floor_affine_batch(-c0, [-m for m in ms])]
    steps = np.diff(np.asarray(f, dtype=np.int64))
    return np.where(steps == 1, A, B).astype(np.uint8)


def sturmian_prefix(spec: SturmianSpec, n: int, alpha: CertifiedReal | None = None) -> Word:
    if n < 0:
        raise ValueError("length must be non-negative")
    x = alpha or spec.alpha.certified()
    c0, c1 = spec.rho_affine()
    return Word(_letters(x, c0, c1, n, spec.convention), BINARY)


def fibonacci_prefix(n: int) -> Word:
    return sturmian_prefix(SturmianSpec.fibonacci(), n)


def compare_frac(i: int, j: int, alpha: ContinuedFraction | CertifiedReal | str) -> str:
    """``'<'`` or ``'>'`` according to {i*alpha} versus {j*alpha}."""
    if i == j:
        raise ValueError("i and j must differ; fractional parts of distinct multiples never coincide")
    if i < 1 or j < 1:
        raise ValueError("i and j must be positive")
    x = as_certified(alpha)
    fi, fj = x.floor_affine(0, i), x.floor_affine(0, j)
    # {i x} - {j x} = (i - j) x - (fi - fj)
    return "<" if x.sign_affine(fj - fi, i - j) < 0 else ">"


# ---------------------------------------------------------------------------
# interval partition


@dataclass(frozen=True)
class BreakPoint:
    """{-i*alpha} = (floor(i*alpha) + 1) - i*alpha for i >= 1; i = 0 stands for 0 and i = None for 1."""

    i: int | None
    offset: int
    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> str:
        if self.i is None:
            return "1"
        if self.i == 0:
            return "0"
        return f"{self.offset} - {self.i}*alpha"

    @property
    def preview(self) -> float:
        return float((self.lo + self.hi) / 2)


@dataclass(frozen=True)
class Interval:
    index: int
    left: BreakPoint
    right: BreakPoint
    factor: str
    tag: str


@dataclass
class IntervalPartition:
    alpha: ContinuedFraction | None
    n: int
    points: list[BreakPoint]  # 0, the n sorted points, 1
    intervals: list[Interval]

    @property
    def factors(self) -> list[str]:
        return [iv.factor for iv in self.intervals]

    @property
    def tags(self) -> list[str]:
        return [iv.tag for iv in self.intervals]

    def length_enclosure(self) -> tuple[Fraction, Fraction]:
        """Bounds on the summed interval lengths; the true sum is 1."""
        lo = sum((iv.right.lo - iv.left.hi for iv in self.intervals), Fraction(0))
        hi = sum((iv.right.hi - iv.left.lo for iv in self.intervals), Fraction(0))
        return lo, hi

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["index", "lo", "hi", "lo_exact", "hi_exact", "factor", "tag"])
        for iv in self.intervals:
            out.writerow([iv.index, f"{iv.left.preview:.12f}", f"{iv.right.preview:.12f}",
                          iv.left.exact, iv.right.exact, iv.factor, iv.tag])
        return buf.getvalue()


def interval_partition(alpha: ContinuedFraction | str, n: int, x: CertifiedReal | None = None,
                       precision_cap: int = DEFAULT_PRECISION_CAP) -> IntervalPartition:
    """The n+1 intervals cut from [0, 1) by {-i*alpha}, 1 <= i <= n, with factors and tags."""
    if n < 1:
        raise ValueError("n must be at least 1")
    cf = _cf(alpha)
    x = x or cf.certified(precision_cap)
    fp = FractionalParts(x, n, precision_cap=precision_cap)
    mod = 1 << fp.bits
    pts = [BreakPoint(0, 0, Fraction(0), Fraction(0))]
    # {-i x} = 1 - {i x}: ascending order is descending {i x}
    for i in reversed(fp.order):
        r = fp.keys[i]
        pts.append(BreakPoint(i, fp.floor(i) + 1, 1 - Fraction(r + i, mod), 1 - Fraction(r, mod)))
    pts.append(BreakPoint(None, 1, Fraction(1), Fraction(1)))
    split = next(k for k, p in enumerate(pts) if p.i == n)  # point {-n x} opens interval `split`
    intervals = []
    for k in range(n + 1):
        left, right = pts[k], pts[k + 1]
        inside = (left.hi + right.lo) / 2
        word = _letters(x, inside, 0, n, "s")
        factor = "".join("ab"[s] for s in word)
        intervals.append(Interval(k, left, right, factor, LIGHT if k < split else HEAVY))
    return IntervalPartition(cf, n, pts, intervals)


def heavy_light(alpha: ContinuedFraction | str, n: int, i: int) -> tuple[str, tuple[int, int]]:
    """Tag of interval ``i`` and the Parikh vector (|u|_a, |u|_b) of its factor.

    The positional tag is cross-checked against the factor's a-count
    (floor(n*alpha) for light, one more for heavy); a disagreement raises.
    """
    if not 0 <= i <= n:
        raise ValueError("interval index out of range")
    part = interval_partition(alpha, n)
    iv = part.intervals[i]
    pv = (iv.factor.count("a"), iv.factor.count("b"))
    fl = _cf(alpha).certified().floor_affine(0, n)
    by_parikh = LIGHT if pv[0] == fl else HEAVY if pv[0] == fl + 1 else None
    if by_parikh != iv.tag:
        raise ValueError(f"tag {iv.tag} disagrees with Parikh vector {pv} (floor(n*alpha) = {fl})")
    return iv.tag, pv


# ---------------------------------------------------------------------------
# counting formula


def _odd_floors(x: CertifiedReal, n_max: int, precision_cap: int = DEFAULT_PRECISION_CAP) -> list[bool]:
    """floor(m x) is odd iff {m x / 2} >= 1/2, for m = 0..n_max."""
    half = FractionalParts(x.scaled(Fraction(1, 2)), n_max, thresholds=[Fraction(1, 2)], precision_cap=precision_cap)
    return [False] + [not half.below(m, Fraction(1, 2)) for m in range(1, n_max + 1)]


def sturmian_as_counts(alpha: ContinuedFraction | str, n_max: int, x: CertifiedReal | None = None,
                       precision_cap: int = DEFAULT_PRECISION_CAP) -> dict[int, int]:
    """Distinct abelian squares of each even length 2..n_max in any Sturmian word of this angle.

    With I = {{i*alpha} : 1 <= i <= n}, the count is #{v in I : v >= {n*alpha}}
    when floor(n*alpha) is even and #{v in I : v <= {n*alpha}} when odd.
    """
    if n_max < 2:
        return {}
    cf = _cf(alpha)
    x = x or cf.certified(precision_cap)
    fp = FractionalParts(x, n_max, precision_cap=precision_cap)
    odd = _odd_floors(x, n_max, precision_cap)
    keys = fp.keys
    seen: list[int] = []
    out = {}
    for m in range(1, n_max + 1):
        bisect.insort(seen, keys[m])
        if m % 2:
            continue
        pos = bisect.bisect_left(seen, keys[m])  # keys are distinct
        out[m] = pos + 1 if odd[m] else m - pos
    return out


def sturmian_as_count(alpha: ContinuedFraction | str, n: int) -> int:
    if n < 2 or n % 2:
        raise ValueError("n must be even and at least 2")
    return sturmian_as_counts(alpha, n)[n]


def window_count(alpha: ContinuedFraction | CertifiedReal | str, gamma: Fraction | int, delta: Fraction | int,
                 N: int) -> int:
    """A([gamma, delta); N): indices 0 <= k <= N with {k*alpha} in [gamma, delta)."""
    gamma, delta = Fraction(gamma), Fraction(delta)
    if not 0 <= gamma < delta <= 1:
        raise ValueError("need 0 <= gamma < delta <= 1")
    if N < 0:
        raise ValueError("N must be non-negative")
    count = 1 if gamma == 0 else 0  # k = 0
    if N == 0:
        return count
    fp = FractionalParts(as_certified(alpha), N, thresholds=[gamma, delta])
    for k in range(1, N + 1):
        if not fp.below(k, gamma) and fp.below(k, delta):
            count += 1
    return count


@dataclass
class WindowDiagnostic:
    n: int
    low_quarter: int  # #{1 <= i <= n/2 : {i alpha/2} < 1/4}
    high_quarter: int  # #{n/2 <= m <= n : {m alpha/2} >= 3/4}
    cumulative: int

    @property
    def product(self) -> int:
        return self.low_quarter * self.high_quarter

    @property
    def holds(self) -> bool:
        return self.cumulative >= self.product


def _window_diagnostics(x: CertifiedReal, counts: dict[int, int], checkpoints: Sequence[int]) -> list[WindowDiagnostic]:
    if not checkpoints:
        return []
    top = max(checkpoints)
    q1, q3 = Fraction(1, 4), Fraction(3, 4)
    half = FractionalParts(x.scaled(Fraction(1, 2)), top, thresholds=[q1, q3])
    out = []
    for n in checkpoints:
        low = sum(1 for i in range(1, n // 2 + 1) if half.below(i, q1))
        high = sum(1 for m in range(max(n // 2, 1), n + 1) if not half.below(m, q3))
        cum = sum(c for m, c in counts.items() if m <= n)
        out.append(WindowDiagnostic(n, low, high, cum))
    return out


def sturmian_density_check(alpha: ContinuedFraction | str, n_max: int, checkpoints: Sequence[int] | None = None,
                           precision_cap: int = DEFAULT_PRECISION_CAP) -> DensityReport:
    """Cumulative counts over even lengths up to ``n_max`` with ratios to n^2.

    ``meta['windows']`` holds the two quarter-window counts whose product
    lower-bounds the cumulative count, evaluated at ``checkpoints``.
    """
    cf = _cf(alpha)
    if not cf.periodic:
        raise ValueError("density check needs a periodic expansion (bounded partial quotients)")
    x = cf.certified(precision_cap)
    counts = sturmian_as_counts(cf, n_max, x=x, precision_cap=precision_cap)
    if checkpoints is None:
        checkpoints = [n for n in (10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000) if n <= n_max]
    checkpoints = sorted({n - n % 2 for n in checkpoints if 2 <= n <= n_max})
    report = DensityReport(density_rows(counts, n_max))
    report.meta = {
        "alpha": str(cf),
        "partial_quotient_bound": cf.bound,
        "windows": _window_diagnostics(x, counts, checkpoints),
    }
    return report


@dataclass
class FormulaCheck:
    """Counting formula against enumeration on a prefix of the characteristic word."""

    alpha: str
    n_max: int
    formula: dict[int, int]
    words: dict[int, int]
    prefix_len: int
    mismatches: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def formula_vs_words(alpha: ContinuedFraction | str, n_max: int, prefix_cap: int = 1 << 18) -> FormulaCheck:
    cf = _cf(alpha)
    x = cf.certified()
    spec = SturmianSpec(cf)
    formula = sturmian_as_counts(cf, n_max, x=x)
    spectrum, cert = stable_spectrum(lambda L: sturmian_prefix(spec, L, alpha=x), n_max,
                                     start_len=max(256, 8 * n_max), prefix_cap=prefix_cap)
    words = {m: spectrum.count(m) for m in formula}
    bad = [m for m in formula if formula[m] != words[m]]
    return FormulaCheck(str(cf), n_max, formula, words, cert.prefix_len, bad)
