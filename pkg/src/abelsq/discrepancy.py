"""Exact discrepancy of the rotation sequence ({k*alpha}), 0 <= k <= N."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from abelsq.contfrac import DEFAULT_PRECISION_CAP, CertifiedReal, ContinuedFraction, FractionalParts

LOG_PHI = math.log((1 + math.sqrt(5)) / 2)


@dataclass(frozen=True)
class Discrepancy:
    """D_N = (1 + c0 + c1*alpha) / N, kept exact; ``lo``/``hi`` enclose it."""

    N: int
    c0: int
    c1: int
    lo: Fraction
    hi: Fraction

    @property
    def scaled(self) -> tuple[int, int]:
        """N*D_N as (integer part, coefficient of alpha)."""
        return 1 + self.c0, self.c1

    def at(self, alpha: Fraction) -> Fraction:
        """Evaluate the exact expression at a rational stand-in for alpha."""
        return (1 + self.c0 + self.c1 * alpha) / self.N

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)


def discrepancy_bound(N: int, K: int) -> float:
    """Upper bound on N*D_N for angles whose partial quotients are at most K."""
    return 3 + (1 / LOG_PHI + K / math.log(K + 1)) * math.log(N)


class _Affine:
    """Totally ordered values c0 + c1*alpha with integer coefficients."""

    __slots__ = ("c0", "c1", "x")

    def __init__(self, c0: int, c1: int, x: CertifiedReal):
        self.c0, self.c1, self.x = c0, c1, x

    def __sub__(self, other: "_Affine") -> "_Affine":
        return _Affine(self.c0 - other.c0, self.c1 - other.c1, self.x)

    def __gt__(self, other: "_Affine") -> bool:
        return self.x.sign_affine(self.c0 - other.c0, self.c1 - other.c1) > 0


def discrepancy(alpha: ContinuedFraction | str, N: int, precision_cap: int = DEFAULT_PRECISION_CAP) -> Discrepancy:
    """Supremum over [gamma, delta) of |A([gamma, delta); N)/N - (delta - gamma)|.

    Sort the N+1 points as 0 = y_0 < ... < y_N, put y_{N+1} = 1 and
    z_k = N*y_k - k.  Over-full intervals start at a point and end just
    past one, giving 1 + z_j - z_k (j <= k); under-full ones sit between
    two consecutive-in-rank points, giving 1 + z_k - z_j (j < k <= N+1).
    All z are integer combinations of 1 and alpha, so the maximum is exact.
    """
    if N < 1:
        raise ValueError("N must be positive")
    cf = ContinuedFraction.parse(alpha) if isinstance(alpha, str) else alpha
    x = cf.certified(precision_cap)
    fp = FractionalParts(x, N, precision_cap=precision_cap)
    # N*{m x} - k = N*m*x - N*floor(m x) - k
    zs = [_Affine(0, 0, x)]
    for k, m in enumerate(fp.order, start=1):
        zs.append(_Affine(-N * fp.floor(m) - k, N * m, x))
    zs.append(_Affine(-1, 0, x))  # N*1 - (N+1)

    best = None
    run_max = zs[0]
    for k in range(N + 1):
        if zs[k] > run_max:
            run_max = zs[k]
        cand = run_max - zs[k]
        if best is None or cand > best:
            best = cand
    run_min = zs[0]
    for k in range(1, N + 2):
        cand = zs[k] - run_min
        if cand > best:
            best = cand
        if run_min > zs[k]:
            run_min = zs[k]

    lo_a, hi_a = x.enclosure()
    ends = sorted(((1 + best.c0 + best.c1 * a) / N for a in (lo_a, hi_a)))
    return Discrepancy(N, best.c0, best.c1, ends[0], ends[1])


@dataclass(frozen=True)
class BoundRow:
    N: int
    scaled: float  # N * D_N
    bound: float

    @property
    def ok(self) -> bool:
        return self.scaled <= self.bound


def bound_table(alpha: ContinuedFraction | str, Ns: list[int],
                precision_cap: int = DEFAULT_PRECISION_CAP) -> list[BoundRow]:
    cf = ContinuedFraction.parse(alpha) if isinstance(alpha, str) else alpha
    if not cf.periodic:
        raise ValueError("the bound needs a periodic expansion so that K is known")
    rows = []
    for N in Ns:
        d = discrepancy(cf, N, precision_cap)
        # certified: compare the upper end of the enclosure
        rows.append(BoundRow(N, float(N * d.hi), discrepancy_bound(N, cf.bound)))
    return rows


def discrepancy_quadratic(alpha: ContinuedFraction | str, N: int) -> Discrepancy:
    """Same supremum by enumerating every pair of endpoints and all open/closed variants (O(N^2))."""
    if N < 1:
        raise ValueError("N must be positive")
    cf = ContinuedFraction.parse(alpha) if isinstance(alpha, str) else alpha
    x = cf.certified()
    fp = FractionalParts(x, N)
    # N*y for the sorted points and the right end 1, as integer affine values
    ys = [_Affine(0, 0, x)] + [_Affine(-N * fp.floor(m), N * m, x) for m in fp.order] + [_Affine(N, 0, x)]
    best = None
    for a in range(N + 2):
        for b in range(a + 1, N + 2):
            span = ys[b] - ys[a]  # N*(delta - gamma)
            inside = b - a - 1  # points strictly between
            closed = inside + 1 + (b <= N)  # [y_a, y_b] with y_b a real point
            for cand in (_Affine(closed - span.c0, -span.c1, x), _Affine(span.c0 - inside, span.c1, x)):
                if best is None or cand > best:
                    best = cand
    lo_a, hi_a = x.enclosure()
    ends = sorted((best.c0 + best.c1 * a) / N for a in (lo_a, hi_a))
    return Discrepancy(N, best.c0 - 1, best.c1, ends[0], ends[1])
