"""Thue-Morse word: generation, defects, factor complexity and brute-force square counts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from abelsq.factors import FactorIndex
from abelsq.counting import StabilityCertificate, stable_factor_set, stable_spectrum
from abelsq.words import BINARY_DIGITS, Word, distinct_factors

# letters are the digits 0/1; in a/b contexts 0 <-> a and 1 <-> b
LETTER_MAP = {"0": "a", "1": "b"}


def tm_letter(i: int) -> int:
    return bin(i).count("1") & 1


def _parity(idx: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return (np.bitwise_count(idx) & 1).astype(np.uint8)
    x = idx.copy()
    p = np.zeros_like(x)
    while x.any():
        p ^= x & 1
        x >>= 1
    return p.astype(np.uint8)


def tm_prefix(n: int) -> Word:
    """First ``n`` letters of t, letter ``i`` being the parity of the binary digit sum of ``i``."""
    if n < 0:
        raise ValueError("length must be non-negative")
    return Word(_parity(np.arange(n, dtype=np.uint64)), BINARY_DIGITS)


def mu(w: Word) -> Word:
    """The substitution 0 -> 01, 1 -> 10."""
    sym = w.symbols
    out = np.empty(2 * sym.size, dtype=np.uint8)
    out[0::2] = sym
    out[1::2] = 1 - sym
    return Word(out, w.alphabet)


# ---------------------------------------------------------------------------
# defects


@dataclass(frozen=True, order=True)
class HalfInteger:
    twice: int

    def __add__(self, other: "HalfInteger") -> "HalfInteger":
        return HalfInteger(self.twice + other.twice)

    def __sub__(self, other: "HalfInteger") -> "HalfInteger":
        return HalfInteger(self.twice - other.twice)

    def __neg__(self) -> "HalfInteger":
        return HalfInteger(-self.twice)

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __str__(self) -> str:
        return str(self.as_fraction())


def defect(n: int) -> HalfInteger:
    """Zeros in t[0..n-1] minus n/2.

    Even prefixes are products of 01/10 blocks, so only the last letter of
    an odd prefix contributes.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n % 2 == 0:
        return HalfInteger(0)
    return HalfInteger(1 if tm_letter(n - 1) == 0 else -1)


def factor_defect(i: int, n: int) -> HalfInteger:
    if i < 0 or n < 0:
        raise ValueError("i and n must be non-negative")
    return defect(i + n) - defect(i)


def tm_is_abelian_square_at(i: int, n: int) -> bool:
    """Whether t[i..i+2n-1] is an abelian square (equal defects of both halves)."""
    if i < 0 or n < 1:
        raise ValueError("need i >= 0 and n >= 1")
    return factor_defect(i, n) == factor_defect(i + n, n)


# ---------------------------------------------------------------------------
# factor complexity


def _start_len(m: int) -> int:
    return max(64, 1 << (8 * max(m, 1) - 1).bit_length())


def tm_factors(n: int) -> tuple[Word, set, StabilityCertificate]:
    prefix, cert = stable_factor_set(tm_prefix, n, start_len=_start_len(n))
    return prefix, distinct_factors(prefix, n), cert


def tm_complexity(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    return len(tm_factors(n)[1])


@lru_cache(maxsize=None)
def tm_complexity_recurrence(n: int) -> int:
    """p(2k) = p(k) + p(k+1), p(2k+1) = 2p(k+1), applied for k >= 2 only.

    At k = 1 the doubling rule contradicts enumeration (p(3) = 6, not 8),
    so p(0..3) are base values.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= 3:
        return (1, 2, 4, 6)[n]
    k = n // 2
    if n % 2 == 0:
        return tm_complexity_recurrence(k) + tm_complexity_recurrence(k + 1)
    return 2 * tm_complexity_recurrence(k + 1)


def tm_faa_fab(n: int) -> tuple[int, int]:
    """Distinct length-``n`` factors that begin and end with the same / different letters."""
    if n < 2:
        raise ValueError("n must be at least 2")
    prefix, factors, _ = tm_factors(n)
    sym = prefix.symbols
    same = sum(1 for f in factors if sym[f.start] == sym[f.start + n - 1])
    return same, len(factors) - same


def tm_faa_fab_range(n_max: int) -> dict[int, tuple[int, int]]:
    """``tm_faa_fab`` for every 2 <= n <= n_max from one certified prefix."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    prefix, _, _ = tm_factors(n_max)
    sym = prefix.symbols
    index = FactorIndex(sym)
    out = {}
    for n in range(2, n_max + 1):
        labels = index.classes(n)
        _, first = np.unique(labels, return_index=True)
        same = int(np.count_nonzero(sym[first] == sym[first + n - 1]))
        out[n] = (same, first.size - same)
    return out


# ---------------------------------------------------------------------------
# abelian squares of order n


@lru_cache(maxsize=8)
def _square_counts(max_order: int) -> tuple[dict[int, int], StabilityCertificate]:
    spec, cert = stable_spectrum(tm_prefix, 2 * max_order, start_len=_start_len(2 * max_order))
    return {m // 2: c for m, c in spec.counts.items()}, cert


def tm_square_counts(max_order: int) -> tuple[dict[int, int], StabilityCertificate]:
    """f(1..max_order) by prefix enumeration, with the doubling certificate."""
    if max_order < 1:
        raise ValueError("max_order must be positive")
    top = -(-max_order // 64) * 64  # round up so nearby requests share one enumeration
    counts, cert = _square_counts(top)
    return {n: counts.get(n, 0) for n in range(1, max_order + 1)}, cert


def tm_f_bruteforce(n: int) -> int:
    if n < 1:
        raise ValueError("order must be positive")
    return tm_square_counts(n)[0][n]


def tm_f_closed_forms(n: int) -> tuple[int, int]:
    """(f(4^n - 1), f(3 * 2^n)) from their closed forms."""
    if n < 1:
        raise ValueError("n must be positive")
    return (4 ** (n + 1) - 4) // 3, 14 * 2**n - 4


def _family(n: int) -> str | None:
    if ((n + 1) & n) == 0 and (n + 1).bit_length() % 2 == 1 and n >= 3:
        return "4^k-1"
    if n % 3 == 0 and (n // 3) & (n // 3 - 1) == 0 and n >= 6:
        return "3*2^k"
    return None


@dataclass
class ExtremaReport:
    ratios: dict[int, Fraction]
    minimum: Fraction
    argmin: list[int]
    maximum: Fraction
    argmax: list[int]
    local_minima: list[int]
    local_maxima: list[int]
    family: dict[int, str | None]


def tm_f_extrema_scan(n_max: int, values: dict[int, int] | None = None) -> ExtremaReport:
    """Extrema of f(n)/n over 1..n_max; ``values`` defaults to the matrix evaluator."""
    if n_max < 12:
        raise ValueError("n_max must be at least 12")
    if values is None:
        from abelsq.regular import tm_f_linear_rep_range
        values = tm_f_linear_rep_range(n_max)
    ratios = {n: Fraction(values[n], n) for n in range(1, n_max + 1)}
    lo, hi = min(ratios.values()), max(ratios.values())
    local_min = [n for n in range(2, n_max) if ratios[n] < ratios[n - 1] and ratios[n] < ratios[n + 1]]
    local_max = [n for n in range(2, n_max) if ratios[n] > ratios[n - 1] and ratios[n] > ratios[n + 1]]
    argmin = [n for n, r in ratios.items() if r == lo]
    argmax = [n for n, r in ratios.items() if r == hi]
    flagged = {n: _family(n) for n in sorted(set(local_min + local_max + argmin + argmax))}
    return ExtremaReport(ratios, lo, argmin, hi, argmax, local_min, local_max, flagged)
