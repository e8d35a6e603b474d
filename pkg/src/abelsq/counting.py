"""Counting distinct and inequivalent abelian-square factors."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from abelsq.errors import NonStabilizationError
from abelsq.factors import FactorIndex
from abelsq.words import PrefixParikhTable, Word, as_word, distinct_factors

PrefixSource = Callable[[int], Word]


@dataclass(frozen=True)
class SquareSpectrum:
    """Nonzero counts of abelian-square factors, keyed by (even) factor length."""

    length: int
    counts: dict[int, int]
    kind: str = "distinct"  # or "inequivalent"

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def count(self, m: int) -> int:
        return self.counts.get(m, 0)

    def cumulative(self, n: int) -> int:
        return sum(c for m, c in self.counts.items() if m <= n)

    def restricted(self, max_len: int) -> "SquareSpectrum":
        return SquareSpectrum(self.length, {m: c for m, c in self.counts.items() if m <= max_len}, self.kind)

    def rows(self, max_len: int | None = None) -> list[tuple[int, int]]:
        top = self.length if max_len is None else max_len
        return [(m, self.count(m)) for m in range(2, top + 1, 2)]


@dataclass(frozen=True)
class StabilityCertificate:
    prefix_len: int
    checked_len: int
    certified: bool = True


def _even_lengths(n: int, lengths: Iterable[int] | None) -> list[int]:
    if lengths is None:
        return list(range(2, n + 1, 2))
    return sorted({m for m in lengths if m >= 2 and m % 2 == 0 and m <= n})


def _square_mask(table: np.ndarray, m: int) -> np.ndarray:
    """Start positions whose length-``m`` factor has equal half Parikh vectors."""
    n = table.shape[0] - 1
    h = m // 2
    left = table[h:n - h + 1] - table[: n - m + 1]
    right = table[m:] - table[h:n - h + 1]
    if table.shape[1] == 2:
        return left[:, 0] == right[:, 0]
    return (left == right).all(axis=1)


def spectrum(w: Word | str, lengths: Iterable[int] | None = None, engine: str = "suffix-array",
             index: FactorIndex | None = None) -> SquareSpectrum:
    """Distinct abelian-square factors of ``w`` for every even length (or the given ones)."""
    w = as_word(w)
    n = len(w)
    todo = _even_lengths(n, lengths)
    if not todo:
        return SquareSpectrum(n, {})
    table = PrefixParikhTable(w).table
    if index is None:
        index = FactorIndex(w.symbols, engine=engine)
    seen = np.zeros(n + 1, dtype=bool)
    counts = {}
    for m in todo:
        mask = _square_mask(table, m)
        if not mask.any():
            continue
        labels = index.classes(m)[mask]
        seen[labels] = True
        counts[m] = int(np.count_nonzero(seen))
        seen[labels] = False
    return SquareSpectrum(n, counts)


def inequivalent_spectrum(w: Word | str, lengths: Iterable[int] | None = None) -> SquareSpectrum:
    """Abelian squares counted up to the Parikh vector of their half."""
    w = as_word(w)
    n = len(w)
    table = PrefixParikhTable(w).table
    counts = {}
    for m in _even_lengths(n, lengths):
        mask = _square_mask(table, m)
        if not mask.any():
            continue
        halves = (table[m // 2:n - m // 2 + 1] - table[: n - m + 1])[mask]
        counts[m] = int(np.unique(halves, axis=0).shape[0])
    return SquareSpectrum(n, counts, kind="inequivalent")


def abelian_square_total(w: Word | str) -> int:
    return spectrum(w).total


def per_factor_average(w: Word | str, n: int) -> Fraction:
    """Mean total abelian-square count over the distinct length-``n`` factors of ``w``."""
    w = as_word(w)
    if not 0 <= n <= len(w):
        raise ValueError(f"factor length {n} out of range for word of length {len(w)}")
    factors = distinct_factors(w, n)
    total = sum(spectrum(w[f.start:f.start + n]).total for f in factors)
    return Fraction(total, len(factors))


def factor_as_values(w: Word | str, n: int) -> list[int]:
    """Total abelian-square counts of each distinct length-``n`` factor (leftmost-occurrence order)."""
    w = as_word(w)
    factors = sorted(distinct_factors(w, n))
    return [spectrum(w[f.start:f.start + n]).total for f in factors]


# ---------------------------------------------------------------------------
# infinite words: prefix doubling


def stable_spectrum(source: PrefixSource, max_len: int, start_len: int | None = None,
                    prefix_cap: int = 1 << 20) -> tuple[SquareSpectrum, StabilityCertificate]:
    """Spectrum of an infinite word for lengths ``<= max_len``.

    Counts from prefix ``L`` are accepted once the prefix ``2L`` reproduces
    them for every requested length.
    """
    L = max(start_len or 4 * max_len, max_len, 2)
    lengths = range(2, max_len + 1, 2)
    current = spectrum(source(L), lengths)
    unstable: list[int] = []
    while 2 * L <= prefix_cap:
        doubled = spectrum(source(2 * L), lengths)
        if doubled.counts == current.counts:
            return current.restricted(max_len), StabilityCertificate(L, 2 * L)
        unstable = [m for m in lengths if doubled.count(m) != current.count(m)]
        L, current = 2 * L, doubled
    raise NonStabilizationError(
        f"abelian-square counts up to length {max_len} did not stabilise below prefix cap {prefix_cap}",
        prefix_len=L, unstable=unstable)


def stable_factor_set(source: PrefixSource, n: int, start_len: int | None = None,
                      prefix_cap: int = 1 << 20) -> tuple[Word, StabilityCertificate]:
    """A prefix containing every length-``n`` factor (certified by doubling)."""
    L = max(start_len or 4 * n, n + 1)
    count = len(distinct_factors(source(L), n))
    while 2 * L <= prefix_cap:
        word = source(2 * L)
        doubled = len(distinct_factors(word, n))
        if doubled == count:
            return source(L), StabilityCertificate(L, 2 * L)
        L, count = 2 * L, doubled
    raise NonStabilizationError(f"factor set of length {n} did not stabilise below {prefix_cap}", prefix_len=L)


@dataclass
class DensityReport:
    rows: list[tuple[int, int, float]]  # (n, cumulative count, cumulative / n^2)
    factor_rows: list[tuple[int, Fraction, float]] = field(default_factory=list)
    stability: StabilityCertificate | None = None
    meta: dict = field(default_factory=dict)

    def ratio(self, n: int) -> float:
        for m, _, r in self.rows:
            if m == n:
                return r
        raise KeyError(n)

    def cumulative(self, n: int) -> int:
        best = 0
        for m, c, _ in self.rows:
            if m <= n:
                best = c
        return best


def density_rows(counts: dict[int, int], n_max: int) -> list[tuple[int, int, float]]:
    rows, acc = [], 0
    for n in range(0, n_max + 1, 2):
        acc += counts.get(n, 0)
        rows.append((n, acc, acc / n**2 if n else 0.0))
    return rows


def density_report(source: PrefixSource, n_max: int, factor_lengths: Iterable[int] = (),
                   prefix_cap: int = 1 << 20, start_len: int | None = None, meta: dict | None = None) -> DensityReport:
    spec, cert = stable_spectrum(source, n_max, start_len=start_len, prefix_cap=prefix_cap)
    report = DensityReport(density_rows(spec.counts, n_max), stability=cert, meta=dict(meta or {}))
    for n in factor_lengths:
        prefix, _ = stable_factor_set(source, n, prefix_cap=prefix_cap)
        mean = per_factor_average(prefix, n)
        report.factor_rows.append((n, mean, float(mean) / n**2))
    return report
