"""Random-word statistics and exhaustive maxima over small words."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from abelsq.counting import spectrum
from abelsq.errors import BudgetError
from abelsq.words import Alphabet, Word

DEFAULT_BUDGET = 1 << 22  # canonical words per search
MAX_SEARCH_LEN = 26


# ---------------------------------------------------------------------------
# random words


@dataclass
class RandomStatistic:
    seed: int
    samples: int
    means: dict[int, float]
    exponent: float | None
    intercept: float | None


def random_word_statistic(ns: Sequence[int] = (64, 128, 256, 512), samples: int = 200,
                          seed: int | None = None) -> RandomStatistic:
    """Monte Carlo mean of the total abelian-square count of uniform binary words, with a log-log slope."""
    if samples < 1:
        raise ValueError("samples must be positive")
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (1 << 63))
    rng = np.random.default_rng(seed)
    means = {}
    for n in ns:
        total = 0
        for _ in range(samples):
            sym = rng.integers(0, 2, size=n, dtype=np.uint8)
            total += spectrum(Word(sym)).total if n >= 2 else 0
        means[n] = total / samples
    slope = intercept = None
    pts = [(n, m) for n, m in means.items() if n >= 2 and m > 0]
    if len(pts) >= 2:
        x = np.log([n for n, _ in pts])
        y = np.log([m for _, m in pts])
        slope, intercept = (float(v) for v in np.polyfit(x, y, 1))
    return RandomStatistic(seed, samples, means, slope, intercept)


def exhaustive_mean_total(n: int) -> Fraction:
    """Exact mean total over all 2^n binary words."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n < 2:
        return Fraction(0)
    totals = _batch_distinct_totals(_all_words(n, 2), 2)
    return Fraction(int(totals.sum()), 2**n)


def _all_words(n: int, sigma: int) -> np.ndarray:
    return np.array(list(itertools.product(range(sigma), repeat=n)), dtype=np.uint8).reshape(-1, n)


# ---------------------------------------------------------------------------
# canonical words and batched counting


def canonical_count(n: int, sigma: int) -> int:
    """Words of length n over sigma letters up to renaming: sum of Stirling numbers S(n, k), k <= sigma."""
    if n == 0:
        return 1
    row = [1] + [0] * sigma  # S(0, k)
    for m in range(1, n + 1):
        new = [0] * (sigma + 1)
        for k in range(1, sigma + 1):
            new[k] = k * row[k] + row[k - 1]
        row = new
    return sum(row[1:])


def canonical_words(n: int, sigma: int) -> np.ndarray:
    """Restricted-growth strings: each letter at most one more than the largest letter so far."""
    if n < 1:
        raise ValueError("n must be positive")
    words = np.zeros((1, 1), dtype=np.uint8)
    top = np.zeros(1, dtype=np.uint8)
    for _ in range(1, n):
        parts, tops = [], []
        for c in range(sigma):
            keep = top + 1 >= c
            if not keep.any():
                continue
            w = words[keep]
            parts.append(np.hstack([w, np.full((w.shape[0], 1), c, dtype=np.uint8)]))
            tops.append(np.maximum(top[keep], c))
        words, top = np.vstack(parts), np.concatenate(tops)
    return words


def _prefix_counts(words: np.ndarray, sigma: int) -> np.ndarray:
    onehot = words[:, :, None] == np.arange(sigma, dtype=np.uint8)
    out = np.zeros((words.shape[0], words.shape[1] + 1, sigma), dtype=np.int16)
    np.cumsum(onehot, axis=1, out=out[:, 1:, :])
    return out


def _square_masks(pc: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    n = pc.shape[1] - 1
    h = m // 2
    left = pc[:, h:n - h + 1] - pc[:, : n - m + 1]
    right = pc[:, m:] - pc[:, h:n - h + 1]
    return (left == right).all(axis=2), left


def _batch_distinct_totals(words: np.ndarray, sigma: int) -> np.ndarray:
    """Total distinct abelian-square factors per row."""
    b, n = words.shape
    pc = _prefix_counts(words, sigma)
    totals = np.zeros(b, dtype=np.int64)
    w64 = words.astype(np.int64)
    for m in range(2, n + 1, 2):
        mask, _ = _square_masks(pc, m)
        if not mask.any():
            continue
        count = n - m + 1
        codes = np.zeros((b, count), dtype=np.int64)
        for d in range(m):
            codes = codes * sigma + w64[:, d:d + count]
        codes = np.where(mask, codes, -1)
        codes.sort(axis=1)
        fresh = np.ones_like(codes, dtype=bool)
        fresh[:, 1:] = codes[:, 1:] != codes[:, :-1]
        totals += (fresh & (codes >= 0)).sum(axis=1)
    return totals


def _batch_inequivalent_totals(words: np.ndarray, sigma: int) -> np.ndarray:
    """Total inequivalent abelian squares (distinct half-Parikh vectors) per row."""
    b, n = words.shape
    pc = _prefix_counts(words, sigma)
    totals = np.zeros(b, dtype=np.int64)
    for m in range(2, n + 1, 2):
        mask, left = _square_masks(pc, m)
        if not mask.any():
            continue
        radix = m // 2 + 1
        codes = np.zeros(mask.shape, dtype=np.int64)
        for c in range(sigma):
            codes = codes * radix + left[:, :, c]
        codes = np.where(mask, codes, -1)
        codes.sort(axis=1)
        fresh = np.ones_like(codes, dtype=bool)
        fresh[:, 1:] = codes[:, 1:] != codes[:, :-1]
        totals += (fresh & (codes >= 0)).sum(axis=1)
    return totals


@dataclass
class SearchResult:
    n: int
    sigma: int
    maximum: int
    witness: str
    searched: int
    kind: str = "distinct"


def max_as_search(n: int, sigma: int, budget: int = DEFAULT_BUDGET, kind: str = "distinct",
                  chunk: int = 1 << 15) -> SearchResult:
    """Maximum total abelian-square count over all length-n words on sigma letters, with a witness.

    Only one word per letter-renaming class is examined; the witness is
    the lexicographically smallest canonical maximiser.
    """
    if not 1 <= n <= MAX_SEARCH_LEN:
        raise BudgetError(f"length must lie in 1..{MAX_SEARCH_LEN}")
    if sigma < 1:
        raise ValueError("sigma must be positive")
    if kind not in ("distinct", "inequivalent"):
        raise ValueError("kind must be 'distinct' or 'inequivalent'")
    size = canonical_count(n, sigma)
    if size > budget:
        raise BudgetError(f"{size} canonical words exceed the search budget of {budget}")
    words = canonical_words(n, sigma)
    fn = _batch_distinct_totals if kind == "distinct" else _batch_inequivalent_totals
    best, witness = -1, None
    for lo in range(0, words.shape[0], chunk):
        block = words[lo:lo + chunk]
        totals = fn(block, sigma) if n >= 2 else np.zeros(block.shape[0], dtype=np.int64)
        k = int(np.argmax(totals))
        if totals[k] > best:
            best, witness = int(totals[k]), block[k]
    alpha = Alphabet.of_size(sigma)
    return SearchResult(n, sigma, best, str(Word(witness, alpha)), int(words.shape[0]), kind)


@dataclass
class ConjectureProbe:
    rows: list[tuple[int, int, int]]  # (n, binary max, ternary max)
    inequivalent: list[tuple[int, int]] = field(default_factory=list)  # (n, binary max inequivalent total)
    fitted_c: float | None = None

    @property
    def binary_dominates(self) -> bool:
        return all(b >= t for _, b, t in self.rows)

    def worst_ratio(self) -> float:
        return max(v / (n * math.sqrt(n)) for n, v in self.inequivalent)


def conjecture_probe(n_max: int = 12, ineq_max: int = 20, budget: int = DEFAULT_BUDGET) -> ConjectureProbe:
    """Binary against ternary maxima for n <= n_max, and binary inequivalent maxima for n <= ineq_max."""
    rows = [(n, max_as_search(n, 2, budget).maximum, max_as_search(n, 3, budget).maximum)
            for n in range(1, n_max + 1)]
    ineq = [(n, max_as_search(n, 2, budget, kind="inequivalent").maximum) for n in range(2, ineq_max + 1)]
    probe = ConjectureProbe(rows, ineq)
    x = np.array([n * math.sqrt(n) for n, _ in ineq])
    y = np.array([v for _, v in ineq], dtype=float)
    probe.fitted_c = float(x @ y / (x @ x))  # least squares through the origin
    return probe
