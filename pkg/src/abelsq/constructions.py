"""Explicit words: a^n b a^n b a^n and the layered word built from blocks a^(2^k) b."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from abelsq.counting import per_factor_average, spectrum
from abelsq.errors import NonStabilizationError
from abelsq.words import Word, distinct_factors, max_power_order, right_special_factors

LAYERED_SEED = "aabaabaab"


def triple_block(n: int) -> Word:
    if n < 1:
        raise ValueError("block size must be positive")
    return Word.from_string("b".join(["a" * n] * 3))


def triple_block_family(n: int) -> list[tuple[int, int]]:
    """Pairs (i, j), 0 <= i, j <= n, with i + j + n even: a^i b a^n b a^j is then an abelian square."""
    return [(i, j) for i in range(n + 1) for j in range(n + 1) if (i + j + n) % 2 == 0]


def layered_length(k: int) -> int:
    """|w_k|, where w_1 = aabaabaab and each step appends (a^(2^k) b)^3."""
    if k < 1:
        raise ValueError("k must be positive")
    return 3 * (2 ** (k + 1) - 2) + 3 * k


def layered_prefix(length: int) -> Word:
    if length < 1:
        raise ValueError("length must be positive")
    parts, size, k = [LAYERED_SEED], len(LAYERED_SEED), 1
    while size < length:
        k += 1
        block = ("a" * 2**k + "b") * 3
        parts.append(block)
        size += len(block)
    return Word.from_string("".join(parts)[:length])


def layered_level_for(m: int) -> int:
    """Smallest k >= 1 with 2^k >= m; length-m factors are all present in w_(k+1)."""
    return max(1, (max(m, 1) - 1).bit_length())


def right_special_shape(u: str) -> str | None:
    """Template matched by a factor: a^n, or a^i followed by one to three copies of b a^j with j a power of two."""
    runs = u.split("b")
    if len(runs) == 1:
        return "a^n"
    if len(runs) > 4:
        return None
    tail = {len(r) for r in runs[1:]}
    if len(tail) != 1:
        return None
    j = tail.pop()
    if j < 1 or j & (j - 1):
        return None
    return "a^i" + "ba^j" * (len(runs) - 1)


@dataclass
class LayeredReport:
    prefix_len: int
    checked_len: int
    right_special: dict[int, list[str]]
    bad_shapes: dict[int, list[str]] = field(default_factory=dict)
    witnesses: dict[int, bool] = field(default_factory=dict)  # k -> a^(2^k) occurs
    max_exponent: Fraction | None = None

    @property
    def max_right_special(self) -> int:
        return max((len(v) for v in self.right_special.values()), default=0)

    @property
    def ok(self) -> bool:
        return self.max_right_special <= 4 and not self.bad_shapes and all(self.witnesses.values())


def layered_structure_checks(m_max: int = 64, witness_levels: int = 6) -> LayeredReport:
    """Right special factors of lengths 1..m_max, their shapes, and the a^(2^k) exponent witnesses.

    The prefix w_(k+1) with 2^k >= m_max is used and certified against w_(k+2).
    """
    k = layered_level_for(m_max + 1)
    small, large = layered_prefix(layered_length(k + 1)), layered_prefix(layered_length(k + 2))
    rs: dict[int, list[str]] = {}
    for m in range(1, m_max + 1):
        found = sorted(f.text(small) for f in right_special_factors(small, m))
        check = sorted(f.text(large) for f in right_special_factors(large, m))
        if found != check:
            raise NonStabilizationError(f"right special factors of length {m} changed between ladder levels",
                                        prefix_len=len(small), unstable=[m])
        rs[m] = found
    report = LayeredReport(len(small), len(large), rs)
    for m, us in rs.items():
        bad = [u for u in us if right_special_shape(u) is None]
        if bad:
            report.bad_shapes[m] = bad
    top = layered_prefix(layered_length(witness_levels))
    text = str(top)
    report.witnesses = {j: "a" * 2**j in text for j in range(1, witness_levels + 1)}
    report.max_exponent = max_power_order(top)
    return report


def layered_factor_prefix(n: int) -> Word:
    """A prefix containing every length-n factor of the layered word."""
    return layered_prefix(layered_length(layered_level_for(n) + 1))


@dataclass
class LayeredDensity:
    n: int
    factors: int
    mean: Fraction
    minimum: int

    @property
    def mean_ratio(self) -> float:
        return float(self.mean) / self.n**2

    @property
    def min_ratio(self) -> float:
        return self.minimum / self.n**2


def layered_density(ns: list[int]) -> list[LayeredDensity]:
    """Mean and minimum total abelian-square counts over the length-n factors."""
    out = []
    for n in ns:
        w = layered_factor_prefix(n)
        totals = [spectrum(w[f.start:f.start + n]).total for f in distinct_factors(w, n)]
        out.append(LayeredDensity(n, len(totals), per_factor_average(w, n), min(totals)))
    return out


def block_factor_count(n: int) -> tuple[int, int]:
    """Total abelian squares of the length-n factor that starts with a^j b a^j b a^j b, j = 2^k close to n/100.

    Returns (j, total).
    """
    if n < 1:
        raise ValueError("n must be positive")
    k = max(1, round(math.log2(max(n / 100, 1))))
    start = layered_length(k - 1) if k > 1 else 0
    w = layered_prefix(start + n)
    return 2**k, spectrum(w[start:start + n]).total
