"""Slow, direct reference implementations used only by the tests.

Nothing here imports the package's counting or arithmetic code.
"""

from __future__ import annotations

import bisect
import itertools
import math
from collections import Counter
from fractions import Fraction


def factors(text: str, m: int) -> set[str]:
    return {text[i:i + m] for i in range(len(text) - m + 1)}


def is_abelian_square(u: str) -> bool:
    h = len(u) // 2
    return len(u) > 0 and len(u) % 2 == 0 and Counter(u[:h]) == Counter(u[h:])


def is_abelian_power(u: str, k: int) -> bool:
    if not u or len(u) % k:
        return False
    m = len(u) // k
    return len({frozenset(Counter(u[i:i + m]).items()) for i in range(0, len(u), m)}) == 1


def spectrum(text: str) -> dict[int, int]:
    out = {}
    for m in range(2, len(text) + 1, 2):
        c = sum(1 for u in factors(text, m) if is_abelian_square(u))
        if c:
            out[m] = c
    return out


def inequivalent(text: str) -> dict[int, int]:
    out = {}
    for m in range(2, len(text) + 1, 2):
        halves = {tuple(sorted(Counter(u[:m // 2]).items())) for u in factors(text, m) if is_abelian_square(u)}
        if halves:
            out[m] = len(halves)
    return out


def total(text: str) -> int:
    return sum(spectrum(text).values())


def balanced(text: str) -> bool:
    for m in range(1, len(text) + 1):
        counts = {u.count("a") for u in factors(text, m)}
        if counts and max(counts) - min(counts) > 1:
            return False
    return True


def right_special(text: str, m: int) -> set[str]:
    ext = {}
    for i in range(len(text) - m):
        ext.setdefault(text[i:i + m], set()).add(text[i + m])
    return {u for u, s in ext.items() if len(s) >= 2}


def least_period(text: str) -> int:
    n = len(text)
    return next(p for p in range(1, n + 1) if all(text[i] == text[i + p] for i in range(n - p)))


def thue_morse(n: int) -> str:
    """Iterate 0 -> 01, 1 -> 10."""
    t = "0"
    while len(t) < n:
        t = "".join("01" if c == "0" else "10" for c in t)
    return t[:n]


def fibonacci(n: int) -> str:
    """Iterate a -> ab, b -> a."""
    w = "a"
    while len(w) < n:
        w = "".join("ab" if c == "a" else "a" for c in w)
    return w[:n]


def characteristic_word(quotients: list[int], n: int) -> str:
    """Standard-word construction for alpha = [0; q1, q2, ...]: s_{-1} = a, s_0 = b, s_k = s_{k-1}^{d_k} s_{k-2}.

    d_1 = q1 - 1 and d_k = q_k afterwards; 'a' marks the letters where floor((k+1) alpha) jumps.
    """
    prev, cur = "a", "b"
    for k, q in enumerate(quotients):
        d = q - 1 if k == 0 else q
        prev, cur = cur, cur * d + prev
        if len(cur) >= n + 2 and k > 0:
            break
    if len(cur) < n:
        raise ValueError("not enough partial quotients for this length")
    return cur[:n]


def convergent(quotients: list[int]) -> Fraction:
    x = Fraction(0)
    for q in reversed(quotients):
        x = 1 / (q + x)
    return x


def golden_high_precision() -> Fraction:
    return convergent([1] * 400)


def frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


def discrepancy(alpha: Fraction, N: int) -> Fraction:
    """Max over all endpoint pairs of [a, b] (or [a, 1)) and (a, b), counting points by bisection.

    Works in integers: points are k*p mod q over the denominator q of alpha.
    """
    p, q = alpha.numerator, alpha.denominator
    pts = sorted(k * p % q for k in range(N + 1))
    ends = sorted(set(pts) | {0, q})
    best = 0  # scaled by N*q
    for i, a in enumerate(ends):
        lo_closed, lo_open = bisect.bisect_left(pts, a), bisect.bisect_right(pts, a)
        for b in ends[i + 1:]:
            closed = bisect.bisect_right(pts, b) - lo_closed
            opened = bisect.bisect_left(pts, b) - lo_open
            best = max(best, closed * q - N * (b - a), N * (b - a) - opened * q)
    return Fraction(best, N * q)


def max_total(n: int, sigma: int) -> int:
    letters = "abcdefgh"[:sigma]
    return max(total("".join(w)) for w in itertools.product(letters, repeat=n))


def layered(n: int) -> str:
    """w_1 = aabaabaab, w_k = w_{k-1} (a^(2^k) b)^3, truncated to n letters."""
    w, k = "aabaabaab", 1
    while len(w) < n:
        k += 1
        w += ("a" * 2**k + "b") * 3
    return w[:n]


def max_inequivalent_total(n: int, sigma: int) -> int:
    letters = "abcdefgh"[:sigma]
    return max(sum(inequivalent("".join(w)).values()) for w in itertools.product(letters, repeat=n))
