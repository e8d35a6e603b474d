"""Continued fractions and certified comparisons involving an irrational.

Every decision about {i*x} is made from rational enclosures lo < x < hi
taken from consecutive convergents; no floating point is involved.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable, Iterable, Sequence

from abelsq.errors import RefinementCapError

DEFAULT_PRECISION_CAP = 1 << 14  # bits


@dataclass(frozen=True)
class ContinuedFraction:
    """``[a0; head | period]``; an empty period means only ``head`` is known (finite-list mode)."""

    a0: int
    head: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self):
        if any(a < 1 for a in self.head + self.period):
            raise ValueError("partial quotients after a0 must be positive")
        if not self.head and not self.period:
            raise ValueError("a rational a0 is not an admissible angle; give partial quotients")

    @property
    def periodic(self) -> bool:
        return bool(self.period)

    @property
    def available(self) -> int | None:
        """Number of known partial quotients after a0 (``None`` if unlimited)."""
        return None if self.periodic else len(self.head)

    def quotient(self, k: int) -> int:
        if k == 0:
            return self.a0
        if k <= len(self.head):
            return self.head[k - 1]
        if self.periodic:
            return self.period[(k - 1 - len(self.head)) % len(self.period)]
        raise RefinementCapError(f"partial quotient a_{k} requested but only {len(self.head)} are known",
                                 required=f"a_{k}")

    @property
    def bound(self) -> int:
        """Largest partial quotient a_i, i >= 1 (over the known ones in finite-list mode)."""
        return max(self.head + self.period)

    def convergent_pairs(self, k: int) -> list[tuple[int, int]]:
        p_prev, q_prev, p, q = 1, 0, self.a0, 1
        out = [(p, q)]
        for j in range(1, k + 1):
            a = self.quotient(j)
            p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
            out.append((p, q))
        return out

    def convergents(self, k: int) -> list[Fraction]:
        if k < 0:
            raise ValueError("k must be non-negative")
        return [Fraction(p, q) for p, q in self.convergent_pairs(k)]

    def certified(self, precision_cap: int = DEFAULT_PRECISION_CAP) -> "CertifiedReal":
        cache: list[tuple[int, int]] = []

        def pair(level: int) -> tuple[Fraction, Fraction]:
            if len(cache) < level + 2:
                cache[:] = self.convergent_pairs(level + 1)
            (p1, q1), (p2, q2) = cache[level], cache[level + 1]
            a, b = Fraction(p1, q1), Fraction(p2, q2)
            if (q1 * q2).bit_length() > precision_cap:
                raise RefinementCapError("enclosure refinement exceeded the precision cap",
                                         required=f"> {precision_cap} bits")
            return (a, b) if a < b else (b, a)

        return CertifiedReal(pair, label=str(self))

    def __str__(self) -> str:
        head = ", ".join(map(str, self.head))
        if self.periodic:
            sep = " | " if head else "| "
            return f"[{self.a0}; {head}{sep}{', '.join(map(str, self.period))}]"
        return f"[{self.a0}; {head}]"

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        """Parse ``[a0; a1, a2, ...]`` or ``[a0; pre | period]`` (also accepts a few names)."""
        named = NAMED_ANGLES.get(text.strip().lower())
        if named is not None:
            return named
        m = re.fullmatch(r"\s*\[\s*(-?\d+)\s*;([^\]]*)\]\s*", text)
        if not m:
            raise ValueError(f"cannot parse continued fraction {text!r}")
        body = m.group(2)
        pre, _, per = body.partition("|")
        if "|" in body and not per.strip():
            raise ValueError("empty period")

        def ints(s: str) -> tuple[int, ...]:
            parts = [p.strip() for p in s.split(",") if p.strip()]
            try:
                return tuple(int(p) for p in parts)
            except ValueError:
                raise ValueError(f"bad partial quotient in {text!r}") from None

        return cls(int(m.group(1)), ints(pre), ints(per))


GOLDEN = ContinuedFraction(0, (), (1,))  # phi - 1
SILVER = ContinuedFraction(0, (), (2,))  # sqrt(2) - 1
NAMED_ANGLES = {"fib": GOLDEN, "golden": GOLDEN, "phi-1": GOLDEN, "sqrt2-1": SILVER}


class CertifiedReal:
    """An irrational known through a sequence of strict rational enclosures.

    ``enclosure(level)`` returns ``(lo, hi)`` with ``lo < x < hi``; higher
    levels are tighter.  Instances cache refinements; a single writer per
    instance is assumed.
    """

    def __init__(self, enclosure: Callable[[int], tuple[Fraction, Fraction]], label: str = ""):
        self._enclosure = enclosure
        self.level = 0
        self.label = label
        self._fixed: dict[int, int] = {}

    def enclosure(self, level: int | None = None) -> tuple[Fraction, Fraction]:
        return self._enclosure(self.level if level is None else level)

    @property
    def lo(self) -> Fraction:
        return self.enclosure()[0]

    @property
    def hi(self) -> Fraction:
        return self.enclosure()[1]

    def refine(self) -> None:
        self._enclosure(self.level + 1)  # raises at the cap
        self.level += 1

    def scaled(self, q: Fraction | int) -> "CertifiedReal":
        q = Fraction(q)
        if q == 0:
            raise ValueError("scaling by zero does not give an irrational")

        def enc(level: int) -> tuple[Fraction, Fraction]:
            lo, hi = self._enclosure(level)
            return (q * lo, q * hi) if q > 0 else (q * hi, q * lo)

        return CertifiedReal(enc, label=f"{q}*{self.label}")

    def fixed_point(self, bits: int) -> int:
        """The integer A with A / 2**bits < x < (A + 1) / 2**bits."""
        if bits in self._fixed:
            return self._fixed[bits]
        scale = 1 << bits
        prev = None
        while True:
            lo, hi = self.enclosure()
            if (lo, hi) == prev:
                raise ValueError(f"enclosure of {self.label or 'value'} stopped shrinking at {lo}, {hi}")
            a = floor(lo * scale)
            if floor(hi * scale) == a or hi * scale == a + 1:
                self._fixed[bits] = a
                return a
            prev = (lo, hi)
            self.refine()

    def sign_affine(self, c0: Fraction | int, c1: int, bits: int = 96) -> int:
        """Sign of c0 + c1*x; never zero when c1 != 0."""
        if c1 == 0:
            return (c0 > 0) - (c0 < 0)
        if isinstance(c0, int):
            p, q = c0, 1
        else:
            c0 = Fraction(c0)
            p, q = c0.numerator, c0.denominator
        while True:
            a = self.fixed_point(bits)
            lo = c1 * a if c1 > 0 else c1 * (a + 1)
            hi = lo + abs(c1)  # c1*x lies strictly inside (lo, hi) / 2**bits
            base = p << bits
            if base + q * lo >= 0:
                return 1
            if base + q * hi <= 0:
                return -1
            bits *= 2

    def compare(self, q: Fraction | int) -> int:
        """Sign of x - q."""
        return self.sign_affine(-Fraction(q), 1)

    def floor_affine(self, c0: Fraction | int, c1: int) -> int:
        """floor(c0 + c1*x)."""
        c0 = Fraction(c0)
        if c1 == 0:
            return floor(c0)
        return self.floor_affine_batch(c0, [c1])[0]

    def floor_affine_batch(self, c0: Fraction | int, ms: Sequence[int], bits: int | None = None) -> list[int]:
        """floor(c0 + m*x) for many m, from one fixed-point enclosure (refined when ambiguous)."""
        c0 = Fraction(c0)
        p, q = c0.numerator, c0.denominator
        if not ms:
            return []
        top = max(abs(m) for m in ms)
        bits = bits or (2 * top.bit_length() + 64)
        while True:
            a = self.fixed_point(bits)
            denom = q << bits
            out, ok = [], True
            for m in ms:
                if m == 0:
                    out.append(floor(c0))
                    continue
                lo = m * a if m > 0 else m * (a + 1)
                num_lo = (p << bits) + q * lo
                num_hi = num_lo + q * abs(m)
                f = num_lo // denom
                if num_hi > (f + 1) * denom:
                    ok = False
                    break
                out.append(f)
            if ok:
                return out
            bits *= 2

    def __repr__(self) -> str:
        return f"CertifiedReal({self.label}, level={self.level})"


def as_certified(alpha: "ContinuedFraction | CertifiedReal | str") -> CertifiedReal:
    if isinstance(alpha, CertifiedReal):
        return alpha
    if isinstance(alpha, str):
        alpha = ContinuedFraction.parse(alpha)
    return alpha.certified()


class FractionalParts:
    """Certified fractional parts {i*x}, 1 <= i <= n, of a positive certified real.

    With A / 2**B < x < (A+1) / 2**B, the point {i*x} lies strictly inside
    (r_i, r_i + i) / 2**B where r_i = i*A mod 2**B.  The precision B is
    raised until these intervals neither straddle an integer nor overlap
    each other nor straddle any of the requested rational thresholds;
    afterwards the integer keys r_i order the true points exactly.
    """

    def __init__(self, x: CertifiedReal, n: int, thresholds: Iterable[Fraction] = (),
                 precision_cap: int = DEFAULT_PRECISION_CAP):
        if n < 1:
            raise ValueError("need at least one point")
        if x.compare(0) <= 0:
            raise ValueError("FractionalParts expects a positive real")
        self.x = x
        self.n = n
        self.thresholds = tuple(Fraction(t) for t in thresholds)
        bits = 2 * n.bit_length() + 32
        while True:
            if bits > precision_cap:
                raise RefinementCapError(f"could not separate {n} fractional parts", required=f"> {precision_cap} bits")
            if self._build(bits):
                break
            bits *= 2
        self.bits = bits

    def _build(self, bits: int) -> bool:
        a = self.x.fixed_point(bits)
        mod = 1 << bits
        mask = mod - 1
        n = self.n
        prods = [i * a for i in range(n + 1)]
        keys = [v & mask for v in prods]
        if any(keys[i] + i > mod for i in range(1, n + 1)):
            return False
        order = sorted(range(1, n + 1), key=keys.__getitem__)
        for u, v in zip(order, order[1:]):
            if keys[u] + u > keys[v]:
                return False
        for t in self.thresholds:
            p, q = t.numerator, t.denominator
            target = p << bits
            for i in range(1, n + 1):
                if keys[i] * q < target < (keys[i] + i) * q:
                    return False
        self.keys = keys
        self.floors = [v >> bits for v in prods]
        self.order = order
        self._rank = {i: r for r, i in enumerate(order)}
        return True

    def floor(self, i: int) -> int:
        """floor(i*x)."""
        return self.floors[i]

    def less(self, i: int, j: int) -> bool:
        """{i*x} < {j*x} for distinct i, j in 1..n."""
        return self.keys[i] < self.keys[j]

    def rank(self, i: int) -> int:
        return self._rank[i]

    def below(self, i: int, t: Fraction) -> bool:
        """{i*x} < t for a threshold given at construction."""
        t = Fraction(t)
        if t not in self.thresholds:
            raise ValueError("threshold was not certified at construction")
        return self.keys[i] * t.denominator < (t.numerator << self.bits)

    def enclosure(self, i: int) -> tuple[Fraction, Fraction]:
        mod = 1 << self.bits
        return Fraction(self.keys[i], mod), Fraction(self.keys[i] + i, mod)
