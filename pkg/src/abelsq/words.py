"""Finite words over indexed alphabets, Parikh vectors and factor predicates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from abelsq.factors import FactorIndex

ParikhVector = tuple  # tuple[int, ...] of length sigma


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...] = ("a", "b")

    def __post_init__(self):
        if len(self.names) < 1:
            raise ValueError("alphabet must have at least one letter")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"alphabet names must be distinct: {self.names}")
        if len(self.names) > 255:
            raise ValueError("alphabets larger than 255 letters are not supported")

    @property
    def size(self) -> int:
        return len(self.names)

    @classmethod
    def of_size(cls, sigma: int) -> "Alphabet":
        if sigma < 1:
            raise ValueError("alphabet size must be positive")
        return cls(tuple("abcdefghijklmnopqrstuvwxyz"[:sigma]) if sigma <= 26
                   else tuple(f"x{i}" for i in range(sigma)))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"letter {name!r} not in alphabet {self.names}") from None


BINARY = Alphabet(("a", "b"))
BINARY_DIGITS = Alphabet(("0", "1"))


class Word:
    """Immutable word; symbols are stored as a read-only ``uint8`` array of letter indices."""

    __slots__ = ("alphabet", "_sym", "_hash")

    def __init__(self, symbols: Iterable[int] | np.ndarray, alphabet: Alphabet = BINARY):
        arr = np.array(symbols, dtype=np.int64).reshape(-1)
        if arr.size and (arr.min() < 0 or arr.max() >= alphabet.size):
            raise ValueError(f"symbol index out of range for alphabet of size {alphabet.size}")
        sym = arr.astype(np.uint8)
        sym.setflags(write=False)
        self.alphabet = alphabet
        self._sym = sym
        self._hash = None

    @classmethod
    def from_string(cls, text: str, alphabet: Alphabet | None = None) -> "Word":
        if alphabet is None:
            alphabet = infer_alphabet(text)
        lookup = {c: i for i, c in enumerate(alphabet.names)}
        try:
            return cls([lookup[c] for c in text], alphabet)
        except KeyError as exc:
            raise ValueError(f"letter {exc.args[0]!r} not in alphabet {alphabet.names}") from None

    @property
    def symbols(self) -> np.ndarray:
        return self._sym

    def __len__(self) -> int:
        return int(self._sym.size)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self._sym[item], self.alphabet)
        return int(self._sym[item])

    def __str__(self) -> str:
        names = self.alphabet.names
        sep = "" if all(len(n) == 1 for n in names) else " "
        return sep.join(names[s] for s in self._sym.tolist())

    def __repr__(self) -> str:
        text = str(self)
        if len(text) > 60:
            text = text[:57] + "..."
        return f"Word({text!r}, n={len(self)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self._sym, other._sym)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alphabet, self._sym.tobytes()))
        return self._hash

    def __add__(self, other: "Word") -> "Word":
        _same_alphabet(self, other)
        return Word(np.concatenate([self._sym, other._sym]), self.alphabet)

    def __mul__(self, k: int) -> "Word":
        return Word(np.tile(self._sym, k), self.alphabet)

    def reversed(self) -> "Word":
        return Word(self._sym[::-1], self.alphabet)

    def relabel(self, permutation: Sequence[int]) -> "Word":
        """Apply a letter permutation ``i -> permutation[i]`` (same alphabet)."""
        perm = np.asarray(permutation, dtype=np.uint8)
        if sorted(perm.tolist()) != list(range(self.alphabet.size)):
            raise ValueError("not a permutation of the alphabet")
        return Word(perm[self._sym], self.alphabet)


def infer_alphabet(text: str) -> Alphabet:
    letters = set(text)
    if letters <= {"a", "b"}:
        return BINARY
    if letters <= {"0", "1"}:
        return BINARY_DIGITS
    return Alphabet(tuple(sorted(letters)))


def _same_alphabet(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise ValueError(f"alphabet mismatch: {u.alphabet.names} vs {v.alphabet.names}")


def as_word(w: Word | str) -> Word:
    return w if isinstance(w, Word) else Word.from_string(w)


# ---------------------------------------------------------------------------
# Parikh machinery


def parikh(w: Word | str) -> ParikhVector:
    w = as_word(w)
    counts = np.bincount(w.symbols, minlength=w.alphabet.size)
    return tuple(int(c) for c in counts)


class PrefixParikhTable:
    """Row ``i`` holds the Parikh vector of the length-``i`` prefix."""

    def __init__(self, w: Word | str):
        w = as_word(w)
        n, sigma = len(w), w.alphabet.size
        onehot = np.zeros((n + 1, sigma), dtype=np.int64)
        if n:
            onehot[np.arange(1, n + 1), w.symbols] = 1
        self.table = np.cumsum(onehot, axis=0)
        self.table.setflags(write=False)
        self.alphabet = w.alphabet

    def __len__(self) -> int:
        return self.table.shape[0] - 1

    def row(self, i: int) -> ParikhVector:
        return tuple(int(c) for c in self.table[i])


def factor_parikh(t: PrefixParikhTable, i: int, m: int) -> ParikhVector:
    n = len(t)
    if i < 0 or m < 0 or i + m > n:
        raise IndexError(f"factor [{i}, {i + m}) out of range for word of length {n}")
    return tuple(int(c) for c in t.table[i + m] - t.table[i])


def is_abelian_k_power(w: Word | str, k: int) -> bool:
    if k < 2:
        raise ValueError("k must be at least 2")
    w = as_word(w)
    n = len(w)
    if n == 0 or n % k:
        return False
    block = n // k
    table = PrefixParikhTable(w).table
    blocks = np.diff(table[::block], axis=0)
    return bool((blocks == blocks[0]).all())


def is_abelian_square(w: Word | str) -> bool:
    return is_abelian_k_power(w, 2)


# ---------------------------------------------------------------------------
# classical predicates


def is_balanced(w: Word | str) -> bool:
    """Check balancedness by bounding the spread of letter-``a`` counts per window length."""
    w = as_word(w)
    if w.alphabet.size != 2:
        raise ValueError("balancedness is defined here for binary alphabets only")
    c = np.concatenate([[0], np.cumsum(w.symbols == 0)])
    n = len(w)
    for m in range(1, n):
        counts = c[m:] - c[:-m]
        if counts.max() - counts.min() > 1:
            return False
    return True


def _failure_function(sym: Sequence[int]) -> list[int]:
    fail = [0] * (len(sym) + 1)
    fail[0] = -1
    k = -1
    for i, s in enumerate(sym):
        while k >= 0 and sym[k] != s:
            k = fail[k]
        k += 1
        fail[i + 1] = k
    return fail


def period_and_exponent(w: Word | str) -> tuple[int, Fraction]:
    w = as_word(w)
    n = len(w)
    if n == 0:
        raise ValueError("period is undefined for the empty word")
    border = _failure_function(w.symbols.tolist())[n]
    p = n - border
    return p, Fraction(n, p)


def max_power_order(w: Word | str) -> Fraction:
    """Largest exponent |v|/period(v) over nonempty factors v.

    For each candidate period p the longest run of ``w[j] == w[j+p]`` of
    length r gives a factor of length r + p with period at most p.
    """
    w = as_word(w)
    sym = w.symbols
    n = len(w)
    if n == 0:
        raise ValueError("max power order is undefined for the empty word")
    best = Fraction(1)
    for p in range(1, n):
        eq = sym[:-p] == sym[p:]
        if not eq.any():
            continue
        run = _longest_true_run(eq)
        if Fraction(run + p, p) > best:
            best = Fraction(run + p, p)
    return best


def _longest_true_run(mask: np.ndarray) -> int:
    padded = np.concatenate([[False], mask, [False]]).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    if edges.size == 0:
        return 0
    return int((edges[1::2] - edges[0::2]).max())


# ---------------------------------------------------------------------------
# factor sets


class FactorId(NamedTuple):
    """A distinct factor, identified by its leftmost occurrence."""

    start: int
    length: int

    def text(self, w: Word) -> str:
        return str(w[self.start:self.start + self.length])


def distinct_factors(w: Word | str, m: int, engine: str = "suffix-array") -> set[FactorId]:
    w = as_word(w)
    if m < 0 or m > len(w):
        raise ValueError(f"factor length {m} out of range for word of length {len(w)}")
    if m == 0:
        return {FactorId(0, 0)}
    index = FactorIndex(w.symbols, engine=engine)
    labels = index.classes(m)
    _, first = np.unique(labels, return_index=True)
    return {FactorId(int(s), m) for s in first}


def factor_complexity(w: Word | str, m: int, engine: str = "suffix-array") -> int:
    return len(distinct_factors(w, m, engine=engine))


def right_special_factors(w: Word | str, m: int, engine: str = "suffix-array") -> set[FactorId]:
    w = as_word(w)
    n = len(w)
    if m < 0 or m >= n:
        raise ValueError(f"need 0 <= m < |w|, got m={m}, |w|={n}")
    if m == 0:
        return {FactorId(0, 0)} if len(set(w.symbols.tolist())) >= 2 else set()
    index = FactorIndex(w.symbols, engine=engine)
    labels = index.classes(m)[: n - m]  # occurrences followed by a letter
    nxt = w.symbols[m:].astype(np.int64)
    pairs = np.unique(labels * 256 + nxt)
    cls, n_ext = np.unique(pairs // 256, return_counts=True)
    special = set(cls[n_ext >= 2].tolist())
    all_labels = index.classes(m)
    _, first = np.unique(all_labels, return_index=True)
    return {FactorId(int(first_pos), m) for first_pos in first if int(all_labels[first_pos]) in special}
