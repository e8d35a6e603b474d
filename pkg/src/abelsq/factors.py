"""Exact deduplication of equal-length factors.

Both engines answer one query: for a length ``m``, label every start
position ``0 <= i <= n - m`` so that two positions share a label exactly
when the factors starting there are equal strings.
"""

from __future__ import annotations

import numpy as np

ENGINES = ("suffix-array", "hash")

_P1 = 2_147_483_647  # 2**31 - 1
_P2 = 2_147_483_629
_B1 = 911_382_323
_B2 = 972_663_749


def suffix_array(sym: np.ndarray) -> np.ndarray:
    """Prefix-doubling suffix array (ranks sorted with numpy)."""
    n = int(sym.size)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    _, rank = np.unique(sym, return_inverse=True)
    rank = rank.astype(np.int64)
    k = 1
    while True:
        second = np.zeros(n, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:] + 1
        key = rank * (n + 1) + second
        sa = np.argsort(key, kind="stable")
        sorted_key = key[sa]
        bumps = np.concatenate([[0], (sorted_key[1:] != sorted_key[:-1]).astype(np.int64)])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.cumsum(bumps)
        rank = new_rank
        if rank.max() == n - 1 or k >= n:
            return sa
        k *= 2


def lcp_array(sym: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """Kasai: ``lcp[r]`` is the common-prefix length of suffixes ``sa[r-1]`` and ``sa[r]``."""
    n = int(sym.size)
    s = sym.tolist()
    sa_list = sa.tolist()
    rank = [0] * n
    for r, p in enumerate(sa_list):
        rank[p] = r
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa_list[r - 1]
        while i + h < n and j + h < n and s[i + h] == s[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return np.asarray(lcp, dtype=np.int64)


class FactorIndex:
    """Per-length factor labelling over a fixed symbol array."""

    def __init__(self, sym: np.ndarray, engine: str = "suffix-array"):
        if engine not in ENGINES:
            raise ValueError(f"unknown dedup engine {engine!r}; choose from {ENGINES}")
        self.sym = np.asarray(sym)
        self.n = int(self.sym.size)
        self.engine = engine
        if engine == "suffix-array":
            self._sa = suffix_array(self.sym)
            self._lcp = lcp_array(self.sym, self._sa)
        else:
            self._prefix_hashes()

    def classes(self, m: int) -> np.ndarray:
        """Labels for the ``n - m + 1`` factors of length ``m`` (``1 <= m <= n``)."""
        if not 1 <= m <= self.n:
            raise ValueError(f"factor length {m} out of range 1..{self.n}")
        if self.engine == "suffix-array":
            return self._classes_sa(m)
        return self._classes_hash(m)

    # suffix-array engine ---------------------------------------------------

    def _classes_sa(self, m: int) -> np.ndarray:
        new = self._lcp < m
        new[0] = True
        cid = np.cumsum(new) - 1
        labels = np.empty(self.n, dtype=np.int64)
        labels[self._sa] = cid
        return labels[: self.n - m + 1]

    # hashing engine ----------------------------------------------------------

    def _prefix_hashes(self) -> None:
        h1 = [0] * (self.n + 1)
        h2 = [0] * (self.n + 1)
        for i, s in enumerate(self.sym.tolist()):
            h1[i + 1] = (h1[i] * _B1 + s + 1) % _P1
            h2[i + 1] = (h2[i] * _B2 + s + 1) % _P2
        self._h1 = np.asarray(h1, dtype=np.int64)
        self._h2 = np.asarray(h2, dtype=np.int64)

    def _classes_hash(self, m: int) -> np.ndarray:
        count = self.n - m + 1
        pw1, pw2 = pow(_B1, m, _P1), pow(_B2, m, _P2)
        w1 = (self._h1[m:] - (self._h1[:count] * pw1) % _P1) % _P1
        w2 = (self._h2[m:] - (self._h2[:count] * pw2) % _P2) % _P2
        keys = (w1 << 31) | w2
        _, first, labels = np.unique(keys, return_index=True, return_inverse=True)
        labels = labels.reshape(-1)
        # every hash-equal candidate is compared with its group representative
        windows = np.lib.stride_tricks.sliding_window_view(self.sym, m)
        reps = first[labels]
        bad = np.flatnonzero(reps != np.arange(count))
        if bad.size:
            mismatch = (windows[bad] != windows[reps[bad]]).any(axis=1)
            if mismatch.any():
                return self._relabel_exact(windows, labels)
        return labels.astype(np.int64)

    @staticmethod
    def _relabel_exact(windows: np.ndarray, labels: np.ndarray) -> np.ndarray:
        seen: dict[bytes, int] = {}
        out = np.empty(labels.size, dtype=np.int64)
        for i in range(labels.size):
            out[i] = seen.setdefault(windows[i].tobytes(), len(seen))
        return out
