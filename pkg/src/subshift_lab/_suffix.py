"""Suffix-array machinery backing exact factor enumeration on long words.

Prefix-doubling with numpy lexsort builds the suffix array in
O(L log L); the LCP array follows by Kasai's algorithm.  From these two
arrays the number of distinct length-n factors for every n comes out of a
single histogram, and the distinct factors of any one length are one linear
scan.  Everything is exact; no hashing is involved.
"""

import numpy as np


def suffix_array(data: bytes) -> np.ndarray:
    """Indices of the suffixes of ``data`` in lexicographic order (int64)."""
    n = len(data)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    rank = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    k = 1
    order = np.argsort(rank, kind="stable")
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if k < n:
            second[:-k] = rank[k:]
        order = np.lexsort((second, rank))
        r1, r2 = rank[order], second[order]
        boundaries = np.empty(n, dtype=np.int64)
        boundaries[0] = 0
        if n > 1:
            boundaries[1:] = ((r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])).cumsum()
        nxt = np.empty(n, dtype=np.int64)
        nxt[order] = boundaries
        rank = nxt
        if boundaries[-1] == n - 1:
            return order
        k *= 2


def lcp_array(data: bytes, sa: np.ndarray) -> np.ndarray:
    """lcp[i] = longest common prefix of suffixes sa[i-1], sa[i]; lcp[0] = 0."""
    n = len(data)
    lcp = np.zeros(n, dtype=np.int64)
    if n == 0:
        return lcp
    rank = np.empty(n, dtype=np.int64)
    rank[sa] = np.arange(n)
    sa_list = sa.tolist()
    rank_list = rank.tolist()
    h = 0
    out = [0] * n
    for i in range(n):
        r = rank_list[i]
        if r > 0:
            j = sa_list[r - 1]
            while i + h < n and j + h < n and data[i + h] == data[j + h]:
                h += 1
            out[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return np.asarray(out, dtype=np.int64)


class FactorIndex:
    """Distinct-factor queries over one source word."""

    def __init__(self, data: bytes):
        self.data = data
        self.sa = suffix_array(data)
        self.lcp = lcp_array(data, self.sa)

    def distinct_counts(self, n_max: int) -> np.ndarray:
        """counts[n] = number of distinct length-n factors, for 1 <= n <= n_max.

        Returned array has length n_max + 1 with counts[0] unused (set to 1).
        """
        L = len(self.data)
        n_max = min(n_max, L)
        hist = np.bincount(np.minimum(self.lcp, n_max + 1), minlength=n_max + 2)
        ge = hist[::-1].cumsum()[::-1]  # ge[v] = #{i : min(lcp_i, nmax+1) >= v}
        counts = np.zeros(n_max + 1, dtype=np.int64)
        counts[0] = 1
        ns = np.arange(1, n_max + 1)
        counts[1:] = (L - ns + 1) - ge[1:n_max + 1]
        return counts

    def factor_starts(self, n: int) -> np.ndarray:
        """Start positions of the distinct length-n factors, in sorted order.

        Suffixes sharing an n-prefix are contiguous in suffix-array order and
        no suffix shorter than n sits inside such a block, so a new factor
        begins exactly where the filtered subsequence of long-enough suffixes
        skips a position or drops below lcp n.
        """
        L = len(self.data)
        if not (0 < n <= L):
            raise ValueError(f"need 0 < n <= {L}")
        idx = np.flatnonzero(self.sa <= L - n)
        keep = np.empty(len(idx), dtype=bool)
        keep[0] = True
        keep[1:] = (np.diff(idx) > 1) | (self.lcp[idx[1:]] < n)
        return self.sa[idx[keep]]

    def distinct_factors(self, n: int):
        """The distinct length-n factors as a lexicographically sorted list."""
        data = self.data
        return [data[s:s + n] for s in self.factor_starts(n).tolist()]
