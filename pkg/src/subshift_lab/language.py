"""Factor languages: enumeration, word complexity, special words, Rauzy graphs.

A LanguageTable is backed either by a long source word (factors = sliding
windows, counted exactly through a suffix array) or by explicitly enumerated
factor sets (used for shift-of-finite-type data).  Tables start unvalidated;
`stability_check` certifies that two consecutive generation levels of the
same system see identical factor sets up to n_max, which for the minimal
systems handled here pins the table to the subshift language at those
lengths.  All downstream analyses insist on a validated table.
"""

from dataclasses import dataclass

import numpy as np

from ._suffix import FactorIndex
from .errors import InsufficientDepthError, InvalidArgumentError
from .words import render


class LanguageTable:
    """Factor sets L_1..L_n_max of one symbolic data source."""

    def __init__(self, *, n_max, source, word=None, factor_sets=None, validated=False):
        if (word is None) == (factor_sets is None):
            raise InvalidArgumentError("exactly one backend (word or factor_sets) required")
        self.n_max = n_max
        self.source = source
        self.validated = validated
        self._word = word
        self._sets = factor_sets
        self._index = None
        self._profile = None
        self._factor_cache = {}

    # -- backend ---------------------------------------------------------

    @property
    def word(self):
        return self._word

    def _fi(self) -> FactorIndex:
        if self._index is None:
            self._index = FactorIndex(self._word)
        return self._index

    def profile_raw(self) -> np.ndarray:
        """p(0..n_max) without requiring validation (p[0] = 1 by convention)."""
        if self._profile is None:
            if self._word is not None:
                self._profile = self._fi().distinct_counts(self.n_max)
            else:
                p = np.zeros(self.n_max + 1, dtype=np.int64)
                p[0] = 1
                for n in range(1, self.n_max + 1):
                    p[n] = len(self._sets[n])
                self._profile = p
        return self._profile

    def p(self, n: int) -> int:
        if not (0 <= n <= self.n_max):
            raise InvalidArgumentError(f"length {n} outside table range 0..{self.n_max}")
        return int(self.profile_raw()[n])

    def factors(self, n: int):
        """Sorted list of the distinct length-n factors."""
        if not (0 < n <= self.n_max):
            raise InvalidArgumentError(f"length {n} outside table range 1..{self.n_max}")
        if n not in self._factor_cache:
            if self._word is not None:
                fs = self._fi().distinct_factors(n)
            else:
                fs = sorted(self._sets[n])
            if len(self._factor_cache) < 64:
                self._factor_cache[n] = fs
            else:
                return fs
        return self._factor_cache[n]

    def follower_map(self, n: int):
        """word -> set of letters a with (word a) in L_{n+1}."""
        out = {}
        for w in self.factors(n + 1):
            out.setdefault(w[:n], set()).add(w[n])
        return out

    def preceder_map(self, n: int):
        """word -> set of letters a with (a word) in L_{n+1}."""
        out = {}
        for w in self.factors(n + 1):
            out.setdefault(w[1:], set()).add(w[0])
        return out

    def _require_validated(self):
        if not self.validated:
            raise InvalidArgumentError("table is not validated; run stability_check first")


def build_table(w: bytes, n_max: int) -> LanguageTable:
    """Factor table of a single word; validated=False until certified."""
    if n_max < 1:
        raise InvalidArgumentError("n_max must be positive")
    if len(w) < 2 * n_max:
        raise InsufficientDepthError(
            f"word of length {len(w)} too short for n_max={n_max} (need >= {2 * n_max})"
        )
    if max(w) > 254:
        raise InvalidArgumentError("symbol values above 254 are reserved")
    return LanguageTable(n_max=n_max, source=f"word[{len(w)}]", word=w)


def sft_table(alphabet_size: int, forbidden, n_max: int) -> LanguageTable:
    """Exact factor sets of the shift of finite type avoiding the given words.

    Enumerates allowed words by dynamic programming, then prunes words with no
    right or left extension to a fixpoint so the sets form a genuine language.
    Exact by construction, so the table is born validated.
    """
    forbidden = [bytes(f) for f in forbidden]
    if any(len(f) == 0 for f in forbidden):
        raise InvalidArgumentError("forbidden words must be nonempty")
    sets = {1: {bytes([a]) for a in range(alphabet_size)} - set(forbidden)}
    for n in range(2, n_max + 2):
        prev = sets[n - 1]
        cur = set()
        for w in prev:
            for a in range(alphabet_size):
                ext = w + bytes([a])
                if not any(ext.endswith(f) for f in forbidden):
                    cur.add(ext)
        sets[n] = cur
    # prune non-biextendable words from the top down
    for n in range(n_max, 0, -1):
        above = sets[n + 1]
        sets[n] = {w for w in sets[n]
                   if any(v[:n] == w for v in above) and any(v[1:] == w for v in above)}
    table = LanguageTable(
        n_max=n_max,
        source=f"sft(alphabet={alphabet_size}, forbidden={[render(f) for f in forbidden]})",
        factor_sets={n: frozenset(sets[n]) for n in range(1, n_max + 1)},
        validated=True,
    )
    return table


def stability_check(t1: LanguageTable, t2: LanguageTable) -> LanguageTable:
    """Certify t1 against a deeper table t2 of the same system.

    For word-backed tables of consecutive generation levels the shallower
    word occurs inside the deeper one, so the per-length factor sets are
    nested and set equality reduces to count equality; the containment is
    verified, not assumed.  Raises InsufficientDepthError naming the smallest
    disagreeing length.
    """
    if t1.n_max != t2.n_max:
        raise InvalidArgumentError("tables must share n_max")
    if t1._word is not None and t2._word is not None:
        if t1._word not in t2._word:
            raise InvalidArgumentError(
                "first word does not occur in second; tables are not nested levels"
            )
        p1, p2 = t1.profile_raw(), t2.profile_raw()
        diff = np.flatnonzero(p1[1:] != p2[1:])
        if len(diff):
            n_bad = int(diff[0]) + 1
            raise InsufficientDepthError(
                f"factor sets disagree at length {n_bad} "
                f"({int(p1[n_bad])} vs {int(p2[n_bad])} factors)",
                first_mismatch=n_bad,
            )
    else:
        for n in range(1, t1.n_max + 1):
            if set(t1.factors(n)) != set(t2.factors(n)):
                raise InsufficientDepthError(
                    f"factor sets disagree at length {n}", first_mismatch=n
                )
    t1.validated = True
    return t1


@dataclass(frozen=True)
class ComplexityProfile:
    p: tuple
    eventually_periodic_at: int | None

    @property
    def eventually_periodic(self) -> bool:
        return self.eventually_periodic_at is not None


def complexity_profile(t: LanguageTable) -> ComplexityProfile:
    """p(1..n_max), flagging eventually-periodic data where p stalls."""
    t._require_validated()
    prof = t.profile_raw()
    stall = None
    for n in range(1, t.n_max):
        if prof[n + 1] == prof[n]:
            stall = n
            break
    return ComplexityProfile(p=tuple(int(x) for x in prof[1:]), eventually_periodic_at=stall)


@dataclass(frozen=True)
class SpecialReport:
    n: int
    right_special: tuple   # (word, frozenset of following letters)
    left_special: tuple    # (word, frozenset of preceding letters)
    bi_special: tuple      # words

    @property
    def right_words(self):
        return tuple(w for w, _ in self.right_special)

    @property
    def left_words(self):
        return tuple(w for w, _ in self.left_special)


def special_words(t: LanguageTable, n: int) -> SpecialReport:
    """Classify the length-n factors by their one-sided extension sets."""
    t._require_validated()
    if not (0 < n < t.n_max):
        raise InvalidArgumentError(f"need 0 < n < n_max={t.n_max}")
    rights = tuple(
        (w, frozenset(f)) for w, f in sorted(t.follower_map(n).items()) if len(f) >= 2
    )
    lefts = tuple(
        (w, frozenset(f)) for w, f in sorted(t.preceder_map(n).items()) if len(f) >= 2
    )
    rw = {w for w, _ in rights}
    bi = tuple(w for w, _ in lefts if w in rw)
    return SpecialReport(n=n, right_special=rights, left_special=lefts, bi_special=bi)


@dataclass(frozen=True)
class SpecialAccountingReport:
    """Both sides of the right-special accounting identity, plus the
    gap-counting lower bound derived from it."""

    r: int
    q: int
    lhs: int                     # p(q)
    rhs: int                     # p(r) + sum of per-length contributions
    contributions: tuple         # sum over right-special w of (|F(w)|-1), per length
    equal: bool
    dead_ends: int               # factors in range with no right extension (data corruption)
    lower_bound: int             # p(r) + (q-r) + #{lengths in [r,q) with >= 2 right-special words}
    lower_bound_ok: bool
    lower_bound_tight: bool      # counts <= 2 and all follower sets of size 2 in range


def verify_special_accounting(t: LanguageTable, r: int, q: int) -> SpecialAccountingReport:
    """Check p(q) = p(r) + sum over lengths i in [r, q) of sum_{right-special w
    of length i} (|F(w)| - 1), evaluating both sides independently.

    The identity is unconditional for genuine subshift languages; a mismatch
    indicates corrupted data (e.g. a factor with no right extension).
    """
    t._require_validated()
    if not (0 < r < q <= t.n_max):
        raise InvalidArgumentError("need 0 < r < q <= n_max")
    contribs = []
    multi_lengths = 0
    dead_ends = 0
    tight = True
    for i in range(r, q):
        fm = t.follower_map(i)
        special = [f for f in fm.values() if len(f) >= 2]
        contribs.append(sum(len(f) - 1 for f in special))
        dead_ends += t.p(i) - len(fm)  # factors with no right extension
        if len(special) > 1:
            multi_lengths += 1
        if len(special) > 2 or any(len(f) != 2 for f in special):
            tight = False
    lhs = t.p(q)
    rhs = t.p(r) + sum(contribs)
    lb = t.p(r) + (q - r) + multi_lengths
    return SpecialAccountingReport(
        r=r,
        q=q,
        lhs=lhs,
        rhs=rhs,
        contributions=tuple(contribs),
        equal=lhs == rhs,
        dead_ends=dead_ends,
        lower_bound=lb,
        lower_bound_ok=lhs >= lb,
        lower_bound_tight=tight,
    )


@dataclass(frozen=True)
class RauzyGraph:
    """Vertices are the length-n factors; each (n+1)-factor w contributes the
    arc from w[:-1] to w[1:], labelled by w itself."""

    n: int
    vertices: tuple
    edges: tuple  # (source word, target word, label word)

    def out_degrees(self):
        deg = {v: 0 for v in self.vertices}
        for s, _, _ in self.edges:
            deg[s] += 1
        return deg

    def in_degrees(self):
        deg = {v: 0 for v in self.vertices}
        for _, tgt, _ in self.edges:
            deg[tgt] += 1
        return deg

    def to_dot(self) -> str:
        lines = ["digraph rauzy {"]
        for v in self.vertices:
            lines.append(f'  "{render(v)}";')
        for s, tgt, label in self.edges:
            lines.append(f'  "{render(s)}" -> "{render(tgt)}" [label="{render(label)}"];')
        lines.append("}")
        return "\n".join(lines)


def rauzy_graph(t: LanguageTable, n: int) -> RauzyGraph:
    t._require_validated()
    if not (0 < n < t.n_max):
        raise InvalidArgumentError(f"need 0 < n < n_max={t.n_max}")
    vertices = tuple(t.factors(n))
    edges = tuple((w[:-1], w[1:], w) for w in t.factors(n + 1))
    return RauzyGraph(n=n, vertices=vertices, edges=edges)
