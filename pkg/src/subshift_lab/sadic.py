"""Derived-word recursions, unique block decomposition, the two-branch
closed-form complexity, block-commutation difference counts, shift-difference
densities, and syndetic shift sets for the tau_{m,n} S-adic family.

Level words follow
    v_1 = pi(0),  u_1 = pi(1),
    v_{k+1} = v_k^{m_k - 1} u_k,   u_{k+1} = v_k^{n_k - 1} u_k,
with s_1 the maximal common suffix of v_1^inf and v_1^inf u_1, p_1 the maximal
common prefix of v_1 and u_1, and
    s_{k+1} = s_k v_{k+1},         p_{k+1} = v_k^{m_k - 1} p_k.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    BudgetExceededError,
    InsufficientDataError,
    InvalidArgumentError,
    NotAConcatenationError,
    OutOfRangeError,
)
from .substitution import DEFAULT_BUDGET, Substitution, generate_word
from .words import max_common_prefix, max_common_suffix_periodic


@dataclass(frozen=True)
class SadicParams:
    """A generating substitution pi plus the (m_k), (n_k) parameter sequences."""

    pi: Substitution
    mk: tuple
    nk: tuple

    def __post_init__(self):
        if len(self.mk) != len(self.nk):
            raise InvalidArgumentError("mk and nk must have equal length")
        if self.pi.domain_size < 2:
            raise InvalidArgumentError("pi needs a binary domain")
        for m, n in zip(self.mk, self.nk):
            if not (0 < m < n):
                raise InvalidArgumentError(f"need 0 < m < n at every level, got ({m}, {n})")

    @property
    def levels(self) -> int:
        return len(self.mk)

    @property
    def pairs(self) -> tuple:
        return tuple(zip(self.mk, self.nk))

    def m(self, k: int) -> int:
        return self.mk[k - 1]

    def n(self, k: int) -> int:
        return self.nk[k - 1]


def constant_params(pi: Substitution, m: int, n: int, levels: int) -> SadicParams:
    return SadicParams(pi=pi, mk=(m,) * levels, nk=(n,) * levels)


@dataclass(frozen=True)
class AdmissibilityReport:
    tier: str                 # "full-4/3" or "structural"
    violations: tuple         # human-readable clauses that failed


def validate_params(p: SadicParams) -> AdmissibilityReport:
    """Two-tier admissibility.

    structural: 0 < m_k < n_k (already enforced at construction).
    full-4/3 additionally requires, for every level k:
      n_k <= 2 m_k          whenever m_k > 1
      10 n_k < 19 m_k       whenever m_k > 4
      n_k <= 3              whenever m_k = 1
      (m_{k+1}, n_{k+1}) = (1, 3) forces n_k = m_k + 1
    together with |pi(0)| < |pi(1)| < 2 |pi(0)| and distinct first letters.
    """
    bad = []
    for k in range(1, p.levels + 1):
        m, n = p.m(k), p.n(k)
        if m > 1 and n > 2 * m:
            bad.append(f"level {k}: n={n} > 2m={2 * m} with m>1")
        if m > 4 and 10 * n >= 19 * m:
            bad.append(f"level {k}: n={n} >= 1.9m with m>4")
        if m == 1 and n > 3:
            bad.append(f"level {k}: n={n} > 3 with m=1")
        if k > 1 and m == 1 and n == 3 and p.n(k - 1) != p.m(k - 1) + 1:
            bad.append(f"level {k}: (1,3) not preceded by n=m+1 at level {k - 1}")
    im0, im1 = p.pi.images[0], p.pi.images[1]
    if not (len(im0) < len(im1) < 2 * len(im0)):
        bad.append("pi image lengths must satisfy |pi(0)| < |pi(1)| < 2|pi(0)|")
    if im0[0] == im1[0]:
        bad.append("pi images must begin with different letters")
    tier = "full-4/3" if not bad else "structural"
    return AdmissibilityReport(tier=tier, violations=tuple(bad))


def satisfies_shape_bullets(p: SadicParams) -> bool:
    """True when the (m_k, n_k) constraints alone hold (pi shape ignored)."""
    rep = validate_params(p)
    return all("pi image" not in v and "different letters" not in v for v in rep.violations)


@dataclass(frozen=True)
class DerivedWords:
    k: int
    u: bytes
    v: bytes
    s: bytes
    p: bytes


@lru_cache(maxsize=256)
def derived_words(params: SadicParams, k: int, budget: int = DEFAULT_BUDGET) -> DerivedWords:
    """The level-k words (u_k, v_k, s_k, p_k) by the defining recursions."""
    if not (1 <= k <= params.levels + 1):
        raise InvalidArgumentError(f"need 1 <= k <= {params.levels + 1}")
    if k == 1:
        v, u = params.pi.images[0], params.pi.images[1]
        s = max_common_suffix_periodic(v, u)
        p = max_common_prefix(v, u)
        return DerivedWords(k=1, u=u, v=v, s=s, p=p)
    prev = derived_words(params, k - 1, budget)
    m, n = params.m(k - 1), params.n(k - 1)
    new_len = n * len(prev.v) + len(prev.u) + len(prev.s)
    if new_len > budget:
        raise BudgetExceededError(new_len, budget)
    v = prev.v * (m - 1) + prev.u
    u = prev.v * (n - 1) + prev.u
    s = prev.s + v
    p = prev.v * (m - 1) + prev.p
    return DerivedWords(k=k, u=u, v=v, s=s, p=p)


def derived_lengths(params: SadicParams, k_max: int):
    """|v_k|, |u_k|, |s_k|, |p_k| for k = 1..k_max as exact integers.

    Only level-1 words are materialized, so this scales to parameter
    sequences whose words would be astronomically long.
    """
    base = derived_words(params, 1)
    lv = {1: len(base.v)}
    lu = {1: len(base.u)}
    ls = {1: len(base.s)}
    lp = {1: len(base.p)}
    for k in range(1, k_max):
        m, n = params.m(k), params.n(k)
        lv[k + 1] = (m - 1) * lv[k] + lu[k]
        lu[k + 1] = (n - 1) * lv[k] + lu[k]
        ls[k + 1] = ls[k] + lv[k + 1]
        lp[k + 1] = (m - 1) * lv[k] + lp[k]
    return lv, lu, ls, lp


@dataclass(frozen=True)
class BlockDecomposition:
    level: int
    blocks: tuple  # over {0, 1}: 0 = level word v_{level+1}, 1 = u_{level+1}


def unique_decompose(w: bytes, params: SadicParams, k: int) -> BlockDecomposition:
    """Parse w as a whole concatenation of the level-k blocks
    (v_{k+1}, u_{k+1}); the parse is unique for words of the system.

    Uses right-anchored dynamic programming with path counting; zero parses
    raises NotAConcatenationError, more than one raises InvalidArgumentError
    (it cannot happen for genuine system words).
    """
    dw = derived_words(params, k + 1)
    v, u = dw.v, dw.u
    L = len(w)
    counts = [0] * (L + 1)
    counts[L] = 1
    lv, lu = len(v), len(u)
    for pos in range(L - 1, -1, -1):
        c = 0
        if pos + lv <= L and counts[pos + lv] and w[pos:pos + lv] == v:
            c += counts[pos + lv]
        if pos + lu <= L and counts[pos + lu] and w[pos:pos + lu] == u:
            c += counts[pos + lu]
        counts[pos] = min(c, 2)
    if counts[0] == 0:
        raise NotAConcatenationError(
            f"no parse of {L}-symbol word into level-{k} blocks"
        )
    if counts[0] > 1:
        raise InvalidArgumentError("ambiguous block parse; input is not a system word")
    blocks = []
    pos = 0
    while pos < L:
        if pos + lv <= L and counts[pos + lv] and w[pos:pos + lv] == v:
            blocks.append(0)
            pos += lv
        else:
            blocks.append(1)
            pos += lu
    return BlockDecomposition(level=k, blocks=tuple(blocks))


# -- closed-form complexity -------------------------------------------------


def calibration_length(params: SadicParams) -> int:
    """|s_2 p_2|, the single length at which the additive constant is read off."""
    lv, lu, ls, lp = derived_lengths(params, 2)
    return ls[2] + lp[2]


def closed_form_complexity(params: SadicParams, q: int, calibration) -> int:
    """Piecewise-linear word complexity p(q) of the generated subshift.

    Writing lo_k = |s_k v_k^{m_k - 1} p_k| and mid_k = |s_k v_k^{n_k - 2} p_k|,
    the extra right-special words at level k have lengths in (lo_k, mid_k],
    so p climbs with slope 2 on [lo_k + 1, mid_k + 1] and slope 1 elsewhere.
    With K = p(|s_2 p_2|) - |s_2 p_2| read from the calibration table, for
    every k >= 2:

      p(q) = 2q - (lo_k + 1) + sum_{j=2..k-1} (n_j - m_j - 1)|v_j| + K
             on lo_k + 1 <= q <= mid_k + 1
      p(q) = q + sum_{j=2..k} (n_j - m_j - 1)|v_j| + K
             on mid_k + 1 <= q <= lo_{k+1} + 1

    The two branches agree at shared endpoints, and the slope-1 stretch
    extends left from lo_2 + 1 down to the anchor |s_2 p_2|.  (Interval ends
    one below these fail against exhaustive enumeration; the shift by one is
    forced by the accounting identity p(l+1) - p(l) = 1 + #extra special
    words of length l.)  ``calibration`` is either a validated LanguageTable
    deep enough to read p(|s_2 p_2|) or the integer K itself.  Queries below
    |s_2 p_2| raise OutOfRangeError; queries beyond the last computable
    interval raise InsufficientDataError.
    """
    if params.levels < 2:
        raise InvalidArgumentError("need at least two parameter levels")
    if isinstance(calibration, int):
        K_const = calibration
    else:
        calibration._require_validated()
        c_len = calibration_length(params)
        if calibration.n_max < c_len:
            raise InvalidArgumentError(
                f"calibration table must reach length {c_len}"
            )
        K_const = calibration.p(c_len) - c_len
    lv, lu, ls, lp = derived_lengths(params, params.levels + 1)

    def lo(k):   # |s_k v_k^{m_k - 1} p_k| + 1, start of the slope-2 stretch
        return ls[k] + (params.m(k) - 1) * lv[k] + lp[k] + 1

    def mid(k):  # |s_k v_k^{n_k - 2} p_k| + 1, end of the slope-2 stretch
        return ls[k] + (params.n(k) - 2) * lv[k] + lp[k] + 1

    if q < lo(2):
        raise OutOfRangeError(f"q={q} below formula range start {lo(2)}")
    running = 0  # sum_{j=2..k-1} (n_j - m_j - 1) |v_j|
    for k in range(2, params.levels + 1):
        if q <= mid(k):
            return 2 * q - lo(k) + running + K_const
        running += (params.n(k) - params.m(k) - 1) * lv[k]
        if k + 1 > params.levels:
            break
        if q <= lo(k + 1):
            return q + running + K_const
    raise InsufficientDataError(
        f"q={q} beyond the last interval computable from {params.levels} levels"
    )


# -- difference counts and densities ----------------------------------------


def _diff_count(a: bytes, b: bytes) -> int:
    assert len(a) == len(b)
    if a == b:
        return 0
    xa = np.frombuffer(a, dtype=np.uint8)
    xb = np.frombuffer(b, dtype=np.uint8)
    return int(np.count_nonzero(xa != xb))


def _a_product(params: SadicParams, k: int) -> int:
    """a_1 a_2 ... a_{k+1} = prod_{i=1..k} (n_i - m_i)."""
    out = 1
    for i in range(1, k + 1):
        out *= params.n(i) - params.m(i)
    return out


def commutation_diff_count(params: SadicParams, i: int, k: int, reps: int,
                           budget: int = DEFAULT_BUDGET):
    """Hamming distance between B^p C and C B^p for level-k blocks.

    With (B, C) = (v_{k+1}, u_{k+1}) for i = 0 and swapped for i = 1 and
    p = reps, the two sides differ on at most
        2 |pi(1)| * reps * prod_{j=1..k} (n_j - m_j)
    positions.  Returns (count, bound).
    """
    if i not in (0, 1):
        raise InvalidArgumentError("block selector i must be 0 or 1")
    if k < 0 or reps < 1:
        raise InvalidArgumentError("need k >= 0 and reps >= 1")
    dw = derived_words(params, k + 1, budget)
    blk = (dw.v, dw.u) if i == 0 else (dw.u, dw.v)
    total = reps * len(blk[0]) + len(blk[1])
    if total > budget:
        raise BudgetExceededError(total, budget)
    y = blk[0] * reps + blk[1]
    z = blk[1] + blk[0] * reps
    bound = 2 * len(params.pi.images[1]) * reps * _a_product(params, k)
    return _diff_count(y, z), bound


@dataclass(frozen=True)
class DensityReport:
    q: int
    N: int
    density: Fraction
    bound: Fraction | None   # set when q is a level length d_k
    level: int | None


def shift_diff_density(params: SadicParams, q: int, N: int, x: bytes = None,
                       budget: int = DEFAULT_BUDGET) -> DensityReport:
    """Density of {t < N : x(t) != x(t+q)} over a generated prefix.

    When q equals a level length d_k the report carries the bound
    2 |pi(1)| a_1...a_{k+1} / d_{k+1}.
    """
    if q < 0 or N < 1:
        raise InvalidArgumentError("need q >= 0 and N >= 1")
    need = N + q
    lv, _, _, _ = derived_lengths(params, params.levels + 1)
    if x is None:
        K = next((k for k in range(1, params.levels + 2) if lv[k] >= need), None)
        if K is None:
            raise InsufficientDataError(
                f"deepest level word has {lv[params.levels + 1]} symbols, need {need}"
            )
        x = generate_word(params.pi, params.pairs, K - 1, budget)
    elif len(x) < need:
        raise InsufficientDataError(f"supplied word has {len(x)} symbols, need {need}")
    arr = np.frombuffer(x, dtype=np.uint8)
    count = 0 if q == 0 else int(np.count_nonzero(arr[:N] != arr[q:q + N]))
    bound = None
    level = None
    for k in range(1, params.levels):   # the bound needs d_{k+1} = |v_{k+2}|
        if lv[k + 1] == q:              # d_k = |v_{k+1}|
            level = k
            bound = Fraction(
                2 * len(params.pi.images[1]) * _a_product(params, k), lv[k + 2]
            )
            break
    return DensityReport(q=q, N=N, density=Fraction(count, N), bound=bound, level=level)


def syndetic_set(params: SadicParams, k: int, horizon: int):
    """Elements of { sum_{i=k..r} p_i d_i : r > k, 0 <= p_i <= n_{i+1} + 1 }
    in [0, horizon], plus the largest gap between consecutive elements.

    Enumerated level by level as a reachable-sum set (exact); the defining
    digit bound n_{i+1}+1 makes the set syndetic with gaps at most d_k.
    """
    if horizon < 0:
        raise InvalidArgumentError("horizon must be >= 0")
    if not (1 <= k <= params.levels):
        raise InvalidArgumentError(f"need 1 <= k <= {params.levels}")
    lv, _, _, _ = derived_lengths(params, params.levels + 1)
    if lv[params.levels + 1] <= horizon:
        raise InsufficientDataError(
            "parameter sequence too short: digits beyond the last level would "
            f"still fit inside horizon {horizon}"
        )
    # d_i = |v_{i+1}|; digits at level i bounded by n_{i+1} + 1
    reachable = np.zeros(horizon + 1, dtype=bool)
    reachable[0] = True
    for i in range(k, params.levels):   # digit at i needs n_{i+1}
        d_i = lv[i + 1]
        if d_i > horizon:
            break
        cap = params.n(i + 1) + 1
        cur = reachable.copy()
        acc = reachable
        for _ in range(cap):
            shifted = np.zeros_like(cur)
            shifted[d_i:] = cur[:-d_i] if d_i > 0 else cur
            acc = acc | shifted
            cur = shifted
        reachable = acc
    elements = np.flatnonzero(reachable)
    if len(elements) < 2:
        return tuple(int(e) for e in elements), horizon
    gaps = np.diff(elements)
    tail_gap = horizon - int(elements[-1])
    max_gap = max(int(gaps.max()), tail_gap)
    return tuple(int(e) for e in elements), max_gap
