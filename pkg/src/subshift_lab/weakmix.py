"""Construction of the prime-height, n_k = 2m_k parameter family whose
subshift has complexity ratio limsup p(q)/q = 3/2 with no spectral line.

The build fixes pi = identity, (m_1, n_1) = (1, 2), and then chooses each
m_k >= max(4, m_{k-1}^2) upward until the block height
d_k = m_k d_{k-1} + m_{k-1} d_{k-2} is prime.  Heights d_{k-1} and the
increment m_{k-1} d_{k-2} are coprime at every accepted level, so primes
occur along the arithmetic progression and the search terminates in
practice; a cap keeps the tool total.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy

from .errors import InvalidArgumentError, OutOfRangeError, ScheduleTooTightError
from .language import LanguageTable
from .sadic import SadicParams, calibration_length, closed_form_complexity, derived_lengths
from .substitution import identity


def default_growth(prev_m: int) -> int:
    """Minimum for the next m_k: at least 4 and at least the square of the
    previous value (keeps sum 1/m_k summable with a wide margin)."""
    return max(4, prev_m * prev_m)


@dataclass(frozen=True)
class ExampleConfig:
    kmax: int = 8
    growth: object = default_growth   # callable prev_m -> minimum next m
    search_cap: int = 100_000         # candidates tried per level


@dataclass(frozen=True)
class ExampleBuild:
    params: SadicParams
    heights: tuple          # d_0 .. d_kmax
    prime_levels: tuple     # levels k >= 2 whose d_k passed primality
    searched: tuple         # candidates scanned per level


def build_example(cfg: ExampleConfig) -> ExampleBuild:
    """The doubling family m_1=1, n_k = 2m_k with every d_k (k >= 2) prime.

    Primality uses a Baillie-PSW based test that is deterministic below 2^64
    (and far beyond); each accepted level also re-checks the coprimality
    gcd(d_k, m_k d_{k-1}) = 1 that keeps the progression prime-rich.
    """
    if cfg.kmax < 2:
        raise InvalidArgumentError("need kmax >= 2")
    mk = [1]
    d = {0: 1, 1: 1}   # identity pi: d_{-1} = 0, d_0 = 1, d_1 = m_1 = 1
    searched = []
    for k in range(2, cfg.kmax + 1):
        lo = cfg.growth(mk[-1])
        a_k = mk[-1]               # a_k = n_{k-1} - m_{k-1} = m_{k-1}
        tries = 0
        m = lo
        while True:
            cand = m * d[k - 1] + a_k * d[k - 2]
            tries += 1
            if sympy.isprime(cand):
                break
            m += 1
            if tries >= cfg.search_cap:
                raise ScheduleTooTightError(
                    f"no prime height found at level {k} within {cfg.search_cap} "
                    f"candidates above m >= {lo}"
                )
        mk.append(m)
        d[k] = cand
        searched.append(tries)
        assert gcd(d[k], mk[-2] * d[k - 1]) == 1
    params = SadicParams(pi=identity(2), mk=tuple(mk), nk=tuple(2 * m for m in mk))
    return ExampleBuild(
        params=params,
        heights=tuple(d[k] for k in range(0, cfg.kmax + 1)),
        prime_levels=tuple(range(2, cfg.kmax + 1)),
        searched=tuple(searched),
    )


@dataclass(frozen=True)
class LandmarkRow:
    k: int
    q_peak: int            # |s_k v_k^{2 m_k - 2} p_k|
    p_peak: int
    ratio_peak: Fraction   # p(q_peak) / q_peak, tends to 3/2 from below
    excess_peak: Fraction  # p(q_peak) - 1.5 q_peak, strictly decreasing in k
    q_base: int            # |v_k^{m_k - 1} p_k|
    p_base: int
    ratio_base: Fraction   # tends to 1
    table_agrees: bool | None   # closed form vs table, where the table reaches


@dataclass(frozen=True)
class LandmarkReport:
    K_const: int
    rows: tuple
    f_hits: tuple | None   # per row, whether p(q_base) < q_base + f(q_base)


def landmark_complexities(params: SadicParams, K: int, table: LanguageTable,
                          f=None) -> LandmarkReport:
    """Complexity at the two landmark families of the doubling construction.

    The peak landmarks q = |s_k v_k^{2m_k-2} p_k| satisfy
        p(q) = 1.5 q - 0.5 (|s_k| - |p_k|) + const
    exactly, so p(q)/q -> 3/2 from below and p(q) - 1.5q decreases without
    bound.  The base landmarks q = |v_k^{m_k-1} p_k| satisfy
    p(q) = q + |p_k| + const, so p(q)/q -> 1.  Values come from the closed
    form (calibrated on ``table``) and are cross-checked against the table
    where it is deep enough.  Pass ``f`` (any function with f(q) -> infinity)
    to also record whether p(q) < q + f(q) at each base landmark.
    """
    if K < 2 or K > params.levels:
        raise InvalidArgumentError(f"need 2 <= K <= {params.levels}")
    c_len = calibration_length(params)
    table._require_validated()
    K_const = table.p(c_len) - c_len
    lv, lu, ls, lp = derived_lengths(params, params.levels + 1)
    rows = []
    f_hits = [] if f is not None else None
    for k in range(2, K + 1):
        m = params.m(k)
        q_peak = ls[k] + (2 * m - 2) * lv[k] + lp[k]
        p_peak = closed_form_complexity(params, q_peak, K_const)
        # slope-2 value at the peak; the adjustment beyond 1.5 q is constant
        # in q and tends to -infinity with |s_k| - |p_k|
        adjust = K_const - 1 - (params.m(1) - 1) * lv[1]
        expected = Fraction(3 * q_peak - (ls[k] - lp[k]), 2) + adjust
        assert Fraction(p_peak) == expected
        q_base = (m - 1) * lv[k] + lp[k]
        try:
            p_base = closed_form_complexity(params, q_base, K_const)
            assert p_base == q_base + lp[k] - (params.m(1) - 1) * lv[1] + K_const
        except OutOfRangeError:
            # the k=2 base landmark can sit below the formula's range
            if q_base > table.n_max:
                raise InvalidArgumentError(
                    f"base landmark {q_base} below formula range and beyond table"
                )
            p_base = table.p(q_base)
        agrees = None
        if q_peak <= table.n_max:
            agrees = table.p(q_peak) == p_peak and table.p(q_base) == p_base
        rows.append(LandmarkRow(
            k=k,
            q_peak=q_peak,
            p_peak=p_peak,
            ratio_peak=Fraction(p_peak, q_peak),
            excess_peak=Fraction(p_peak) - Fraction(3, 2) * q_peak,
            q_base=q_base,
            p_base=p_base,
            ratio_base=Fraction(p_base, q_base),
            table_agrees=agrees,
        ))
        if f is not None:
            f_hits.append(p_base < q_base + f(q_base))
    return LandmarkReport(
        K_const=K_const,
        rows=tuple(rows),
        f_hits=tuple(f_hits) if f_hits is not None else None,
    )
