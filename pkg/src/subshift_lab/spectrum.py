"""Spectral side: exact length recursions, the contraction-factor sequence
beta_j with its case analysis, the exponential tail bound, the eigenvalue as
a generalized continued fraction, and an empirical Weyl-sum probe.

Conventions (all exact integers / rationals):
    a_1 = 1, a_k = n_{k-1} - m_{k-1} (k >= 2),  b_k = m_k,
    d_{-1} = |pi(1)| - |pi(0)|, d_0 = |pi(0)|,
    d_{k+1} = b_{k+1} d_k + a_{k+1} d_{k-1},
    c_{-1} = 1, c_0 = 0 and e_{-1} = 0, e_0 = 1 under the same recursion,
    beta_0 = d_{-1}/d_0, beta_j = a_{j+1} d_{j-1} / d_j.

Floating point appears only in rendered reports; every comparison that a
result depends on is carried out on exact rationals.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import (
    BoundViolationError,
    InsufficientPrecisionError,
    InvalidArgumentError,
    UnsupportedError,
)
from .sadic import SadicParams, satisfies_shape_bullets


@dataclass(frozen=True)
class LengthSeq:
    """a_k, b_k for k = 1..K+1 and d_k for k = -1..K (exact integers)."""

    a: tuple
    b: tuple
    d: tuple

    def a_at(self, k: int) -> int:
        return self.a[k - 1]

    def b_at(self, k: int) -> int:
        return self.b[k - 1]

    def d_at(self, k: int) -> int:
        return self.d[k + 1]


def length_sequences(params: SadicParams, K: int) -> LengthSeq:
    """The block-length recursion up to level K (needs K+1 parameter levels
    for a_{K+1})."""
    if K < 1 or K + 1 > params.levels:
        raise InvalidArgumentError(f"need 1 <= K <= {params.levels - 1}")
    a = [1] + [params.n(k - 1) - params.m(k - 1) for k in range(2, K + 2)]
    b = [params.m(k) for k in range(1, K + 2)]
    im0, im1 = params.pi.images[0], params.pi.images[1]
    d = [len(im1) - len(im0), len(im0)]
    for k in range(1, K + 1):
        d.append(b[k - 1] * d[-1] + a[k - 1] * d[-2])
    return LengthSeq(a=tuple(a), b=tuple(b), d=tuple(d))


@dataclass(frozen=True)
class ConvergentSeq:
    """c_k and e_k for k = -1..K under the d-recursion; d_k = d_{-1} c_k + d_0 e_k."""

    c: tuple
    e: tuple

    def c_at(self, k: int) -> int:
        return self.c[k + 1]

    def e_at(self, k: int) -> int:
        return self.e[k + 1]


def convergent_sequences(params: SadicParams, K: int) -> ConvergentSeq:
    seq = length_sequences(params, K)
    c = [1, 0]
    e = [0, 1]
    for k in range(1, K + 1):
        c.append(seq.b_at(k) * c[-1] + seq.a_at(k) * c[-2])
        e.append(seq.b_at(k) * e[-1] + seq.a_at(k) * e[-2])
    return ConvergentSeq(c=tuple(c), e=tuple(e))


# -- beta machinery ----------------------------------------------------------

CASE_BIG_B = "b>4"                 # b_j > 4
CASE_SMALL_SMALL = "b<=4,prev<=4"  # a_{j+1} <= b_j <= 4 and b_{j-1} <= 4
CASE_SMALL_AFTER_BIG = "b<=4,prev>4"
CASE_ONE_THREE = "a=b+1"           # a_{j+1} = 2, b_j = 1
CASE_BASE = "base"                 # j in {1, 2} without enough history


@dataclass(frozen=True)
class BetaReport:
    betas: tuple        # Fraction, beta_1..beta_K
    beta0: Fraction
    labels: tuple
    product: Fraction   # prod_{j=1..K} beta_j
    envelope: float     # 2 (48/49)^{K/2}


def _case_label(seq: LengthSeq, j: int) -> str:
    bj = seq.b_at(j)
    aj1 = seq.a_at(j + 1)
    if bj > 4:
        return CASE_BIG_B
    if j == 1:
        return CASE_BASE
    prev = seq.b_at(j - 1)
    if aj1 <= bj:
        return CASE_SMALL_SMALL if prev <= 4 else CASE_SMALL_AFTER_BIG
    if aj1 == 2 and bj == 1:
        return CASE_ONE_THREE
    return CASE_BASE


def beta_sequence(params: SadicParams, K: int) -> BetaReport:
    """beta_j = a_{j+1} d_{j-1}/d_j as exact rationals with case labels.

    The case analysis presumes the (m_k, n_k) shape constraints; parameter
    sequences violating them are rejected.  The exact product identity
    prod_{j=1..K} beta_j = |pi(0)| a_1...a_{K+1} / d_K holds regardless.
    """
    if not satisfies_shape_bullets(params):
        raise UnsupportedError(
            "beta case analysis requires the (m, n) shape constraints"
        )
    seq = length_sequences(params, K)
    beta0 = Fraction(seq.d_at(-1), seq.d_at(0))
    betas = []
    labels = []
    prod = Fraction(1)
    for j in range(1, K + 1):
        bj = Fraction(seq.a_at(j + 1) * seq.d_at(j - 1), seq.d_at(j))
        betas.append(bj)
        labels.append(_case_label(seq, j))
        prod *= bj
    return BetaReport(
        betas=tuple(betas),
        beta0=beta0,
        labels=tuple(labels),
        product=prod,
        envelope=2.0 * (48.0 / 49.0) ** (K / 2.0),
    )


def product_within_envelope(product: Fraction, k: int) -> bool:
    """Exact check of prod < 2 (48/49)^{k/2} (squared to avoid the surd)."""
    if product < 0:
        raise InvalidArgumentError("beta products are positive")
    return product * product * (49 ** k) < 4 * (48 ** k)


def case_postcondition_ok(report: BetaReport, j: int) -> bool:
    """Exact per-index check of the labelled contraction inequality."""
    label = report.labels[j - 1]
    b = report.betas

    def at(i):
        return report.beta0 if i == 0 else b[i - 1]

    if label == CASE_BIG_B:
        return b[j - 1] < Fraction(9, 10)
    if label == CASE_SMALL_SMALL:
        return b[j - 1] < Fraction(24, 25)
    if label == CASE_SMALL_AFTER_BIG:
        return b[j - 1] < Fraction(24, 25) or b[j - 1] * at(j - 1) < Fraction(1, 2)
    if label == CASE_ONE_THREE:
        return (b[j - 1] * at(j - 1) < Fraction(48, 49)
                or b[j - 1] * at(j - 1) * at(j - 2) < Fraction(13, 25))
    # base indices only promise 0 < beta < 2
    return 0 < b[j - 1] < 2


@dataclass(frozen=True)
class DecayRatioReport:
    K: int
    lhs: Fraction     # (n_{K+1}+1) |pi(0)| prod_{i<=K} (n_i - m_i) / d_{K+1}
    envelope: float   # 8 (48/49)^{K/2}
    ok: bool


def decay_ratio_bound(params: SadicParams, K: int) -> DecayRatioReport:
    """The exact tail ratio at level K against its exponential envelope.

    The inequality is unconditional under the shape constraints; a failure
    raises BoundViolationError since it can only indicate a bug.
    """
    if not satisfies_shape_bullets(params):
        raise UnsupportedError("tail bound requires the (m, n) shape constraints")
    if K == 0:
        seq = length_sequences(params, 1)
        lhs = Fraction((params.n(1) + 1) * seq.d_at(0), seq.d_at(1))
    else:
        seq = length_sequences(params, K + 1)
        prod = 1
        for i in range(1, K + 1):
            prod *= params.n(i) - params.m(i)
        lhs = Fraction((params.n(K + 1) + 1) * seq.d_at(0) * prod, seq.d_at(K + 1))
    # lhs < 8 (48/49)^{K/2}, squared form
    ok = lhs * lhs * (49 ** K) < 64 * (48 ** K)
    if not ok:
        raise BoundViolationError(
            f"tail ratio {lhs} exceeds envelope 8*(48/49)^({K}/2)"
        )
    return DecayRatioReport(K=K, lhs=lhs, envelope=8.0 * (48.0 / 49.0) ** (K / 2.0), ok=ok)


# -- eigenvalue --------------------------------------------------------------


def alpha_enclosure(params: SadicParams, K: int):
    """Exact rationals (lo, hi) with lo <= alpha <= hi, from convergents K, K+1.

    Consecutive convergent differences alternate in sign with strictly
    decreasing magnitude, so alpha always lies between c_K/d_K and
    c_{K+1}/d_{K+1}.
    """
    seq = length_sequences(params, K + 1)
    conv = convergent_sequences(params, K + 1)
    x = Fraction(conv.c_at(K), seq.d_at(K))
    y = Fraction(conv.c_at(K + 1), seq.d_at(K + 1))
    return (x, y) if x <= y else (y, x)


@dataclass(frozen=True)
class EigenvalueEstimate:
    alpha: object            # mpmath.mpf
    beta_cf: object          # mpmath.mpf, the continued-fraction value
    precision_bits: int
    error_bound: Fraction    # |alpha - c_K/d_K| < this
    distances: tuple         # <d_k alpha> (floats) for k = 1..K
    enclosure: tuple         # exact (lo, hi) rationals


def nearest_integer_distance(lo: Fraction, hi: Fraction):
    """Exact upper bound for the distance of x to the nearest integer over
    x in [lo, hi]; None when the interval straddles a half-integer."""
    n_lo = (2 * lo + 1) // 2  # nearest integer to lo (ties toward +inf)
    n_hi = (2 * hi + 1) // 2
    if n_lo != n_hi:
        return None
    return max(abs(lo - n_lo), abs(hi - n_lo))


def eigenvalue(params: SadicParams, K: int, bits: int = 128) -> EigenvalueEstimate:
    """alpha = lim c_k/d_k with certified error, plus the continued-fraction
    value beta = lim c_k/e_k and the integer distances <d_k alpha>.

    alpha = beta / (|pi(1)| beta + |pi(0)| (1 - beta)) ties the two together;
    both are evaluated to ``bits`` of precision from exact enclosures.
    """
    if K < 2:
        raise InvalidArgumentError("need K >= 2")
    if bits < 8:
        raise InvalidArgumentError("need bits >= 8")
    seq = length_sequences(params, K + 1)
    conv = convergent_sequences(params, K + 1)
    lo, hi = alpha_enclosure(params, K)
    prod_a = 1
    for i in range(1, K + 2):
        prod_a *= seq.a_at(i)
    err = Fraction(seq.d_at(0) * prod_a, seq.d_at(K) * seq.d_at(K + 1))
    if hi - lo > 0 and Fraction(1, 2 ** bits) < hi - lo:
        raise InsufficientPrecisionError(
            f"certified enclosure width {float(hi - lo):.3e} exceeds 2^-{bits}; "
            "increase K or lower bits"
        )
    # identity d_k = d_{-1} c_k + d_0 e_k pins the three recursions together
    for k in range(-1, K + 2):
        assert seq.d_at(k) == seq.d_at(-1) * conv.c_at(k) + seq.d_at(0) * conv.e_at(k)
    distances = []
    for k in range(1, K + 1):
        dist = nearest_integer_distance(seq.d_at(k) * lo, seq.d_at(k) * hi)
        distances.append(float(dist) if dist is not None else 0.5)
    with mpmath.workprec(bits + 16):
        mid = (lo + hi) / 2
        alpha_mp = mpmath.mpf(mid.numerator) / mpmath.mpf(mid.denominator)
        beta_frac = Fraction(conv.c_at(K + 1), conv.e_at(K + 1))
        beta_mp = mpmath.mpf(beta_frac.numerator) / mpmath.mpf(beta_frac.denominator)
    return EigenvalueEstimate(
        alpha=alpha_mp,
        beta_cf=beta_mp,
        precision_bits=bits,
        error_bound=err,
        distances=tuple(distances),
        enclosure=(lo, hi),
    )


def distance_bound_holds(params: SadicParams, k: int, K_env: int = None) -> bool:
    """Exact check of <d_k alpha> < |pi(0)| prod_{i<=k}(n_i - m_i) / d_{k+1}."""
    if K_env is None:
        K_env = min(params.levels - 2, k + 3)
    if K_env < k + 2:
        raise InvalidArgumentError("need an enclosure at least two levels deeper than k")
    seq = length_sequences(params, k + 1)
    lo, hi = alpha_enclosure(params, K_env)
    dist = nearest_integer_distance(seq.d_at(k) * lo, seq.d_at(k) * hi)
    if dist is None:
        return False
    prod = 1
    for i in range(1, k + 1):
        prod *= params.n(i) - params.m(i)
    return dist < Fraction(seq.d_at(0) * prod, seq.d_at(k + 1))


# -- Weyl probe --------------------------------------------------------------


def weyl_probe(x: bytes, freq, N: int) -> float:
    """|(1/N) sum_{j<N} exp(-2 pi i freq j) chi(x_j)| with chi: 0 -> +1, 1 -> -1.

    Persistently large values across growing N indicate a spectral line at
    ``freq``; decay to 0 indicates none.  Rational frequencies (Fraction
    inputs) are folded over residue classes, which is both exact and fast.
    """
    if len(x) < N:
        raise InvalidArgumentError(f"word has {len(x)} symbols, need {N}")
    chi = 1.0 - 2.0 * np.frombuffer(x, dtype=np.uint8)[:N].astype(np.float64)
    if isinstance(freq, Fraction):
        den = freq.denominator
        residue_sums = np.bincount(
            np.arange(N, dtype=np.int64) % den, weights=chi, minlength=den
        )
        phases = np.exp(-2j * np.pi * (freq.numerator % den) * np.arange(den) / den)
        total = residue_sums @ phases
    else:
        j = np.arange(N, dtype=np.float64)
        phase = np.mod(float(freq) * j, 1.0)
        total = np.exp(-2j * np.pi * phase) @ chi
    return float(abs(total) / N)
