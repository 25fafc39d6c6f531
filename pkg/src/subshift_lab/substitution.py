"""Substitutions (morphisms) on small alphabets and the two-parameter family
tau_{m,n}: 0 -> 0^{m-1} 1, 1 -> 0^{n-1} 1 used to generate the subshifts.

Composition chains are never materialized as substitutions of exponential
size; word generation expands level by level with lengths tracked by an
integer recursion, so the symbol budget is checked before any allocation.
"""

from dataclasses import dataclass

from .errors import BudgetExceededError, InvalidArgumentError, UnsupportedError

DEFAULT_BUDGET = 50_000_000  # symbols


@dataclass(frozen=True)
class Substitution:
    """A letter-to-word map, extended to words by concatenation."""

    images: tuple

    def __post_init__(self):
        if not self.images:
            raise InvalidArgumentError("substitution needs at least one image")
        for im in self.images:
            if not isinstance(im, bytes) or len(im) == 0:
                raise InvalidArgumentError("all images must be nonempty bytes")

    @property
    def domain_size(self) -> int:
        return len(self.images)

    @property
    def codomain_size(self) -> int:
        return max(max(im) for im in self.images) + 1

    def __call__(self, w: bytes) -> bytes:
        return b"".join(map(self.images.__getitem__, w))

    def image_lengths(self):
        return tuple(len(im) for im in self.images)


def identity(size: int = 2) -> Substitution:
    return Substitution(tuple(bytes([a]) for a in range(size)))


def make_tau(m: int, n: int) -> Substitution:
    """The binary substitution 0 -> 0^{m-1} 1, 1 -> 0^{n-1} 1 for 0 < m < n."""
    if not (0 < m < n):
        raise InvalidArgumentError(f"need 0 < m < n, got ({m}, {n})")
    return Substitution((bytes([0] * (m - 1) + [1]), bytes([0] * (n - 1) + [1])))


def compose(outer: Substitution, inner: Substitution) -> Substitution:
    """Homomorphism composition: (outer o inner)(a) = outer(inner(a))."""
    if inner.codomain_size > outer.domain_size:
        raise InvalidArgumentError(
            "codomain of inner substitution exceeds domain of outer"
        )
    return Substitution(tuple(outer(im) for im in inner.images))


@dataclass(frozen=True)
class AbelianMatrix:
    """Letter-occurrence matrix of a binary substitution with exact spectral data.

    entries[a][b] counts occurrences of letter b in image(a).  Eigenvalues
    solve x^2 - trace*x + det = 0; they are rendered as floats but the Pisot
    classification (dominant root > 1, other root of modulus < 1) is decided
    in exact integer arithmetic.
    """

    entries: tuple
    trace: int
    det: int
    eigenvalues: tuple
    pisot: bool


def abelian_analysis(s: Substitution) -> AbelianMatrix:
    if s.domain_size != 2 or s.codomain_size > 2:
        raise UnsupportedError("abelian analysis supports binary substitutions only")
    rows = []
    for im in s.images:
        ones = sum(im)
        rows.append((len(im) - ones, ones))
    entries = tuple(rows)
    t = entries[0][0] + entries[1][1]
    det = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]
    disc = t * t - 4 * det
    # occurrence counts are nonnegative, so disc = (a-d)^2 + 4bc >= 0
    assert disc >= 0
    root = disc ** 0.5
    lam1, lam2 = (t + root) / 2.0, (t - root) / 2.0

    def _sqrt_gt(c):  # sqrt(disc) > c, exactly
        return c < 0 or disc > c * c

    def _sqrt_lt(c):  # sqrt(disc) < c, exactly
        return c > 0 and disc < c * c

    dominant_gt_one = _sqrt_gt(2 - t)
    other_abs_lt_one = _sqrt_gt(t - 2) and _sqrt_lt(t + 2)
    return AbelianMatrix(
        entries=entries,
        trace=t,
        det=det,
        eigenvalues=(lam1, lam2),
        pisot=dominant_gt_one and other_abs_lt_one,
    )


def chain_lengths(pi: Substitution, pairs, K: int):
    """(|chain(0)|, |chain(1)|) for chain = pi o tau_{m_1,n_1} o ... o tau_{m_K,n_K}."""
    a, b = pi.image_lengths()[:2]
    for m, n in pairs[:K]:
        a, b = (m - 1) * a + b, (n - 1) * a + b
    return a, b


def _check_params(pi, pairs, K):
    if pi.domain_size < 2:
        raise InvalidArgumentError("pi must have a binary domain")
    if K < 0 or K > len(pairs):
        raise InvalidArgumentError(f"need 0 <= K <= {len(pairs)}, got {K}")
    for m, n in pairs[:K]:
        if not (0 < m < n):
            raise InvalidArgumentError(f"need 0 < m < n at every level, got ({m}, {n})")


def generate_word(pi: Substitution, pairs, K: int, budget: int = DEFAULT_BUDGET) -> bytes:
    """The word pi(tau_{m_1,n_1}(... tau_{m_K,n_K}(0) ...)).

    ``pairs`` is the sequence of (m_k, n_k).  The innermost substitution is
    applied first and images are expanded level by level, so no intermediate
    composed substitution is ever built.  Raises BudgetExceededError (with the
    predicted length attached) before allocating anything too large.
    """
    return generate_from_seed(pi, pairs, K, b"\x00", budget)


def generate_from_seed(pi: Substitution, pairs, K: int, seed: bytes,
                       budget: int = DEFAULT_BUDGET) -> bytes:
    """Like generate_word but expands an arbitrary binary seed word."""
    _check_params(pi, pairs, K)
    if not seed:
        raise InvalidArgumentError("seed must be nonempty")
    a, b = chain_lengths(pi, pairs, K)
    ones = sum(seed)
    predicted = a * (len(seed) - ones) + b * ones
    if predicted > budget:
        raise BudgetExceededError(predicted, budget)
    w = seed
    for m, n in reversed(pairs[:K]):
        tau0 = bytes([0] * (m - 1) + [1])
        tau1 = bytes([0] * (n - 1) + [1])
        w = b"".join(map((tau0, tau1).__getitem__, w))
    out = pi(w)
    assert len(out) == predicted
    return out


def generate_prefix(pi: Substitution, pairs, K: int, length: int) -> bytes:
    """Prefix of generate_word(pi, pairs, K) of the given length.

    Works even when the full word would be astronomically long: level words
    are kept only up to the requested length, using that the level step maps
    (v, u) to (v^{m-1} u, v^{n-1} u), whose prefixes are tilings of v (or a
    prefix of v once v alone overflows the window).
    """
    _check_params(pi, pairs, K)
    if length <= 0:
        raise InvalidArgumentError("length must be positive")
    full = chain_lengths(pi, pairs, K)[0]
    if full < length:
        raise InvalidArgumentError(
            f"level-{K} word has only {full} symbols, need {length}"
        )

    def head(pv, lv, reps, tail):
        # prefix of v^reps + tail given pv = prefix of v; pv is all of v while lv < length
        if lv >= length and reps >= 1:
            return pv[:length]
        out = pv * min(reps, -(-length // lv))
        if len(out) < length:
            out += tail
        return out[:length]

    pv, pu = pi.images[0], pi.images[1]
    lv, lu = len(pv), len(pu)
    for m, n in pairs[:K]:
        pv, pu = head(pv, lv, m - 1, pu), head(pv, lv, n - 1, pu)
        lv, lu = (m - 1) * lv + lu, (n - 1) * lv + lu
    return pv[:length]
