import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subshift_lab import (
    common_power_decomposition,
    is_root,
    max_common_prefix,
    max_common_suffix_periodic,
    minimal_root,
    word,
)
from subshift_lab.errors import (
    InvalidArgumentError,
    NotCommutingError,
    PowersOfSameWordError,
)

words = st.binary(min_size=1, max_size=64).map(
    lambda b: bytes(c % 3 for c in b)
)
small_words = st.binary(min_size=1, max_size=12).map(lambda b: bytes(c % 2 for c in b))


def brute_is_root(v, w):
    """Oracle: literally tile v far enough and compare suffixes."""
    if len(v) > len(w):
        return False
    tiled = v * (len(w) // len(v) + 1)
    return tiled[len(tiled) - len(w):] == w


def brute_minimal_root(w):
    """Oracle: scan suffix lengths from 1 upward."""
    for ell in range(1, len(w) + 1):
        if brute_is_root(w[-ell:], w):
            return w[-ell:]
    raise AssertionError("unreachable: every word roots itself")


class TestMinimalRoot:
    def test_single_letter(self):
        assert minimal_root(word("0")) == word("0")

    def test_period_two(self):
        assert minimal_root(word("0101")) == word("01")

    def test_aperiodic(self):
        assert minimal_root(word("100")) == word("100")

    def test_empty_rejected(self):
        with pytest.raises(InvalidArgumentError):
            minimal_root(b"")

    @given(words)
    def test_matches_brute_force(self, w):
        assert minimal_root(w) == brute_minimal_root(w)

    @given(words)
    def test_no_shorter_suffix_is_root(self, w):
        r = minimal_root(w)
        assert is_root(r, w)
        for ell in range(1, len(r)):
            assert not is_root(w[-ell:], w)


class TestIsRoot:
    def test_examples(self):
        assert is_root(word("01"), word("0101"))
        assert not is_root(word("0"), word("100"))
        assert is_root(word("01"), word("101"))

    @given(small_words, small_words)
    def test_suffix_absorption(self, v, w):
        # if wv has w as a suffix and |v| <= |w| then v is a root of w
        if len(v) <= len(w) and (w + v).endswith(w):
            assert is_root(v, w)


class TestMaxCommonPrefix:
    @pytest.mark.parametrize(
        "u,v,expect",
        [("01", "001", "0"), ("0", "1", ""), ("0101", "0100", "010")],
    )
    def test_examples(self, u, v, expect):
        assert max_common_prefix(word(u), word(v)) == word(expect)


class TestCommonPowerDecomposition:
    def test_power_pair(self):
        assert common_power_decomposition(word("0101"), word("01")) == (word("01"), 2, 1)

    def test_unequal_powers(self):
        assert common_power_decomposition(word("00"), word("000")) == (word("0"), 2, 3)

    def test_non_commuting(self):
        with pytest.raises(NotCommutingError):
            common_power_decomposition(word("01"), word("10"))

    @given(small_words, st.integers(1, 4), st.integers(1, 4))
    def test_roundtrip(self, base, t, s):
        base = minimal_root(base * 2)[: len(base)] or base
        u, v = base * t, base * s
        if u + v == v + u:
            b, tt, ss = common_power_decomposition(u, v)
            assert b * tt == u and b * ss == v


class TestMaxCommonSuffixPeriodic:
    def test_mismatch_at_once(self):
        assert max_common_suffix_periodic(word("0"), word("1")) == b""

    def test_proper_overlap(self):
        assert max_common_suffix_periodic(word("01"), word("001")) == word("01")

    def test_power_pair_is_degenerate(self):
        with pytest.raises(PowersOfSameWordError):
            max_common_suffix_periodic(word("01"), word("0101"))

    def test_empty_rejected(self):
        with pytest.raises(InvalidArgumentError):
            max_common_suffix_periodic(b"", word("1"))

    @given(small_words, small_words)
    @settings(max_examples=200)
    def test_matches_long_materialization(self, v, u):
        """Oracle: materialize long finite tails of both infinite words."""
        if len(v) >= len(u):
            return
        span = 4 * (len(u) + len(v))
        tail_a = (v * span)[-span:]
        tail_b = ((v * span) + u)[-span:]
        i = 0
        while i < span and tail_a[-1 - i] == tail_b[-1 - i]:
            i += 1
        try:
            s = max_common_suffix_periodic(v, u)
        except PowersOfSameWordError:
            assert i >= len(u) + len(v)
            return
        assert s == tail_b[span - i:]
        assert len(s) < len(u) + len(v)


class TestConcatenationSuffixLemmas:
    """Suffix-stability of the periodic common suffix under concatenations."""

    @given(small_words, small_words)
    @settings(max_examples=150)
    def test_suffix_of_every_concatenation(self, v, u):
        # s is a suffix of any left-infinite concatenation of u and v when
        # v is a suffix of u and u, v are not powers of one word
        if len(v) >= len(u) or not u.endswith(v):
            return
        try:
            s = max_common_suffix_periodic(v, u)
        except PowersOfSameWordError:
            return
        total = 4 * (len(u) + len(v))
        stack = [b""]
        seen = []
        while stack:
            cur = stack.pop()
            if len(cur) >= max(len(s), 1) + len(u):
                seen.append(cur)
                continue
            if len(cur) <= total:
                stack.append(u + cur)
                stack.append(v + cur)
        for tail in seen:
            if len(tail) >= len(s):
                assert tail.endswith(s)

    @given(small_words, small_words, small_words)
    @settings(max_examples=150)
    def test_extension_by_common_word(self, v, u, w):
        # maximal common suffix of yvw and zuw is s w, for y, z long-enough
        # suffixes of concatenations
        if len(v) >= len(u) or not u.endswith(v) or v[0] == u[0]:
            return
        try:
            s = max_common_suffix_periodic(v, u)
        except PowersOfSameWordError:
            return
        y = (u + v * 3)[-(len(s) + len(v)):]
        z = (v * 2 + u + u)[-(len(s) + len(u)):]
        if len(y) < len(s) or len(z) < len(s):
            return
        a, b = y + v + w, z + u + w
        i = 0
        while i < min(len(a), len(b)) and a[-1 - i] == b[-1 - i]:
            i += 1
        assert a[len(a) - i:] == s + w
