import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subshift_lab import (
    Substitution,
    abelian_analysis,
    compose,
    generate_from_seed,
    generate_prefix,
    generate_word,
    identity,
    make_tau,
    word,
)
from subshift_lab.errors import BudgetExceededError, InvalidArgumentError, UnsupportedError
from subshift_lab.substitution import chain_lengths


class TestMakeTau:
    def test_two_three(self):
        assert make_tau(2, 3).images == (word("01"), word("001"))

    def test_one_two(self):
        assert make_tau(1, 2).images == (word("1"), word("01"))

    def test_three_five(self):
        assert make_tau(3, 5).images == (word("001"), word("00001"))

    @pytest.mark.parametrize("m,n", [(3, 3), (0, 2), (4, 2)])
    def test_rejects_bad_parameters(self, m, n):
        with pytest.raises(InvalidArgumentError):
            make_tau(m, n)

    @given(st.integers(1, 40), st.integers(1, 40))
    def test_image_lengths(self, m, d):
        n = m + d
        assert make_tau(m, n).image_lengths() == (m, n)


class TestCompose:
    def test_definition_by_hand(self):
        outer, inner = make_tau(1, 2), make_tau(2, 3)
        assert compose(outer, inner).images[0] == word("101")

    def test_identity_law(self):
        t = make_tau(2, 3)
        assert compose(identity(2), t).images == t.images
        assert compose(t, identity(2)).images == t.images

    def test_abelianization_of_composition(self):
        # matrix of (tau_{2,3} o tau_{1,3}) equals the product with m = 2
        comp = compose(make_tau(2, 3), make_tau(1, 3))
        assert abelian_analysis(comp).entries == ((2, 1), (4, 3))

    def test_alphabet_mismatch(self):
        three_letter = Substitution((b"\x00", b"\x01", b"\x02"))
        with pytest.raises(InvalidArgumentError):
            compose(make_tau(1, 2), three_letter)

    @given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 8), st.integers(1, 8))
    @settings(max_examples=60)
    def test_length_homomorphism(self, m1, d1, m2, d2):
        outer, inner = make_tau(m1, m1 + d1), make_tau(m2, m2 + d2)
        comp = compose(outer, inner)
        mo = [[r for r in row] for row in abelian_analysis(outer).entries]
        for a in range(2):
            counts = abelian_analysis(inner).entries[a]
            expect = sum(counts[b] * sum(mo[b]) for b in range(2))
            assert len(comp.images[a]) == expect


class TestAbelianAnalysis:
    def test_two_three(self):
        am = abelian_analysis(make_tau(2, 3))
        assert am.entries == ((1, 1), (2, 1))
        assert am.pisot
        assert am.eigenvalues[0] == pytest.approx(1 + 2 ** 0.5)
        assert am.eigenvalues[1] == pytest.approx(1 - 2 ** 0.5)

    def test_one_three_not_pisot(self):
        am = abelian_analysis(make_tau(1, 3))
        assert am.eigenvalues == (2.0, -1.0)
        assert not am.pisot

    def test_golden_ratio(self):
        am = abelian_analysis(make_tau(1, 2))
        phi = (1 + 5 ** 0.5) / 2
        assert am.eigenvalues[0] == pytest.approx(phi)
        assert am.eigenvalues[1] == pytest.approx(-1 / phi)
        assert am.pisot

    def test_non_binary_rejected(self):
        with pytest.raises(UnsupportedError):
            abelian_analysis(Substitution((b"\x00", b"\x01", b"\x02")))

    def test_pisot_iff_n_at_most_2m(self):
        for m in range(1, 51):
            for n in range(m + 1, 2 * m + 3):
                assert abelian_analysis(make_tau(m, n)).pisot == (n <= 2 * m), (m, n)


class TestGenerateWord:
    def test_fibonacci_level_four(self):
        pairs = ((1, 2),) * 6
        assert generate_word(identity(2), pairs, 4) == word("01101")

    def test_level_zero_is_pi_of_zero(self):
        pi = Substitution((word("100"), word("0110")))
        assert generate_word(pi, ((2, 3),), 0) == word("100")

    def test_two_three_level_two(self):
        assert generate_word(identity(2), ((2, 3),) * 3, 2) == word("01001")

    def test_budget(self):
        with pytest.raises(BudgetExceededError) as exc:
            generate_word(identity(2), ((2, 3),) * 30, 30, budget=1000)
        assert exc.value.predicted_length > 1000

    def test_naive_composition_oracle(self):
        # expanding level by level equals composing substitutions first
        pairs = ((2, 3), (1, 2), (2, 4), (1, 3), (3, 5))
        pi = Substitution((word("10"), word("010")))
        comp = make_tau(*pairs[-1])
        for m, n in reversed(pairs[:-1]):
            comp = compose(make_tau(m, n), comp)
        comp = compose(pi, comp)
        assert generate_word(pi, pairs, len(pairs)) == comp.images[0]

    @given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=8))
    @settings(max_examples=60)
    def test_length_recursion(self, raw):
        pairs = tuple((m, m + d) for m, d in raw)
        # d_{k+1} = b_{k+1} d_k + a_{k+1} d_{k-1}
        pi = Substitution((word("10"), word("010")))
        d_prev, d_cur = len(pi.images[1]) - len(pi.images[0]), len(pi.images[0])
        for k, (m, n) in enumerate(pairs, start=1):
            a_k = 1 if k == 1 else pairs[k - 2][1] - pairs[k - 2][0]
            d_prev, d_cur = d_cur, m * d_cur + a_k * d_prev
        assert len(generate_word(pi, pairs, len(pairs))) == d_cur
        assert chain_lengths(pi, pairs, len(pairs))[0] == d_cur


class TestGeneratePrefix:
    def test_matches_full_word(self):
        pairs = ((2, 3),) * 10
        full = generate_word(identity(2), pairs, 10)
        for ln in (1, 7, 100, len(full)):
            assert generate_prefix(identity(2), pairs, 10, ln) == full[:ln]

    def test_huge_level_prefix(self):
        pairs = tuple((10 ** (k + 1), 2 * 10 ** (k + 1)) for k in range(8))
        pref = generate_prefix(identity(2), pairs, 8, 5000)
        small = generate_word(identity(2), pairs, 2)
        assert pref[: len(small)] == small  # deep prefixes extend shallow words
        assert len(pref) == 5000

    def test_too_short_level_rejected(self):
        with pytest.raises(InvalidArgumentError):
            generate_prefix(identity(2), ((1, 2),) * 3, 3, 100)


class TestGenerateFromSeed:
    def test_seed_concatenation(self):
        pairs = ((2, 3),) * 4
        v = generate_word(identity(2), pairs, 4)
        both = generate_from_seed(identity(2), pairs, 4, b"\x00\x01")
        assert both.startswith(v)
        assert len(both) > len(v)
