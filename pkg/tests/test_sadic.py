from fractions import Fraction

import pytest

from subshift_lab import (
    SadicParams,
    Substitution,
    build_table,
    closed_form_complexity,
    commutation_diff_count,
    constant_params,
    derived_lengths,
    derived_words,
    generate_word,
    identity,
    shift_diff_density,
    stability_check,
    syndetic_set,
    unique_decompose,
    validate_params,
    word,
)
from subshift_lab.errors import (
    InvalidArgumentError,
    NotAConcatenationError,
    OutOfRangeError,
)
from subshift_lab.sadic import calibration_length
from subshift_lab.words import max_common_suffix_periodic

from conftest import PI_FULL, mixed_full_tier


def validated_table(params, level, n_max):
    t1 = build_table(generate_word(params.pi, params.pairs, level), n_max)
    t2 = build_table(generate_word(params.pi, params.pairs, level + 1), n_max)
    return stability_check(t1, t2)


class TestValidateParams:
    def test_full_tier(self):
        pi = Substitution((word("10"), word("010")))
        p = constant_params(pi, 2, 4, 10)
        rep = validate_params(p)
        assert rep.tier == "full-4/3" and rep.violations == ()

    def test_ratio_clause(self):
        p = constant_params(PI_FULL, 5, 10, 4)
        rep = validate_params(p)
        assert rep.tier == "structural"
        assert any("1.9" in v for v in rep.violations)

    def test_one_three_lookback(self):
        p = SadicParams(pi=PI_FULL, mk=(2, 1), nk=(4, 3))
        rep = validate_params(p)
        assert any("(1,3)" in v for v in rep.violations)
        ok = SadicParams(pi=PI_FULL, mk=(2, 1), nk=(3, 3))
        assert validate_params(ok).tier == "full-4/3"

    def test_identity_pi_is_structural(self):
        rep = validate_params(constant_params(identity(2), 1, 2, 5))
        assert rep.tier == "structural"

    def test_invalid_pairs_rejected_at_construction(self):
        with pytest.raises(InvalidArgumentError):
            constant_params(identity(2), 3, 3, 4)


class TestDerivedWords:
    def test_fibonacci_values(self):
        fib = constant_params(identity(2), 1, 2, 10)
        d1 = derived_words(fib, 1)
        assert (d1.v, d1.u, d1.s, d1.p) == (word("0"), word("1"), b"", b"")
        assert derived_words(fib, 4).v == word("101")
        assert derived_words(fib, 4).u == word("01101")
        assert derived_words(fib, 3).s == word("101")
        assert all(derived_words(fib, k).p == b"" for k in range(1, 8))

    def test_two_three_values(self):
        p = constant_params(identity(2), 2, 3, 10)
        assert derived_words(p, 3).v == word("01001")
        assert derived_words(p, 3).u == word("0101001")
        assert derived_words(p, 2).s == word("01")
        assert derived_words(p, 3).p == word("010")

    def test_base_case(self):
        pi = Substitution((word("10"), word("010")))
        p = constant_params(pi, 2, 4, 4)
        d1 = derived_words(p, 1)
        assert d1.u == pi.images[1] and d1.v == pi.images[0]
        assert d1.p == b""

    def test_reproduces_generation(self, mixed_params):
        for k in range(2, 9):
            assert derived_words(mixed_params, k).v == generate_word(
                mixed_params.pi, mixed_params.pairs, k - 1
            )

    def test_suffix_recursion_matches_direct_scan(self, mixed_params):
        for k in range(2, 8):
            dw = derived_words(mixed_params, k)
            assert max_common_suffix_periodic(dw.v, dw.u) == dw.s

    def test_prefix_suffix_bound_on_full_tier(self, mixed_params, t24_full_params):
        for params in (mixed_params, t24_full_params):
            assert validate_params(params).tier == "full-4/3"
            for k in range(1, 9):
                dw = derived_words(params, k)
                assert len(dw.p) + len(dw.s) < min(
                    len(dw.u) + len(dw.v), 3 * len(dw.v)
                )

    def test_lengths_match_words(self, mixed_params):
        lv, lu, ls, lp = derived_lengths(mixed_params, 8)
        for k in range(1, 9):
            dw = derived_words(mixed_params, k)
            assert (len(dw.v), len(dw.u), len(dw.s), len(dw.p)) == (
                lv[k], lu[k], ls[k], lp[k]
            )


class TestUniqueDecompose:
    def test_fibonacci_u3_is_single_block(self):
        fib = constant_params(identity(2), 1, 2, 10)
        dec = unique_decompose(word("101"), fib, 2)
        assert dec.blocks == (1,)

    def test_defining_recursion(self, mixed_params):
        for k in range(1, 6):
            m = mixed_params.m(k + 1)
            target = derived_words(mixed_params, k + 2).v
            dec = unique_decompose(target, mixed_params, k)
            assert dec.blocks == (0,) * (m - 1) + (1,)

    def test_unparseable(self):
        fib = constant_params(identity(2), 1, 2, 10)
        with pytest.raises(NotAConcatenationError):
            unique_decompose(word("11"), fib, 2)

    def test_roundtrip_long(self, t24_full_params):
        p = t24_full_params
        targets = [derived_words(p, 6).v, derived_words(p, 6).u]
        blocks = derived_words(p, 4)
        for tgt in targets:
            dec = unique_decompose(tgt, p, 3)
            assert b"".join((blocks.v, blocks.u)[b] for b in dec.blocks) == tgt


class TestClosedFormComplexity:
    def brute(self, params, level, q_hi):
        table = validated_table(params, level, q_hi + 1)
        return table

    def test_fibonacci_is_affine(self):
        fib = constant_params(identity(2), 1, 2, 24)
        table = self.brute(fib, 16, 60)
        assert calibration_length(fib) == 1
        K = table.p(1) - 1
        assert K == 1
        for q in range(4, 55):
            assert closed_form_complexity(fib, q, table) == q + 1

    @pytest.mark.parametrize("m,n,level", [(2, 3, 10), (2, 4, 9), (3, 5, 7)])
    def test_matches_brute_force_constant(self, m, n, level):
        params = constant_params(identity(2), m, n, 20)
        lv, lu, ls, lp = derived_lengths(params, 8)
        q_lo = ls[2] + (n - 2) * lv[2] + lp[2]
        q_hi = min(ls[6] + (params.m(6) - 1) * lv[6] + lp[6], 600)
        table = self.brute(params, level, q_hi)
        for q in range(q_lo, q_hi + 1):
            assert closed_form_complexity(params, q, table) == table.p(q), (m, n, q)

    def test_matches_brute_force_mixed(self):
        params = mixed_full_tier(seed=7, levels=16)
        lv, lu, ls, lp = derived_lengths(params, 8)
        q_lo = ls[2] + (params.n(2) - 2) * lv[2] + lp[2]
        q_hi = 500
        table = self.brute(params, 9, q_hi)
        for q in range(q_lo, q_hi + 1):
            assert closed_form_complexity(params, q, table) == table.p(q), q

    def test_branch_agreement_at_shared_endpoint(self, t24_full_params):
        params = t24_full_params
        lv, lu, ls, lp = derived_lengths(params, 8)
        table = self.brute(params, 9, 400)
        for k in (2, 3, 4):
            q = ls[k] + (params.n(k) - 2) * lv[k] + lp[k]
            if q > 400:
                continue
            # walking the intervals lands on one branch; the other is the
            # explicit slope-1 expression, evaluated here by hand
            running = sum(
                (params.n(j) - params.m(j) - 1) * lv[j] for j in range(2, k + 1)
            )
            K = table.p(calibration_length(params)) - calibration_length(params)
            assert closed_form_complexity(params, q, table) == q + running + K

    def test_below_range(self, t24_full_params):
        table = self.brute(t24_full_params, 8, 60)
        with pytest.raises(OutOfRangeError):
            closed_form_complexity(t24_full_params, 2, table)


class TestCommutationDiff:
    def test_fibonacci_hand_count(self):
        fib = constant_params(identity(2), 1, 2, 10)
        count, bound = commutation_diff_count(fib, 0, 1, 1)
        assert (count, bound) == (2, 2)

    def test_two_three_hand_count(self):
        p = constant_params(identity(2), 2, 3, 10)
        count, bound = commutation_diff_count(p, 0, 1, 1)
        assert (count, bound) == (2, 2)

    def test_bound_all_fixtures(self, fib_params, t23_params, t24_full_params, mixed_params):
        for params in (fib_params, t23_params, t24_full_params, mixed_params):
            for k in range(0, 6):
                for i in (0, 1):
                    for reps in (1, 2, 5):
                        count, bound = commutation_diff_count(params, i, k, reps)
                        assert count <= bound

    def test_strict_when_pi_images_differ(self, t24_full_params, mixed_params):
        for params in (t24_full_params, mixed_params):
            for k in range(0, 5):
                for i in (0, 1):
                    count, bound = commutation_diff_count(params, i, k, 3)
                    assert count < bound


class TestShiftDiffDensity:
    def test_zero_shift(self, t23_params):
        rep = shift_diff_density(t23_params, 0, 1000)
        assert rep.density == 0

    def test_fibonacci_d3(self):
        fib = constant_params(identity(2), 1, 2, 30)
        rep = shift_diff_density(fib, 3, 10_000)
        assert rep.level == 3
        assert rep.bound == Fraction(2, 5)
        assert rep.density <= rep.bound

    def test_full_tier_bounds(self, t24_full_params):
        lv, _, _, _ = derived_lengths(t24_full_params, 10)
        for k in range(1, 7):
            rep = shift_diff_density(t24_full_params, lv[k + 1], 50_000)
            assert rep.bound is not None
            assert rep.density <= rep.bound

    def test_subadditivity_probe(self, t24_full_params):
        lv, _, _, _ = derived_lengths(t24_full_params, t24_full_params.levels + 1)
        N = 40_000
        x = generate_word(
            t24_full_params.pi, t24_full_params.pairs,
            next(k for k in range(1, 20) if lv[k + 1] >= N + 2 * lv[6]), 10 ** 8,
        )
        d_a, d_b = lv[5 + 1], lv[3 + 1]
        da = shift_diff_density(t24_full_params, d_a, N, x=x).density
        db = shift_diff_density(t24_full_params, d_b, N, x=x).density
        dsum = shift_diff_density(t24_full_params, d_a + d_b, N, x=x).density
        assert dsum <= da + db + Fraction(2, N)


class TestSyndeticSet:
    def test_fibonacci_gap(self):
        fib = constant_params(identity(2), 1, 2, 30)
        elements, max_gap = syndetic_set(fib, 2, 1000)
        lv, _, _, _ = derived_lengths(fib, 4)
        assert max_gap <= lv[3]  # d_2
        assert elements[0] == 0

    def test_two_four_gap(self, t24_params):
        lv, _, _, _ = derived_lengths(t24_params, 5)
        elements, max_gap = syndetic_set(t24_params, 3, 10_000)
        assert max_gap <= lv[4]  # d_3

    def test_membership_definition(self, t23_params):
        # every enumerated element is a bounded-digit combination
        lv, _, _, _ = derived_lengths(t23_params, t23_params.levels + 1)
        k = 2
        elements, _ = syndetic_set(t23_params, k, 300)
        digits = [(lv[i + 1], t23_params.n(i + 1) + 1)
                  for i in range(k, t23_params.levels) if lv[i + 1] <= 300]
        feasible = {0}
        for d, cap in digits:
            feasible = {s + p * d for s in feasible for p in range(cap + 1) if s + p * d <= 300}
        assert set(elements) <= feasible
        assert set(elements) == feasible
