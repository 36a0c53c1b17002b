from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bibdkit.bounds import (
    BoundName,
    BoundReport,
    bose_bound,
    bound_report,
    ceil_div,
    conjecture_bound,
    fisher_bound,
    kageyama_bound,
    khan_a_bound,
    khan_b_bound,
    lemma_2_1_checks,
    lemma_2_2_checks,
    theorem_2_3_residual_variant,
    theorem_2_3_stated,
)
from bibdkit.params import BibdParams, OneDesignParams, derive_params

FANO = BibdParams(7, 7, 3, 3, 1)
AG23 = BibdParams(9, 12, 4, 3, 1)
ROW_101 = BibdParams(8, 28, 14, 4, 6)
ROW_305 = BibdParams(421, 421, 21, 21, 1)
ROW_601 = BibdParams(61, 366, 30, 5, 2)
TWOFOLD_TRIPLE_6 = BibdParams(6, 10, 5, 3, 2)
RBIBD_EXAMPLE = BibdParams(16, 140, 35, 4, 7)
COMPLETE_4 = BibdParams(4, 1, 1, 4, 1)


class TestCeilDiv:
    def test_exact_and_rounding(self):
        assert ceil_div(6, 3) == 2
        assert ceil_div(7, 3) == 3
        assert ceil_div(0, 5) == 0

    def test_rejects_nonpositive_divisor(self):
        with pytest.raises(ValueError):
            ceil_div(1, 0)
        with pytest.raises(ValueError):
            ceil_div(1, -2)

    def test_rejects_negative_numerator(self):
        with pytest.raises(ValueError):
            ceil_div(-1, 2)

    @given(a=st.integers(1, 10**6), c=st.integers(1, 10**6))
    def test_matches_rational_oracle(self, a, c):
        exact = Fraction(a, c)
        expected = int(exact) if exact.denominator == 1 else int(exact) + 1
        assert ceil_div(a, c) == expected

    @given(a=st.integers(0, 10**30), c=st.integers(1, 10**15))
    def test_huge_operands_never_wrap(self, a, c):
        expected = -((-a) // c)
        assert ceil_div(a, c) == expected


class TestFisher:
    def test_always_applicable_value_v(self):
        bv = fisher_bound(FANO)
        assert bv.applicable and bv.value == 7 and bv.satisfied

    def test_twelve_block_case(self):
        assert fisher_bound(AG23).value == 9

    @given(st.integers(2, 60), st.integers(2, 60), st.integers(1, 12))
    def test_value_is_always_v(self, v, k, lam):
        if k > v:
            return
        try:
            p = derive_params(v, k, lam)
        except Exception:
            return
        assert fisher_bound(p).value == p.v


class TestBose:
    def test_applicable_case(self):
        bv = bose_bound(AG23)
        assert bv.applicable and bv.value == 12 and bv.satisfied

    def test_replication_criterion_gates(self):
        bv = bose_bound(FANO)
        assert not bv.applicable
        assert bv.value is None and bv.satisfied is None
        assert bv.reason

    def test_large_row(self):
        assert bose_bound(ROW_601).value == 90


class TestKageyama:
    def test_needs_caller_assertion(self):
        assert not kageyama_bound(RBIBD_EXAMPLE, resolvable_not_affine=False).applicable

    def test_value_with_assertion(self):
        bv = kageyama_bound(RBIBD_EXAMPLE, resolvable_not_affine=True)
        assert bv.applicable and bv.value == 66

    def test_divisibility_gates_even_with_assertion(self):
        assert not kageyama_bound(FANO, resolvable_not_affine=True).applicable


class TestKhanA:
    def test_row_101(self):
        assert khan_a_bound(ROW_101).value == 23

    def test_twelve_block_case(self):
        assert khan_a_bound(AG23).value == 10

    def test_row_305(self):
        assert khan_a_bound(ROW_305).value == 403

    def test_worked_example_exact_value(self):
        # exact arithmetic: ceil(1728/256) = 7, plus 2*35 - 7
        assert khan_a_bound(RBIBD_EXAMPLE).value == 70

    def test_trivial_design_not_applicable(self):
        assert not khan_a_bound(COMPLETE_4).applicable


class TestKhanB:
    def test_twofold_triple(self):
        assert khan_b_bound(TWOFOLD_TRIPLE_6).value == 10

    def test_row_101(self):
        assert khan_b_bound(ROW_101).value == 25

    def test_low_replication_not_applicable(self):
        bv = khan_b_bound(AG23)
        assert not bv.applicable
        assert "4" in bv.reason and "8" in bv.reason

    def test_worked_example(self):
        assert khan_b_bound(RBIBD_EXAMPLE).value == 73


class TestConjectureBound:
    def test_twelve_block_case_equality(self):
        bv = conjecture_bound(AG23)
        assert bv.applicable and bv.value == 12 and bv.satisfied

    def test_twofold_triple(self):
        bv = conjecture_bound(TWOFOLD_TRIPLE_6)
        assert bv.value == 10 and bv.satisfied

    def test_hypothesis_failure_not_applicable(self):
        assert not conjecture_bound(FANO).applicable

    def test_can_exceed_block_count(self):
        # pairs on 4 points: bound 7 > b = 6
        bv = conjecture_bound(BibdParams(4, 6, 3, 2, 1))
        assert bv.applicable and bv.value == 7 and not bv.satisfied


class TestBoundValueShape:
    @given(st.integers(2, 50), st.integers(2, 50), st.integers(1, 10), st.booleans())
    def test_value_present_iff_applicable(self, v, k, lam, rna):
        if k > v:
            return
        try:
            p = derive_params(v, k, lam)
        except Exception:
            return
        rep = bound_report(p, resolvable_not_affine=rna)
        for bv in rep.bounds:
            if bv.applicable:
                assert isinstance(bv.value, int) and bv.value > 0
                assert bv.satisfied == (p.b >= bv.value)
                assert bv.reason is None
            else:
                assert bv.value is None and bv.satisfied is None
                assert bv.reason


class TestBoundReport:
    def test_fixed_order(self):
        rep = bound_report(FANO)
        assert [bv.name for bv in rep.bounds] == [
            BoundName.FISHER,
            BoundName.BOSE,
            BoundName.KAGEYAMA,
            BoundName.KHAN_A,
            BoundName.KHAN_B,
            BoundName.CONJECTURE,
        ]

    def test_winner_row_101(self):
        rep = bound_report(ROW_101)
        assert rep.winner is BoundName.KHAN_B
        assert rep[BoundName.KHAN_B].value == 25
        assert rep[BoundName.BOSE].value == 21

    def test_winner_twelve_block_case(self):
        rep = bound_report(AG23)
        assert rep.winner is BoundName.BOSE
        assert rep[BoundName.BOSE].value == 12
        assert rep[BoundName.KHAN_A].value == 10

    def test_winner_row_601_ignores_conjecture(self):
        rep = bound_report(ROW_601)
        assert rep.winner is BoundName.KHAN_A
        assert rep[BoundName.KHAN_A].value == 106
        # the unproven bound is reported but can never win
        assert rep[BoundName.CONJECTURE].value == 111

    def test_ties_break_to_earliest(self):
        rep = bound_report(FANO)
        assert rep[BoundName.KHAN_A].value == 7 == rep[BoundName.FISHER].value
        assert rep.winner is BoundName.FISHER

    @given(st.integers(2, 60), st.integers(2, 60), st.integers(1, 12), st.booleans())
    def test_winner_dominates_proven_bounds(self, v, k, lam, rna):
        if k > v:
            return
        try:
            p = derive_params(v, k, lam)
        except Exception:
            return
        rep = bound_report(p, resolvable_not_affine=rna)
        assert isinstance(rep, BoundReport)
        assert rep.winner is not BoundName.CONJECTURE
        winner_value = rep[rep.winner].value
        for bv in rep.bounds:
            if bv.applicable and bv.name is not BoundName.CONJECTURE:
                assert winner_value >= bv.value


class TestLemma21:
    def test_fano_all_hold(self):
        a, b, c = lemma_2_1_checks(FANO)
        assert not a.violated and not b.violated and not c.violated
        assert a.operands == {"b*k^2": 63, "lambda*v^2": 49}
        assert b.operands == {"b*k^3": 189, "lambda*v^3": 343}
        assert c.operands == {"k^3": 27, "lambda*v^2": 49}

    def test_complete_block_equality_and_vacuity(self):
        a, b, c = lemma_2_1_checks(COMPLETE_4)
        assert a.hypothesis and a.conclusion and a.operands["b*k^2"] == 16
        assert not b.hypothesis and not c.hypothesis
        assert not b.violated and not c.violated

    def test_twelve_block_case(self):
        a, b, c = lemma_2_1_checks(AG23)
        assert a.operands == {"b*k^2": 108, "lambda*v^2": 81}
        assert b.operands == {"b*k^3": 324, "lambda*v^3": 729}
        assert c.operands == {"k^3": 27, "lambda*v^2": 81}
        assert not a.violated and not b.violated and not c.violated

    @given(st.integers(2, 80), st.integers(2, 80), st.integers(1, 15))
    def test_never_violated_on_derivable_quintuples(self, v, k, lam):
        if k > v:
            return
        try:
            p = derive_params(v, k, lam)
        except Exception:
            return
        for hc in lemma_2_1_checks(p):
            assert not hc.violated
            assert not hc.violated or hc.hypothesis  # violated implies hypothesis


class TestLemma22:
    def test_residual_shape(self):
        q = OneDesignParams(6, 4, 2, 3, 2)
        a, b = lemma_2_2_checks(q, 2)
        assert a.hypothesis and a.conclusion
        assert a.operands == {"B*K^m": 36, "Lambda*V^m": 72, "m": 2}
        assert not b.hypothesis  # 4 < 6

    def test_two_design_reread_as_one_design(self):
        q = OneDesignParams(7, 7, 3, 3, 3)
        a, b = lemma_2_2_checks(q, 2)
        assert a.operands == {"B*K^m": 63, "Lambda*V^m": 147, "m": 2}
        assert b.hypothesis and b.conclusion
        assert b.operands == {"K^m": 9, "Lambda*V^(m-1)": 21, "m": 2}

    def test_complete_block_equality(self):
        q = OneDesignParams(5, 1, 1, 5, 1)
        a, _ = lemma_2_2_checks(q, 2)
        assert a.conclusion
        assert a.operands == {"B*K^m": 25, "Lambda*V^m": 25, "m": 2}

    def test_exponent_must_be_at_least_two(self):
        q = OneDesignParams(7, 7, 3, 3, 3)
        with pytest.raises(ValueError):
            lemma_2_2_checks(q, 1)


class TestTheorem23:
    def test_stated_holds_on_twofold_triple(self):
        hc = theorem_2_3_stated(TWOFOLD_TRIPLE_6)
        assert hc.hypothesis and hc.conclusion and not hc.violated

    def test_stated_violated_on_twelve_block_case(self):
        hc = theorem_2_3_stated(AG23)
        assert hc.hypothesis  # 12 >= 12
        assert not hc.conclusion  # 9 > 8
        assert hc.violated
        assert hc.operands["k^2"] == 9
        assert hc.operands["lambda*(v-1)"] == 8

    def test_stated_vacuous_when_hypothesis_fails(self):
        hc = theorem_2_3_stated(FANO)
        assert not hc.hypothesis and not hc.violated

    def test_variant_holds_where_stated_fails(self):
        hc = theorem_2_3_residual_variant(AG23)
        assert hc.hypothesis and hc.conclusion
        assert hc.operands == {"b": 12, "v+r-1": 12, "k^2": 9, "(r-lambda)*(v-1)": 24}

    def test_variant_on_twofold_triple(self):
        hc = theorem_2_3_residual_variant(TWOFOLD_TRIPLE_6)
        assert hc.conclusion and hc.operands["(r-lambda)*(v-1)"] == 15

    def test_variant_vacuous_on_fano(self):
        assert not theorem_2_3_residual_variant(FANO).hypothesis
