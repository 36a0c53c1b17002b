import pytest
from hypothesis import given, strategies as st

from bibdkit.params import (
    AdmissibilityReport,
    BibdParams,
    DegenerateBlockSizeError,
    InvalidParamsError,
    NonIntegralError,
    OneDesignParams,
    ParamError,
    check_admissible,
    derive_params,
    is_nontrivial,
    one_design_lambda,
    one_design_params,
)


class TestDeriveParams:
    def test_fano_quintuple(self):
        assert derive_params(7, 3, 1).as_tuple() == (7, 7, 3, 3, 1)

    def test_nine_point_triple_system(self):
        assert derive_params(9, 3, 1).as_tuple() == (9, 12, 4, 3, 1)

    def test_nonintegral_r_names_r(self):
        with pytest.raises(NonIntegralError) as exc:
            derive_params(8, 3, 1)
        assert exc.value.which == "r"
        assert "7/2" in str(exc.value)

    def test_nonintegral_b_names_b(self):
        # r = 3*5/3 = 5 is fine, b = 30/4 is not
        with pytest.raises(NonIntegralError) as exc:
            derive_params(6, 4, 3)
        assert exc.value.which == "b"

    def test_k_equal_one_is_degenerate(self):
        with pytest.raises(DegenerateBlockSizeError):
            derive_params(5, 1, 1)

    def test_range_violations_rejected(self):
        with pytest.raises(ParamError):
            derive_params(1, 1, 1)
        with pytest.raises(ParamError):
            derive_params(7, 8, 1)
        with pytest.raises(ParamError):
            derive_params(7, 3, 0)

    def test_derivation_can_fail_fisher(self):
        # deriving is not admissibility: this quintuple has b < v
        p = derive_params(16, 6, 1)
        assert p.as_tuple() == (16, 8, 3, 6, 1)
        assert not check_admissible(*p.as_tuple()).admissible

    @given(
        v=st.integers(2, 300),
        k=st.integers(2, 300),
        lam=st.integers(1, 60),
    )
    def test_derived_quintuples_satisfy_identities_and_ranges(self, v, k, lam):
        if k > v:
            return
        try:
            p = derive_params(v, k, lam)
        except ParamError:
            return
        assert (p.v, p.k, p.lam) == (v, k, lam)
        assert p.b * p.k == p.v * p.r
        assert p.lam * (p.v - 1) == p.r * (p.k - 1)
        assert 1 <= p.r <= p.b
        report = check_admissible(*p.as_tuple())
        non_fisher = [c for c in report.checks if c.name != "fisher"]
        assert all(c.passed for c in non_fisher)
        # the one predicate derivation cannot guarantee
        assert report.admissible == (p.b >= p.v)


class TestBibdParams:
    def test_valid_quintuple_constructs(self):
        p = BibdParams(9, 12, 4, 3, 1)
        assert p.as_tuple() == (9, 12, 4, 3, 1)

    def test_incidence_identity_enforced_with_operands(self):
        with pytest.raises(InvalidParamsError) as exc:
            BibdParams(7, 8, 3, 3, 1)
        assert "24" in str(exc.value) and "21" in str(exc.value)

    def test_pair_identity_enforced_with_operands(self):
        with pytest.raises(InvalidParamsError) as exc:
            BibdParams(69, 138, 34, 17, 16)
        assert "1088" in str(exc.value) and "544" in str(exc.value)

    def test_fisher_not_required_by_constructor(self):
        p = BibdParams(16, 8, 3, 6, 1)
        assert p.b < p.v

    def test_frozen(self):
        p = BibdParams(7, 7, 3, 3, 1)
        with pytest.raises(AttributeError):
            p.v = 8

    @given(
        v=st.integers(0, 40),
        b=st.integers(0, 40),
        r=st.integers(0, 40),
        k=st.integers(0, 40),
        lam=st.integers(0, 40),
    )
    def test_constructor_agrees_with_named_checks(self, v, b, r, k, lam):
        report = check_admissible(v, b, r, k, lam)
        by_name = {c.name: c.passed for c in report.checks}
        expected = all(
            by_name[name]
            for name in (
                "v_range",
                "k_range",
                "lambda_range",
                "r_range",
                "identity_bk_vr",
                "identity_pair_count",
            )
        )
        try:
            BibdParams(v, b, r, k, lam)
            constructed = True
        except ParamError:
            constructed = False
        assert constructed == expected


class TestCheckAdmissible:
    def test_admissible_example(self):
        report = check_admissible(7, 7, 3, 3, 1)
        assert report.admissible
        assert report.failures == ()

    def test_single_perturbed_field_names_the_identity(self):
        report = check_admissible(7, 8, 3, 3, 1)
        assert not report.admissible
        assert [c.name for c in report.failures] == ["identity_bk_vr"]
        assert "24" in report.failures[0].detail

    def test_no_short_circuit_all_predicates_reported(self):
        report = check_admissible(0, 0, 0, 0, 0)
        names = [c.name for c in report.checks]
        assert names == [
            "v_range",
            "k_range",
            "lambda_range",
            "r_range",
            "r_integral",
            "b_integral",
            "identity_bk_vr",
            "identity_pair_count",
            "fisher",
        ]
        failed = {c.name for c in report.failures}
        assert {"v_range", "lambda_range", "r_range"} <= failed

    def test_fisher_failure_reported(self):
        report = check_admissible(16, 8, 3, 6, 1)
        assert {c.name for c in report.failures} == {"fisher"}

    def test_pair_designs_are_admissible(self):
        assert check_admissible(4, 6, 3, 2, 1).admissible

    @given(
        v=st.integers(0, 60),
        b=st.integers(0, 60),
        r=st.integers(0, 60),
        k=st.integers(0, 60),
        lam=st.integers(0, 60),
    )
    def test_admissible_iff_every_check_passes(self, v, b, r, k, lam):
        report = check_admissible(v, b, r, k, lam)
        assert isinstance(report, AdmissibilityReport)
        assert report.admissible == all(c.passed for c in report.checks)
        assert report.admissible == (report.failures == ())


class TestNontrivial:
    def test_proper_block_size(self):
        assert is_nontrivial(BibdParams(7, 7, 3, 3, 1))

    def test_complete_blocks_are_trivial(self):
        assert not is_nontrivial(BibdParams(4, 1, 1, 4, 1))

    def test_pair_blocks_are_nontrivial(self):
        assert is_nontrivial(BibdParams(4, 6, 3, 2, 1))


class TestOneDesignParams:
    def test_replication_equals_index(self):
        q = OneDesignParams(7, 7, 3, 3, 3)
        assert q.r == q.lam == 3

    def test_identity_enforced(self):
        with pytest.raises(InvalidParamsError):
            OneDesignParams(7, 7, 3, 3, 2)
        with pytest.raises(InvalidParamsError):
            OneDesignParams(6, 4, 2, 3, 3)

    def test_lambda_helper_exact(self):
        assert one_design_lambda(7, 7, 3) == 3
        assert one_design_lambda(6, 4, 3) == 2

    def test_lambda_helper_nonintegral(self):
        with pytest.raises(NonIntegralError) as exc:
            one_design_lambda(7, 5, 3)
        assert exc.value.which == "Lambda"

    def test_params_helper(self):
        q = one_design_params(6, 4, 3)
        assert (q.v, q.b, q.r, q.k, q.lam) == (6, 4, 2, 3, 2)
