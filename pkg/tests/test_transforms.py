from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from bibdkit.designs import Design, verify_design
from bibdkit.params import BibdParams, derive_params
from bibdkit.transforms import (
    ComplementDegenerateError,
    FullBlockError,
    complement_design,
    complement_params,
    leave_params,
    point_residual,
)


class TestComplementParams:
    def test_twelve_block_case(self):
        p = complement_params(BibdParams(9, 12, 4, 3, 1))
        assert p.as_tuple() == (9, 12, 8, 6, 5)

    def test_self_complementary(self):
        p = complement_params(BibdParams(6, 10, 5, 3, 2))
        assert p.as_tuple() == (6, 10, 5, 3, 2)

    def test_degenerate_when_index_vanishes(self):
        # b - 2r + lambda = 4 - 6 + 2 = 0
        with pytest.raises(ComplementDegenerateError):
            complement_params(BibdParams(4, 4, 3, 3, 2))

    def test_degenerate_when_blocks_complete(self):
        with pytest.raises(ComplementDegenerateError):
            complement_params(BibdParams(4, 1, 1, 4, 1))

    @given(st.integers(2, 80), st.integers(2, 80), st.integers(1, 15))
    def test_involution_where_defined(self, v, k, lam):
        if k > v:
            return
        try:
            p = derive_params(v, k, lam)
        except Exception:
            return
        try:
            c = complement_params(p)
        except ComplementDegenerateError:
            return
        # the map validates its own output, and applying it twice returns p
        assert complement_params(c) == p


class TestComplementDesign:
    def test_fano_complement_parameters(self, design_731):
        rep = verify_design(complement_design(design_731))
        assert rep.is_bibd
        assert rep.params.as_tuple() == (7, 7, 4, 4, 2)

    def test_nine_point_complement_parameters(self, design_931):
        rep = verify_design(complement_design(design_931))
        assert rep.is_bibd
        assert rep.params.as_tuple() == (9, 12, 8, 6, 5)

    def test_involution(self, design_931, design_632):
        for d in (design_931, design_632):
            assert complement_design(complement_design(d)) == d

    def test_full_block_rejected(self):
        d = Design(v=3, blocks=((0, 1), (0, 1, 2)))
        with pytest.raises(FullBlockError) as exc:
            complement_design(d)
        assert "block 1" in str(exc.value)

    def test_blockwise_set_complement_oracle(self, design_432):
        comp = complement_design(design_432)
        expected = sorted(
            tuple(x for x in range(4) if x not in blk) for blk in design_432.blocks
        )
        assert list(comp.blocks) == expected

    def test_matches_parameter_map(self, design_632):
        base = verify_design(design_632).params
        comp_params = verify_design(complement_design(design_632)).params
        assert comp_params == complement_params(base)


class TestLeaveParams:
    def test_fano_stated_index_is_wrong(self):
        res = leave_params(BibdParams(7, 7, 3, 3, 1))
        assert (res.v, res.b, res.k) == (6, 4, 3)
        assert res.stated_index == 1
        assert res.actual_index == 2
        assert not res.consistent

    def test_twofold_triple(self):
        res = leave_params(BibdParams(6, 10, 5, 3, 2))
        assert res.stated_index == 2 and res.actual_index == 3
        assert not res.consistent

    def test_consistent_when_r_is_twice_lambda(self):
        res = leave_params(BibdParams(3, 3, 2, 2, 1))
        assert res.stated_index == res.actual_index == 1
        assert res.consistent

    def test_actual_params_form_a_one_design(self):
        res = leave_params(BibdParams(7, 7, 3, 3, 1))
        q = res.actual_params
        assert q.b * q.k == q.r * q.v and q.r == q.lam

    @given(st.integers(2, 80), st.integers(2, 80), st.integers(1, 15))
    def test_block_count_identity_always(self, v, k, lam):
        if k > v:
            return
        try:
            p = derive_params(v, k, lam)
        except Exception:
            return
        res = leave_params(p)
        assert res.b == p.b - p.r
        assert res.b * res.k == res.actual_index * res.v
        assert res.consistent == (p.lam == p.r - p.lam)


def replication_oracle(d: Design) -> list[int]:
    counts = [0] * d.v
    for blk in d.blocks:
        for x in blk:
            counts[x] += 1
    return counts


class TestPointResidual:
    def test_fano_residual_counts(self, design_731):
        for x in range(7):
            res = point_residual(design_731, x)
            assert res.design.v == 6
            assert len(res.design.blocks) == 4
            assert replication_oracle(res.design) == [2] * 6

    def test_nine_point_residual_counts(self, design_931):
        for x in range(9):
            res = point_residual(design_931, x)
            assert res.design.v == 8
            assert len(res.design.blocks) == 8
            assert replication_oracle(res.design) == [3] * 8

    def test_block_count_is_b_minus_r(self, design_632):
        res = point_residual(design_632, 2)
        assert len(res.design.blocks) == 10 - 5

    def test_labels_trace_original_points(self, design_931):
        res = point_residual(design_931, 4)
        assert res.removed_point == 4
        assert res.point_labels == (0, 1, 2, 3, 5, 6, 7, 8)
        # block contents map back to original blocks avoiding the point
        original = {blk for blk in design_931.blocks if 4 not in blk}
        relabeled = {
            tuple(res.point_labels[x] for x in blk) for blk in res.design.blocks
        }
        assert relabeled == original

    def test_residual_index_is_r_minus_lambda(self, design_931):
        # every pair of surviving points loses exactly the blocks through
        # the removed point: 1-design index r - lambda as a point count
        res = point_residual(design_931, 0)
        pair_counts = {pair: 0 for pair in combinations(range(8), 2)}
        for blk in res.design.blocks:
            for pair in combinations(blk, 2):
                pair_counts[pair] += 1
        assert set(pair_counts.values()) <= {0, 1}

    def test_point_out_of_range(self, design_731):
        with pytest.raises(ValueError):
            point_residual(design_731, 7)
        with pytest.raises(ValueError):
            point_residual(design_731, -1)
