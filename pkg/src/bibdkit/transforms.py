"""Derived designs: complement, leave, and point residual.

The complement swaps every block for its complement in the point set.
The leave of a design with r >= lambda... the classical construction
collects, for each point pair, the blocks missing it; parameter-wise it
is tracked here both as sometimes stated (index lambda) and as actually
implied by counting (index r - lambda), with a consistency flag.
The point residual deletes one point and every block through it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .designs import Design, canonicalize
from .params import BibdParams, OneDesignParams


class ComplementDegenerateError(ValueError):
    """The complement parameters would not be a BIBD."""


class FullBlockError(ValueError):
    """A block equal to the whole point set has an empty complement."""


def complement_params(p: BibdParams) -> BibdParams:
    """Parameters (v, b, b-r, v-k, b-2r+lambda) of the complement design.

    Degenerate when the complementary pair index b - 2r + lambda is not
    positive (which happens exactly at k = v - 1) or when blocks would
    be empty.  The result is rebuilt through the validating constructor,
    so the identities are asserted rather than assumed.
    """
    lam_c = p.b - 2 * p.r + p.lam
    if lam_c <= 0:
        raise ComplementDegenerateError(
            f"complement pair index b - 2r + lambda = {lam_c} is not positive"
        )
    if p.v - p.k < 1:
        raise ComplementDegenerateError(
            f"complement block size v - k = {p.v - p.k} is not positive"
        )
    return BibdParams(v=p.v, b=p.b, r=p.b - p.r, k=p.v - p.k, lam=lam_c)


def complement_design(d: Design) -> Design:
    """Replace every block by its set complement, canonically.

    An involution on designs with no full block; a full block would
    leave an empty complement, which is an error.
    """
    points = range(d.v)
    new_blocks = []
    for i, block in enumerate(d.blocks):
        if len(block) >= d.v:
            raise FullBlockError(
                f"block {i} = {list(block)} uses every point; its complement is empty"
            )
        inside = set(block)
        new_blocks.append(tuple(x for x in points if x not in inside))
    return canonicalize(d.v, new_blocks)


@dataclass(frozen=True)
class LeaveResult:
    """Leave parameters: the stated index next to the counting-forced one.

    The stated index lambda usually breaks the 1-design identity
    B*K = index*V, which is exactly what consistent records, so only the
    actual parameters are exposed as a validated OneDesignParams.
    """

    v: int
    b: int
    k: int
    stated_index: int
    actual_index: int
    consistent: bool

    @property
    def actual_params(self) -> OneDesignParams:
        return OneDesignParams(
            v=self.v, b=self.b, r=self.actual_index, k=self.k, lam=self.actual_index
        )


def leave_params(p: BibdParams) -> LeaveResult:
    """1-design parameters (v-1, b-r, K=k) of a point's leave.

    Blocks missing a fixed point form a 1-design on the other v-1
    points.  Counting forces its index to r - lambda; the stated variant
    records index lambda instead.  consistent is true exactly when the
    two coincide, i.e. lambda = r - lambda.
    """
    v1, b1, k = p.v - 1, p.b - p.r, p.k
    actual = p.r - p.lam
    # counting identity for the actual index, always true for a BIBD
    assert b1 * k == actual * v1, (
        f"(b-r)*k = {b1 * k} != (r-lambda)*(v-1) = {actual * v1}"
    )
    return LeaveResult(
        v=v1,
        b=b1,
        k=k,
        stated_index=p.lam,
        actual_index=actual,
        consistent=p.lam == actual,
    )


@dataclass(frozen=True)
class PointResidual:
    """Residual design plus the relabeling that produced it.

    point_labels[i] is the original label of new point i; the removed
    point never appears.
    """

    design: Design
    removed_point: int
    point_labels: tuple[int, ...]


def point_residual(d: Design, x: int) -> PointResidual:
    """Drop point x and every block containing it, relabeling 0-based.

    The relabeling is order preserving: original points above x shift
    down by one.  For a BIBD the result has b - r blocks and is a
    1-design with index r - lambda.
    """
    if not 0 <= x < d.v:
        raise ValueError(f"point {x} is outside range(0, {d.v})")
    labels = tuple(p for p in range(d.v) if p != x)
    new_blocks = []
    for block in d.blocks:
        if x in block:
            continue
        new_blocks.append(tuple(p if p < x else p - 1 for p in block))
    return PointResidual(
        design=canonicalize(d.v - 1, new_blocks),
        removed_point=x,
        point_labels=labels,
    )
