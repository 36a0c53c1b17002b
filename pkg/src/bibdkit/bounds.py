"""Lower bounds on the block count b of a BIBD, plus related inequality checks.

Six named bounds are computed side by side.  Each returns a BoundValue
that says whether the bound's hypothesis applies to the given quintuple,
and if so the exact integer bound and whether b satisfies it:

    fisher      b >= v                       always applies
    bose        b >= v + r - 1               applies iff r >= lambda + k
    kageyama    b >= 2v + r - 1              applies iff the design is
                                             resolvable but not affine
                                             (caller-asserted) and k | v
    khan_a      b >= ceil((v-k)^3/v^2) + 2r - lambda      nontrivial only
    khan_b      b >= ceil((v-k)^2/(v-1)) + 2r - lambda    nontrivial and
                                                          r >= v - 1
    conjecture  same formula as khan_b       nontrivial and b >= v + r - 1
                                             (open problem, unproven)

All arithmetic is exact; ceilings are integer ceilings of exact
rationals, never floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .params import BibdParams, OneDesignParams, is_nontrivial


def ceil_div(a: int, c: int) -> int:
    """Exact ceil(a / c) for a >= 0, c >= 1."""
    if a < 0 or c < 1:
        raise ValueError(f"ceil_div needs a >= 0 and c >= 1, got a = {a}, c = {c}")
    return (a + c - 1) // c


class BoundName(str, enum.Enum):
    """Fixed canonical order; ties in bound_report resolve to the earliest."""

    FISHER = "fisher"
    BOSE = "bose"
    KAGEYAMA = "kageyama"
    KHAN_A = "khan_a"
    KHAN_B = "khan_b"
    CONJECTURE = "conjecture"


BOUND_ORDER: tuple[BoundName, ...] = tuple(BoundName)


@dataclass(frozen=True)
class BoundValue:
    """One bound evaluated on one quintuple.

    value and satisfied are present exactly when the bound applies;
    reason explains inapplicability otherwise.
    """

    name: BoundName
    applicable: bool
    value: int | None = None
    satisfied: bool | None = None
    reason: str | None = None

    def __post_init__(self) -> None:
        if self.applicable:
            assert self.value is not None and self.satisfied is not None
        else:
            assert self.value is None and self.satisfied is None


def _applicable(name: BoundName, p: BibdParams, value: int) -> BoundValue:
    return BoundValue(name=name, applicable=True, value=value, satisfied=p.b >= value)


def _na(name: BoundName, reason: str) -> BoundValue:
    return BoundValue(name=name, applicable=False, reason=reason)


def fisher_bound(p: BibdParams) -> BoundValue:
    return _applicable(BoundName.FISHER, p, p.v)


def bose_bound(p: BibdParams) -> BoundValue:
    # r >= lambda + k is the classical applicability test; symmetric
    # designs (b = v) always fail it, which is what produces the dashes
    # in the comparison table.
    if p.r < p.lam + p.k:
        return _na(
            BoundName.BOSE,
            f"needs r >= lambda + k: r = {p.r} < {p.lam + p.k}",
        )
    return _applicable(BoundName.BOSE, p, p.v + p.r - 1)


def kageyama_bound(p: BibdParams, resolvable_not_affine: bool = False) -> BoundValue:
    # Resolvability minus affineness cannot be read off the parameters;
    # the caller must assert it (e.g. after an explicit resolution search).
    if not resolvable_not_affine:
        return _na(
            BoundName.KAGEYAMA,
            "needs the caller to assert the design is resolvable and not affine",
        )
    if p.v % p.k != 0:
        return _na(
            BoundName.KAGEYAMA,
            f"resolvable designs need k | v: v = {p.v}, k = {p.k}",
        )
    return _applicable(BoundName.KAGEYAMA, p, 2 * p.v + p.r - 1)


def khan_a_bound(p: BibdParams) -> BoundValue:
    if not is_nontrivial(p):
        return _na(BoundName.KHAN_A, f"needs 1 < k < v: k = {p.k}, v = {p.v}")
    value = ceil_div((p.v - p.k) ** 3, p.v**2) + 2 * p.r - p.lam
    return _applicable(BoundName.KHAN_A, p, value)


def khan_b_bound(p: BibdParams) -> BoundValue:
    if not is_nontrivial(p):
        return _na(BoundName.KHAN_B, f"needs 1 < k < v: k = {p.k}, v = {p.v}")
    if p.r < p.v - 1:
        return _na(BoundName.KHAN_B, f"needs r >= v - 1: r = {p.r} < {p.v - 1}")
    value = ceil_div((p.v - p.k) ** 2, p.v - 1) + 2 * p.r - p.lam
    return _applicable(BoundName.KHAN_B, p, value)


def conjecture_bound(p: BibdParams) -> BoundValue:
    """Same formula as khan_b under the weaker hypothesis b >= v + r - 1.

    This is an open problem, not a theorem; bound_report reports it but
    never lets it win.
    """
    if not is_nontrivial(p):
        return _na(BoundName.CONJECTURE, f"needs 1 < k < v: k = {p.k}, v = {p.v}")
    if p.b < p.v + p.r - 1:
        return _na(
            BoundName.CONJECTURE,
            f"needs b >= v + r - 1: b = {p.b} < {p.v + p.r - 1}",
        )
    value = ceil_div((p.v - p.k) ** 2, p.v - 1) + 2 * p.r - p.lam
    return _applicable(BoundName.CONJECTURE, p, value)


@dataclass(frozen=True)
class BoundReport:
    params: BibdParams
    bounds: tuple[BoundValue, ...]
    winner: BoundName

    def __getitem__(self, name: BoundName) -> BoundValue:
        for bv in self.bounds:
            if bv.name is name:
                return bv
        raise KeyError(name)


def bound_report(p: BibdParams, resolvable_not_affine: bool = False) -> BoundReport:
    """All six bounds in canonical order plus the winning proven bound.

    The winner is the largest applicable value among the five proven
    bounds, earliest name winning ties; the conjecture value is reported
    for comparison but is excluded from the contest because it is
    unproven.
    """
    bounds = (
        fisher_bound(p),
        bose_bound(p),
        kageyama_bound(p, resolvable_not_affine),
        khan_a_bound(p),
        khan_b_bound(p),
        conjecture_bound(p),
    )
    winner = None
    best = None
    for bv in bounds:
        if bv.name is BoundName.CONJECTURE or not bv.applicable:
            continue
        if best is None or bv.value > best:  # strict: ties keep the earlier name
            best = bv.value
            winner = bv.name
    assert winner is not None  # fisher always applies
    return BoundReport(params=p, bounds=bounds, winner=winner)


@dataclass(frozen=True)
class HypothesisConclusion:
    """A checked implication with its operand values.

    conclusion is always computed; it only refutes the implication when
    the hypothesis holds, which is what violated captures.
    """

    hypothesis: bool
    conclusion: bool
    operands: Mapping[str, int]

    @property
    def violated(self) -> bool:
        return self.hypothesis and not self.conclusion


def lemma_2_1_checks(
    p: BibdParams,
) -> tuple[HypothesisConclusion, HypothesisConclusion, HypothesisConclusion]:
    """Three cubic/quadratic consequences of the counting identities.

    (a) b*k^2 >= lambda*v^2 for every BIBD;
    (b) b*k^3 <  lambda*v^3 and (c) k^3 < lambda*v^2 for nontrivial ones.
    """
    v, b, k, lam = p.v, p.b, p.k, p.lam
    nontrivial = is_nontrivial(p)
    a = HypothesisConclusion(
        hypothesis=True,
        conclusion=b * k**2 >= lam * v**2,
        operands={"b*k^2": b * k**2, "lambda*v^2": lam * v**2},
    )
    bb = HypothesisConclusion(
        hypothesis=nontrivial,
        conclusion=b * k**3 < lam * v**3,
        operands={"b*k^3": b * k**3, "lambda*v^3": lam * v**3},
    )
    c = HypothesisConclusion(
        hypothesis=nontrivial,
        conclusion=k**3 < lam * v**2,
        operands={"k^3": k**3, "lambda*v^2": lam * v**2},
    )
    return a, bb, c


def lemma_2_2_checks(
    q: OneDesignParams, m: int
) -> tuple[HypothesisConclusion, HypothesisConclusion]:
    """Power inequalities for 1-designs, for any exponent m >= 2.

    (a) B*K^m <= Lambda*V^m always; (b) if B >= V then K^m <= Lambda*V^(m-1).
    """
    if m < 2:
        raise ValueError(f"exponent m must be at least 2, got {m}")
    v, b, k, lam = q.v, q.b, q.k, q.lam
    a = HypothesisConclusion(
        hypothesis=True,
        conclusion=b * k**m <= lam * v**m,
        operands={"B*K^m": b * k**m, "Lambda*V^m": lam * v**m, "m": m},
    )
    bb = HypothesisConclusion(
        hypothesis=b >= v,
        conclusion=k**m <= lam * v ** (m - 1),
        operands={"K^m": k**m, "Lambda*V^(m-1)": lam * v ** (m - 1), "m": m},
    )
    return a, bb


def theorem_2_3_stated(p: BibdParams) -> HypothesisConclusion:
    """If b >= v + r - 1 then k^2 <= lambda*(v-1).  (As stated; falsifiable.)"""
    return HypothesisConclusion(
        hypothesis=p.b >= p.v + p.r - 1,
        conclusion=p.k**2 <= p.lam * (p.v - 1),
        operands={
            "b": p.b,
            "v+r-1": p.v + p.r - 1,
            "k^2": p.k**2,
            "lambda*(v-1)": p.lam * (p.v - 1),
        },
    )


def theorem_2_3_residual_variant(p: BibdParams) -> HypothesisConclusion:
    """If b >= v + r - 1 then k^2 <= (r - lambda)*(v-1).

    The repaired form: the point residual of a BIBD is a 1-design with
    index r - lambda, not lambda.
    """
    return HypothesisConclusion(
        hypothesis=p.b >= p.v + p.r - 1,
        conclusion=p.k**2 <= (p.r - p.lam) * (p.v - 1),
        operands={
            "b": p.b,
            "v+r-1": p.v + p.r - 1,
            "k^2": p.k**2,
            "(r-lambda)*(v-1)": (p.r - p.lam) * (p.v - 1),
        },
    )
