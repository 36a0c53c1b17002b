"""Exact integer parameter arithmetic for 2-designs (BIBDs) and 1-designs.

A BIBD on v points has b blocks of size k, every point in r blocks and
every point pair in exactly lambda blocks.  The five parameters are tied
together by two counting identities:

    b * k = v * r           (incidences counted two ways)
    lambda * (v - 1) = r * (k - 1)   (pairs through a fixed point)

Everything here is plain Python int arithmetic, which is arbitrary
precision, so intermediate products can never overflow or wrap.
"""

from __future__ import annotations

from dataclasses import dataclass


class ParamError(ValueError):
    """Base class for parameter arithmetic failures."""


class NonIntegralError(ParamError):
    """A derived parameter is not an integer.

    ``which`` names the parameter that failed ("r", "b" or "Lambda").
    """

    def __init__(self, which: str, message: str):
        super().__init__(message)
        self.which = which


class DegenerateBlockSizeError(ParamError):
    """Block size k = 1 leaves the replication number undefined."""


class InvalidParamsError(ParamError):
    """A quintuple violates the BIBD invariants."""


@dataclass(frozen=True)
class BibdParams:
    """An admissible-shaped quintuple (v, b, r, k, lambda).

    Construction enforces the range constraints and both counting
    identities; Fisher's inequality b >= v is deliberately not
    required here (check_admissible reports it separately).
    """

    v: int
    b: int
    r: int
    k: int
    lam: int

    def __post_init__(self) -> None:
        v, b, r, k, lam = self.v, self.b, self.r, self.k, self.lam
        if v < 2:
            raise InvalidParamsError(f"v = {v} must be at least 2")
        if not 1 <= k <= v:
            raise InvalidParamsError(f"k = {k} must satisfy 1 <= k <= v = {v}")
        if lam < 1:
            raise InvalidParamsError(f"lambda = {lam} must be at least 1")
        if not 1 <= r <= b:
            raise InvalidParamsError(f"r = {r} must satisfy 1 <= r <= b = {b}")
        if b * k != v * r:
            raise InvalidParamsError(
                f"identity b*k = v*r fails: {b}*{k} = {b * k} != {v}*{r} = {v * r}"
            )
        if lam * (v - 1) != r * (k - 1):
            raise InvalidParamsError(
                f"identity lambda*(v-1) = r*(k-1) fails: "
                f"{lam}*{v - 1} = {lam * (v - 1)} != {r}*{k - 1} = {r * (k - 1)}"
            )

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.v, self.b, self.r, self.k, self.lam)


@dataclass(frozen=True)
class OneDesignParams:
    """Parameters (V, B, R, K, Lambda) of a 1-design: B*K = R*V and R = Lambda."""

    v: int
    b: int
    r: int
    k: int
    lam: int

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.v:
            raise InvalidParamsError(
                f"K = {self.k} must satisfy 1 <= K <= V = {self.v}"
            )
        if self.b * self.k != self.r * self.v:
            raise InvalidParamsError(
                f"identity B*K = R*V fails: {self.b}*{self.k} != {self.r}*{self.v}"
            )
        if self.r != self.lam:
            raise InvalidParamsError(
                f"a 1-design has R = Lambda, got R = {self.r}, Lambda = {self.lam}"
            )


@dataclass(frozen=True)
class AdmissibilityCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class AdmissibilityReport:
    """Outcome of every admissibility predicate; nothing short-circuits."""

    checks: tuple[AdmissibilityCheck, ...]

    @property
    def admissible(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[AdmissibilityCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)


def derive_params(v: int, k: int, lam: int) -> BibdParams:
    """Derive (v, b, r, k, lambda) from (v, k, lambda) by the two identities.

    Raises NonIntegralError naming whichever of r, b fails to divide out,
    and DegenerateBlockSizeError for k = 1.
    """
    if v < 2:
        raise InvalidParamsError(f"v = {v} must be at least 2")
    if not 1 <= k <= v:
        raise InvalidParamsError(f"k = {k} must satisfy 1 <= k <= v = {v}")
    if lam < 1:
        raise InvalidParamsError(f"lambda = {lam} must be at least 1")
    if k == 1:
        raise DegenerateBlockSizeError("k = 1: replication r = lambda*(v-1)/0 is undefined")
    num_r = lam * (v - 1)
    if num_r % (k - 1) != 0:
        raise NonIntegralError(
            "r", f"r = lambda*(v-1)/(k-1) = {num_r}/{k - 1} is not an integer"
        )
    r = num_r // (k - 1)
    num_b = v * r
    if num_b % k != 0:
        raise NonIntegralError("b", f"b = v*r/k = {num_b}/{k} is not an integer")
    b = num_b // k
    return BibdParams(v=v, b=b, r=r, k=k, lam=lam)


def check_admissible(v: int, b: int, r: int, k: int, lam: int) -> AdmissibilityReport:
    """Evaluate every admissibility predicate on a raw quintuple.

    All inputs are plain nonnegative ints; every predicate is evaluated
    and reported even when an earlier one already failed.
    """
    checks: list[AdmissibilityCheck] = []

    def add(name: str, passed: bool, detail: str) -> None:
        checks.append(AdmissibilityCheck(name=name, passed=bool(passed), detail=detail))

    add("v_range", v >= 2, f"v = {v} (need v >= 2)")
    add("k_range", 1 <= k <= v, f"k = {k} (need 1 <= k <= v = {v})")
    add("lambda_range", lam >= 1, f"lambda = {lam} (need lambda >= 1)")
    add("r_range", 1 <= r <= b, f"r = {r} (need 1 <= r <= b = {b})")

    # Divisibility mirrors derive_params; guard the k <= 1 case so the
    # predicate is total over arbitrary nonnegative input.
    r_int = k >= 2 and (lam * (v - 1)) % (k - 1) == 0
    add(
        "r_integral",
        r_int,
        f"lambda*(v-1) = {lam * (v - 1)} vs k-1 = {k - 1}",
    )
    b_int = k >= 1 and (v * r) % k == 0
    add("b_integral", b_int, f"v*r = {v * r} vs k = {k}")

    add(
        "identity_bk_vr",
        b * k == v * r,
        f"b*k = {b * k}, v*r = {v * r}",
    )
    add(
        "identity_pair_count",
        lam * (v - 1) == r * (k - 1),
        f"lambda*(v-1) = {lam * (v - 1)}, r*(k-1) = {r * (k - 1)}",
    )
    add("fisher", b >= v, f"b = {b}, v = {v} (need b >= v)")
    return AdmissibilityReport(checks=tuple(checks))


def is_nontrivial(p: BibdParams) -> bool:
    """Nontrivial means 1 < k < v: blocks are proper subsets, not points."""
    return 1 < p.k < p.v


def one_design_lambda(v: int, b: int, k: int) -> int:
    """Replication index Lambda = B*K/V of a 1-design, exact or an error."""
    if v < 1:
        raise InvalidParamsError(f"V = {v} must be at least 1")
    if (b * k) % v != 0:
        raise NonIntegralError(
            "Lambda", f"Lambda = B*K/V = {b * k}/{v} is not an integer"
        )
    return (b * k) // v


def one_design_params(v: int, b: int, k: int) -> OneDesignParams:
    lam = one_design_lambda(v, b, k)
    return OneDesignParams(v=v, b=b, r=lam, k=k, lam=lam)
