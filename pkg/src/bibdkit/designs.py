"""Concrete block designs: canonical form, verification, exhaustive search.

A design is stored canonically: every block is a strictly increasing
tuple of points from range(v), and the block list is sorted
lexicographically.  Repeated blocks are legal and end up adjacent.

The constructor searches depth-first over lexicographically
nondecreasing block sequences with the first block pinned to
{0, ..., k-1} (any design can be relabeled into that form, so the
pinning is harmless for existence).  The search is exact: a None result
from a completed search is a proof that no design with those parameters
exists, while running out of node budget raises instead, so the two
outcomes cannot be confused.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .params import (
    BibdParams,
    ParamError,
    check_admissible,
    derive_params,
    is_nontrivial,
)

DEFAULT_NODE_BUDGET = 10**6


class DesignFormatError(ValueError):
    """Input is not a canonical design; the message names the first offender."""


class InadmissibleParamsError(ValueError):
    """Construction target fails derivation or Fisher's inequality."""


class SearchBudgetExceededError(RuntimeError):
    """The node budget ran out before the search finished."""

    def __init__(self, nodes: int):
        super().__init__(f"search stopped after {nodes} expanded nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class Design:
    """A canonical design.  Construction validates canonical form."""

    v: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.v, int) or isinstance(self.v, bool) or self.v < 1:
            raise DesignFormatError(f"v must be a positive integer, got {self.v!r}")
        for i, block in enumerate(self.blocks):
            if len(block) == 0:
                raise DesignFormatError(f"block {i} is empty")
            for x in block:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise DesignFormatError(f"block {i} = {list(block)} has a non-integer point")
                if not 0 <= x < self.v:
                    raise DesignFormatError(
                        f"block {i} = {list(block)} has point {x} outside range(0, {self.v})"
                    )
            if any(block[j] >= block[j + 1] for j in range(len(block) - 1)):
                raise DesignFormatError(
                    f"block {i} = {list(block)} is not strictly increasing"
                )
        for i in range(1, len(self.blocks)):
            if self.blocks[i] < self.blocks[i - 1]:
                raise DesignFormatError(
                    f"block {i} = {list(self.blocks[i])} is out of order "
                    f"(sorts before block {i - 1} = {list(self.blocks[i - 1])})"
                )

    @property
    def block_count(self) -> int:
        return len(self.blocks)


def canonicalize(v: int, blocks) -> Design:
    """Sort points within blocks and blocks within the list.

    Duplicate points inside one block are rejected (a block is a set);
    duplicate blocks are kept.  Idempotent on canonical input.
    """
    fixed = []
    for i, block in enumerate(blocks):
        pts = sorted(block)
        if any(pts[j] == pts[j + 1] for j in range(len(pts) - 1)):
            raise DesignFormatError(
                f"block {i} = {list(block)} repeats a point"
            )
        fixed.append(tuple(pts))
    fixed.sort()
    return Design(v=v, blocks=tuple(fixed))


def design_to_json(d: Design) -> str:
    payload = {"v": d.v, "blocks": [list(b) for b in d.blocks]}
    return json.dumps(payload, indent=2) + "\n"


def design_from_obj(obj) -> Design:
    """Validate a decoded {"v": ..., "blocks": [[...]]} object, strictly canonical."""
    if not isinstance(obj, dict):
        raise DesignFormatError(f"design must be an object, got {type(obj).__name__}")
    extra = set(obj) - {"v", "blocks"}
    missing = {"v", "blocks"} - set(obj)
    if extra or missing:
        raise DesignFormatError(
            f"design object must have exactly the keys 'v' and 'blocks'"
            + (f"; unexpected: {sorted(extra)}" if extra else "")
            + (f"; missing: {sorted(missing)}" if missing else "")
        )
    if not isinstance(obj["blocks"], list) or any(
        not isinstance(b, list) for b in obj["blocks"]
    ):
        raise DesignFormatError("'blocks' must be a list of lists of points")
    return Design(v=obj["v"], blocks=tuple(tuple(b) for b in obj["blocks"]))


def design_from_json(text: str) -> Design:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DesignFormatError(f"not valid JSON: {e}") from e
    return design_from_obj(obj)


@dataclass(frozen=True)
class VerificationReport:
    """Exact counts over a design; a constant is None when not constant."""

    v: int
    block_count: int
    uniform_block_size: int | None
    constant_replication: int | None
    constant_pair_index: int | None
    is_bibd: bool
    nontrivial: bool
    params: BibdParams | None


def pair_counts(d: Design) -> dict[tuple[int, int], int]:
    """Coverage count of every unordered point pair, zeros included."""
    counts = {pair: 0 for pair in combinations(range(d.v), 2)}
    for block in d.blocks:
        for pair in combinations(block, 2):
            counts[pair] += 1
    return counts


def replication_counts(d: Design) -> list[int]:
    counts = [0] * d.v
    for block in d.blocks:
        for x in block:
            counts[x] += 1
    return counts


def verify_design(d: Design) -> VerificationReport:
    """Check uniform block size, constant replication and constant pair index.

    is_bibd needs all three constants plus a valid quintuple (so index
    zero or a single point never qualifies).  Complete-block designs
    (k = v) verify too; nontrivial distinguishes 1 < k < v.
    """
    sizes = {len(b) for b in d.blocks}
    uniform = sizes.pop() if len(sizes) == 1 else None

    repl = replication_counts(d)
    constant_repl = repl[0] if d.v >= 1 and len(set(repl)) == 1 else None

    pair_index: int | None = None
    if d.v >= 2:
        values = set(pair_counts(d).values())
        if len(values) == 1:
            pair_index = values.pop()

    params: BibdParams | None = None
    if (
        uniform is not None
        and constant_repl is not None
        and pair_index is not None
        and pair_index >= 1
    ):
        try:
            params = BibdParams(
                v=d.v, b=d.block_count, r=constant_repl, k=uniform, lam=pair_index
            )
        except ParamError:
            params = None
    return VerificationReport(
        v=d.v,
        block_count=d.block_count,
        uniform_block_size=uniform,
        constant_replication=constant_repl,
        constant_pair_index=pair_index,
        is_bibd=params is not None,
        nontrivial=params is not None and is_nontrivial(params),
        params=params,
    )


def construct(
    v: int, k: int, lam: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> Design | None:
    """Find the canonical-first design with the given parameters, if any.

    Returns the design, or None as a proof of nonexistence when the
    exhaustive search completed.  Raises SearchBudgetExceededError when
    node_budget block placements were spent first, and
    InadmissibleParamsError when (v, k, lambda) cannot even produce an
    admissible quintuple.

    Deterministic: depth-first over lexicographically nondecreasing
    blocks, first block pinned to (0, ..., k-1).  Each node is one block
    placement.  A placed block must keep every pair count <= lambda and
    every point count <= r; a partial solution is abandoned as soon as
    some pair or point needs more coverage than the remaining block
    slots can supply.
    """
    if node_budget < 1:
        raise ValueError(f"node_budget must be >= 1, got {node_budget}")
    try:
        p = derive_params(v, k, lam)
    except ParamError as e:
        raise InadmissibleParamsError(str(e)) from e
    report = check_admissible(*p.as_tuple())
    if not report.admissible:
        failed = ", ".join(c.detail for c in report.failures)
        raise InadmissibleParamsError(f"not admissible: {failed}")

    b, r = p.b, p.r
    npairs = v * (v - 1) // 2
    cnt = [[0] * v for _ in range(v)]  # pair counts, used with i < j
    ptcnt = [0] * v
    pair_hist = [0] * (lam + 1)  # pair_hist[c] = number of pairs at count c
    pair_hist[0] = npairs
    pt_hist = [0] * (r + 1)
    pt_hist[0] = v
    chosen: list[tuple[int, ...]] = []
    nodes = 0

    def place(block: tuple[int, ...]) -> None:
        for i, x in enumerate(block):
            pt_hist[ptcnt[x]] -= 1
            ptcnt[x] += 1
            pt_hist[ptcnt[x]] += 1
            for y in block[i + 1 :]:
                pair_hist[cnt[x][y]] -= 1
                cnt[x][y] += 1
                pair_hist[cnt[x][y]] += 1
        chosen.append(block)

    def unplace(block: tuple[int, ...]) -> None:
        chosen.pop()
        for i, x in enumerate(block):
            pt_hist[ptcnt[x]] -= 1
            ptcnt[x] -= 1
            pt_hist[ptcnt[x]] += 1
            for y in block[i + 1 :]:
                pair_hist[cnt[x][y]] -= 1
                cnt[x][y] -= 1
                pair_hist[cnt[x][y]] += 1

    def feasible() -> bool:
        remaining = b - len(chosen)
        # a future block raises a given pair count by at most 1, same for
        # a point, so the worst deficiency bounds the needed block count
        min_pair = next(c for c in range(lam + 1) if pair_hist[c] > 0)
        if lam - min_pair > remaining:
            return False
        min_pt = next(c for c in range(r + 1) if pt_hist[c] > 0)
        if r - min_pt > remaining:
            return False
        return True

    def next_deficient(x: int, y: int) -> tuple[int, int] | None:
        # pairs below the previous deficient pair are already full, so
        # scanning forward from it is exhaustive
        while x < v - 1:
            while y < v:
                if cnt[x][y] < lam:
                    return (x, y)
                y += 1
            x += 1
            y = x + 1
        return None

    def search(px: int, py: int) -> Design | None:
        nonlocal nodes
        if len(chosen) == b:
            # counts never exceed lambda and the totals are forced, so a
            # full-length sequence is automatically a design
            return Design(v=v, blocks=tuple(chosen))
        deficient = next_deficient(px, py)
        if deficient is None:
            return None  # all pairs full but blocks remain: overshoot is inevitable
        x, y = deficient
        last = chosen[-1]
        # the next block in nondecreasing order must start with (x, y)
        if (x, y) < (last[0], last[1]):
            return None
        if ptcnt[x] >= r or ptcnt[y] >= r:
            return None
        tail_floor = last[2:] if (x, y) == (last[0], last[1]) else None
        eligible = [
            z
            for z in range(y + 1, v)
            if ptcnt[z] < r and cnt[x][z] < lam and cnt[y][z] < lam
        ]
        for tail in combinations(eligible, k - 2):
            if tail_floor is not None and tail < tail_floor:
                continue
            if any(cnt[z1][z2] >= lam for z1, z2 in combinations(tail, 2)):
                continue
            block = (x, y) + tail
            nodes += 1
            if nodes > node_budget:
                raise SearchBudgetExceededError(nodes - 1)
            place(block)
            if feasible():
                found = search(x, y)
                if found is not None:
                    return found
            unplace(block)
        return None

    first = tuple(range(k))
    nodes += 1
    place(first)
    if not feasible():
        return None
    return search(0, 1)


@dataclass(frozen=True)
class Resolution:
    """A partition of block indices into parallel classes.

    Each class lists block indices whose blocks are pairwise disjoint and
    cover every point; classes are disjoint and use every block.
    """

    classes: tuple[tuple[int, ...], ...]


def find_resolution(d: Design, node_budget: int | None = None) -> Resolution | None:
    """Exhaustively search for a resolution.

    None is a proof of non-resolvability when the search completes; a
    node budget, when given, raises SearchBudgetExceededError instead of
    returning a misleading None.  Deterministic: classes grow from the
    lowest unused block index, extended through the lowest uncovered
    point, candidates tried in index order.
    """
    v, b = d.v, d.block_count
    sizes = {len(blk) for blk in d.blocks}
    if len(sizes) == 1:
        k = next(iter(sizes))
        if v % k != 0:
            return None  # a parallel class of equal-size blocks cannot cover v points
    full = (1 << v) - 1
    masks = []
    for blk in d.blocks:
        m = 0
        for x in blk:
            m |= 1 << x
        masks.append(m)
    used = [False] * b
    classes: list[tuple[int, ...]] = []
    nodes = 0

    def bump() -> None:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchBudgetExceededError(nodes - 1)

    def build_class(current: list[int], covered: int) -> bool:
        if covered == full:
            classes.append(tuple(sorted(current)))
            if solve():
                return True
            classes.pop()
            return False
        lowest = (covered + 1 & ~covered).bit_length() - 1  # lowest uncovered point
        for j in range(b):
            if used[j] or not masks[j] >> lowest & 1 or masks[j] & covered:
                continue
            bump()
            used[j] = True
            current.append(j)
            if build_class(current, covered | masks[j]):
                return True
            current.pop()
            used[j] = False
        return False

    def solve() -> bool:
        try:
            anchor = used.index(False)
        except ValueError:
            return True  # every block used: resolution complete
        bump()
        used[anchor] = True
        ok = build_class([anchor], masks[anchor])
        used[anchor] = False
        return ok

    if solve():
        return Resolution(classes=tuple(classes))
    return None


def is_affine(d: Design, res: Resolution) -> bool:
    """Affine: k^2 divisible by v and every cross-class block pair meets
    in exactly k^2/v points."""
    sizes = {len(blk) for blk in d.blocks}
    if len(sizes) != 1:
        return False
    k = next(iter(sizes))
    if (k * k) % d.v != 0:
        return False
    mu = (k * k) // d.v
    masks = []
    for blk in d.blocks:
        m = 0
        for x in blk:
            m |= 1 << x
        masks.append(m)
    for ci in range(len(res.classes)):
        for cj in range(ci + 1, len(res.classes)):
            for i in res.classes[ci]:
                for j in res.classes[cj]:
                    if (masks[i] & masks[j]).bit_count() != mu:
                        return False
    return True
